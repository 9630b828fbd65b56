//! Acceptance gate: one test per acceptance criterion, each ending in a
//! single `PASS cN` line. Every criterion is checked from scratch here,
//! independently of the unit and integration suites.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use goldrank::aggregate::{aggregate, aggregate_seq, pairs_to_sup, SupRelation};
use goldrank::dataset::{load_dataset, AgreementRowKey, GsScope, TopicName};
use goldrank::pairwise::{centroid_pairs, centroid_relation, PairRelation, PairTally};
use goldrank::ranking::{parse_ranking, Participant, Ranking, Universe};
use goldrank::{compare, format_ranking, ranking_stats};

fn part(t: &str) -> Participant {
    Participant::new(t).unwrap()
}

fn num(i: usize) -> Participant {
    part(&i.to_string())
}

fn universe_of(n: usize) -> Universe {
    Universe::new((1..=n).map(num)).unwrap()
}

/// All six consensus rankings, recomputed from the embedded subject data.
fn computed_gss() -> BTreeMap<(TopicName, GsScope), Ranking> {
    let ds = load_dataset();
    let mut out = BTreeMap::new();
    for topic in TopicName::ALL {
        for scope in GsScope::ALL {
            let inputs = ds.rankings_for_scope(topic, scope);
            let gs = aggregate(&inputs, &ds.topic(topic).universe).unwrap();
            out.insert((topic, scope), gs);
        }
    }
    out
}

#[test]
fn c1_gold_standards_reproduce_exactly() {
    let ds = load_dataset();
    let gss = computed_gss();

    // Hard floor: the four single-task consensus rankings, string-exact.
    let single_task = [
        (
            TopicName::Debian,
            GsScope::First,
            "[8]>[4, 6]>[13, 15, 16]>[1, 2]>[9]>[14]>[10]>[12]>[5]",
        ),
        (
            TopicName::Debian,
            GsScope::Second,
            "[16]>[4, 13]>[8, 14]>[6]>[15]>[2]>[12]>[1]>[9]>[10]>[5]",
        ),
        (
            TopicName::Hibernate,
            GsScope::First,
            "[16]>[14]>[15, 18]>[5, 7, 11]>[2]>[3, 17]",
        ),
        (
            TopicName::Hibernate,
            GsScope::Second,
            "[16]>[15]>[14]>[11]>[18]>[2]>[7]>[3, 17]>[5]",
        ),
    ];
    for (topic, scope, want) in single_task {
        assert_eq!(
            format_ranking(&gss[&(topic, scope)]),
            want,
            "{topic}/{scope} single-task consensus"
        );
    }

    // All six, against the stored expectations.
    let mut matched = 0;
    for ((topic, scope), gs) in &gss {
        assert_eq!(
            format_ranking(gs),
            format_ranking(ds.expected_gs(*topic, *scope)),
            "{topic}/{scope} consensus"
        );
        matched += 1;
    }
    assert_eq!(matched, 6);
    println!("PASS c1: all 6 gold standards reproduce string-exactly (4 single-task + 2 overall)");
}

#[test]
fn c2_agreement_tables_reproduce_exactly() {
    let ds = load_dataset();
    let gss = computed_gss();
    let (mut subject_rows, mut gs_rows) = (0, 0);
    for row in ds.expected_agreement() {
        let u = &ds.topic(row.topic).universe;
        let left = &gss[&(row.topic, row.scope)];
        let report = match row.key {
            AgreementRowKey::Subject(id) => {
                subject_rows += 1;
                let subject = &ds.subject_ranking(row.topic, id).unwrap().ranking;
                compare(subject, left, u).unwrap()
            }
            AgreementRowKey::Gs(right) => {
                gs_rows += 1;
                compare(left, &gss[&(row.topic, right)], u).unwrap()
            }
        };
        let label = format!("{}/{}/{}", row.topic, row.scope, row.key);
        assert_eq!(
            report.counts(),
            (row.agree, row.disagree, row.unspecified),
            "{label} counts"
        );
        assert_eq!(
            report.pcts(),
            (row.pct_agree, row.pct_disagree, row.pct_unspecified),
            "{label} percentages"
        );
    }
    assert_eq!((subject_rows, gs_rows), (40, 6));
    println!(
        "PASS c2: all 40 subject agreement rows and all 6 GS-vs-GS rows match \
         (counts and percentages)"
    );
}

#[test]
fn c3_ranking_property_columns_reproduce_exactly() {
    let ds = load_dataset();
    let mut rows = 0;
    for row in ds.expected_stats() {
        let stats = ranking_stats(&ds.subject_ranking(row.topic, row.subject).unwrap().ranking);
        assert_eq!(
            (
                stats.participants_ranked,
                stats.ranks_used,
                stats.ranks_pct()
            ),
            (row.participants_ranked, row.ranks_used, row.pct),
            "{} subject {}",
            row.topic,
            row.subject
        );
        rows += 1;
    }
    assert_eq!(rows, 20);
    println!("PASS c3: all 20 (participants_ranked, ranks_used, pct) triples match");
}

#[test]
fn c4_every_agreement_row_conserves_the_pair_count() {
    let ds = load_dataset();
    let gss = computed_gss();
    let mut rows = 0;
    for row in ds.expected_agreement() {
        let u = &ds.topic(row.topic).universe;
        let left = &gss[&(row.topic, row.scope)];
        let report = match row.key {
            AgreementRowKey::Subject(id) => {
                let subject = &ds.subject_ranking(row.topic, id).unwrap().ranking;
                compare(subject, left, u).unwrap()
            }
            AgreementRowKey::Gs(right) => compare(left, &gss[&(row.topic, right)], u).unwrap(),
        };
        let want = match row.topic {
            TopicName::Debian => 78,
            TopicName::Hibernate => 45,
        };
        assert_eq!(
            report.total(),
            want,
            "{}/{}/{}",
            row.topic,
            row.scope,
            row.key
        );
        rows += 1;
    }
    assert_eq!(rows, 46);
    println!("PASS c4: all 46 computed agreement rows sum to 78 (Debian) / 45 (Hibernate)");
}

#[test]
fn c5_prose_examples_hold_exactly() {
    // Loop: three rotations of a>b>c annihilate all order.
    let u = Universe::new(["a", "b", "c"].map(part)).unwrap();
    let rotations = [
        parse_ranking("[a]>[b]>[c]").unwrap(),
        parse_ranking("[c]>[a]>[b]").unwrap(),
        parse_ranking("[b]>[c]>[a]").unwrap(),
    ];
    let centroid = centroid_pairs(&rotations, &u).unwrap();
    let sup = pairs_to_sup(&centroid, &u).unwrap();
    let got: BTreeSet<(String, String)> = sup
        .pairs()
        .map(|(a, b)| (a.token().to_string(), b.token().to_string()))
        .collect();
    let want: BTreeSet<(String, String)> = [("a", "b"), ("b", "c"), ("c", "a")]
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .into();
    assert_eq!(got, want, "loop relation");
    let closed = sup.transitive_closure();
    assert_eq!(closed.len(), 6, "closure of a 3-cycle is complete");
    assert!(
        closed.remove_cycles().is_empty(),
        "cycle removal empties it"
    );
    let gs = aggregate(&rotations, &u).unwrap();
    assert_eq!(format_ranking(&gs), "[a, b, c]");

    // Merge of two disjoint chains: a>b>c with d>e>f>g.
    let elements = ["a", "b", "c", "d", "e", "f", "g"].map(part);
    let chains = [("a", "b"), ("b", "c"), ("d", "e"), ("e", "f"), ("f", "g")]
        .map(|(x, y)| (part(x), part(y)));
    let merged = SupRelation::new(elements, chains)
        .unwrap()
        .transitive_closure()
        .remove_cycles()
        .layered_ranking()
        .unwrap();
    assert_eq!(format_ranking(&merged), "[a, d]>[b, e]>[c, f]>[g]");

    // Merge of two chains sharing x: a>x>b>c with d>e>x>f.
    let elements = ["a", "b", "c", "d", "e", "f", "x"].map(part);
    let chains = [
        ("a", "x"),
        ("x", "b"),
        ("b", "c"),
        ("d", "e"),
        ("e", "x"),
        ("x", "f"),
    ]
    .map(|(x, y)| (part(x), part(y)));
    let merged = SupRelation::new(elements, chains)
        .unwrap()
        .transitive_closure()
        .remove_cycles()
        .layered_ranking()
        .unwrap();
    assert_eq!(format_ranking(&merged), "[a, d]>[e]>[x]>[b, f]>[c]");

    println!("PASS c5: loop example and both chain-merge examples match the stated results");
}

/// Random partial ranking over members 1..=n, ties allowed, members may be
/// left out.
fn arb_ranking(n: usize) -> impl Strategy<Value = Ranking> {
    prop::collection::vec(prop::option::weighted(0.75, 0u8..6), n).prop_filter_map(
        "needs a ranked member",
        |scores| {
            let mut by_score: BTreeMap<u8, BTreeSet<Participant>> = BTreeMap::new();
            for (i, score) in scores.into_iter().enumerate() {
                if let Some(score) = score {
                    by_score.entry(score).or_default().insert(num(i + 1));
                }
            }
            if by_score.is_empty() {
                None
            } else {
                Some(Ranking::from_ranks(by_score.into_values().collect()).unwrap())
            }
        },
    )
}

fn check_relation_battery(rankings: &[Ranking], u: &Universe) -> Result<(), TestCaseError> {
    let centroid = centroid_pairs(rankings, u).unwrap();
    let closed = pairs_to_sup(&centroid, u).unwrap().transitive_closure();
    prop_assert_eq!(
        &closed.transitive_closure(),
        &closed,
        "closure not idempotent"
    );

    let pruned = closed.remove_cycles();
    for (a, b) in pruned.pairs() {
        prop_assert!(!pruned.contains(b, a), "({},{}) is mutual", a, b);
    }
    for (a, b) in pruned.pairs() {
        for (b2, c) in pruned.pairs() {
            if b == b2 {
                prop_assert!(pruned.contains(a, c), "transitivity hole ({},{})", a, c);
            }
        }
    }

    let layered = pruned.layered_ranking().unwrap();
    for (a, b) in pruned.pairs() {
        prop_assert!(
            layered.rank_of(a).unwrap() < layered.rank_of(b).unwrap(),
            "layering violates ({},{})",
            a,
            b
        );
    }
    for m in u.members() {
        prop_assert!(layered.contains(m), "{} unranked", m);
    }

    prop_assert_eq!(
        aggregate(rankings, u).unwrap(),
        aggregate_seq(rankings, u).unwrap(),
        "parallel and sequential lanes disagree"
    );
    Ok(())
}

fn check_compare_battery(r1: &Ranking, r2: &Ranking, u: &Universe) -> Result<(), TestCaseError> {
    let ab = compare(r1, r2, u).unwrap();
    let ba = compare(r2, r1, u).unwrap();
    prop_assert_eq!(ab, ba, "compare is not symmetric");
    let flipped = compare(&r1.reversed(), r2, u).unwrap();
    prop_assert_eq!(ab.agree, flipped.disagree);
    prop_assert_eq!(ab.disagree, flipped.agree);
    prop_assert_eq!(ab.unspecified, flipped.unspecified);
    Ok(())
}

fn permutations(items: &[Participant]) -> Vec<Ranking> {
    fn go(
        rest: &mut Vec<Participant>,
        acc: &mut Vec<Participant>,
        out: &mut Vec<Vec<Participant>>,
    ) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x.clone());
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, x);
        }
    }
    let mut orders = Vec::new();
    go(&mut items.to_vec(), &mut Vec::new(), &mut orders);
    orders
        .into_iter()
        .map(|order| {
            Ranking::from_ranks(order.into_iter().map(|p| BTreeSet::from([p])).collect()).unwrap()
        })
        .collect()
}

#[test]
fn c6_property_suite() {
    // (a) Centroid equals the n_s/n_i majority for every tally with n <= 6,
    // against an independent integer-geometry oracle.
    for n in 0usize..=6 {
        for ns in 0..=n {
            for ni in 0..=(n - ns) {
                let nu = n - ns - ni;
                let got = centroid_relation(&PairTally::new(ns, ni, nu));
                let want = if n == 0 {
                    PairRelation::NoOrder
                } else {
                    let (s, i, n) = (ns as i128, ni as i128, n as i128);
                    let to_superior = (n - s).pow(2) + i.pow(2);
                    let to_inferior = s.pow(2) + (n - i).pow(2);
                    match to_superior.cmp(&to_inferior) {
                        Ordering::Less => PairRelation::Superior,
                        Ordering::Greater => PairRelation::Inferior,
                        Ordering::Equal => PairRelation::NoOrder,
                    }
                };
                assert_eq!(got, want, "tally ({ns},{ni},{nu})");
            }
        }
    }

    let config = || Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    };

    // (b) Closure idempotence, post-removal asymmetry+transitivity,
    // layering respects pairs, lane equality — 1000 random instances.
    TestRunner::new(config())
        .run(
            &(1..=8usize)
                .prop_flat_map(|n| (Just(n), prop::collection::vec(arb_ranking(n), 1..=5))),
            |(n, rankings)| check_relation_battery(&rankings, &universe_of(n)),
        )
        .unwrap();

    // (c) Singleton faithfulness and unanimity — 1000 random rankings.
    TestRunner::new(config())
        .run(
            &(1..=8usize).prop_flat_map(|n| (arb_ranking(n), 1..=5usize)),
            |(r, copies)| {
                let u = Universe::from_rankings(std::slice::from_ref(&r)).unwrap();
                prop_assert_eq!(
                    &aggregate(std::slice::from_ref(&r), &u).unwrap(),
                    &r,
                    "faithfulness"
                );
                let copies = vec![r.clone(); copies];
                prop_assert_eq!(&aggregate(&copies, &u).unwrap(), &r, "unanimity");
                Ok(())
            },
        )
        .unwrap();

    // (d) Compare symmetry and reversal swap — 1000 random pairs.
    TestRunner::new(config())
        .run(
            &(2..=8usize).prop_flat_map(|n| (Just(n), arb_ranking(n), arb_ranking(n))),
            |(n, r1, r2)| check_compare_battery(&r1, &r2, &universe_of(n)),
        )
        .unwrap();

    // (e) Exhaustive: every universe with |u| <= 4, every multiset of <= 3
    // total orders.
    let mut instances = 0;
    for n in 1..=4usize {
        let u = universe_of(n);
        let members: Vec<Participant> = (1..=n).map(num).collect();
        let orders = permutations(&members);
        let k = orders.len();
        let mut multisets: Vec<Vec<Ranking>> = Vec::new();
        for i in 0..k {
            multisets.push(vec![orders[i].clone()]);
            for j in i..k {
                multisets.push(vec![orders[i].clone(), orders[j].clone()]);
                for l in j..k {
                    multisets.push(vec![
                        orders[i].clone(),
                        orders[j].clone(),
                        orders[l].clone(),
                    ]);
                }
            }
        }
        for rankings in &multisets {
            check_relation_battery(rankings, &u).unwrap();
            if rankings.windows(2).all(|w| w[0] == w[1]) {
                assert_eq!(&aggregate(rankings, &u).unwrap(), &rankings[0]);
            }
            for r1 in rankings {
                for r2 in rankings {
                    check_compare_battery(r1, r2, &u).unwrap();
                }
            }
            instances += 1;
        }
    }
    assert_eq!(instances, 3019);

    println!(
        "PASS c6: centroid/majority equivalence (all tallies n<=6), closure idempotence, \
         asymmetry+transitivity, layering, faithfulness, unanimity, compare symmetry and \
         reversal swap — 1000 random cases each plus 3019 exhaustive small instances"
    );
}

#[test]
fn c7_corrupting_any_embedded_ranking_fails_reproduce() {
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data");
    let original = std::fs::read_to_string(src.join("rankings.tsv")).unwrap();
    let data_rows: Vec<usize> = original
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.starts_with('#') && !l.starts_with("topic\t"))
        .map(|(i, _)| i)
        .collect();
    assert_eq!(data_rows.len(), 20);

    for &target in &data_rows {
        let dir = tempfile::tempdir().unwrap();
        for entry in std::fs::read_dir(&src).unwrap() {
            let entry = entry.unwrap();
            std::fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
        }
        // Reverse the rank order of exactly one subject's ranking. The
        // membership is untouched, so the corruption can only be caught by
        // recomputation, not by input validation.
        let mut corrupted_row = String::new();
        let mutated: Vec<String> = original
            .lines()
            .enumerate()
            .map(|(i, line)| {
                if i != target {
                    return line.to_string();
                }
                let cols: Vec<&str> = line.split('\t').collect();
                let reversed: Vec<&str> = cols[3].split('>').rev().collect();
                corrupted_row = format!("{} subject {}", cols[0], cols[1]);
                format!(
                    "{}\t{}\t{}\t{}",
                    cols[0],
                    cols[1],
                    cols[2],
                    reversed.join(">")
                )
            })
            .collect();
        std::fs::write(dir.path().join("rankings.tsv"), mutated.join("\n") + "\n").unwrap();

        let output = Command::new(env!("CARGO_BIN_EXE_goldrank"))
            .arg("reproduce")
            .arg("--data")
            .arg(dir.path())
            .output()
            .unwrap();
        assert_eq!(
            output.status.code(),
            Some(1),
            "reversing {corrupted_row} must make reproduce exit 1"
        );
        let text = String::from_utf8(output.stdout).unwrap();
        let failed: Vec<&str> = text
            .lines()
            .filter_map(|l| l.strip_prefix("FAIL "))
            .collect();
        assert!(
            !failed.is_empty(),
            "no failed check named after reversing {corrupted_row}"
        );
        assert!(
            failed.iter().all(|name| !name.trim().is_empty()),
            "unnamed FAIL line after reversing {corrupted_row}"
        );
    }
    println!(
        "PASS c7: each of the 20 single-ranking corruptions makes reproduce exit 1 \
         and name at least one failed check"
    );
}
