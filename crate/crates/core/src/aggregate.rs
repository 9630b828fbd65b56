//! From centroid pair relations to a consensus ranking.
//!
//! The pipeline restores transitivity in three steps: close the "strictly
//! above" relation under transitivity, delete both directions of every
//! mutual pair (collapsing Condorcet-style loops into no-order), then peel
//! off layers of undominated elements until everyone is ranked.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Error;
use crate::pairwise::{centroid_pairs, centroid_pairs_seq, PairKey, PairRelation};
use crate::ranking::{Participant, Ranking, Universe};

type DirectedPair = (Participant, Participant);

/// A set of directed "strictly more expert than" pairs over an element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupRelation {
    elements: BTreeSet<Participant>,
    pairs: BTreeSet<DirectedPair>,
}

impl SupRelation {
    /// Builds a relation, rejecting self-pairs and endpoints outside the
    /// element set.
    pub fn new(
        elements: impl IntoIterator<Item = Participant>,
        pairs: impl IntoIterator<Item = DirectedPair>,
    ) -> Result<Self, Error> {
        let elements: BTreeSet<Participant> = elements.into_iter().collect();
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::SelfPair {
                    token: a.token().to_string(),
                });
            }
            for end in [&a, &b] {
                if !elements.contains(end) {
                    return Err(Error::UnknownElement {
                        token: end.token().to_string(),
                    });
                }
            }
            set.insert((a, b));
        }
        Ok(SupRelation {
            elements,
            pairs: set,
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = &Participant> {
        self.elements.iter()
    }

    pub fn pairs(&self) -> impl Iterator<Item = &DirectedPair> {
        self.pairs.iter()
    }

    pub fn contains(&self, a: &Participant, b: &Participant) -> bool {
        self.pairs.contains(&(a.clone(), b.clone()))
    }

    /// Number of directed pairs.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Smallest transitive superset (full fixpoint, via Warshall on a dense
    /// adjacency matrix). Idempotent; never introduces self-pairs.
    pub fn transitive_closure(&self) -> SupRelation {
        let index: BTreeMap<&Participant, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let by_index: Vec<&Participant> = self.elements.iter().collect();
        let n = by_index.len();

        let mut reach = vec![false; n * n];
        for (a, b) in &self.pairs {
            reach[index[a] * n + index[b]] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i * n + k] {
                    for j in 0..n {
                        if reach[k * n + j] && i != j {
                            reach[i * n + j] = true;
                        }
                    }
                }
            }
        }

        let mut pairs = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if reach[i * n + j] {
                    pairs.insert((by_index[i].clone(), by_index[j].clone()));
                }
            }
        }
        SupRelation {
            elements: self.elements.clone(),
            pairs,
        }
    }

    /// Deletes both directions of every mutual pair. On a transitive input
    /// the result is asymmetric, transitive, and acyclic.
    pub fn remove_cycles(&self) -> SupRelation {
        let pairs = self
            .pairs
            .iter()
            .filter(|(a, b)| !self.pairs.contains(&(b.clone(), a.clone())))
            .cloned()
            .collect();
        SupRelation {
            elements: self.elements.clone(),
            pairs,
        }
    }

    /// Kahn-style layering: each rank is the set of not-yet-ranked elements
    /// with no remaining incoming pair; ranking an element discards its
    /// outgoing pairs. Elements in no pair at all land in rank 0.
    ///
    /// Requires an acyclic relation; a leftover cycle is reported as an
    /// error rather than looping forever.
    pub fn layered_ranking(&self) -> Result<Ranking, Error> {
        if self.elements.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut remaining = self.elements.clone();
        let mut pairs = self.pairs.clone();
        let mut ranks = Vec::new();
        while !remaining.is_empty() {
            let dominated: BTreeSet<&Participant> = pairs.iter().map(|(_, b)| b).collect();
            let top: BTreeSet<Participant> = remaining
                .iter()
                .filter(|e| !dominated.contains(*e))
                .cloned()
                .collect();
            if top.is_empty() {
                return Err(Error::CycleDetected {
                    remaining: remaining.len(),
                });
            }
            pairs.retain(|(a, _)| !top.contains(a));
            for e in &top {
                remaining.remove(e);
            }
            ranks.push(top);
        }
        Ranking::from_ranks(ranks)
    }
}

/// Reads a centroid map into the directed relation: Superior entries become
/// (a,b), Inferior become (b,a), NoOrder contributes nothing.
pub fn pairs_to_sup(
    centroid: &BTreeMap<PairKey, PairRelation>,
    u: &Universe,
) -> Result<SupRelation, Error> {
    let pairs = centroid.iter().filter_map(|(k, rel)| match rel {
        PairRelation::Superior => Some((k.a().clone(), k.b().clone())),
        PairRelation::Inferior => Some((k.b().clone(), k.a().clone())),
        PairRelation::NoOrder => None,
    });
    SupRelation::new(u.members().cloned(), pairs)
}

/// The whole pipeline: centroid pairs, then closure, cycle removal, and
/// layering. The result always ranks every member of the universe.
pub fn aggregate(rankings: &[Ranking], u: &Universe) -> Result<Ranking, Error> {
    let centroid = centroid_pairs(rankings, u)?;
    pairs_to_sup(&centroid, u)?
        .transitive_closure()
        .remove_cycles()
        .layered_ranking()
}

/// [`aggregate`] on the always-sequential pair sweep, for benchmarking the
/// two lanes against each other.
pub fn aggregate_seq(rankings: &[Ranking], u: &Universe) -> Result<Ranking, Error> {
    let centroid = centroid_pairs_seq(rankings, u)?;
    pairs_to_sup(&centroid, u)?
        .transitive_closure()
        .remove_cycles()
        .layered_ranking()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranking::{format_ranking, parse_ranking, parse_universe};

    fn p(token: &str) -> Participant {
        Participant::new(token).unwrap()
    }

    fn sup(elements: &str, pairs: &[(&str, &str)]) -> SupRelation {
        SupRelation::new(
            parse_universe(elements).unwrap().members().cloned(),
            pairs.iter().map(|(a, b)| (p(a), p(b))),
        )
        .unwrap()
    }

    #[test]
    fn closure_adds_implied_pairs() {
        let closed = sup("a b c", &[("a", "b"), ("b", "c")]).transitive_closure();
        assert_eq!(closed.len(), 3);
        assert!(closed.contains(&p("a"), &p("c")));
    }

    #[test]
    fn closure_of_a_path_adds_all_descendants() {
        let closed = sup("d e x f", &[("d", "e"), ("e", "x"), ("x", "f")]).transitive_closure();
        for (a, b) in [("d", "x"), ("d", "f"), ("e", "f")] {
            assert!(closed.contains(&p(a), &p(b)), "missing ({a},{b})");
        }
        assert_eq!(closed.len(), 6);
    }

    #[test]
    fn closure_of_a_cycle_is_complete() {
        let closed = sup("a b c", &[("a", "b"), ("b", "c"), ("c", "a")]).transitive_closure();
        assert_eq!(closed.len(), 6); // every ordered pair, no self-pairs
        for a in ["a", "b", "c"] {
            assert!(!closed.contains(&p(a), &p(a)));
        }
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        let s = sup("a b c d", &[("a", "b"), ("b", "c"), ("d", "a")]);
        let once = s.transitive_closure();
        assert_eq!(once, once.transitive_closure());
        for pair in s.pairs() {
            assert!(once.contains(&pair.0, &pair.1));
        }
    }

    #[test]
    fn remove_cycles_deletes_both_directions() {
        let complete = sup("a b c", &[("a", "b"), ("b", "c"), ("c", "a")]).transitive_closure();
        assert!(complete.remove_cycles().is_empty());

        let asym = sup("a b c", &[("a", "b"), ("a", "c")]);
        assert_eq!(asym.remove_cycles(), asym);

        let mixed = sup("a b c", &[("a", "b"), ("b", "a"), ("a", "c")]);
        let out = mixed.remove_cycles();
        assert_eq!(out.len(), 1);
        assert!(out.contains(&p("a"), &p("c")));
    }

    #[test]
    fn layering_merges_two_chains() {
        let closed = sup(
            "a b c d e f g",
            &[("a", "b"), ("b", "c"), ("d", "e"), ("e", "f"), ("f", "g")],
        )
        .transitive_closure();
        let r = closed.layered_ranking().unwrap();
        assert_eq!(format_ranking(&r), "[a, d]>[b, e]>[c, f]>[g]");
    }

    #[test]
    fn layering_merges_chains_sharing_an_element() {
        let closed = sup(
            "a b c d e f x",
            &[
                ("a", "x"),
                ("x", "b"),
                ("b", "c"),
                ("d", "e"),
                ("e", "x"),
                ("x", "f"),
            ],
        )
        .transitive_closure();
        let r = closed.layered_ranking().unwrap();
        assert_eq!(format_ranking(&r), "[a, d]>[e]>[x]>[b, f]>[c]");
    }

    #[test]
    fn empty_relation_yields_a_single_rank() {
        let r = sup("a b c", &[]).layered_ranking().unwrap();
        assert_eq!(format_ranking(&r), "[a, b, c]");
    }

    #[test]
    fn isolated_elements_land_in_rank_zero() {
        let r = sup("a b z", &[("a", "b")]).layered_ranking().unwrap();
        assert_eq!(format_ranking(&r), "[a, z]>[b]");
    }

    #[test]
    fn layering_respects_every_pair() {
        let s = sup(
            "a b c d e",
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("e", "d")],
        );
        let r = s
            .transitive_closure()
            .remove_cycles()
            .layered_ranking()
            .unwrap();
        for (a, b) in s.pairs() {
            assert!(r.rank_of(a).unwrap() < r.rank_of(b).unwrap());
        }
    }

    #[test]
    fn unremoved_cycle_is_detected() {
        let s = sup("a b", &[("a", "b"), ("b", "a")]);
        assert!(matches!(
            s.layered_ranking(),
            Err(Error::CycleDetected { remaining: 2 })
        ));
    }

    #[test]
    fn relation_construction_validates() {
        assert!(matches!(
            SupRelation::new([p("a")], [(p("a"), p("a"))]),
            Err(Error::SelfPair { .. })
        ));
        assert!(matches!(
            SupRelation::new([p("a")], [(p("a"), p("q"))]),
            Err(Error::UnknownElement { token }) if token == "q"
        ));
    }

    #[test]
    fn pairs_to_sup_orients_entries() {
        let u = parse_universe("a b c").unwrap();
        let rankings: Vec<Ranking> = ["[a]>[b]>[c]", "[c]>[a]>[b]", "[b]>[c]>[a]"]
            .iter()
            .map(|t| parse_ranking(t).unwrap())
            .collect();
        let centroid = centroid_pairs(&rankings, &u).unwrap();
        let s = pairs_to_sup(&centroid, &u).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(&p("a"), &p("b")));
        assert!(s.contains(&p("b"), &p("c")));
        assert!(s.contains(&p("c"), &p("a")));
    }

    #[test]
    fn loop_input_aggregates_to_a_single_rank() {
        let u = parse_universe("a b c").unwrap();
        let rankings: Vec<Ranking> = ["[a]>[b]>[c]", "[c]>[a]>[b]", "[b]>[c]>[a]"]
            .iter()
            .map(|t| parse_ranking(t).unwrap())
            .collect();
        let r = aggregate(&rankings, &u).unwrap();
        assert_eq!(format_ranking(&r), "[a, b, c]");
    }

    #[test]
    fn single_ranking_covering_the_universe_is_returned_unchanged() {
        let u = parse_universe("a b c d e").unwrap();
        let r = parse_ranking("[b]>[a, d]>[c]>[e]").unwrap();
        assert_eq!(aggregate(std::slice::from_ref(&r), &u).unwrap(), r);
    }

    #[test]
    fn unanimous_total_orders_are_returned_unchanged() {
        let u = parse_universe("a b c d").unwrap();
        let r = parse_ranking("[c]>[a]>[d]>[b]").unwrap();
        let rankings = vec![r.clone(), r.clone(), r.clone()];
        assert_eq!(aggregate(&rankings, &u).unwrap(), r);
    }
}
