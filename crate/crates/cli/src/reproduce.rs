//! Recomputes every published result from the dataset's raw rankings and
//! feedback counts, and diffs each against its stored expectation.

use std::collections::BTreeMap;

use goldrank::dataset::{AgreementRowKey, Dataset, GsScope, TopicName};
use goldrank::{
    aggregate, compare, format_average, format_ranking, likert_average, ranking_stats, Error,
    Ranking,
};

use crate::TopicFilter;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Gs,
    Agreement,
    GsPair,
    Stats,
    Feedback,
}

impl Category {
    const ALL: [Category; 5] = [
        Category::Gs,
        Category::Agreement,
        Category::GsPair,
        Category::Stats,
        Category::Feedback,
    ];

    fn label(self) -> &'static str {
        match self {
            Category::Gs => "GS",
            Category::Agreement => "agreement",
            Category::GsPair => "GS-pair",
            Category::Stats => "stats",
            Category::Feedback => "feedback",
        }
    }
}

/// One recomputed value next to its published expectation.
#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub category: Category,
    pub name: String,
    pub computed: String,
    pub expected: String,
}

impl CheckRecord {
    pub fn ok(&self) -> bool {
        self.computed == self.expected
    }
}

/// Every check of one `reproduce` run, in report order.
#[derive(Clone, Debug)]
pub struct ReproduceReport {
    pub checks: Vec<CheckRecord>,
}

impl ReproduceReport {
    pub fn all_match(&self) -> bool {
        self.checks.iter().all(CheckRecord::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.ok())
    }

    /// Per-check lines (`ok`/`FAIL`, with the diff on failures) and a
    /// category summary.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            if check.ok() {
                out.push_str(&format!("ok   {}\n", check.name));
            } else {
                out.push_str(&format!(
                    "FAIL {}\n     computed: {}\n     expected: {}\n",
                    check.name, check.computed, check.expected
                ));
            }
        }
        let mut segments = Vec::new();
        for category in Category::ALL {
            let total = self
                .checks
                .iter()
                .filter(|c| c.category == category)
                .count();
            if total == 0 {
                continue;
            }
            let matched = self
                .checks
                .iter()
                .filter(|c| c.category == category && c.ok())
                .count();
            segments.push(format!("{matched}/{total} {}", category.label()));
        }
        out.push_str(&segments.join(", "));
        out.push('\n');
        out
    }
}

fn agreement_value(counts: (usize, usize, usize), pcts: (u32, u32, u32)) -> String {
    format!(
        "{}/{}/{} = {}%/{}%/{}%",
        counts.0, counts.1, counts.2, pcts.0, pcts.1, pcts.2
    )
}

/// Recomputes the gold standards, agreement rows, ranking statistics, and
/// (without a topic filter) feedback averages for the supplied dataset.
///
/// Agreement rows are compared against *recomputed* gold standards, so a
/// corrupted ranking input surfaces both as a failed gold-standard check
/// and as failed agreement rows.
pub fn run_checks(ds: &Dataset, filter: TopicFilter) -> Result<ReproduceReport, Error> {
    let mut checks = Vec::new();
    let mut computed_gs: BTreeMap<(TopicName, GsScope), Ranking> = BTreeMap::new();

    for &topic in filter.topics() {
        let u = &ds.topic(topic).universe;
        for scope in GsScope::ALL {
            let inputs = ds.rankings_for_scope(topic, scope);
            let gs = aggregate(&inputs, u)?;
            checks.push(CheckRecord {
                category: Category::Gs,
                name: format!("GS {topic}/{scope}"),
                computed: format_ranking(&gs),
                expected: format_ranking(ds.expected_gs(topic, scope)),
            });
            computed_gs.insert((topic, scope), gs);
        }
    }

    for row in ds.expected_agreement() {
        if !filter.topics().contains(&row.topic) {
            continue;
        }
        let u = &ds.topic(row.topic).universe;
        let left = &computed_gs[&(row.topic, row.scope)];
        let (category, name, report) = match row.key {
            AgreementRowKey::Subject(id) => {
                let subject = &ds
                    .subject_ranking(row.topic, id)
                    .expect("validated at load time")
                    .ranking;
                (
                    Category::Agreement,
                    format!("agreement {}/{} subject {}", row.topic, row.scope, id),
                    compare(subject, left, u)?,
                )
            }
            AgreementRowKey::Gs(right) => (
                Category::GsPair,
                format!("GS-pair {} {} vs {}", row.topic, row.scope, right),
                compare(left, &computed_gs[&(row.topic, right)], u)?,
            ),
        };
        checks.push(CheckRecord {
            category,
            name,
            computed: agreement_value(report.counts(), report.pcts()),
            expected: agreement_value(
                (row.agree, row.disagree, row.unspecified),
                (row.pct_agree, row.pct_disagree, row.pct_unspecified),
            ),
        });
    }

    for row in ds.expected_stats() {
        if !filter.topics().contains(&row.topic) {
            continue;
        }
        let ranking = &ds
            .subject_ranking(row.topic, row.subject)
            .expect("validated at load time")
            .ranking;
        let stats = ranking_stats(ranking);
        checks.push(CheckRecord {
            category: Category::Stats,
            name: format!("stats {} subject {}", row.topic, row.subject),
            computed: format!(
                "{} {} {}",
                stats.participants_ranked,
                stats.ranks_used,
                stats.ranks_pct()
            ),
            expected: format!("{} {} {}", row.participants_ranked, row.ranks_used, row.pct),
        });
    }

    if filter.includes_feedback() {
        for row in ds.expected_feedback() {
            let feedback = ds
                .feedback()
                .iter()
                .find(|f| f.question == row.question)
                .expect("validated at load time");
            let avg = likert_average(&feedback.counts)?;
            checks.push(CheckRecord {
                category: Category::Feedback,
                name: format!("feedback \"{}\"", row.question),
                computed: format_average(avg),
                expected: row.average.clone(),
            });
        }
    }

    Ok(ReproduceReport { checks })
}
