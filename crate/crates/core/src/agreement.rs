//! Pairwise agreement between two rankings, ranking-shape statistics, and
//! Likert averaging.
//!
//! Two rankings are compared over every unordered pair of a universe: they
//! agree on a pair when both give the same strict order, disagree when both
//! give strict orders that conflict, and leave the pair unspecified when at
//! least one of them gives no order (a tie or an absence).

use num_rational::Ratio;

use crate::error::Error;
use crate::pairwise::{all_pairs, relation_unchecked, PairRelation};
use crate::ranking::{ensure_in_universe, Ranking, Universe};

/// Integer percentage, rounded to nearest with halves away from zero.
/// A zero total yields 0.
pub fn percent(count: usize, total: usize) -> u32 {
    if total == 0 {
        return 0;
    }
    ((200 * count + total) / (2 * total)) as u32
}

/// Agreement decomposition of two rankings over a universe; the three
/// counts always sum to C(|universe|,2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    pub agree: usize,
    pub disagree: usize,
    pub unspecified: usize,
}

impl AgreementReport {
    pub fn total(&self) -> usize {
        self.agree + self.disagree + self.unspecified
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.agree, self.disagree, self.unspecified)
    }

    pub fn pct_agree(&self) -> u32 {
        percent(self.agree, self.total())
    }

    pub fn pct_disagree(&self) -> u32 {
        percent(self.disagree, self.total())
    }

    pub fn pct_unspecified(&self) -> u32 {
        percent(self.unspecified, self.total())
    }

    pub fn pcts(&self) -> (u32, u32, u32) {
        (
            self.pct_agree(),
            self.pct_disagree(),
            self.pct_unspecified(),
        )
    }

    pub const CSV_HEADER: &'static str =
        "agree,disagree,unspecified,pct_agree,pct_disagree,pct_unspecified";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.agree,
            self.disagree,
            self.unspecified,
            self.pct_agree(),
            self.pct_disagree(),
            self.pct_unspecified()
        )
    }

    /// Aligned text table with counts and percentages.
    pub fn to_text(&self) -> String {
        let w = self.total().to_string().len();
        format!(
            "agree       {:>w$}  {:>3}%\n\
             disagree    {:>w$}  {:>3}%\n\
             unspecified {:>w$}  {:>3}%\n\
             total       {:>w$}\n",
            self.agree,
            self.pct_agree(),
            self.disagree,
            self.pct_disagree(),
            self.unspecified,
            self.pct_unspecified(),
            self.total(),
        )
    }
}

/// Compares two rankings pair by pair over the whole universe.
pub fn compare(r1: &Ranking, r2: &Ranking, u: &Universe) -> Result<AgreementReport, Error> {
    ensure_in_universe(r1, u)?;
    ensure_in_universe(r2, u)?;
    let mut report = AgreementReport {
        agree: 0,
        disagree: 0,
        unspecified: 0,
    };
    for key in all_pairs(u) {
        let x = relation_unchecked(r1, key.a(), key.b());
        let y = relation_unchecked(r2, key.a(), key.b());
        match (x, y) {
            (PairRelation::NoOrder, _) | (_, PairRelation::NoOrder) => report.unspecified += 1,
            _ if x == y => report.agree += 1,
            _ => report.disagree += 1,
        }
    }
    Ok(report)
}

/// Same computation as [`compare`], named for gold-standard-vs-gold-standard
/// reporting.
pub fn compare_gs(gs1: &Ranking, gs2: &Ranking, u: &Universe) -> Result<AgreementReport, Error> {
    compare(gs1, gs2, u)
}

/// Shape of a single ranking: how many participants it places and in how
/// many distinct ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankingStats {
    pub participants_ranked: usize,
    pub ranks_used: usize,
}

impl RankingStats {
    /// ranks_used as a rounded percentage of participants_ranked.
    pub fn ranks_pct(&self) -> u32 {
        percent(self.ranks_used, self.participants_ranked)
    }
}

pub fn ranking_stats(r: &Ranking) -> RankingStats {
    RankingStats {
        participants_ranked: r.participant_count(),
        ranks_used: r.ranks().len(),
    }
}

/// Answer counts for a 1–5 survey question.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LikertCounts {
    /// counts[i] = number of respondents answering i+1.
    pub counts: [u64; 5],
}

impl LikertCounts {
    pub fn new(counts: [u64; 5]) -> Self {
        LikertCounts { counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Exact weighted mean of Likert answers: (1·c1 + ... + 5·c5) / N.
pub fn likert_average(c: &LikertCounts) -> Result<Ratio<u64>, Error> {
    let n = c.total();
    if n == 0 {
        return Err(Error::EmptyLikert);
    }
    let weighted: u64 = c
        .counts
        .iter()
        .enumerate()
        .map(|(i, count)| (i as u64 + 1) * count)
        .sum();
    Ok(Ratio::new(weighted, n))
}

/// Renders a rational to one decimal place, halves rounded away from zero.
pub fn format_average(avg: Ratio<u64>) -> String {
    let tenths = (avg * Ratio::from_integer(10)).round().to_integer();
    format!("{}.{}", tenths / 10, tenths % 10)
}
