//! Ordered-pair decomposition of rankings and the per-pair centroid relation.
//!
//! Each ranking casts one of three votes per unordered pair: superior (a
//! above b), inferior (b above a), or no order (tied or absent). The votes
//! map to the 2D vectors (1,0), (0,1), (0,0); their average is the pair's
//! centroid, and the resolved relation is whichever of (1,0)/(0,1) lies
//! closer, with perfect balance meaning no order.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Error;
use crate::ranking::{ensure_in_universe, Participant, Ranking, Universe};

/// How one participant of a pair stands relative to the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairRelation {
    /// a > b: the first is strictly more expert.
    Superior,
    /// a < b: the second is strictly more expert.
    Inferior,
    /// Tied, or at least one side unranked.
    NoOrder,
}

impl PairRelation {
    /// The same relation seen from (b,a); NoOrder is self-dual.
    pub fn swapped(self) -> Self {
        match self {
            PairRelation::Superior => PairRelation::Inferior,
            PairRelation::Inferior => PairRelation::Superior,
            PairRelation::NoOrder => PairRelation::NoOrder,
        }
    }

    /// Display glyph: `>`, `<`, or `=`.
    pub fn glyph(self) -> char {
        match self {
            PairRelation::Superior => '>',
            PairRelation::Inferior => '<',
            PairRelation::NoOrder => '=',
        }
    }
}

impl fmt::Display for PairRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.glyph())
    }
}

/// An unordered participant pair, normalized so `a < b` in canonical token
/// order — each pair has exactly one key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairKey {
    a: Participant,
    b: Participant,
}

impl PairKey {
    pub fn new(x: Participant, y: Participant) -> Result<Self, Error> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Ok(PairKey { a: x, b: y }),
            std::cmp::Ordering::Greater => Ok(PairKey { a: y, b: x }),
            std::cmp::Ordering::Equal => Err(Error::IdenticalPair {
                token: x.token().to_string(),
            }),
        }
    }

    pub fn a(&self) -> &Participant {
        &self.a
    }

    pub fn b(&self) -> &Participant {
        &self.b
    }
}

/// Vote counts for one pair across a set of rankings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairTally {
    /// Rankings putting a strictly above b.
    pub superior: usize,
    /// Rankings putting a strictly below b.
    pub inferior: usize,
    /// Rankings giving no order (tie or absence).
    pub unordered: usize,
}

impl PairTally {
    pub fn new(superior: usize, inferior: usize, unordered: usize) -> Self {
        PairTally {
            superior,
            inferior,
            unordered,
        }
    }

    /// Total number of rankings tallied.
    pub fn total(&self) -> usize {
        self.superior + self.inferior + self.unordered
    }
}

/// The average vote vector of a pair, in exact rational arithmetic:
/// x = superior/total, y = inferior/total, so x + y ≤ 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CentroidVector {
    x: Ratio<u64>,
    y: Ratio<u64>,
}

impl CentroidVector {
    /// `None` when the tally is empty (no rankings, no centroid).
    pub fn from_tally(t: &PairTally) -> Option<Self> {
        let n = t.total() as u64;
        if n == 0 {
            return None;
        }
        Some(CentroidVector {
            x: Ratio::new(t.superior as u64, n),
            y: Ratio::new(t.inferior as u64, n),
        })
    }

    pub fn x(&self) -> Ratio<u64> {
        self.x
    }

    pub fn y(&self) -> Ratio<u64> {
        self.y
    }

    /// Squared distance to the superior corner (1,0).
    fn dist2_superior(&self) -> Ratio<u64> {
        let dx = Ratio::from_integer(1) - self.x;
        dx * dx + self.y * self.y
    }

    /// Squared distance to the inferior corner (0,1).
    fn dist2_inferior(&self) -> Ratio<u64> {
        let dy = Ratio::from_integer(1) - self.y;
        self.x * self.x + dy * dy
    }

    /// The corner this vector is strictly closer to; equidistant
    /// ("perfect balance", x = y) means no order.
    pub fn nearest_relation(&self) -> PairRelation {
        match self.dist2_superior().cmp(&self.dist2_inferior()) {
            std::cmp::Ordering::Less => PairRelation::Superior,
            std::cmp::Ordering::Greater => PairRelation::Inferior,
            std::cmp::Ordering::Equal => PairRelation::NoOrder,
        }
    }
}

// ── per-ranking and per-pair operations ──────────────────────────────

/// The relation a single ranking asserts for (a,b).
pub fn relation_in_ranking(
    r: &Ranking,
    a: &Participant,
    b: &Participant,
) -> Result<PairRelation, Error> {
    if a == b {
        return Err(Error::IdenticalPair {
            token: a.token().to_string(),
        });
    }
    Ok(relation_unchecked(r, a, b))
}

pub(crate) fn relation_unchecked(r: &Ranking, a: &Participant, b: &Participant) -> PairRelation {
    match (r.rank_of(a), r.rank_of(b)) {
        (Some(ra), Some(rb)) if ra < rb => PairRelation::Superior,
        (Some(ra), Some(rb)) if ra > rb => PairRelation::Inferior,
        _ => PairRelation::NoOrder,
    }
}

/// Counts the three relation outcomes for (a,b) across all rankings.
pub fn tally_pair(
    rankings: &[Ranking],
    a: &Participant,
    b: &Participant,
) -> Result<PairTally, Error> {
    if rankings.is_empty() {
        return Err(Error::NoRankings);
    }
    if a == b {
        return Err(Error::IdenticalPair {
            token: a.token().to_string(),
        });
    }
    Ok(tally_unchecked(rankings, a, b))
}

fn tally_unchecked(rankings: &[Ranking], a: &Participant, b: &Participant) -> PairTally {
    let mut t = PairTally::default();
    for r in rankings {
        match relation_unchecked(r, a, b) {
            PairRelation::Superior => t.superior += 1,
            PairRelation::Inferior => t.inferior += 1,
            PairRelation::NoOrder => t.unordered += 1,
        }
    }
    t
}

/// Resolves a tally to the relation whose corner the centroid is closest
/// to. Equivalent to comparing the superior and inferior counts; an empty
/// tally has no centroid and resolves to no order.
pub fn centroid_relation(t: &PairTally) -> PairRelation {
    match CentroidVector::from_tally(t) {
        Some(v) => v.nearest_relation(),
        None => PairRelation::NoOrder,
    }
}

// ── whole-universe tallies ───────────────────────────────────────────

/// All C(|u|,2) pair keys in canonical order.
pub fn all_pairs(u: &Universe) -> Vec<PairKey> {
    let members: Vec<&Participant> = u.members().collect();
    let mut keys = Vec::with_capacity(members.len() * members.len().saturating_sub(1) / 2);
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            // Universe iteration is already sorted, so a < b holds.
            keys.push(PairKey {
                a: (*a).clone(),
                b: (*b).clone(),
            });
        }
    }
    keys
}

fn validate_inputs(rankings: &[Ranking], u: &Universe) -> Result<(), Error> {
    if rankings.is_empty() {
        return Err(Error::NoRankings);
    }
    for r in rankings {
        ensure_in_universe(r, u)?;
    }
    Ok(())
}

/// Tallies every pair of the universe. With the `parallel` feature the
/// pairs are tallied concurrently; the output order is canonical either way.
pub fn pair_tallies(
    rankings: &[Ranking],
    u: &Universe,
) -> Result<Vec<(PairKey, PairTally)>, Error> {
    validate_inputs(rankings, u)?;
    let keys = all_pairs(u);

    #[cfg(feature = "parallel")]
    let tallies = keys
        .into_par_iter()
        .map(|k| {
            let t = tally_unchecked(rankings, &k.a, &k.b);
            (k, t)
        })
        .collect();

    #[cfg(not(feature = "parallel"))]
    let tallies = keys
        .into_iter()
        .map(|k| {
            let t = tally_unchecked(rankings, &k.a, &k.b);
            (k, t)
        })
        .collect();

    Ok(tallies)
}

/// Sequential reference lane for [`pair_tallies`]; same output, no rayon.
pub fn pair_tallies_seq(
    rankings: &[Ranking],
    u: &Universe,
) -> Result<Vec<(PairKey, PairTally)>, Error> {
    validate_inputs(rankings, u)?;
    Ok(all_pairs(u)
        .into_iter()
        .map(|k| {
            let t = tally_unchecked(rankings, &k.a, &k.b);
            (k, t)
        })
        .collect())
}

/// The centroid relation of every pair of the universe.
pub fn centroid_pairs(
    rankings: &[Ranking],
    u: &Universe,
) -> Result<BTreeMap<PairKey, PairRelation>, Error> {
    Ok(pair_tallies(rankings, u)?
        .into_iter()
        .map(|(k, t)| (k, centroid_relation(&t)))
        .collect())
}

/// Sequential reference lane for [`centroid_pairs`].
pub fn centroid_pairs_seq(
    rankings: &[Ranking],
    u: &Universe,
) -> Result<BTreeMap<PairKey, PairRelation>, Error> {
    Ok(pair_tallies_seq(rankings, u)?
        .into_iter()
        .map(|(k, t)| (k, centroid_relation(&t)))
        .collect())
}
