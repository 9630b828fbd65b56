//! Gold-standard construction and agreement analysis for partial expert
//! rankings.
//!
//! Several experts each rank *some* members of a shared universe, ties
//! allowed. This crate merges those rankings into a consensus — the
//! "gold standard" — and measures how far any two rankings differ:
//!
//! 1. every unordered pair of universe members is tallied across the
//!    rankings ([`pairwise::tally_pair`]) and resolved to a consensus
//!    direction by the centroid rule ([`pairwise::centroid_relation`]);
//! 2. the resulting directed relation is closed transitively, stripped of
//!    the cycles the closure exposes, and layered into ranks
//!    ([`aggregate::aggregate`]);
//! 3. any two rankings over the same universe can then be compared pair
//!    by pair into agree / disagree / unspecified counts
//!    ([`agreement::compare`]).
//!
//! The survey data this was built around ships inside the crate
//! ([`dataset::load_dataset`]) together with the published tables its
//! pipeline is expected to reproduce.
//!
//! With the default `parallel` feature the pair sweep fans out over a
//! rayon thread pool; disable it for a fully sequential build. Both lanes
//! produce identical results, and the `*_seq` variants stay available
//! either way for comparison.
//!
//! ```
//! use goldrank::{aggregate, compare, format_ranking, parse_ranking, parse_universe};
//!
//! # fn main() -> Result<(), goldrank::Error> {
//! let u = parse_universe("a, b, c, d")?;
//! let rankings = vec![
//!     parse_ranking("[a]>[b, c]>[d]")?,
//!     parse_ranking("[b]>[a, c]")?,
//!     parse_ranking("[a]>[c]>[b]")?,
//! ];
//!
//! let consensus = aggregate(&rankings, &u)?;
//! assert_eq!(format_ranking(&consensus), "[a]>[b, c]>[d]");
//!
//! let report = compare(&rankings[1], &consensus, &u)?;
//! assert_eq!((report.agree, report.disagree, report.unspecified), (0, 1, 5));
//! # Ok(())
//! # }
//! ```

pub mod aggregate;
pub mod agreement;
pub mod dataset;
pub mod error;
pub mod pairwise;
pub mod ranking;

pub use aggregate::{aggregate, aggregate_seq, SupRelation};
pub use agreement::{
    compare, compare_gs, format_average, likert_average, percent, ranking_stats, AgreementReport,
    LikertCounts, RankingStats,
};
pub use dataset::{load_dataset, load_dataset_from, Dataset, GsScope, TaskOrder, TopicName};
pub use error::Error;
pub use pairwise::{
    centroid_pairs, centroid_relation, pair_tallies, tally_pair, CentroidVector, PairKey,
    PairRelation, PairTally,
};
pub use ranking::{
    format_ranking, parse_ranking, parse_universe, validate_against_universe, CoverageReport,
    Participant, Ranking, Universe,
};
