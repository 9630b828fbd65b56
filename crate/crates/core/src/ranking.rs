//! Partial rankings with ties: representation, parsing, formatting, validation.
//!
//! A ranking is an ordered sequence of rank-sets, index 0 = most expert.
//! Text form: ranks separated by `>`, each rank a bare token or `[tok, tok, ...]`,
//! e.g. `[8]>[6, 13]>[16]>[14]>[10]`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;

/// A ranked individual, identified by a token (decimal ID or abstract name).
///
/// Tokens never contain whitespace, `>`, `[`, `]`, or `,`.
/// The ordering is total: all-digit tokens come first, ordered numerically,
/// then remaining tokens lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Participant {
    token: String,
}

impl Participant {
    pub fn new(token: impl Into<String>) -> Result<Self, Error> {
        let token = token.into();
        if let Err(reason) = check_token(&token) {
            return Err(Error::InvalidToken {
                token,
                pos: 0,
                reason,
            });
        }
        Ok(Participant { token })
    }

    pub fn token(&self) -> &str {
        &self.token
    }
}

impl fmt::Display for Participant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token)
    }
}

impl Ord for Participant {
    fn cmp(&self, other: &Self) -> Ordering {
        match (numeric_value(&self.token), numeric_value(&other.token)) {
            (Some(a), Some(b)) => a.cmp(&b).then_with(|| self.token.cmp(&other.token)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.token.cmp(&other.token),
        }
    }
}

impl PartialOrd for Participant {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_token(token: &str) -> Result<(), &'static str> {
    if token.is_empty() {
        return Err("token is empty");
    }
    for ch in token.chars() {
        if ch.is_whitespace() {
            return Err("token contains whitespace");
        }
        if matches!(ch, '>' | '[' | ']' | ',') {
            return Err("token contains a reserved character");
        }
    }
    Ok(())
}

/// Numeric sort key: `Some(value)` iff the token is all ASCII digits and fits
/// in a u128 (longer digit strings fall back to lexicographic ordering).
fn numeric_value(token: &str) -> Option<u128> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    token.parse().ok()
}

/// The full participant set of a topic; the denominator of all pair statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    members: BTreeSet<Participant>,
}

impl Universe {
    /// Builds a universe from explicit members; duplicates are an error.
    pub fn new(members: impl IntoIterator<Item = Participant>) -> Result<Self, Error> {
        let mut set = BTreeSet::new();
        for p in members {
            let token = p.token().to_string();
            if !set.insert(p) {
                return Err(Error::DuplicateUniverseToken { token });
            }
        }
        if set.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        Ok(Universe { members: set })
    }

    /// The union of all participants appearing in the given rankings.
    pub fn from_rankings(rankings: &[Ranking]) -> Result<Self, Error> {
        if rankings.is_empty() {
            return Err(Error::NoRankings);
        }
        let members: BTreeSet<Participant> = rankings
            .iter()
            .flat_map(|r| r.participants().cloned())
            .collect();
        if members.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        Ok(Universe { members })
    }

    pub fn members(&self) -> impl Iterator<Item = &Participant> {
        self.members.iter()
    }

    pub fn contains(&self, p: &Participant) -> bool {
        self.members.contains(p)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Parses a universe file: tokens separated by commas, whitespace, or
/// newlines; `#` starts a comment line.
pub fn parse_universe(text: &str) -> Result<Universe, Error> {
    let mut members = Vec::new();
    let mut offset = 0;
    for line in text.split('\n') {
        let trimmed = line.trim_start();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            let mut start = None;
            // Sentinel delimiter flushes the final token of the line.
            for (i, ch) in line.char_indices().chain([(line.len(), ',')]) {
                if ch == ',' || ch.is_whitespace() {
                    if let Some(s) = start.take() {
                        let token = &line[s..i];
                        members.push(participant_at(token, offset + s)?);
                    }
                } else if start.is_none() {
                    start = Some(i);
                }
            }
        }
        offset += line.len() + 1;
    }
    Universe::new(members)
}

fn participant_at(token: &str, pos: usize) -> Result<Participant, Error> {
    match check_token(token) {
        Ok(()) => Ok(Participant {
            token: token.to_string(),
        }),
        Err(reason) => Err(Error::InvalidToken {
            token: token.to_string(),
            pos,
            reason,
        }),
    }
}

/// An ordered sequence of rank-sets; may tie participants (several per rank)
/// and may omit participants entirely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranking {
    ranks: Vec<BTreeSet<Participant>>,
}

impl Ranking {
    /// Builds a ranking from rank-sets, most expert first.
    pub fn from_ranks(ranks: Vec<BTreeSet<Participant>>) -> Result<Self, Error> {
        if ranks.is_empty() {
            return Err(Error::EmptyRanking);
        }
        let mut seen: BTreeSet<&Participant> = BTreeSet::new();
        for rank in &ranks {
            if rank.is_empty() {
                return Err(Error::EmptyRank { pos: 0 });
            }
            for p in rank {
                if !seen.insert(p) {
                    return Err(Error::DuplicateParticipant {
                        token: p.token().to_string(),
                    });
                }
            }
        }
        Ok(Ranking { ranks })
    }

    pub fn ranks(&self) -> &[BTreeSet<Participant>] {
        &self.ranks
    }

    /// 0-based rank of a participant; `None` if absent.
    pub fn rank_of(&self, p: &Participant) -> Option<usize> {
        self.ranks.iter().position(|rank| rank.contains(p))
    }

    pub fn contains(&self, p: &Participant) -> bool {
        self.rank_of(p).is_some()
    }

    pub fn participants(&self) -> impl Iterator<Item = &Participant> {
        self.ranks.iter().flatten()
    }

    /// Number of distinct participants ranked.
    pub fn participant_count(&self) -> usize {
        self.ranks.iter().map(BTreeSet::len).sum()
    }

    /// The same rank-sets in reverse order (least expert first).
    pub fn reversed(&self) -> Ranking {
        Ranking {
            ranks: self.ranks.iter().rev().cloned().collect(),
        }
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ranking(self))
    }
}

// ── parsing ──────────────────────────────────────────────────────────

/// Parses one line of ranking text.
///
/// Errors name the byte position of the offending rank or token.
/// `#`-prefixed lines are comments and are rejected as ranking input.
pub fn parse_ranking(text: &str) -> Result<Ranking, Error> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::EmptyRanking);
    }
    if trimmed.starts_with('#') {
        return Err(Error::CommentAsRanking);
    }

    let mut ranks = Vec::new();
    let mut seen: BTreeSet<Participant> = BTreeSet::new();
    let mut pos = 0;
    for segment in text.split('>') {
        ranks.push(parse_rank(segment, pos, &mut seen)?);
        pos += segment.len() + 1;
    }
    Ok(Ranking { ranks })
}

/// Parses one rank: either `[tok, tok, ...]` or a bare token.
fn parse_rank(
    segment: &str,
    base: usize,
    seen: &mut BTreeSet<Participant>,
) -> Result<BTreeSet<Participant>, Error> {
    let inner = segment.trim();
    let pos = base + (segment.len() - segment.trim_start().len());
    if inner.is_empty() {
        return Err(Error::EmptyRank { pos });
    }

    let mut rank = BTreeSet::new();
    if let Some(rest) = inner.strip_prefix('[') {
        let Some(body) = rest.strip_suffix(']') else {
            return Err(Error::UnclosedBracket { pos });
        };
        if body.trim().is_empty() {
            return Err(Error::EmptyRank { pos });
        }
        let mut tok_pos = pos + 1;
        for raw in body.split(',') {
            let token = raw.trim();
            let at = tok_pos + (raw.len() - raw.trim_start().len());
            if token.is_empty() {
                return Err(Error::InvalidToken {
                    token: String::new(),
                    pos: at,
                    reason: "token is empty",
                });
            }
            insert_token(token, at, seen, &mut rank)?;
            tok_pos += raw.len() + 1;
        }
    } else {
        insert_token(inner, pos, seen, &mut rank)?;
    }
    Ok(rank)
}

fn insert_token(
    token: &str,
    pos: usize,
    seen: &mut BTreeSet<Participant>,
    rank: &mut BTreeSet<Participant>,
) -> Result<(), Error> {
    let p = participant_at(token, pos)?;
    if !seen.insert(p.clone()) {
        return Err(Error::DuplicateParticipant {
            token: token.to_string(),
        });
    }
    rank.insert(p);
    Ok(())
}

// ── formatting ───────────────────────────────────────────────────────

/// Canonical form: ranks joined by `>`, every rank bracketed, tokens joined
/// by `, ` and sorted — numerically when the whole rank is numeric, else
/// lexicographically. `parse_ranking(format_ranking(r)) == r`.
pub fn format_ranking(r: &Ranking) -> String {
    let parts: Vec<String> = r.ranks.iter().map(format_rank).collect();
    parts.join(">")
}

fn format_rank(rank: &BTreeSet<Participant>) -> String {
    let all_numeric = rank.iter().all(|p| numeric_value(p.token()).is_some());
    // BTreeSet order is already numeric-first; an all-numeric rank is done.
    let mut tokens: Vec<&str> = rank.iter().map(Participant::token).collect();
    if !all_numeric {
        tokens.sort_unstable();
    }
    format!("[{}]", tokens.join(", "))
}

// ── universe validation ──────────────────────────────────────────────

/// Which participants of a universe a ranking covers.
///
/// `extraneous` members make the ranking invalid for that universe;
/// `missing` members are legal (rankings may be incomplete).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub missing: BTreeSet<Participant>,
    pub extraneous: BTreeSet<Participant>,
}

impl CoverageReport {
    pub fn is_valid(&self) -> bool {
        self.extraneous.is_empty()
    }
}

pub fn validate_against_universe(r: &Ranking, u: &Universe) -> CoverageReport {
    let ranked: BTreeSet<&Participant> = r.participants().collect();
    CoverageReport {
        missing: u
            .members()
            .filter(|p| !ranked.contains(p))
            .cloned()
            .collect(),
        extraneous: r
            .participants()
            .filter(|p| !u.contains(p))
            .cloned()
            .collect(),
    }
}

/// Errors with the first out-of-universe participant, if any.
pub(crate) fn ensure_in_universe(r: &Ranking, u: &Universe) -> Result<(), Error> {
    match r.participants().find(|p| !u.contains(p)) {
        Some(p) => Err(Error::OutsideUniverse {
            token: p.token().to_string(),
        }),
        None => Ok(()),
    }
}
