//! The embedded survey dataset and the published result tables it is
//! checked against.
//!
//! The data lives in nine tab-separated files under `data/`, compiled into
//! the binary with [`include_str!`]. [`load_dataset_from`] reads the same
//! nine files from a directory instead, so alternative data can be swapped
//! in without rebuilding.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::agreement::LikertCounts;
use crate::error::Error;
use crate::ranking::{parse_ranking, validate_against_universe, Participant, Ranking, Universe};

/// The two discussion topics subjects ranked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TopicName {
    Debian,
    Hibernate,
}

impl TopicName {
    pub const ALL: [TopicName; 2] = [TopicName::Debian, TopicName::Hibernate];

    pub fn as_str(&self) -> &'static str {
        match self {
            TopicName::Debian => "debian",
            TopicName::Hibernate => "hibernate",
        }
    }
}

impl fmt::Display for TopicName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TopicName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "debian" => Ok(TopicName::Debian),
            "hibernate" => Ok(TopicName::Hibernate),
            other => Err(format!("unknown topic `{other}`")),
        }
    }
}

/// Whether a ranking was produced in a subject's first or second lab task.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TaskOrder {
    First,
    Second,
}

impl TaskOrder {
    pub const ALL: [TaskOrder; 2] = [TaskOrder::First, TaskOrder::Second];

    pub fn as_str(&self) -> &'static str {
        match self {
            TaskOrder::First => "first",
            TaskOrder::Second => "second",
        }
    }
}

impl fmt::Display for TaskOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TaskOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first" => Ok(TaskOrder::First),
            "second" => Ok(TaskOrder::Second),
            other => Err(format!("unknown task order `{other}`")),
        }
    }
}

/// Which rankings feed a gold standard: one task's five, or all ten.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GsScope {
    First,
    Second,
    Both,
}

impl GsScope {
    pub const ALL: [GsScope; 3] = [GsScope::First, GsScope::Second, GsScope::Both];

    pub fn as_str(&self) -> &'static str {
        match self {
            GsScope::First => "first",
            GsScope::Second => "second",
            GsScope::Both => "both",
        }
    }

    /// The task orders whose rankings fall inside this scope.
    pub fn task_orders(&self) -> &'static [TaskOrder] {
        match self {
            GsScope::First => &[TaskOrder::First],
            GsScope::Second => &[TaskOrder::Second],
            GsScope::Both => &TaskOrder::ALL,
        }
    }
}

impl fmt::Display for GsScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GsScope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first" => Ok(GsScope::First),
            "second" => Ok(GsScope::Second),
            "both" => Ok(GsScope::Both),
            other => Err(format!("unknown gold-standard scope `{other}`")),
        }
    }
}

/// One discussion topic: the mailing-list threads behind it and the
/// universe of participants to rank.
#[derive(Clone, Debug)]
pub struct TopicData {
    pub name: TopicName,
    pub thread_ids: Vec<u32>,
    pub email_count: u32,
    pub universe: Universe,
}

/// A single subject's ranking of one topic.
#[derive(Clone, Debug)]
pub struct SubjectRanking {
    pub topic: TopicName,
    pub subject: u32,
    pub task_order: TaskOrder,
    pub ranking: Ranking,
}

/// A subject's self-reported 1–5 answers after ranking a topic.
#[derive(Clone, Copy, Debug)]
pub struct PerceptionRecord {
    pub topic: TopicName,
    pub subject: u32,
    pub task_order: TaskOrder,
    pub expertise: u8,
    pub confidence: u8,
    pub difficulty: u8,
}

/// Answer counts for one exit-survey question.
#[derive(Clone, Debug)]
pub struct FeedbackRow {
    pub question: String,
    pub counts: LikertCounts,
}

/// A published gold-standard ranking.
#[derive(Clone, Debug)]
pub struct ExpectedGs {
    pub topic: TopicName,
    pub scope: GsScope,
    pub ranking: Ranking,
}

/// What the right-hand side of a published agreement row is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AgreementRowKey {
    /// A subject's ranking, compared against the gold standard in `scope`.
    Subject(u32),
    /// Another gold standard; the row compares the `scope` gold standard
    /// against this one.
    Gs(GsScope),
}

impl fmt::Display for AgreementRowKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AgreementRowKey::Subject(id) => write!(f, "subject:{id}"),
            AgreementRowKey::Gs(scope) => write!(f, "gs:{scope}"),
        }
    }
}

/// A published agreement decomposition with its printed percentages.
#[derive(Clone, Copy, Debug)]
pub struct ExpectedAgreementRow {
    pub topic: TopicName,
    pub scope: GsScope,
    pub key: AgreementRowKey,
    pub agree: usize,
    pub disagree: usize,
    pub unspecified: usize,
    pub pct_agree: u32,
    pub pct_disagree: u32,
    pub pct_unspecified: u32,
}

/// Published shape statistics for one subject ranking.
#[derive(Clone, Copy, Debug)]
pub struct ExpectedStatsRow {
    pub topic: TopicName,
    pub subject: u32,
    pub participants_ranked: usize,
    pub ranks_used: usize,
    pub pct: u32,
}

/// Published one-decimal average for one exit-survey question.
#[derive(Clone, Debug)]
pub struct ExpectedFeedbackRow {
    pub question: String,
    pub average: String,
}

/// The full dataset: survey inputs plus every published table to
/// reproduce.
#[derive(Clone, Debug)]
pub struct Dataset {
    participants: BTreeMap<u32, String>,
    topics: BTreeMap<TopicName, TopicData>,
    rankings: Vec<SubjectRanking>,
    perception: Vec<PerceptionRecord>,
    feedback: Vec<FeedbackRow>,
    expected_gs: Vec<ExpectedGs>,
    expected_agreement: Vec<ExpectedAgreementRow>,
    expected_stats: Vec<ExpectedStatsRow>,
    expected_feedback: Vec<ExpectedFeedbackRow>,
}

impl Dataset {
    pub fn participant_name(&self, id: u32) -> Option<&str> {
        self.participants.get(&id).map(String::as_str)
    }

    pub fn participant_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.participants.keys().copied()
    }

    pub fn topic(&self, name: TopicName) -> &TopicData {
        &self.topics[&name]
    }

    pub fn rankings(&self) -> &[SubjectRanking] {
        &self.rankings
    }

    /// Rankings of one topic produced in one task slot, subject order.
    pub fn rankings_for(&self, topic: TopicName, task: TaskOrder) -> Vec<&SubjectRanking> {
        self.rankings
            .iter()
            .filter(|r| r.topic == topic && r.task_order == task)
            .collect()
    }

    /// The aggregation inputs for a gold standard of the given scope.
    pub fn rankings_for_scope(&self, topic: TopicName, scope: GsScope) -> Vec<Ranking> {
        self.rankings
            .iter()
            .filter(|r| r.topic == topic && scope.task_orders().contains(&r.task_order))
            .map(|r| r.ranking.clone())
            .collect()
    }

    pub fn subject_ranking(&self, topic: TopicName, subject: u32) -> Option<&SubjectRanking> {
        self.rankings
            .iter()
            .find(|r| r.topic == topic && r.subject == subject)
    }

    pub fn perception(&self) -> &[PerceptionRecord] {
        &self.perception
    }

    pub fn feedback(&self) -> &[FeedbackRow] {
        &self.feedback
    }

    pub fn expected_gss(&self) -> &[ExpectedGs] {
        &self.expected_gs
    }

    pub fn expected_gs(&self, topic: TopicName, scope: GsScope) -> &Ranking {
        &self
            .expected_gs
            .iter()
            .find(|g| g.topic == topic && g.scope == scope)
            .expect("every topic/scope pair is validated at load time")
            .ranking
    }

    pub fn expected_agreement(&self) -> &[ExpectedAgreementRow] {
        &self.expected_agreement
    }

    pub fn expected_stats(&self) -> &[ExpectedStatsRow] {
        &self.expected_stats
    }

    pub fn expected_feedback(&self) -> &[ExpectedFeedbackRow] {
        &self.expected_feedback
    }
}

const FILE_NAMES: [&str; 9] = [
    "participants.tsv",
    "topics.tsv",
    "rankings.tsv",
    "perception.tsv",
    "feedback.tsv",
    "expected_gs.tsv",
    "expected_agreement.tsv",
    "expected_stats.tsv",
    "expected_feedback.tsv",
];

struct RawFiles {
    participants: String,
    topics: String,
    rankings: String,
    perception: String,
    feedback: String,
    expected_gs: String,
    expected_agreement: String,
    expected_stats: String,
    expected_feedback: String,
}

fn embedded_files() -> RawFiles {
    RawFiles {
        participants: include_str!("../data/participants.tsv").to_string(),
        topics: include_str!("../data/topics.tsv").to_string(),
        rankings: include_str!("../data/rankings.tsv").to_string(),
        perception: include_str!("../data/perception.tsv").to_string(),
        feedback: include_str!("../data/feedback.tsv").to_string(),
        expected_gs: include_str!("../data/expected_gs.tsv").to_string(),
        expected_agreement: include_str!("../data/expected_agreement.tsv").to_string(),
        expected_stats: include_str!("../data/expected_stats.tsv").to_string(),
        expected_feedback: include_str!("../data/expected_feedback.tsv").to_string(),
    }
}

/// Loads the dataset compiled into the binary.
pub fn load_dataset() -> Dataset {
    parse_files(embedded_files()).expect("embedded dataset is well-formed")
}

/// Loads the nine dataset files from a directory instead of the embedded
/// copies. File names and layouts must match the embedded ones.
pub fn load_dataset_from(dir: &Path) -> Result<Dataset, Error> {
    let read = |name: &str| -> Result<String, Error> {
        let path = dir.join(name);
        std::fs::read_to_string(&path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    };
    let [participants, topics, rankings, perception, feedback, expected_gs, expected_agreement, expected_stats, expected_feedback] =
        FILE_NAMES;
    let files = RawFiles {
        participants: read(participants)?,
        topics: read(topics)?,
        rankings: read(rankings)?,
        perception: read(perception)?,
        feedback: read(feedback)?,
        expected_gs: read(expected_gs)?,
        expected_agreement: read(expected_agreement)?,
        expected_stats: read(expected_stats)?,
        expected_feedback: read(expected_feedback)?,
    };
    parse_files(files)
}

fn reader(content: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .comment(Some(b'#'))
        .quoting(false)
        .trim(csv::Trim::All)
        .from_reader(content.as_bytes())
}

/// Reads all records of one TSV, checking the header line.
fn records(content: &str, file: &str, header: &[&str]) -> Result<Vec<csv::StringRecord>, Error> {
    let mut rdr = reader(content);
    let found = rdr
        .headers()
        .map_err(|e| Error::data(file, e.to_string()))?;
    if found.iter().ne(header.iter().copied()) {
        return Err(Error::data(
            file,
            format!("expected header {header:?}, found {found:?}"),
        ));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        rows.push(rec.map_err(|e| Error::data(file, e.to_string()))?);
    }
    if rows.is_empty() {
        return Err(Error::data(file, "no data rows"));
    }
    Ok(rows)
}

fn field<'r>(rec: &'r csv::StringRecord, idx: usize, file: &str) -> Result<&'r str, Error> {
    rec.get(idx)
        .ok_or_else(|| Error::data(file, format!("row {:?} is missing column {idx}", rec)))
}

fn parse_field<T>(rec: &csv::StringRecord, idx: usize, file: &str, what: &str) -> Result<T, Error>
where
    T: FromStr,
    T::Err: fmt::Display,
{
    let raw = field(rec, idx, file)?;
    raw.parse()
        .map_err(|e: T::Err| Error::data(file, format!("bad {what} `{raw}`: {e}")))
}

fn parse_participants(content: &str) -> Result<BTreeMap<u32, String>, Error> {
    let file = "participants.tsv";
    let mut out = BTreeMap::new();
    for rec in records(content, file, &["id", "name"])? {
        let id: u32 = parse_field(&rec, 0, file, "participant id")?;
        let name = field(&rec, 1, file)?.to_string();
        if name.is_empty() {
            return Err(Error::data(file, format!("participant {id} has no name")));
        }
        if out.insert(id, name).is_some() {
            return Err(Error::data(file, format!("duplicate participant id {id}")));
        }
    }
    Ok(out)
}

fn parse_topics(
    content: &str,
    participants: &BTreeMap<u32, String>,
) -> Result<BTreeMap<TopicName, TopicData>, Error> {
    let file = "topics.tsv";
    let mut out = BTreeMap::new();
    for rec in records(
        content,
        file,
        &["topic", "thread_ids", "emails", "participants"],
    )? {
        let name: TopicName = parse_field(&rec, 0, file, "topic")?;
        let mut thread_ids = Vec::new();
        for part in field(&rec, 1, file)?.split(',') {
            thread_ids.push(
                part.trim()
                    .parse()
                    .map_err(|e| Error::data(file, format!("bad thread id `{part}`: {e}")))?,
            );
        }
        let email_count: u32 = parse_field(&rec, 2, file, "email count")?;
        let mut members = Vec::new();
        for tok in field(&rec, 3, file)?.split(',') {
            let tok = tok.trim();
            let id: u32 = tok
                .parse()
                .map_err(|e| Error::data(file, format!("bad universe member `{tok}`: {e}")))?;
            if !participants.contains_key(&id) {
                return Err(Error::data(
                    file,
                    format!("universe member {id} is not a listed participant"),
                ));
            }
            members.push(Participant::new(tok).map_err(|e| Error::data(file, e.to_string()))?);
        }
        let universe = Universe::new(members).map_err(|e| Error::data(file, e.to_string()))?;
        if out
            .insert(
                name,
                TopicData {
                    name,
                    thread_ids,
                    email_count,
                    universe,
                },
            )
            .is_some()
        {
            return Err(Error::data(file, format!("duplicate topic `{name}`")));
        }
    }
    for required in TopicName::ALL {
        if !out.contains_key(&required) {
            return Err(Error::data(file, format!("missing topic `{required}`")));
        }
    }
    Ok(out)
}

fn parse_rankings(
    content: &str,
    topics: &BTreeMap<TopicName, TopicData>,
) -> Result<Vec<SubjectRanking>, Error> {
    let file = "rankings.tsv";
    let mut out: Vec<SubjectRanking> = Vec::new();
    for rec in records(
        content,
        file,
        &["topic", "subject", "task_order", "ranking_string"],
    )? {
        let topic: TopicName = parse_field(&rec, 0, file, "topic")?;
        let subject: u32 = parse_field(&rec, 1, file, "subject id")?;
        let task_order: TaskOrder = parse_field(&rec, 2, file, "task order")?;
        let ranking = parse_ranking(field(&rec, 3, file)?)
            .map_err(|e| Error::data(file, format!("subject {subject}, {topic}: {e}")))?;
        let report = validate_against_universe(&ranking, &topics[&topic].universe);
        if !report.extraneous.is_empty() {
            return Err(Error::data(
                file,
                format!(
                    "subject {subject}, {topic}: ranked outside the universe: {:?}",
                    report.extraneous
                ),
            ));
        }
        if out.iter().any(|r| r.topic == topic && r.subject == subject) {
            return Err(Error::data(
                file,
                format!("subject {subject} ranked {topic} more than once"),
            ));
        }
        out.push(SubjectRanking {
            topic,
            subject,
            task_order,
            ranking,
        });
    }
    // Every task slot must have rankings, and together they must mention
    // every universe member, or the aggregate would silently shrink.
    for topic in TopicName::ALL {
        for task in TaskOrder::ALL {
            let cell: Vec<_> = out
                .iter()
                .filter(|r| r.topic == topic && r.task_order == task)
                .collect();
            if cell.is_empty() {
                return Err(Error::data(
                    file,
                    format!("no rankings for {topic}, {task} task"),
                ));
            }
            let mut union = BTreeSet::new();
            for r in &cell {
                union.extend(r.ranking.participants().cloned());
            }
            let missing: Vec<_> = topics[&topic]
                .universe
                .members()
                .filter(|m| !union.contains(*m))
                .collect();
            if !missing.is_empty() {
                return Err(Error::data(
                    file,
                    format!("{topic} {task}-task rankings never mention {missing:?}"),
                ));
            }
        }
    }
    Ok(out)
}

fn parse_perception(
    content: &str,
    rankings: &[SubjectRanking],
) -> Result<Vec<PerceptionRecord>, Error> {
    let file = "perception.tsv";
    let mut out: Vec<PerceptionRecord> = Vec::new();
    for rec in records(
        content,
        file,
        &[
            "topic",
            "subject",
            "task_order",
            "expertise",
            "confidence",
            "difficulty",
        ],
    )? {
        let topic: TopicName = parse_field(&rec, 0, file, "topic")?;
        let subject: u32 = parse_field(&rec, 1, file, "subject id")?;
        let task_order: TaskOrder = parse_field(&rec, 2, file, "task order")?;
        let expertise: u8 = parse_field(&rec, 3, file, "expertise")?;
        let confidence: u8 = parse_field(&rec, 4, file, "confidence")?;
        let difficulty: u8 = parse_field(&rec, 5, file, "difficulty")?;
        for (label, v) in [
            ("expertise", expertise),
            ("confidence", confidence),
            ("difficulty", difficulty),
        ] {
            if !(1..=5).contains(&v) {
                return Err(Error::data(
                    file,
                    format!("subject {subject}, {topic}: {label} {v} is outside 1-5"),
                ));
            }
        }
        if out.iter().any(|p| p.topic == topic && p.subject == subject) {
            return Err(Error::data(
                file,
                format!("duplicate perception row for subject {subject}, {topic}"),
            ));
        }
        match rankings
            .iter()
            .find(|r| r.topic == topic && r.subject == subject)
        {
            None => {
                return Err(Error::data(
                    file,
                    format!("subject {subject} has no {topic} ranking"),
                ))
            }
            Some(r) if r.task_order != task_order => {
                return Err(Error::data(
                    file,
                    format!("subject {subject}, {topic}: task order disagrees with rankings.tsv"),
                ))
            }
            Some(_) => {}
        }
        out.push(PerceptionRecord {
            topic,
            subject,
            task_order,
            expertise,
            confidence,
            difficulty,
        });
    }
    if out.len() != rankings.len() {
        return Err(Error::data(
            file,
            format!(
                "{} perception rows for {} rankings",
                out.len(),
                rankings.len()
            ),
        ));
    }
    Ok(out)
}

fn parse_feedback(content: &str) -> Result<Vec<FeedbackRow>, Error> {
    let file = "feedback.tsv";
    let mut out: Vec<FeedbackRow> = Vec::new();
    for rec in records(content, file, &["question", "c1", "c2", "c3", "c4", "c5"])? {
        let question = field(&rec, 0, file)?.to_string();
        if question.is_empty() {
            return Err(Error::data(file, "empty question text"));
        }
        if out.iter().any(|f| f.question == question) {
            return Err(Error::data(
                file,
                format!("duplicate question `{question}`"),
            ));
        }
        let mut counts = [0u64; 5];
        for (i, slot) in counts.iter_mut().enumerate() {
            *slot = parse_field(&rec, i + 1, file, "answer count")?;
        }
        let counts = LikertCounts::new(counts);
        if counts.total() == 0 {
            return Err(Error::data(file, format!("`{question}` has no answers")));
        }
        out.push(FeedbackRow { question, counts });
    }
    Ok(out)
}

fn parse_expected_gs(
    content: &str,
    topics: &BTreeMap<TopicName, TopicData>,
) -> Result<Vec<ExpectedGs>, Error> {
    let file = "expected_gs.tsv";
    let mut out: Vec<ExpectedGs> = Vec::new();
    for rec in records(content, file, &["topic", "scope", "ranking_string"])? {
        let topic: TopicName = parse_field(&rec, 0, file, "topic")?;
        let scope: GsScope = parse_field(&rec, 1, file, "scope")?;
        let ranking = parse_ranking(field(&rec, 2, file)?)
            .map_err(|e| Error::data(file, format!("{topic}/{scope}: {e}")))?;
        let report = validate_against_universe(&ranking, &topics[&topic].universe);
        if !report.is_valid() {
            return Err(Error::data(
                file,
                format!(
                    "{topic}/{scope}: gold standard must place the whole universe \
                     (missing {:?}, extraneous {:?})",
                    report.missing, report.extraneous
                ),
            ));
        }
        if out.iter().any(|g| g.topic == topic && g.scope == scope) {
            return Err(Error::data(file, format!("duplicate row {topic}/{scope}")));
        }
        out.push(ExpectedGs {
            topic,
            scope,
            ranking,
        });
    }
    for topic in TopicName::ALL {
        for scope in GsScope::ALL {
            if !out.iter().any(|g| g.topic == topic && g.scope == scope) {
                return Err(Error::data(file, format!("missing row {topic}/{scope}")));
            }
        }
    }
    Ok(out)
}

fn parse_agreement_key(raw: &str) -> Result<AgreementRowKey, String> {
    if let Some(id) = raw.strip_prefix("subject:") {
        let id = id
            .parse()
            .map_err(|e| format!("bad subject id in `{raw}`: {e}"))?;
        return Ok(AgreementRowKey::Subject(id));
    }
    if let Some(scope) = raw.strip_prefix("gs:") {
        return Ok(AgreementRowKey::Gs(scope.parse()?));
    }
    Err(format!(
        "row key `{raw}` is neither subject:<id> nor gs:<scope>"
    ))
}

fn parse_expected_agreement(
    content: &str,
    topics: &BTreeMap<TopicName, TopicData>,
    rankings: &[SubjectRanking],
) -> Result<Vec<ExpectedAgreementRow>, Error> {
    let file = "expected_agreement.tsv";
    let mut out: Vec<ExpectedAgreementRow> = Vec::new();
    for rec in records(
        content,
        file,
        &[
            "topic",
            "scope",
            "row_key",
            "agree",
            "disagree",
            "unspecified",
            "pct_agree",
            "pct_disagree",
            "pct_unspecified",
        ],
    )? {
        let topic: TopicName = parse_field(&rec, 0, file, "topic")?;
        let scope: GsScope = parse_field(&rec, 1, file, "scope")?;
        let key = parse_agreement_key(field(&rec, 2, file)?).map_err(|e| Error::data(file, e))?;
        let agree: usize = parse_field(&rec, 3, file, "agree count")?;
        let disagree: usize = parse_field(&rec, 4, file, "disagree count")?;
        let unspecified: usize = parse_field(&rec, 5, file, "unspecified count")?;
        let pct_agree: u32 = parse_field(&rec, 6, file, "agree percentage")?;
        let pct_disagree: u32 = parse_field(&rec, 7, file, "disagree percentage")?;
        let pct_unspecified: u32 = parse_field(&rec, 8, file, "unspecified percentage")?;
        let n = topics[&topic].universe.len();
        let all_pairs = n * (n - 1) / 2;
        if agree + disagree + unspecified != all_pairs {
            return Err(Error::data(
                file,
                format!(
                    "{topic}/{scope}/{key}: counts sum to {}, not C({n},2) = {all_pairs}",
                    agree + disagree + unspecified
                ),
            ));
        }
        for (label, pct) in [
            ("agree", pct_agree),
            ("disagree", pct_disagree),
            ("unspecified", pct_unspecified),
        ] {
            if pct > 100 {
                return Err(Error::data(
                    file,
                    format!("{topic}/{scope}/{key}: {label} percentage {pct} exceeds 100"),
                ));
            }
        }
        if out
            .iter()
            .any(|r| r.topic == topic && r.scope == scope && r.key == key)
        {
            return Err(Error::data(
                file,
                format!("duplicate row {topic}/{scope}/{key}"),
            ));
        }
        out.push(ExpectedAgreementRow {
            topic,
            scope,
            key,
            agree,
            disagree,
            unspecified,
            pct_agree,
            pct_disagree,
            pct_unspecified,
        });
    }
    // Each ranking needs a row against its task's gold standard and one
    // against the overall gold standard; each topic needs the three
    // gold-standard cross rows.
    let mut wanted = Vec::new();
    for r in rankings {
        let task_scope = match r.task_order {
            TaskOrder::First => GsScope::First,
            TaskOrder::Second => GsScope::Second,
        };
        wanted.push((r.topic, task_scope, AgreementRowKey::Subject(r.subject)));
        wanted.push((r.topic, GsScope::Both, AgreementRowKey::Subject(r.subject)));
    }
    for topic in TopicName::ALL {
        wanted.push((topic, GsScope::Both, AgreementRowKey::Gs(GsScope::First)));
        wanted.push((topic, GsScope::Both, AgreementRowKey::Gs(GsScope::Second)));
        wanted.push((topic, GsScope::First, AgreementRowKey::Gs(GsScope::Second)));
    }
    for (topic, scope, key) in &wanted {
        if !out
            .iter()
            .any(|r| r.topic == *topic && r.scope == *scope && r.key == *key)
        {
            return Err(Error::data(
                file,
                format!("missing row {topic}/{scope}/{key}"),
            ));
        }
    }
    if out.len() != wanted.len() {
        return Err(Error::data(
            file,
            format!("{} rows where {} were expected", out.len(), wanted.len()),
        ));
    }
    Ok(out)
}

fn parse_expected_stats(
    content: &str,
    rankings: &[SubjectRanking],
) -> Result<Vec<ExpectedStatsRow>, Error> {
    let file = "expected_stats.tsv";
    let mut out: Vec<ExpectedStatsRow> = Vec::new();
    for rec in records(
        content,
        file,
        &[
            "topic",
            "subject",
            "participants_ranked",
            "ranks_used",
            "pct",
        ],
    )? {
        let topic: TopicName = parse_field(&rec, 0, file, "topic")?;
        let subject: u32 = parse_field(&rec, 1, file, "subject id")?;
        let participants_ranked: usize = parse_field(&rec, 2, file, "participant count")?;
        let ranks_used: usize = parse_field(&rec, 3, file, "rank count")?;
        let pct: u32 = parse_field(&rec, 4, file, "percentage")?;
        if !rankings
            .iter()
            .any(|r| r.topic == topic && r.subject == subject)
        {
            return Err(Error::data(
                file,
                format!("subject {subject} has no {topic} ranking"),
            ));
        }
        if out.iter().any(|r| r.topic == topic && r.subject == subject) {
            return Err(Error::data(
                file,
                format!("duplicate row for subject {subject}, {topic}"),
            ));
        }
        out.push(ExpectedStatsRow {
            topic,
            subject,
            participants_ranked,
            ranks_used,
            pct,
        });
    }
    if out.len() != rankings.len() {
        return Err(Error::data(
            file,
            format!("{} rows for {} rankings", out.len(), rankings.len()),
        ));
    }
    Ok(out)
}

fn parse_expected_feedback(
    content: &str,
    feedback: &[FeedbackRow],
) -> Result<Vec<ExpectedFeedbackRow>, Error> {
    let file = "expected_feedback.tsv";
    let mut out: Vec<ExpectedFeedbackRow> = Vec::new();
    for rec in records(content, file, &["question", "average"])? {
        let question = field(&rec, 0, file)?.to_string();
        let average = field(&rec, 1, file)?.to_string();
        let ok_shape = average.split_once('.').is_some_and(|(int, frac)| {
            !int.is_empty()
                && int.chars().all(|c| c.is_ascii_digit())
                && frac.len() == 1
                && frac.chars().all(|c| c.is_ascii_digit())
        });
        if !ok_shape {
            return Err(Error::data(
                file,
                format!("average `{average}` is not a one-decimal number"),
            ));
        }
        if !feedback.iter().any(|f| f.question == question) {
            return Err(Error::data(
                file,
                format!("`{question}` does not appear in feedback.tsv"),
            ));
        }
        if out.iter().any(|r| r.question == question) {
            return Err(Error::data(
                file,
                format!("duplicate question `{question}`"),
            ));
        }
        out.push(ExpectedFeedbackRow { question, average });
    }
    if out.len() != feedback.len() {
        return Err(Error::data(
            file,
            format!(
                "{} rows for {} feedback questions",
                out.len(),
                feedback.len()
            ),
        ));
    }
    Ok(out)
}

fn parse_files(files: RawFiles) -> Result<Dataset, Error> {
    let participants = parse_participants(&files.participants)?;
    let topics = parse_topics(&files.topics, &participants)?;
    let rankings = parse_rankings(&files.rankings, &topics)?;
    let perception = parse_perception(&files.perception, &rankings)?;
    let feedback = parse_feedback(&files.feedback)?;
    let expected_gs = parse_expected_gs(&files.expected_gs, &topics)?;
    let expected_agreement =
        parse_expected_agreement(&files.expected_agreement, &topics, &rankings)?;
    let expected_stats = parse_expected_stats(&files.expected_stats, &rankings)?;
    let expected_feedback = parse_expected_feedback(&files.expected_feedback, &feedback)?;
    Ok(Dataset {
        participants,
        topics,
        rankings,
        perception,
        feedback,
        expected_gs,
        expected_agreement,
        expected_stats,
        expected_feedback,
    })
}
