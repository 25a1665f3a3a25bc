//! JSON payloads shared by `--json` output and the HTTP API. Formulas travel
//! as canonical grammar text and ranks as 3-decimal strings.

use std::collections::BTreeSet;

use entrench_core::agent::{Document, Judgment, Verdict};
use entrench_core::entrenchment::RankChange;
use entrench_core::{AdjustmentReport, AgentProfile, ClassifierConfig, EntrenchmentRanking, Mode, Rank, Sentence};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BeliefRow {
    pub formula: Sentence,
    pub rank: Rank,
    pub protected: bool,
    pub in_cut: bool,
    /// Latest recorded change to this formula, if any.
    pub last_change: Option<RankChange>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BeliefsView {
    /// Number of adjustments applied so far.
    pub version: usize,
    pub incons: Rank,
    pub cut_size: usize,
    /// Most entrenched first, ties by text.
    pub entries: Vec<BeliefRow>,
}

impl BeliefsView {
    pub fn of(profile: &AgentProfile) -> Self {
        let incons = profile.ranking.inconsistency_degree();
        let entries: Vec<BeliefRow> = profile
            .ranking
            .sorted_entries()
            .into_iter()
            .map(|e| BeliefRow {
                formula: e.sentence.clone(),
                rank: e.rank,
                protected: e.protected,
                in_cut: e.rank > incons,
                last_change: profile
                    .history()
                    .iter()
                    .rev()
                    .find_map(|r| r.changes.iter().find(|c| c.formula == e.sentence))
                    .cloned(),
            })
            .collect();
        BeliefsView {
            version: profile.version(),
            incons,
            cut_size: entries.iter().filter(|e| e.in_cut).count(),
            entries,
        }
    }
}

/// Net rank changes from `before` to `after`, ordered by formula text.
pub fn net_changes(before: &EntrenchmentRanking, after: &EntrenchmentRanking) -> Vec<RankChange> {
    let sentences: BTreeSet<(String, &Sentence)> = before
        .explicit()
        .into_iter()
        .chain(after.explicit())
        .map(|s| (s.to_string(), s))
        .collect();
    sentences
        .into_iter()
        .filter_map(|(_, s)| {
            let (b, a) = (before.rank(s), after.rank(s));
            (b != a).then(|| RankChange { formula: s.clone(), before: b, after: a })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FeedbackRequest {
    pub doc_id: String,
    pub keywords: Vec<String>,
    pub judgment: Judgment,
    /// Version the client last saw; a mismatch is a conflict.
    #[serde(default)]
    pub base_version: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FeedbackResponse {
    pub doc_id: String,
    pub judgment: Judgment,
    pub version: usize,
    /// Net change over all adjustments; empty when no belief moved.
    pub diff: Vec<RankChange>,
    pub reports: Vec<AdjustmentReport>,
    pub beliefs: BeliefsView,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FilterRequest {
    #[serde(default)]
    pub keywords: Vec<String>,
    /// Arbitrary ground query instead of a keyword conjunction.
    #[serde(default)]
    pub formula: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FilterResponse {
    pub query: Sentence,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QueuedDocument {
    pub id: String,
    pub keywords: Vec<String>,
}

impl From<&Document> for QueuedDocument {
    fn from(d: &Document) -> Self {
        QueuedDocument { id: d.id.clone(), keywords: d.keywords().iter().cloned().collect() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QueueView {
    pub documents: Vec<QueuedDocument>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HistoryView {
    pub version: usize,
    pub reports: Vec<AdjustmentReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigView {
    pub version: String,
    /// `bearer` when a token is required on profile routes, else `none`.
    pub auth: String,
    pub poll_interval_ms: u64,
    pub profiles: Vec<String>,
    pub defaults: Defaults,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Defaults {
    pub epsilon: f64,
    pub lambda: f64,
    pub prel: f64,
    pub mode: Mode,
}

impl Default for Defaults {
    fn default() -> Self {
        let c = ClassifierConfig::default();
        Defaults { epsilon: c.epsilon, lambda: c.lambda, prel: c.p_rel, mode: Mode::default() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LearnRecord {
    pub doc_id: String,
    pub judgment: Judgment,
    pub reports: Vec<AdjustmentReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub doc_id: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}
