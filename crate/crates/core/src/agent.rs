//! The adaptive filtering agent.
//!
//! Relevance feedback updates the keyword statistics; every keyword of the
//! judged document whose induced belief moved becomes one maxi-adjustment of
//! the profile's ranking. Documents are filtered by classical entailment
//! from the consistent cut of the ranking.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::classifier::{induce_belief, ClassifierConfig, KeywordStats};
use crate::entrenchment::{AdjustmentReport, EntrenchmentRanking, Mode};
use crate::error::Error;
use crate::logic::{Formula, Sentence};
use crate::rank::Rank;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Judgment {
    Relevant,
    #[serde(alias = "non-relevant", alias = "not-relevant")]
    Nonrelevant,
}

impl Judgment {
    pub fn is_relevant(self) -> bool {
        self == Judgment::Relevant
    }
}

/// Trimmed, lowercased keyword. Tabs, commas and line breaks are rejected
/// since they delimit the corpus format.
pub fn canonical_keyword(raw: &str) -> Result<String, Error> {
    let k = raw.trim().to_lowercase();
    if k.is_empty() || k.chars().any(|c| c == ',' || c.is_control()) {
        return Err(Error::InvalidKeyword(raw.to_string()));
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    keywords: BTreeSet<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Judgment>,
}

impl Document {
    pub fn new<I, S>(id: &str, keywords: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let keywords = keywords
            .into_iter()
            .map(|k| canonical_keyword(k.as_ref()))
            .collect::<Result<BTreeSet<_>, _>>()?;
        if keywords.is_empty() {
            return Err(Error::EmptyDocument);
        }
        Ok(Document { id: id.to_string(), keywords, label: None })
    }

    pub fn with_label(mut self, label: Option<Judgment>) -> Self {
        self.label = label;
        self
    }

    pub fn keywords(&self) -> &BTreeSet<String> {
        &self.keywords
    }

    /// The document as the conjunction of its positive keyword atoms.
    pub fn formula(&self) -> Formula {
        let atoms = self.keywords.iter().map(|k| Formula::keyword(k).expect("canonical keyword"));
        Formula::conjunction(atoms).expect("documents are never empty")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub relevant: bool,
    /// Degree of the query within the consistent cut; 0 when not relevant.
    pub degree: Rank,
    /// Minimal subset of the cut that derives the query.
    pub premises: Vec<Sentence>,
    pub incons: Rank,
    pub cut_size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Explanation {
    pub query: Sentence,
    pub verdict: Verdict,
    pub cut: Vec<Sentence>,
}

/// One pending maxi-adjustment derived from feedback.
#[derive(Clone, Debug, PartialEq)]
struct Planned {
    formula: Formula,
    rank: Rank,
    order_key: Rank,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AgentProfile {
    pub ranking: EntrenchmentRanking,
    pub stats: KeywordStats,
    pub config: ClassifierConfig,
    pub mode: Mode,
    genesis: EntrenchmentRanking,
    history: Vec<AdjustmentReport>,
}

impl Default for AgentProfile {
    fn default() -> Self {
        AgentProfile::new(ClassifierConfig::default(), Mode::default())
    }
}

impl AgentProfile {
    pub fn new(config: ClassifierConfig, mode: Mode) -> Self {
        AgentProfile {
            ranking: EntrenchmentRanking::new(),
            stats: KeywordStats::new(),
            config,
            mode,
            genesis: EntrenchmentRanking::new(),
            history: Vec::new(),
        }
    }

    /// Fresh profile seeded with domain knowledge, which must validate under
    /// `mode`.
    pub fn with_domain(
        domain: EntrenchmentRanking,
        config: ClassifierConfig,
        mode: Mode,
    ) -> Result<Self, Error> {
        config.validate()?;
        let v = domain.validate(mode);
        if let Some(first) = v.violations.first() {
            return Err(Error::Config(format!("domain knowledge: {}", first.message)));
        }
        Ok(AgentProfile {
            ranking: domain.clone(),
            stats: KeywordStats::new(),
            config,
            mode,
            genesis: domain,
            history: Vec::new(),
        })
    }

    /// Reassemble a persisted profile.
    pub fn from_parts(
        ranking: EntrenchmentRanking,
        stats: KeywordStats,
        config: ClassifierConfig,
        mode: Mode,
        genesis: EntrenchmentRanking,
        history: Vec<AdjustmentReport>,
    ) -> Self {
        AgentProfile { ranking, stats, config, mode, genesis, history }
    }

    pub fn genesis(&self) -> &EntrenchmentRanking {
        &self.genesis
    }

    pub fn history(&self) -> &[AdjustmentReport] {
        &self.history
    }

    /// Number of recorded adjustments; used as an optimistic version.
    pub fn version(&self) -> usize {
        self.history.len()
    }

    pub fn constants(&self) -> &BTreeSet<String> {
        self.ranking.declared_constants()
    }

    pub fn declare_constants<I: IntoIterator<Item = String>>(&mut self, constants: I) {
        let constants: Vec<String> = constants.into_iter().collect();
        self.ranking.declare_constants(constants.iter().cloned());
        self.genesis.declare_constants(constants);
    }

    /// Fold the history over the genesis ranking.
    pub fn replay_history(&self) -> EntrenchmentRanking {
        self.history.iter().fold(self.genesis.clone(), |b, r| r.apply(&b))
    }

    fn induced(stats: &KeywordStats, keyword: &str, config: &ClassifierConfig) -> Result<Option<(Formula, Rank)>, Error> {
        match stats.preference(keyword, config) {
            Ok(pre) => induce_belief(keyword, pre, config),
            Err(Error::UnknownKeyword(_)) | Err(Error::NoJudgments) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Learn from one judgment. Returns the new profile and the reports of
    /// the adjustments applied, in order. On error the profile is unchanged.
    pub fn learn(&self, doc: &Document, judgment: Judgment) -> Result<(AgentProfile, Vec<AdjustmentReport>), Error> {
        let stats = self.stats.update(doc, judgment.is_relevant());
        let mut contractions = Vec::new();
        let mut revisions = Vec::new();
        for k in doc.keywords() {
            let old = Self::induced(&self.stats, k, &self.config)?;
            let new = Self::induced(&stats, k, &self.config)?;
            match (old, new) {
                (None, None) => {}
                (Some((formula, old_rank)), None) => {
                    let held = self.ranking.rank_of(&formula);
                    let order_key = if held.is_zero() { old_rank } else { held };
                    contractions.push(Planned { formula, rank: Rank::ZERO, order_key });
                }
                (None, Some((formula, rank))) => {
                    revisions.push(Planned { formula, rank, order_key: rank });
                }
                (Some((old_f, old_r)), Some((formula, rank))) => {
                    if old_f != formula || old_r != rank {
                        revisions.push(Planned { formula, rank, order_key: rank });
                    }
                }
            }
        }
        // Least entrenched contracted first; most entrenched revised first.
        contractions.sort_by(|a, b| {
            a.order_key
                .partial_cmp(&b.order_key)
                .unwrap()
                .then_with(|| a.formula.to_string().cmp(&b.formula.to_string()))
        });
        revisions.sort_by(|a, b| {
            b.order_key
                .partial_cmp(&a.order_key)
                .unwrap()
                .then_with(|| a.formula.to_string().cmp(&b.formula.to_string()))
        });

        let mut ranking = self.ranking.clone();
        let mut reports = Vec::new();
        for step in contractions.into_iter().chain(revisions) {
            let (next, report) = ranking.maxi_adjust(&step.formula, step.rank)?;
            ranking = next;
            reports.push(report);
        }
        let mut history = self.history.clone();
        history.extend(reports.iter().cloned());
        let profile = AgentProfile {
            ranking,
            stats,
            config: self.config,
            mode: self.mode,
            genesis: self.genesis.clone(),
            history,
        };
        Ok((profile, reports))
    }

    pub fn filter(&self, doc: &Document) -> Verdict {
        self.filter_formula(&doc.formula())
    }

    /// Relevant iff the consistent cut classically entails `query`.
    pub fn filter_formula(&self, query: &Formula) -> Verdict {
        let incons = self.ranking.inconsistency_degree();
        let cut_ranking = self.ranking.restricted_above(incons);
        let cut = cut_ranking.explicit();
        let premises = self.ranking.support(&cut, query);
        let relevant = premises.is_some();
        Verdict {
            relevant,
            degree: if relevant { cut_ranking.degree(query) } else { Rank::ZERO },
            premises: premises.unwrap_or_default().into_iter().cloned().collect(),
            incons,
            cut_size: cut.len(),
        }
    }

    pub fn explain(&self, doc: &Document) -> Explanation {
        self.explain_formula(&doc.formula())
    }

    pub fn explain_formula(&self, query: &Formula) -> Explanation {
        let verdict = self.filter_formula(query);
        let cut = self.ranking.restricted_above(verdict.incons);
        Explanation {
            query: Sentence::Ground(query.clone()),
            cut: cut.sorted_entries().into_iter().map(|e| e.sentence.clone()).collect(),
            verdict,
        }
    }
}
