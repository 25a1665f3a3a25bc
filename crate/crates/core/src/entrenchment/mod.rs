//! Finite partial entrenchment rankings and their transmutations.
//!
//! A ranking maps finitely many sentences to ranks in `[0, 1]`. Entries at
//! rank 0 are never stored, so the stored entries are exactly the explicit
//! beliefs `exp(B)`; their classical closure is the ranking's content.
//! Protected entries hold domain knowledge pinned at rank 1.

mod adjust;
mod possibilistic;
mod reasoner;
mod report;
mod validate;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::logic::{self, Formula, Sentence};
use crate::rank::Rank;

pub use report::{AdjustmentReport, Note, Operation, OperationKind, RankChange};
pub use validate::{Condition, ValidationReport, Violation, Warning};

pub(crate) use reasoner::{Reasoner, View};

/// Whether rank 1 may be held by protected contingent knowledge.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Rank 1 iff tautology.
    Strict,
    /// Rank 1 also allowed for protected domain knowledge.
    #[default]
    Paper,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "strict" => Ok(Mode::Strict),
            "paper" => Ok(Mode::Paper),
            other => Err(Error::Config(format!("unknown mode {other:?}"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Paper => "paper",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub sentence: Sentence,
    pub rank: Rank,
    pub protected: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EntrenchmentRanking {
    // Keyed by canonical text, which also gives the lexicographic tie order.
    entries: BTreeMap<String, Entry>,
    constants: BTreeSet<String>,
}

impl EntrenchmentRanking {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from `(formula text, rank)` pairs. Convenient for fixtures.
    pub fn from_pairs<'a, I>(pairs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (&'a str, f64)>,
    {
        let mut ranking = Self::new();
        for (text, rank) in pairs {
            ranking.insert(logic::parse_sentence(text)?, Rank::new(rank)?)?;
        }
        Ok(ranking)
    }

    /// Set the rank of a sentence. Rank 0 removes it. Rank 1 is reserved
    /// for tautologies; use [`protect`](Self::protect) for domain knowledge.
    pub fn insert(&mut self, sentence: Sentence, rank: Rank) -> Result<(), Error> {
        let key = sentence.to_string();
        if rank.is_zero() {
            self.entries.remove(&key);
            return Ok(());
        }
        if let Some(e) = self.entries.get_mut(&key) {
            if e.protected {
                return Err(Error::ProtectedConflict(key));
            }
            e.rank = rank;
            return Ok(());
        }
        self.entries.insert(key, Entry { sentence, rank, protected: false });
        Ok(())
    }

    /// Like [`insert`](Self::insert) but unchecked and preserving the
    /// protected flag; used when replaying diffs and loading files.
    pub(crate) fn set_rank(&mut self, sentence: &Sentence, rank: Rank) {
        let key = sentence.to_string();
        if rank.is_zero() {
            self.entries.remove(&key);
        } else if let Some(e) = self.entries.get_mut(&key) {
            e.rank = rank;
        } else {
            self.entries.insert(key, Entry { sentence: sentence.clone(), rank, protected: false });
        }
    }

    /// Add domain knowledge at rank 1, exempt from contraction.
    pub fn protect(&mut self, sentence: Sentence) {
        let key = sentence.to_string();
        self.entries.insert(key, Entry { sentence, rank: Rank::ONE, protected: true });
    }

    pub(crate) fn insert_entry(&mut self, entry: Entry) {
        self.entries.insert(entry.sentence.to_string(), entry);
    }

    pub fn declare_constants<I: IntoIterator<Item = String>>(&mut self, constants: I) {
        self.constants.extend(constants.into_iter().map(|c| c.trim().to_lowercase()));
    }

    /// Individuals declared for schema grounding beyond those the entries
    /// mention.
    pub fn declared_constants(&self) -> &BTreeSet<String> {
        &self.constants
    }

    pub fn rank(&self, sentence: &Sentence) -> Rank {
        self.entries.get(&sentence.to_string()).map(|e| e.rank).unwrap_or(Rank::ZERO)
    }

    pub fn rank_of(&self, formula: &Formula) -> Rank {
        self.rank(&Sentence::Ground(formula.clone()))
    }

    pub fn is_protected(&self, sentence: &Sentence) -> bool {
        self.entries.get(&sentence.to_string()).is_some_and(|e| e.protected)
    }

    pub fn get(&self, sentence: &Sentence) -> Option<&Entry> {
        self.entries.get(&sentence.to_string())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in canonical-text order.
    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.entries.values()
    }

    /// Entries by rank descending, then canonical text.
    pub fn sorted_entries(&self) -> Vec<&Entry> {
        let mut v: Vec<&Entry> = self.entries.values().collect();
        v.sort_by(|a, b| {
            b.rank
                .value()
                .partial_cmp(&a.rank.value())
                .unwrap()
                .then_with(|| a.sentence.to_string().cmp(&b.sentence.to_string()))
        });
        v
    }

    /// `exp(B)`.
    pub fn explicit(&self) -> Vec<&Sentence> {
        self.entries.values().map(|e| &e.sentence).collect()
    }

    /// Distinct ranks present, descending.
    pub fn levels(&self) -> Vec<Rank> {
        let mut values: Vec<f64> = self.entries.values().map(|e| e.rank.value()).collect();
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut out: Vec<Rank> = Vec::new();
        for v in values {
            let r = Rank(v);
            if out.last() != Some(&r) {
                out.push(r);
            }
        }
        out
    }

    /// Sentences with rank at least `j`.
    pub fn cut_at_least(&self, j: Rank) -> Vec<&Sentence> {
        self.entries.values().filter(|e| e.rank >= j).map(|e| &e.sentence).collect()
    }

    /// Sentences with rank strictly above `j`.
    pub fn cut_above(&self, j: Rank) -> Vec<&Sentence> {
        self.entries.values().filter(|e| e.rank > j).map(|e| &e.sentence).collect()
    }

    /// Copy keeping only entries strictly above `j`.
    pub fn restricted_above(&self, j: Rank) -> Self {
        EntrenchmentRanking {
            entries: self
                .entries
                .iter()
                .filter(|(_, e)| e.rank > j)
                .map(|(k, e)| (k.clone(), e.clone()))
                .collect(),
            constants: self.constants.clone(),
        }
    }

    pub(crate) fn reasoner(&self, view: View, extra: &[&Formula]) -> Reasoner {
        Reasoner::new(view, &self.constants, self.explicit(), extra.iter().copied())
    }

    /// Degree of acceptance: the largest rank `j` such that the entries
    /// ranked at least `j` entail `formula`; 1 for tautologies and 0 when
    /// the formula is not in the content at all. Schemas are instantiated
    /// over the known constants.
    pub fn degree(&self, formula: &Formula) -> Rank {
        self.degree_in(View::Grounded, formula)
    }

    pub(crate) fn degree_in(&self, view: View, formula: &Formula) -> Rank {
        let r = self.reasoner(view, &[formula]);
        self.degree_with(&r, formula)
    }

    pub(crate) fn degree_with(&self, r: &Reasoner, formula: &Formula) -> Rank {
        if logic::is_tautology(formula) {
            return Rank::ONE;
        }
        for j in self.levels() {
            if r.entails(self.cut_at_least(j), formula) {
                return j;
            }
        }
        Rank::ZERO
    }

    /// Whether `formula` is in `content(B)`.
    pub fn accepts(&self, formula: &Formula) -> bool {
        !self.degree(formula).is_zero()
    }

    /// Classical entailment from an arbitrary premise set, grounding schemas
    /// over the constants of this ranking, the premises and the goal.
    pub fn entails_from(&self, premises: &[&Sentence], goal: &Formula) -> bool {
        let r = Reasoner::new(
            View::Grounded,
            &self.constants,
            self.explicit().into_iter().chain(premises.iter().copied()),
            [goal],
        );
        r.entails(premises.iter().copied(), goal)
    }

    /// Inclusion-minimal subset of `premises` entailing `goal`.
    pub fn support<'a>(&self, premises: &[&'a Sentence], goal: &Formula) -> Option<Vec<&'a Sentence>> {
        let r = Reasoner::new(
            View::Grounded,
            &self.constants,
            self.explicit().into_iter().chain(premises.iter().copied()),
            [goal],
        );
        r.support(premises, goal)
    }

    pub fn is_consistent_set(&self, sentences: &[&Sentence]) -> bool {
        let r = Reasoner::new(
            View::Grounded,
            &self.constants,
            self.explicit().into_iter().chain(sentences.iter().copied()),
            [],
        );
        r.consistent(sentences.iter().copied())
    }
}
