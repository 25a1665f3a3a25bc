use serde::{Deserialize, Serialize};

use super::EntrenchmentRanking;
use crate::logic::Sentence;
use crate::rank::Rank;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperationKind {
    Expand,
    Contract,
    MaxiAdjust,
    CrContract,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Operation {
    pub kind: OperationKind,
    pub formula: Sentence,
    pub rank: Rank,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankChange {
    pub formula: Sentence,
    pub before: Rank,
    pub after: Rank,
}

/// How a transmutation arrived at its result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "note", rename_all = "snake_case")]
pub enum Note {
    /// The target was already at or below the requested rank.
    Unchanged { degree: Rank },
    /// Contraction level: sentences implied by the target, the minimal
    /// subsets that re-derived it (when enumerated) and the hitting set
    /// removed to block them.
    Level {
        level: Rank,
        implied: Vec<Sentence>,
        minimal_subsets: Option<Vec<Vec<Sentence>>>,
        hitting_set: Vec<Sentence>,
        exhaustive: bool,
    },
    /// Raised because the new belief is a reason for it.
    Reason { formula: Sentence, degree: Rank },
    /// Reset to `degree(B, target -> formula)` by the fall-through branch of
    /// expansion, which differs from its previous rank.
    Inherited { formula: Sentence, before: Rank, degree: Rank },
    /// Lifted after contraction to the degree strictly higher entries give
    /// it, so no entry sits below its own derivation.
    Restored { formula: Sentence, before: Rank, degree: Rank },
}

/// Faithful diff of one transmutation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdjustmentReport {
    pub operation: Operation,
    pub changes: Vec<RankChange>,
    pub removed: Vec<Sentence>,
    pub raised: Vec<Sentence>,
    pub notes: Vec<Note>,
}

impl AdjustmentReport {
    pub(crate) fn diff(
        operation: Operation,
        before: &EntrenchmentRanking,
        after: &EntrenchmentRanking,
        notes: Vec<Note>,
    ) -> Self {
        let mut changes = Vec::new();
        let mut keys: Vec<&Sentence> = before.explicit();
        for s in after.explicit() {
            if before.get(s).is_none() {
                keys.push(s);
            }
        }
        keys.sort_by_key(|s| s.to_string());
        for s in keys {
            let (b, a) = (before.rank(s), after.rank(s));
            if b != a {
                changes.push(RankChange { formula: s.clone(), before: b, after: a });
            }
        }
        let removed = changes.iter().filter(|c| c.after.is_zero()).map(|c| c.formula.clone()).collect();
        let raised = changes.iter().filter(|c| c.after > c.before).map(|c| c.formula.clone()).collect();
        AdjustmentReport { operation, changes, removed, raised, notes }
    }

    pub fn is_empty(&self) -> bool {
        self.changes.is_empty()
    }

    /// Replay the diff on `ranking`.
    pub fn apply(&self, ranking: &EntrenchmentRanking) -> EntrenchmentRanking {
        let mut out = ranking.clone();
        for c in &self.changes {
            out.set_rank(&c.formula, c.after);
        }
        out
    }
}
