use serde::{Deserialize, Serialize};

use super::{EntrenchmentRanking, Mode, View};
use crate::logic::{self, Sentence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "PER1")]
    Per1,
    #[serde(rename = "PER2")]
    Per2,
    #[serde(rename = "PER3")]
    Per3,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Condition::Per1 => "PER1",
            Condition::Per2 => "PER2",
            Condition::Per3 => "PER3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub formula: Sentence,
    /// Higher-ranked entries that derive `formula` (PER1 only).
    pub witnesses: Vec<Sentence>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Warning {
    /// `exp(B)` is classically inconsistent.
    InconsistentBase { incons: crate::rank::Rank },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl EntrenchmentRanking {
    /// Check the ranking conditions. Never fails; problems are reported.
    pub fn validate(&self, mode: Mode) -> ValidationReport {
        let mut report = ValidationReport::default();
        let r = self.reasoner(View::Grounded, &[]);
        for e in self.entries.values() {
            let goal = r.goal(&e.sentence);
            let tautology = goal.as_ref().is_none_or(logic::is_tautology);
            let contradiction = goal.as_ref().is_some_and(logic::is_contradiction);

            if let Some(g) = &goal {
                let stronger: Vec<&Sentence> = self.cut_above(e.rank);
                if let Some(witnesses) = r.support(&stronger, g) {
                    report.violations.push(Violation {
                        condition: Condition::Per1,
                        formula: e.sentence.clone(),
                        witnesses: witnesses.into_iter().cloned().collect(),
                        message: format!(
                            "`{}` at {} is derivable from strictly higher entries",
                            e.sentence, e.rank
                        ),
                    });
                }
            }
            if contradiction {
                report.violations.push(Violation {
                    condition: Condition::Per2,
                    formula: e.sentence.clone(),
                    witnesses: vec![],
                    message: format!("contradiction `{}` has non-zero rank {}", e.sentence, e.rank),
                });
            }
            let allowed_max = tautology || (mode == Mode::Paper && e.protected);
            if e.rank.is_max() && !allowed_max {
                let why = if e.protected { " (protected knowledge needs paper mode)" } else { "" };
                report.violations.push(Violation {
                    condition: Condition::Per3,
                    formula: e.sentence.clone(),
                    witnesses: vec![],
                    message: format!("non-tautology `{}` at rank 1{why}", e.sentence),
                });
            } else if tautology && !e.rank.is_max() {
                report.violations.push(Violation {
                    condition: Condition::Per3,
                    formula: e.sentence.clone(),
                    witnesses: vec![],
                    message: format!("tautology `{}` below rank 1", e.sentence),
                });
            }
        }
        let incons = self.inconsistency_degree();
        if !incons.is_zero() {
            report.warnings.push(Warning::InconsistentBase { incons });
        }
        report
    }
}
