//! Belief revision over finite partial entrenchment rankings, and an
//! adaptive document-filtering agent built on it.
//!
//! - [`logic`]: propositional formulas, rule schemas, CNF and DPLL entailment.
//! - [`entrenchment`]: rankings, degree of acceptance, expansion, contraction,
//!   maxi-adjustment, inconsistency degree and the consistent cut.
//! - [`classifier`]: keyword preference values from relevance statistics.
//! - [`agent`]: learning from relevance feedback and filtering documents.
//! - [`format`]: the line-oriented belief-base, profile and corpus files.

pub mod agent;
pub mod classifier;
pub mod entrenchment;
pub mod error;
pub mod format;
pub mod logic;
pub mod rank;

pub use agent::{AgentProfile, Document, Explanation, Judgment, Verdict};
pub use classifier::{ClassifierConfig, KeywordStats};
pub use entrenchment::{AdjustmentReport, EntrenchmentRanking, Mode, ValidationReport};
pub use error::{Error, Result};
pub use logic::{parse_formula, parse_sentence, Atom, Formula, Schema, Sentence};
pub use rank::Rank;
