//! Keyword preference values from relevance-feedback statistics, and the
//! entrenchment-ranked beliefs they induce.
//!
//! ```text
//! pre(k) = eps * tanh(df(k) / xi)
//!        * ( p * tanh(p / p_rel) - (1 - p) * tanh((1 - p) / (1 - p_rel)) )
//! ```
//!
//! with `p = df_rel(k) / df(k)` and `xi = int(log10(N) + 1)` for `N` judged
//! documents. A keyword is neutral when `|pre(k)| < lambda`; otherwise it
//! induces `pkw(k)` (positive) or `!pkw(k)` (negative) at rank `|pre(k)|`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::agent::Document;
use crate::error::Error;
use crate::logic::Formula;
use crate::rank::Rank;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifierConfig {
    /// Amplitude bounding `|pre(k)|`.
    pub epsilon: f64,
    /// Neutrality threshold.
    pub lambda: f64,
    /// Prior probability that a presented document is relevant.
    pub p_rel: f64,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig { epsilon: 0.9, lambda: 0.5, p_rel: 0.5 }
    }
}

impl ClassifierConfig {
    pub fn new(epsilon: f64, lambda: f64, p_rel: f64) -> Result<Self, Error> {
        let c = ClassifierConfig { epsilon, lambda, p_rel };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), Error> {
        for (name, v) in [("epsilon", self.epsilon), ("lambda", self.lambda), ("p_rel", self.p_rel)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Config(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeywordCounts {
    pub relevant: u64,
    pub nonrelevant: u64,
}

impl KeywordCounts {
    pub fn total(&self) -> u64 {
        self.relevant + self.nonrelevant
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct KeywordStats {
    relevant_docs: u64,
    nonrelevant_docs: u64,
    keywords: BTreeMap<String, KeywordCounts>,
}

impl KeywordStats {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rebuild from persisted counts, checking the count invariants.
    pub fn from_parts(
        relevant_docs: u64,
        nonrelevant_docs: u64,
        keywords: BTreeMap<String, KeywordCounts>,
    ) -> Result<Self, Error> {
        for (k, c) in &keywords {
            if c.relevant > relevant_docs || c.nonrelevant > nonrelevant_docs {
                return Err(Error::Config(format!(
                    "counts for {k:?} exceed the number of judged documents"
                )));
            }
        }
        Ok(KeywordStats { relevant_docs, nonrelevant_docs, keywords })
    }

    /// Total judged documents `N`.
    pub fn judged(&self) -> u64 {
        self.relevant_docs + self.nonrelevant_docs
    }

    pub fn relevant_docs(&self) -> u64 {
        self.relevant_docs
    }

    pub fn nonrelevant_docs(&self) -> u64 {
        self.nonrelevant_docs
    }

    pub fn counts(&self, keyword: &str) -> Option<KeywordCounts> {
        self.keywords.get(keyword).copied()
    }

    pub fn keywords(&self) -> impl Iterator<Item = (&str, KeywordCounts)> {
        self.keywords.iter().map(|(k, c)| (k.as_str(), *c))
    }

    /// Count one judgment of `doc`. Each call is a separate event, so judging
    /// the same document twice counts twice.
    pub fn update(&self, doc: &Document, relevant: bool) -> Self {
        let mut next = self.clone();
        next.record(doc, relevant);
        next
    }

    pub fn record(&mut self, doc: &Document, relevant: bool) {
        if relevant {
            self.relevant_docs += 1;
        } else {
            self.nonrelevant_docs += 1;
        }
        for k in doc.keywords() {
            let c = self.keywords.entry(k.clone()).or_default();
            if relevant {
                c.relevant += 1;
            } else {
                c.nonrelevant += 1;
            }
        }
    }

    pub fn preference(&self, keyword: &str, config: &ClassifierConfig) -> Result<f64, Error> {
        let n = self.judged();
        if n == 0 {
            return Err(Error::NoJudgments);
        }
        let c = self
            .keywords
            .get(keyword)
            .filter(|c| c.total() > 0)
            .ok_or_else(|| Error::UnknownKeyword(keyword.to_string()))?;
        Ok(preference_value(c.relevant, c.nonrelevant, n, config))
    }
}

/// `xi = int(log10(n) + 1)`, i.e. the number of decimal digits of `n`.
pub fn rarity(judged: u64) -> u32 {
    judged.max(1).ilog10() + 1
}

/// The preference formula on raw counts. `df_rel + df_nrel` must be positive.
pub fn preference_value(df_rel: u64, df_nrel: u64, judged: u64, config: &ClassifierConfig) -> f64 {
    let df = (df_rel + df_nrel) as f64;
    let xi = rarity(judged) as f64;
    let p = df_rel as f64 / df;
    let q = 1.0 - p;
    let tendency = p * (p / config.p_rel).tanh() - q * (q / (1.0 - config.p_rel)).tanh();
    config.epsilon * (df / xi).tanh() * tendency
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
    Neutral,
}

pub fn classify(pre: f64, config: &ClassifierConfig) -> Polarity {
    if pre.abs() < config.lambda {
        Polarity::Neutral
    } else if pre > 0.0 {
        Polarity::Positive
    } else {
        Polarity::Negative
    }
}

/// The belief a keyword induces, ranked at `|pre|` rounded to thousandths;
/// `None` for neutral keywords.
pub fn induce_belief(
    keyword: &str,
    pre: f64,
    config: &ClassifierConfig,
) -> Result<Option<(Formula, Rank)>, Error> {
    let atom = Formula::keyword(keyword)?;
    let formula = match classify(pre, config) {
        Polarity::Neutral => return Ok(None),
        Polarity::Positive => atom,
        Polarity::Negative => atom.not(),
    };
    // Rank 1 is reserved for protected knowledge.
    let mut rank = Rank::new(pre.abs())?.quantized();
    if rank.is_max() {
        rank = Rank::from_milli(999);
    }
    Ok(Some((formula, rank)))
}
