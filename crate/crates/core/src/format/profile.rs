//! The profile file: configuration, declared constants, keyword statistics,
//! the current and genesis belief bases, and the adjustment history as JSON
//! lines.
//!
//! Fields are separated by a single TAB; shown here with spaces.
//!
//! ```text
//! [config]
//! epsilon  0.9
//! lambda  0.5
//! prel  0.5
//! mode  paper
//! [constants]
//! tweety
//! [stats]
//! docs  5  3
//! business  5  0
//! [beliefs]
//! 0.856  -  pkw(business)
//! [genesis]
//! [history]
//! {"operation":...}
//! ```

use std::collections::BTreeMap;

use super::{format_error, parse_records, write_belief_base};
use crate::agent::AgentProfile;
use crate::classifier::{ClassifierConfig, KeywordCounts, KeywordStats};
use crate::entrenchment::{AdjustmentReport, EntrenchmentRanking, Mode};
use crate::error::Error;

const SECTIONS: [&str; 6] = ["config", "constants", "stats", "beliefs", "genesis", "history"];

pub fn write_profile(p: &AgentProfile) -> String {
    let mut out = String::new();
    out.push_str("[config]\n");
    out.push_str(&format!("epsilon\t{}\n", p.config.epsilon));
    out.push_str(&format!("lambda\t{}\n", p.config.lambda));
    out.push_str(&format!("prel\t{}\n", p.config.p_rel));
    out.push_str(&format!("mode\t{}\n", p.mode));
    out.push_str("[constants]\n");
    for c in p.constants() {
        out.push_str(c);
        out.push('\n');
    }
    out.push_str("[stats]\n");
    out.push_str(&format!("docs\t{}\t{}\n", p.stats.relevant_docs(), p.stats.nonrelevant_docs()));
    for (k, c) in p.stats.keywords() {
        out.push_str(&format!("{k}\t{}\t{}\n", c.relevant, c.nonrelevant));
    }
    out.push_str("[beliefs]\n");
    out.push_str(&write_belief_base(&p.ranking));
    out.push_str("[genesis]\n");
    out.push_str(&write_belief_base(p.genesis()));
    out.push_str("[history]\n");
    for r in p.history() {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    out
}

fn parse_count(s: &str, lineno: usize) -> Result<u64, Error> {
    s.trim().parse().map_err(|_| format_error(lineno, format!("invalid count {s:?}")))
}

fn parse_f64(s: &str, lineno: usize) -> Result<f64, Error> {
    s.trim().parse().map_err(|_| format_error(lineno, format!("invalid number {s:?}")))
}

pub fn parse_profile(text: &str) -> Result<AgentProfile, Error> {
    let mut sections: BTreeMap<&str, Vec<(usize, &str)>> = BTreeMap::new();
    let mut current: Option<&str> = None;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            if !line.contains('\t') {
                let Some(&name) = SECTIONS.iter().find(|s| **s == name) else {
                    return Err(format_error(lineno, format!("unknown section [{name}]")));
                };
                if sections.insert(name, Vec::new()).is_some() {
                    return Err(format_error(lineno, format!("repeated section [{name}]")));
                }
                current = Some(name);
                continue;
            }
        }
        match current {
            Some(name) => sections.get_mut(name).expect("section opened").push((lineno, line)),
            None if line.trim().is_empty() || line.starts_with('#') => {}
            None => return Err(format_error(lineno, "content before the first section")),
        }
    }
    let section = |name: &str| sections.get(name).cloned().unwrap_or_default();

    let mut config = ClassifierConfig::default();
    let mut mode = Mode::default();
    for (lineno, line) in section("config") {
        if line.trim().is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('\t') else {
            return Err(format_error(lineno, "expected `key<TAB>value`"));
        };
        match key {
            "epsilon" => config.epsilon = parse_f64(value, lineno)?,
            "lambda" => config.lambda = parse_f64(value, lineno)?,
            "prel" => config.p_rel = parse_f64(value, lineno)?,
            "mode" => mode = value.trim().parse().map_err(|e: Error| format_error(lineno, e.to_string()))?,
            other => return Err(format_error(lineno, format!("unknown setting {other:?}"))),
        }
    }
    config.validate()?;

    let constants: Vec<String> = section("constants")
        .into_iter()
        .map(|(_, l)| l.trim().to_string())
        .filter(|l| !l.is_empty())
        .collect();

    let mut docs = None;
    let mut keywords = BTreeMap::new();
    for (lineno, line) in section("stats") {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [name, rel, nrel] = fields[..] else {
            return Err(format_error(lineno, "expected `keyword<TAB>df_rel<TAB>df_nrel`"));
        };
        let (rel, nrel) = (parse_count(rel, lineno)?, parse_count(nrel, lineno)?);
        if docs.is_none() {
            if name != "docs" {
                return Err(format_error(lineno, "stats must start with the `docs` record"));
            }
            docs = Some((rel, nrel));
        } else if keywords.insert(name.to_string(), KeywordCounts { relevant: rel, nonrelevant: nrel }).is_some() {
            return Err(format_error(lineno, format!("duplicate keyword {name:?}")));
        }
    }
    let (rel, nrel) = docs.unwrap_or((0, 0));
    let stats = KeywordStats::from_parts(rel, nrel, keywords)?;

    let mut ranking = parse_records(section("beliefs"))?;
    let mut genesis: EntrenchmentRanking = parse_records(section("genesis"))?;
    ranking.declare_constants(constants.iter().cloned());
    genesis.declare_constants(constants);

    let mut history = Vec::new();
    for (lineno, line) in section("history") {
        if line.trim().is_empty() {
            continue;
        }
        let report: AdjustmentReport =
            serde_json::from_str(line).map_err(|e| format_error(lineno, e.to_string()))?;
        history.push(report);
    }

    Ok(AgentProfile::from_parts(ranking, stats, config, mode, genesis, history))
}
