//! Fixtures for the CLI and API targets.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

use entrench_core::classifier::{KeywordCounts, KeywordStats};
use entrench_core::format::write_profile;
use entrench_core::{parse_sentence, AgentProfile, ClassifierConfig, EntrenchmentRanking, Mode, Rank};

pub const DOMAIN: &str = "pkw(business) <-> pkw(commerce)\npkw(sculpture) -> pkw(art)\n";

pub fn with_beliefs(rows: &[(&str, u32)]) -> EntrenchmentRanking {
    let mut b = EntrenchmentRanking::new();
    b.protect(parse_sentence("pkw(business) <-> pkw(commerce)").unwrap());
    b.protect(parse_sentence("pkw(sculpture) -> pkw(art)").unwrap());
    for &(text, m) in rows {
        b.insert(parse_sentence(text).unwrap(), Rank::from_milli(m)).unwrap();
    }
    b
}

pub fn table2_before() -> EntrenchmentRanking {
    with_beliefs(&[("pkw(business)", 856), ("!pkw(sculpture)", 785)])
}

pub fn table2_after() -> EntrenchmentRanking {
    with_beliefs(&[("pkw(business)", 856), ("!pkw(sculpture)", 856), ("!pkw(art)", 856)])
}

pub fn table3_after() -> EntrenchmentRanking {
    with_beliefs(&[("pkw(business)", 856), ("pkw(sculpture)", 785)])
}

fn stats(relevant: u64, nonrelevant: u64, counts: &[(&str, u64, u64)]) -> KeywordStats {
    let keywords: BTreeMap<String, KeywordCounts> = counts
        .iter()
        .map(|&(k, r, n)| (k.to_string(), KeywordCounts { relevant: r, nonrelevant: n }))
        .collect();
    KeywordStats::from_parts(relevant, nonrelevant, keywords).unwrap()
}

fn seeded(ranking: EntrenchmentRanking, stats: KeywordStats) -> AgentProfile {
    AgentProfile::from_parts(ranking.clone(), stats, ClassifierConfig::default(), Mode::Paper, ranking, Vec::new())
}

/// Table 2 "Before", with counts under which five non-relevant `art`
/// documents raise `!pkw(art)` to 0.856.
pub fn example1_profile() -> AgentProfile {
    seeded(table2_before(), stats(5, 3, &[("business", 5, 0), ("sculpture", 0, 3)]))
}

/// Table 3 "Before", with counts under which one relevant `sculpture`
/// document induces `pkw(sculpture)` at 0.785.
pub fn example2_profile() -> AgentProfile {
    seeded(table2_after(), stats(5, 4, &[("business", 5, 0), ("sculpture", 2, 0)]))
}

pub fn t1_profile() -> AgentProfile {
    seeded(table2_after(), stats(0, 0, &[]))
}

pub fn write_profile_file(path: &Path, profile: &AgentProfile) {
    std::fs::write(path, write_profile(profile)).unwrap();
}

/// Five relevant and five non-relevant documents, then the three probes.
pub const TABLE1_CORPUS: &str = "\
r0\tR\tbusiness,commerce,system,insurance
r1\tR\tbusiness,commerce,system
r2\tR\tbusiness,commerce
r3\tR\tbusiness,commerce
r4\tR\tbusiness
n0\tN\tart,sculpture,system
n1\tN\tart,sculpture,system
n2\tN\tart,sculpture
n3\tN\tart
n4\tN\tart
phi\t?\tbusiness,art
varphi\t?\tsculpture,art
psi\t?\tbusiness,commerce
";

pub const PROBES: &str = "phi\t?\tbusiness,art\nvarphi\t?\tsculpture,art\npsi\t?\tbusiness,commerce\n";

pub const ART_FEEDBACK: &str = "a0\tN\tart\na1\tN\tart\na2\tN\tart\na3\tN\tart\na4\tN\tart\n";

pub fn entrench(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entrench"))
        .current_dir(dir)
        .env_remove("ENTRENCH_HOME")
        .env_remove("ENTRENCH_TOKEN")
        .args(args)
        .output()
        .unwrap()
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}
