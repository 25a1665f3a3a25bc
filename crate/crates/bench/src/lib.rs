//! Deterministic workloads shared by the benches.

use entrench_core::agent::{Document, Judgment};
use entrench_core::{parse_formula, parse_sentence, EntrenchmentRanking, Formula, Rank};

pub const VOCAB: [&str; 12] = [
    "business", "commerce", "art", "sculpture", "system", "insurance", "music", "sport", "travel", "finance",
    "health", "science",
];

/// Implication chain `p(c0) -> p(c1) -> ... -> p(cn)` with `p(c0)` at the top.
pub fn chain(n: usize) -> (Vec<Formula>, Formula) {
    let mut premises = vec![parse_formula("p(c0)").unwrap()];
    for i in 0..n {
        premises.push(parse_formula(&format!("p(c{i}) -> p(c{})", i + 1)).unwrap());
    }
    (premises, parse_formula(&format!("p(c{n})")).unwrap())
}

/// The chain as a ranking, ranks decreasing along it.
pub fn chain_ranking(n: usize) -> EntrenchmentRanking {
    let mut b = EntrenchmentRanking::new();
    let step = 900 / (n as u32 + 1);
    b.insert(parse_sentence("p(c0)").unwrap(), Rank::from_milli(950)).unwrap();
    for i in 0..n {
        let s = parse_sentence(&format!("p(c{i}) -> p(c{})", i + 1)).unwrap();
        b.insert(s, Rank::from_milli(900 - step * i as u32)).unwrap();
    }
    b
}

pub fn domain() -> EntrenchmentRanking {
    let mut b = EntrenchmentRanking::new();
    b.protect(parse_sentence("pkw(business) <-> pkw(commerce)").unwrap());
    b.protect(parse_sentence("pkw(sculpture) -> pkw(art)").unwrap());
    b
}

/// `docs` labeled documents cycling through the vocabulary; the first half of
/// the vocabulary leans relevant.
pub fn corpus(docs: usize) -> Vec<(Document, Judgment)> {
    (0..docs)
        .map(|i| {
            let kws: Vec<&str> = (0..3).map(|k| VOCAB[(i * 5 + k * 7) % VOCAB.len()]).collect();
            let lean = (i * 5) % VOCAB.len() < VOCAB.len() / 2;
            let j = if lean ^ (i % 7 == 0) { Judgment::Relevant } else { Judgment::Nonrelevant };
            (Document::new(&format!("d{i}"), kws).unwrap(), j)
        })
        .collect()
}
