//! Fixtures shared by the integration targets, and oracles that do not go
//! through the engine under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use entrench_core::agent::{Document, Judgment};
use entrench_core::logic::{Atom, Formula};
use entrench_core::{parse_formula, parse_sentence, EntrenchmentRanking, Rank};
use rand::rngs::StdRng;
use rand::Rng;

pub fn f(text: &str) -> Formula {
    parse_formula(text).unwrap()
}

pub fn milli(m: u32) -> Rank {
    Rank::from_milli(m)
}

/// The two rules every keyword example starts from, both at rank 1.
pub fn domain() -> EntrenchmentRanking {
    let mut b = EntrenchmentRanking::new();
    b.protect(parse_sentence("pkw(business) <-> pkw(commerce)").unwrap());
    b.protect(parse_sentence("pkw(sculpture) -> pkw(art)").unwrap());
    b
}

pub fn with_beliefs(rows: &[(&str, u32)]) -> EntrenchmentRanking {
    let mut b = domain();
    for &(text, m) in rows {
        b.insert(parse_sentence(text).unwrap(), milli(m)).unwrap();
    }
    b
}

pub fn table2_before() -> EntrenchmentRanking {
    with_beliefs(&[("pkw(business)", 856), ("!pkw(sculpture)", 785)])
}

pub fn table2_after() -> EntrenchmentRanking {
    with_beliefs(&[("pkw(business)", 856), ("!pkw(sculpture)", 856), ("!pkw(art)", 856)])
}

pub fn table3_before() -> EntrenchmentRanking {
    table2_after()
}

pub fn table3_after() -> EntrenchmentRanking {
    with_beliefs(&[("pkw(business)", 856), ("pkw(sculpture)", 785)])
}

pub fn table4_before() -> EntrenchmentRanking {
    table3_after()
}

pub fn table4_after() -> EntrenchmentRanking {
    domain()
}

/// `(text, rank)` rows of a ranking, most entrenched first.
pub fn rows(b: &EntrenchmentRanking) -> Vec<(String, String)> {
    b.sorted_entries().iter().map(|e| (e.sentence.to_string(), e.rank.to_string())).collect()
}

pub fn phi() -> Document {
    Document::new("phi", ["business", "art"]).unwrap()
}

pub fn varphi() -> Document {
    Document::new("varphi", ["sculpture", "art"]).unwrap()
}

pub fn psi() -> Document {
    Document::new("psi", ["business", "commerce"]).unwrap()
}

pub fn tweety_base() -> EntrenchmentRanking {
    EntrenchmentRanking::from_pairs([
        ("forall x. penguin(x) -> bird(x)", 0.9),
        ("forall x. penguin(x) -> !fly(x)", 0.7),
        ("forall x. bird(x) -> fly(x)", 0.4),
    ])
    .unwrap()
}

pub fn cr_base() -> EntrenchmentRanking {
    EntrenchmentRanking::from_pairs([
        ("pkw(business)", 0.9),
        ("pkw(commerce)", 0.8),
        ("pkw(sculpture)", 0.7),
        ("pkw(art)", 0.6),
    ])
    .unwrap()
}

pub const TABLE1_KEYWORDS: [(&str, f64); 6] = [
    ("business", 0.856),
    ("commerce", 0.836),
    ("system", 0.0),
    ("art", -0.856),
    ("sculpture", -0.785),
    ("insurance", 0.401),
];

/// Five relevant and five non-relevant documents realizing the keyword
/// frequencies behind the first table.
pub fn table1_corpus() -> Vec<(Document, Judgment)> {
    let rel: [&[&str]; 5] = [
        &["business", "commerce", "system", "insurance"],
        &["business", "commerce", "system"],
        &["business", "commerce"],
        &["business", "commerce"],
        &["business"],
    ];
    let nrel: [&[&str]; 5] = [
        &["art", "sculpture", "system"],
        &["art", "sculpture", "system"],
        &["art", "sculpture"],
        &["art"],
        &["art"],
    ];
    let mut out = Vec::new();
    for (i, kws) in rel.iter().enumerate() {
        out.push((Document::new(&format!("r{i}"), kws.iter().copied()).unwrap(), Judgment::Relevant));
    }
    for (i, kws) in nrel.iter().enumerate() {
        out.push((Document::new(&format!("n{i}"), kws.iter().copied()).unwrap(), Judgment::Nonrelevant));
    }
    out
}

/// `(df_rel, df_nrel)` per keyword, counted directly.
pub fn count_frequencies(corpus: &[(Document, Judgment)]) -> BTreeMap<String, (u64, u64)> {
    let mut out: BTreeMap<String, (u64, u64)> = BTreeMap::new();
    for (d, j) in corpus {
        for k in d.keywords() {
            let c = out.entry(k.clone()).or_default();
            match j {
                Judgment::Relevant => c.0 += 1,
                Judgment::Nonrelevant => c.1 += 1,
            }
        }
    }
    out
}

// Truth-table oracle.

pub fn atoms_of(formulas: &[&Formula]) -> Vec<Atom> {
    let mut set = BTreeSet::new();
    for f in formulas {
        f.collect_atoms(&mut set);
    }
    set.into_iter().collect()
}

/// Every assignment over the atoms of `formulas`, as a closure-evaluable map.
fn assignments(atoms: &[Atom]) -> impl Iterator<Item = BTreeMap<Atom, bool>> + '_ {
    assert!(atoms.len() <= 16, "oracle is exponential");
    (0u32..1 << atoms.len()).map(move |bits| {
        atoms.iter().enumerate().map(|(i, a)| (a.clone(), bits >> i & 1 == 1)).collect()
    })
}

pub fn tt_entails(premises: &[&Formula], goal: &Formula) -> bool {
    let mut all: Vec<&Formula> = premises.to_vec();
    all.push(goal);
    let atoms = atoms_of(&all);
    let holds = assignments(&atoms).all(|v| {
        let truth = |a: &Atom| v[a];
        !premises.iter().all(|p| p.eval(&truth)) || goal.eval(&truth)
    });
    holds
}

pub fn tt_consistent(formulas: &[&Formula]) -> bool {
    let atoms = atoms_of(formulas);
    let found = assignments(&atoms).any(|v| {
        let truth = |a: &Atom| v[a];
        formulas.iter().all(|p| p.eval(&truth))
    });
    found
}

pub fn tt_contingent(formula: &Formula) -> bool {
    tt_consistent(&[formula]) && tt_consistent(&[&formula.clone().not()])
}

// Random generation for the seeded acceptance runs.

pub fn random_atom(rng: &mut StdRng, atoms: usize) -> Formula {
    Formula::atom(Atom::new("p", &format!("c{}", rng.gen_range(0..atoms))).unwrap())
}

pub fn random_formula(rng: &mut StdRng, atoms: usize, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return random_atom(rng, atoms);
    }
    let a = random_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..6) {
        0 => a.not(),
        1 => a.and(random_formula(rng, atoms, depth - 1)),
        2 => a.or(random_formula(rng, atoms, depth - 1)),
        3 => a.implies(random_formula(rng, atoms, depth - 1)),
        4 => a.iff(random_formula(rng, atoms, depth - 1)),
        _ => a,
    }
}

/// A literal or a short clause; adjustment sequences over these stay small.
pub fn random_belief(rng: &mut StdRng, atoms: usize) -> Formula {
    let lit = |rng: &mut StdRng| {
        let a = random_atom(rng, atoms);
        if rng.gen_bool(0.5) {
            a.not()
        } else {
            a
        }
    };
    match rng.gen_range(0..4) {
        0 => lit(rng).or(lit(rng)),
        1 => lit(rng).implies(lit(rng)),
        _ => lit(rng),
    }
}

pub fn random_rank(rng: &mut StdRng) -> Rank {
    milli(rng.gen_range(0..1000))
}

/// A labeled corpus over a small keyword vocabulary.
pub fn random_corpus(rng: &mut StdRng, docs: usize) -> Vec<(Document, Judgment)> {
    const VOCAB: [&str; 8] = ["business", "commerce", "art", "sculpture", "system", "insurance", "music", "sport"];
    (0..docs)
        .map(|i| {
            let n = rng.gen_range(1..=4);
            let kws: Vec<&str> = (0..n).map(|_| VOCAB[rng.gen_range(0..VOCAB.len())]).collect();
            let j = if rng.gen_bool(0.5) { Judgment::Relevant } else { Judgment::Nonrelevant };
            (Document::new(&format!("d{i}"), kws).unwrap(), j)
        })
        .collect()
}
