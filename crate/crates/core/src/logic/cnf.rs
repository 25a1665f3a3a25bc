//! Naive clause-form conversion: negation pushed to atoms, then disjunction
//! distributed over conjunction. No auxiliary variables are introduced, so a
//! clause set is logically equivalent to its source formulas.

use std::collections::{BTreeSet, HashMap};

use super::{Atom, Formula};

/// Signed variable index: `+v` / `-v` for variable `v >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(i32);

impl Literal {
    pub fn var(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn negate(self) -> Literal {
        Literal(-self.0)
    }
}

type Clause = Vec<Literal>;

#[derive(Clone, Debug, Default)]
pub struct ClauseSet {
    atoms: Vec<Atom>,
    index: HashMap<Atom, i32>,
    clauses: BTreeSet<Clause>,
    has_empty: bool,
}

impl ClauseSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_formulas<'a, I: IntoIterator<Item = &'a Formula>>(formulas: I) -> Self {
        let mut set = Self::new();
        for f in formulas {
            set.add(f);
        }
        set
    }

    pub fn add(&mut self, formula: &Formula) {
        for clause in self.convert(formula, true) {
            if clause.is_empty() {
                self.has_empty = true;
            }
            self.clauses.insert(clause);
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn clauses(&self) -> impl Iterator<Item = &[Literal]> {
        self.clauses.iter().map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn num_vars(&self) -> usize {
        self.atoms.len()
    }

    pub(crate) fn contains_empty_clause(&self) -> bool {
        self.has_empty
    }

    fn literal(&mut self, atom: &Atom, positive: bool) -> Literal {
        let v = match self.index.get(atom) {
            Some(&v) => v,
            None => {
                self.atoms.push(atom.clone());
                let v = self.atoms.len() as i32;
                self.index.insert(atom.clone(), v);
                v
            }
        };
        Literal(if positive { v } else { -v })
    }

    fn convert(&mut self, f: &Formula, positive: bool) -> Vec<Clause> {
        match (f, positive) {
            (Formula::Atom(a), pos) => vec![vec![self.literal(a, pos)]],
            (Formula::Not(g), pos) => self.convert(g, !pos),
            (Formula::And(a, b), true) | (Formula::Or(a, b), false) => {
                let mut out = self.convert(a, positive);
                out.extend(self.convert(b, positive));
                out
            }
            (Formula::And(a, b), false) | (Formula::Or(a, b), true) => {
                let l = self.convert(a, positive);
                let r = self.convert(b, positive);
                product(&l, &r)
            }
            (Formula::Implies(a, b), true) => {
                let l = self.convert(a, false);
                let r = self.convert(b, true);
                product(&l, &r)
            }
            (Formula::Implies(a, b), false) => {
                let mut out = self.convert(a, true);
                out.extend(self.convert(b, false));
                out
            }
            (Formula::Iff(a, b), pos) => {
                let a_t = self.convert(a, true);
                let a_f = self.convert(a, false);
                let b_t = self.convert(b, true);
                let b_f = self.convert(b, false);
                let mut out;
                if pos {
                    out = product(&a_f, &b_t);
                    out.extend(product(&a_t, &b_f));
                } else {
                    out = product(&a_t, &b_t);
                    out.extend(product(&a_f, &b_f));
                }
                out
            }
        }
    }
}

/// Pairwise clause unions, dropping tautological results.
fn product(lhs: &[Clause], rhs: &[Clause]) -> Vec<Clause> {
    let mut out = Vec::with_capacity(lhs.len() * rhs.len());
    for l in lhs {
        'pair: for r in rhs {
            let mut merged: Clause = l.iter().chain(r.iter()).copied().collect();
            merged.sort_unstable();
            merged.dedup();
            for lit in &merged {
                if merged.binary_search(&lit.negate()).is_ok() {
                    continue 'pair;
                }
            }
            out.push(merged);
        }
    }
    out
}
