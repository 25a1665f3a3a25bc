//! DPLL satisfiability and the entailment queries built on it.
//!
//! Entailment is decided by refutation: `premises |= goal` iff
//! `premises ∪ {!goal}` has no model.

use super::cnf::{ClauseSet, Literal};
use super::Formula;

struct Solver<'a> {
    clauses: Vec<&'a [Literal]>,
    assignment: Vec<i8>,
    trail: Vec<usize>,
}

impl<'a> Solver<'a> {
    fn value(&self, lit: Literal) -> i8 {
        let v = self.assignment[lit.var()];
        if lit.is_positive() {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, lit: Literal) {
        self.assignment[lit.var()] = if lit.is_positive() { 1 } else { -1 };
        self.trail.push(lit.var());
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let v = self.trail.pop().unwrap();
            self.assignment[v] = 0;
        }
    }

    /// Unit propagation to fixpoint. Returns false on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for i in 0..self.clauses.len() {
                let clause = self.clauses[i];
                let mut unassigned = None;
                let mut open = 0;
                let mut satisfied = false;
                for &lit in clause {
                    match self.value(lit) {
                        1 => {
                            satisfied = true;
                            break;
                        }
                        0 => {
                            open += 1;
                            unassigned = Some(lit);
                        }
                        _ => {}
                    }
                }
                if satisfied {
                    continue;
                }
                match open {
                    0 => return false,
                    1 => {
                        self.assign(unassigned.unwrap());
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn branch_literal(&self) -> Option<Literal> {
        self.clauses
            .iter()
            .filter(|c| !c.iter().any(|&l| self.value(l) == 1))
            .flat_map(|c| c.iter())
            .find(|&&l| self.value(l) == 0)
            .copied()
    }

    fn solve(&mut self) -> bool {
        if !self.propagate() {
            return false;
        }
        let Some(lit) = self.branch_literal() else {
            return true;
        };
        for choice in [lit, lit.negate()] {
            let mark = self.trail.len();
            self.assign(choice);
            if self.solve() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

impl ClauseSet {
    pub fn is_satisfiable(&self) -> bool {
        if self.contains_empty_clause() {
            return false;
        }
        let mut solver = Solver {
            clauses: self.clauses().collect(),
            assignment: vec![0; self.num_vars() + 1],
            trail: Vec::new(),
        };
        solver.solve()
    }
}

pub fn is_consistent<'a, I: IntoIterator<Item = &'a Formula>>(formulas: I) -> bool {
    ClauseSet::from_formulas(formulas).is_satisfiable()
}

pub fn entails<'a, I: IntoIterator<Item = &'a Formula>>(premises: I, goal: &Formula) -> bool {
    let mut set = ClauseSet::from_formulas(premises);
    set.add(&goal.clone().not());
    !set.is_satisfiable()
}

pub fn is_tautology(f: &Formula) -> bool {
    entails(std::iter::empty(), f)
}

pub fn is_contradiction(f: &Formula) -> bool {
    !is_consistent([f])
}

pub fn is_contingent(f: &Formula) -> bool {
    !is_tautology(f) && !is_contradiction(f)
}

pub fn equivalent(a: &Formula, b: &Formula) -> bool {
    entails([a], b) && entails([b], a)
}

/// An inclusion-minimal subset of `premises` (as indices, ascending) that
/// still entails `goal`, found by deleting premises in order. `None` when
/// the full set does not entail the goal.
pub fn minimal_support(premises: &[Formula], goal: &Formula) -> Option<Vec<usize>> {
    if !entails(premises, goal) {
        return None;
    }
    let mut keep: Vec<usize> = (0..premises.len()).collect();
    let mut i = 0;
    while i < keep.len() {
        let trial: Vec<&Formula> =
            keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &k)| &premises[k]).collect();
        if entails(trial, goal) {
            keep.remove(i);
        } else {
            i += 1;
        }
    }
    Some(keep)
}
