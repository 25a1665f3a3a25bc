use std::collections::BTreeSet;

use crate::logic::{self, Formula, Sentence};

/// How schemas take part in a classical query.
///
/// Transmutations see every sentence of the base as an indivisible
/// proposition (`Opaque`), so a quantified rule is kept or given up as a
/// whole. Queries about the content of a ranking instantiate schemas over
/// the known constants (`Grounded`). For rankings without schemas the two
/// views coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum View {
    Opaque,
    Grounded,
}

pub(crate) struct Reasoner {
    view: View,
    constants: BTreeSet<String>,
}

impl Reasoner {
    pub fn new<'a, S, F>(view: View, declared: &BTreeSet<String>, sentences: S, extra: F) -> Self
    where
        S: IntoIterator<Item = &'a Sentence>,
        F: IntoIterator<Item = &'a Formula>,
    {
        let mut constants = BTreeSet::new();
        if view == View::Grounded {
            constants.extend(declared.iter().cloned());
            for s in sentences {
                s.collect_constants(&mut constants);
            }
            for f in extra {
                f.collect_constants(&mut constants);
            }
        }
        Reasoner { view, constants }
    }

    pub fn lower_into(&self, s: &Sentence, out: &mut Vec<Formula>) {
        match self.view {
            View::Opaque => out.push(s.opaque()),
            View::Grounded => out.extend(s.instances(&self.constants)),
        }
    }

    fn lower_all<'a, I: IntoIterator<Item = &'a Sentence>>(&self, premises: I) -> Vec<Formula> {
        let mut out = Vec::new();
        for s in premises {
            self.lower_into(s, &mut out);
        }
        out
    }

    /// The sentence as a single goal formula; `None` when it has no
    /// instances and so holds vacuously.
    pub fn goal(&self, s: &Sentence) -> Option<Formula> {
        let mut parts = Vec::new();
        self.lower_into(s, &mut parts);
        Formula::conjunction(parts)
    }

    pub fn entails<'a, I: IntoIterator<Item = &'a Sentence>>(&self, premises: I, goal: &Formula) -> bool {
        logic::entails(&self.lower_all(premises), goal)
    }

    pub fn entails_sentence<'a, I>(&self, premises: I, goal: &Sentence) -> bool
    where
        I: IntoIterator<Item = &'a Sentence>,
    {
        match self.goal(goal) {
            Some(g) => self.entails(premises, &g),
            None => true,
        }
    }

    pub fn consistent<'a, I: IntoIterator<Item = &'a Sentence>>(&self, premises: I) -> bool {
        logic::is_consistent(&self.lower_all(premises))
    }

    /// Inclusion-minimal subset of `premises` entailing `goal`, deleting in
    /// the given order.
    pub fn support<'a>(&self, premises: &[&'a Sentence], goal: &Formula) -> Option<Vec<&'a Sentence>> {
        if !self.entails(premises.iter().copied(), goal) {
            return None;
        }
        let mut keep: Vec<&Sentence> = premises.to_vec();
        let mut i = 0;
        while i < keep.len() {
            let trial = keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| *s);
            if self.entails(trial, goal) {
                keep.remove(i);
            } else {
                i += 1;
            }
        }
        Some(keep)
    }
}
