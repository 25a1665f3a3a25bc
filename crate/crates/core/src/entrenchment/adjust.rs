//! Expansion `B+(a, i)`, contraction `B-(a, i)` and the maxi-adjustment
//! `B*(a, i)` built from them.
//!
//! All three run in the opaque view: a quantified rule is one proposition
//! here, kept or given up as a whole.

use super::{EntrenchmentRanking, Note, Operation, OperationKind, Reasoner, View};
use super::report::AdjustmentReport;
use crate::error::Error;
use crate::logic::{self, Formula, Sentence};
use crate::rank::Rank;

/// Upper bound on entailment checks spent looking for a minimum hitting set
/// at one level before falling back to greedy deletion.
const HITTING_SET_BUDGET: usize = 20_000;

/// Levels larger than this skip enumerating minimal subsets for the report.
const MINIMAL_SUBSET_LIMIT: usize = 10;

fn check_contingent(alpha: &Formula) -> Result<(), Error> {
    if logic::is_contingent(alpha) {
        Ok(())
    } else {
        Err(Error::NotContingent(alpha.to_string()))
    }
}

fn operation(kind: OperationKind, alpha: &Formula, i: Rank) -> Operation {
    Operation { kind, formula: Sentence::Ground(alpha.clone()), rank: i }
}

impl EntrenchmentRanking {
    /// `B+(a, i)`: raise `a` to `i` and carry along every belief `a` is a
    /// reason for. Does not retract anything, so expanding by a formula
    /// whose negation is held yields an inconsistent base.
    pub fn expand(&self, alpha: &Formula, i: Rank) -> Result<(Self, AdjustmentReport), Error> {
        check_contingent(alpha)?;
        self.check_target_rank(alpha, i)?;
        let (next, notes) = self.expand_raw(alpha, i);
        let report =
            AdjustmentReport::diff(operation(OperationKind::Expand, alpha, i), self, &next, notes);
        Ok((next, report))
    }

    /// `B-(a, i)`: lower `a` to at most `i`, giving up just enough at each
    /// rank level on the way down. `i` at or above the current degree of
    /// `a` leaves the ranking unchanged.
    pub fn contract(&self, alpha: &Formula, i: Rank) -> Result<(Self, AdjustmentReport), Error> {
        check_contingent(alpha)?;
        let (next, notes) = self.contract_raw(alpha, i)?;
        let report =
            AdjustmentReport::diff(operation(OperationKind::Contract, alpha, i), self, &next, notes);
        Ok((next, report))
    }

    /// `B*(a, i)`: contraction when `i` does not exceed the current degree
    /// of `a`, otherwise retract `!a` completely and expand by `a` at `i`.
    pub fn maxi_adjust(&self, alpha: &Formula, i: Rank) -> Result<(Self, AdjustmentReport), Error> {
        check_contingent(alpha)?;
        self.check_target_rank(alpha, i)?;
        let jm = self.degree_in(View::Opaque, alpha);
        let (next, notes) = if i <= jm {
            self.contract_raw(alpha, i)?
        } else {
            let (retracted, mut notes) = self.contract_raw(&alpha.clone().not(), Rank::ZERO)?;
            let (expanded, more) = retracted.expand_raw(alpha, i);
            notes.extend(more);
            (expanded, notes)
        };
        let report = AdjustmentReport::diff(
            operation(OperationKind::MaxiAdjust, alpha, i),
            self,
            &next,
            notes,
        );
        Ok((next, report))
    }

    fn check_target_rank(&self, alpha: &Formula, i: Rank) -> Result<(), Error> {
        if i.is_max() && !self.is_protected(&Sentence::Ground(alpha.clone())) {
            return Err(Error::MaximalRank(alpha.to_string()));
        }
        Ok(())
    }

    fn expand_raw(&self, alpha: &Formula, i: Rank) -> (Self, Vec<Note>) {
        let r = self.reasoner(View::Opaque, &[alpha]);
        let mut next = EntrenchmentRanking { entries: Default::default(), constants: self.constants.clone() };
        let mut notes = Vec::new();
        let mut alpha_seen = false;
        let alpha_sentence = Sentence::Ground(alpha.clone());
        for e in self.entries.values() {
            let mut entry = e.clone();
            if e.sentence == alpha_sentence {
                alpha_seen = true;
            }
            if e.rank > i {
                next.insert_entry(entry);
                continue;
            }
            let Some(beta) = r.goal(&e.sentence) else {
                next.insert_entry(entry);
                continue;
            };
            if logic::equivalent(alpha, &beta) {
                entry.rank = i;
            } else {
                let d = self.degree_with(&r, &alpha.clone().implies(beta));
                if i < d {
                    entry.rank = i;
                    notes.push(Note::Reason { formula: e.sentence.clone(), degree: d });
                } else {
                    if d != e.rank {
                        notes.push(Note::Inherited {
                            formula: e.sentence.clone(),
                            before: e.rank,
                            degree: d,
                        });
                    }
                    entry.rank = d;
                }
            }
            if !entry.rank.is_zero() {
                next.insert_entry(entry);
            }
        }
        if !alpha_seen && !i.is_zero() {
            next.set_rank(&alpha_sentence, i);
        }
        (next, notes)
    }

    fn contract_raw(&self, alpha: &Formula, i: Rank) -> Result<(Self, Vec<Note>), Error> {
        let r = self.reasoner(View::Opaque, &[alpha]);
        let jm = self.degree_with(&r, alpha);
        if i >= jm {
            return Ok((self.clone(), vec![Note::Unchanged { degree: jm }]));
        }
        let protected: Vec<&Sentence> =
            self.entries.values().filter(|e| e.protected).map(|e| &e.sentence).collect();
        if r.entails(protected, alpha) {
            return Err(Error::ProtectedConflict(alpha.to_string()));
        }

        let alpha_only = [Sentence::Ground(alpha.clone())];
        let mut next = self.clone();
        let mut notes = Vec::new();
        for level in self.levels().into_iter().filter(|&l| l > i && l <= jm) {
            let members: Vec<&Sentence> = self
                .entries
                .values()
                .filter(|e| e.rank == level && !e.protected)
                .map(|e| &e.sentence)
                .collect();
            let pinned: Vec<&Sentence> = self
                .entries
                .values()
                .filter(|e| e.rank == level && e.protected)
                .map(|e| &e.sentence)
                .collect();

            let higher: Vec<Sentence> = next.cut_above(level).into_iter().cloned().collect();
            let minimal_subsets = (members.len() <= MINIMAL_SUBSET_LIMIT)
                .then(|| minimal_entailing_subsets(&r, &higher, &pinned, &members, alpha));

            let (implied, candidates): (Vec<&Sentence>, Vec<&Sentence>) =
                members.iter().partition(|s| r.entails_sentence(alpha_only.iter(), s));
            for s in &implied {
                next.set_rank(s, i);
            }

            let base: Vec<&Sentence> = higher.iter().chain(pinned.iter().copied()).collect();
            let (hitting, exhaustive) = min_hitting_set(&r, &base, &candidates, alpha);
            for s in &hitting {
                next.set_rank(s, i);
            }
            notes.push(Note::Level {
                level,
                implied: implied.into_iter().cloned().collect(),
                minimal_subsets,
                hitting_set: hitting.into_iter().cloned().collect(),
                exhaustive,
            });
        }
        if !i.is_zero() {
            next.restore_per1(&r, &mut notes);
        }
        debug_assert!(!r.entails(next.cut_above(i), alpha));
        Ok((next, notes))
    }

    /// Lift every entry that strictly higher entries already derive to the
    /// degree they give it. Lowering an implied sentence to `i` can leave it
    /// below a surviving premise; lifting it back leaves the content of every
    /// cut, and so every degree, unchanged.
    fn restore_per1(&mut self, r: &Reasoner, notes: &mut Vec<Note>) {
        let levels = self.levels();
        let mut lifted = Vec::new();
        for e in self.entries.values().filter(|e| !e.protected) {
            let Some(goal) = r.goal(&e.sentence) else { continue };
            let derived = levels
                .iter()
                .copied()
                .take_while(|&j| j > e.rank)
                .find(|&j| r.entails(self.cut_at_least(j), &goal));
            if let Some(j) = derived {
                lifted.push((e.sentence.clone(), e.rank, j));
            }
        }
        for (formula, before, degree) in lifted {
            self.set_rank(&formula, degree);
            notes.push(Note::Restored { formula, before, degree });
        }
    }
}

/// Smallest subset `H` of `candidates` such that `base ∪ (candidates \ H)`
/// no longer entails `goal`; ties go to the lexicographically first subset
/// of the (text-ordered) candidates. Falls back to greedy restoration when
/// the exact search runs out of budget; the flag reports which one ran.
fn min_hitting_set<'a>(
    r: &Reasoner,
    base: &[&Sentence],
    candidates: &[&'a Sentence],
    goal: &Formula,
) -> (Vec<&'a Sentence>, bool) {
    let n = candidates.len();
    let blocks = |removed: &[usize]| {
        let kept = candidates
            .iter()
            .enumerate()
            .filter(|(k, _)| !removed.contains(k))
            .map(|(_, s)| *s);
        !r.entails(base.iter().copied().chain(kept), goal)
    };
    let mut spent = 0usize;
    for size in 0..=n {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            spent += 1;
            if spent > HITTING_SET_BUDGET {
                return (greedy_hitting_set(&blocks, candidates), false);
            }
            if blocks(&combo) {
                return (combo.into_iter().map(|k| candidates[k]).collect(), true);
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    unreachable!("removing every candidate always blocks the derivation")
}

fn greedy_hitting_set<'a>(
    blocks: &dyn Fn(&[usize]) -> bool,
    candidates: &[&'a Sentence],
) -> Vec<&'a Sentence> {
    let mut removed: Vec<usize> = (0..candidates.len()).collect();
    let mut k = 0;
    while k < removed.len() {
        let mut trial = removed.clone();
        trial.remove(k);
        if blocks(&trial) {
            removed = trial;
        } else {
            k += 1;
        }
    }
    removed.into_iter().map(|k| candidates[k]).collect()
}

/// Advance `combo` to the next k-combination of `0..n` in lexicographic
/// order; false once exhausted.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for pos in (0..k).rev() {
        if combo[pos] < n - k + pos {
            combo[pos] += 1;
            for later in pos + 1..k {
                combo[later] = combo[later - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every inclusion-minimal `G ⊆ members` with `higher ∪ pinned ∪ G |= goal`.
fn minimal_entailing_subsets(
    r: &Reasoner,
    higher: &[Sentence],
    pinned: &[&Sentence],
    members: &[&Sentence],
    goal: &Formula,
) -> Vec<Vec<Sentence>> {
    let n = members.len();
    let mut masks: Vec<u32> = (0u32..(1 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut found: Vec<u32> = Vec::new();
    for mask in masks {
        if found.iter().any(|f| mask & f == *f) {
            continue;
        }
        let subset = (0..n).filter(|k| mask & (1 << k) != 0).map(|k| members[k]);
        let premises = higher.iter().chain(pinned.iter().copied()).chain(subset);
        if r.entails(premises, goal) {
            found.push(mask);
        }
    }
    found
        .into_iter()
        .map(|mask| (0..n).filter(|k| mask & (1 << k) != 0).map(|k| members[k].clone()).collect())
        .collect()
}
