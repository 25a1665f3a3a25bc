//! Content-level diagnostics: inconsistency degree, the consistent cut, and
//! the (C-R) contraction used as a drastic-change baseline.

use super::{EntrenchmentRanking, View};
use crate::error::Error;
use crate::logic::{self, Formula, Sentence};
use crate::rank::Rank;

impl EntrenchmentRanking {
    /// Largest rank `j` such that the entries ranked at least `j` are
    /// jointly inconsistent once schemas are instantiated; 0 when the
    /// content is consistent.
    pub fn inconsistency_degree(&self) -> Rank {
        let r = self.reasoner(View::Grounded, &[]);
        for j in self.levels() {
            if !r.consistent(self.cut_at_least(j)) {
                return j;
            }
        }
        Rank::ZERO
    }

    /// Entries ranked strictly above the inconsistency degree. Always
    /// consistent.
    pub fn consistent_cut(&self) -> Vec<&Sentence> {
        self.cut_above(self.inconsistency_degree())
    }

    /// Contraction by the (C-R) condition: keep only beliefs strictly more
    /// entrenched than `formula`. Tautologies leave the ranking unchanged.
    pub fn cr_contract(&self, formula: &Formula) -> Result<Self, Error> {
        if logic::is_tautology(formula) {
            return Ok(self.clone());
        }
        if logic::is_contradiction(formula) {
            return Err(Error::NotContingent(formula.to_string()));
        }
        let d = self.degree(formula);
        Ok(self.restricted_above(d))
    }

    /// Revision through the Levi identity over (C-R): contract by the
    /// negation, then add `formula` at `rank`.
    pub fn cr_revise(&self, formula: &Formula, rank: Rank) -> Result<Self, Error> {
        if !logic::is_contingent(formula) {
            return Err(Error::NotContingent(formula.to_string()));
        }
        let mut out = self.cr_contract(&formula.clone().not())?;
        out.set_rank(&Sentence::Ground(formula.clone()), rank);
        Ok(out)
    }
}
