//! Propositional language over ground atoms `pred(arg)`.
//!
//! Atoms are canonicalized to lowercase on construction, so structural
//! equality of [`Formula`] values is equality of canonical forms. Single
//! variable rule schemas (`forall x. body`) are kept separate from ground
//! formulas and only become propositional once grounded over a constant set.

mod cnf;
mod parse;
mod render;
mod sat;

use std::collections::BTreeSet;
use std::fmt;

pub use cnf::{ClauseSet, Literal};
pub use parse::{parse_formula, parse_schema, parse_sentence, ParseError, ParseErrorKind};
pub use sat::{
    entails, equivalent, is_consistent, is_contingent, is_contradiction, is_tautology,
    minimal_support,
};

use crate::error::Error;

/// Predicate used for keyword atoms, `pkw(k)`.
pub const KEYWORD_PREDICATE: &str = "pkw";

/// Predicate reserved for sentences that are treated as indivisible
/// propositions. Never produced by the parser.
const OPAQUE_PREDICATE: &str = "\u{2200}";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    predicate: String,
    argument: String,
}

impl Atom {
    pub fn new(predicate: &str, argument: &str) -> Result<Self, Error> {
        let predicate = predicate.trim().to_lowercase();
        let argument = argument.trim().to_lowercase();
        if !is_predicate_name(&predicate) {
            return Err(Error::InvalidAtom(format!("bad predicate name {predicate:?}")));
        }
        if argument.is_empty() || argument.chars().any(char::is_control) {
            return Err(Error::InvalidAtom(format!("bad argument {argument:?}")));
        }
        Ok(Atom { predicate, argument })
    }

    /// `pkw(keyword)`.
    pub fn keyword(keyword: &str) -> Result<Self, Error> {
        Atom::new(KEYWORD_PREDICATE, keyword)
    }

    pub(crate) fn opaque(text: String) -> Self {
        Atom { predicate: OPAQUE_PREDICATE.to_string(), argument: text }
    }

    pub fn predicate(&self) -> &str {
        &self.predicate
    }

    pub fn argument(&self) -> &str {
        &self.argument
    }

    pub fn is_opaque(&self) -> bool {
        self.predicate == OPAQUE_PREDICATE
    }

    /// True when the argument can be written without quotes.
    pub fn is_bare_argument(arg: &str) -> bool {
        !arg.is_empty() && arg.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
    }
}

pub(crate) fn is_predicate_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    s != "forall" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(atom: Atom) -> Self {
        Formula::Atom(atom)
    }

    pub fn keyword(keyword: &str) -> Result<Self, Error> {
        Atom::keyword(keyword).map(Formula::Atom)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: Formula) -> Self {
        Formula::Iff(Box::new(self), Box::new(rhs))
    }

    /// Left-nested conjunction; `None` for an empty input.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    /// Negation that strips an outer `!` instead of stacking a second one.
    pub fn negated(&self) -> Formula {
        match self {
            Formula::Not(inner) => (**inner).clone(),
            other => other.clone().not(),
        }
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    /// Arguments of every (non-opaque) atom.
    pub fn collect_constants(&self, out: &mut BTreeSet<String>) {
        let mut atoms = BTreeSet::new();
        self.collect_atoms(&mut atoms);
        out.extend(atoms.into_iter().filter(|a| !a.is_opaque()).map(|a| a.argument));
    }

    /// Replace every atom argument equal to `from` by `to`.
    pub fn substitute(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::Atom(a) if a.argument == from => Formula::Atom(Atom {
                predicate: a.predicate.clone(),
                argument: to.to_string(),
            }),
            Formula::Atom(a) => Formula::Atom(a.clone()),
            Formula::Not(f) => f.substitute(from, to).not(),
            Formula::And(a, b) => a.substitute(from, to).and(b.substitute(from, to)),
            Formula::Or(a, b) => a.substitute(from, to).or(b.substitute(from, to)),
            Formula::Implies(a, b) => a.substitute(from, to).implies(b.substitute(from, to)),
            Formula::Iff(a, b) => a.substitute(from, to).iff(b.substitute(from, to)),
        }
    }

    /// Truth value under an assignment given as the set of true atoms.
    pub fn eval(&self, truth: &dyn Fn(&Atom) -> bool) -> bool {
        match self {
            Formula::Atom(a) => truth(a),
            Formula::Not(f) => !f.eval(truth),
            Formula::And(a, b) => a.eval(truth) && b.eval(truth),
            Formula::Or(a, b) => a.eval(truth) || b.eval(truth),
            Formula::Implies(a, b) => !a.eval(truth) || b.eval(truth),
            Formula::Iff(a, b) => a.eval(truth) == b.eval(truth),
        }
    }
}

/// `forall x. body`, grounded by substituting constants for `x`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Schema {
    variable: String,
    body: Formula,
}

impl Schema {
    pub fn new(variable: &str, body: Formula) -> Result<Self, Error> {
        let variable = variable.trim().to_lowercase();
        if !Atom::is_bare_argument(&variable) {
            return Err(Error::InvalidAtom(format!("bad schema variable {variable:?}")));
        }
        Ok(Schema { variable, body })
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn body(&self) -> &Formula {
        &self.body
    }

    pub fn instantiate(&self, constant: &str) -> Formula {
        self.body.substitute(&self.variable, constant)
    }

    /// One ground instance per constant, in constant order.
    pub fn ground<'a, I>(&self, constants: I) -> Result<Vec<Formula>, Error>
    where
        I: IntoIterator<Item = &'a String>,
    {
        let ground: Vec<Formula> = constants.into_iter().map(|c| self.instantiate(c)).collect();
        if ground.is_empty() {
            return Err(Error::EmptyDomain);
        }
        Ok(ground)
    }

    /// Constants mentioned in the body other than the bound variable.
    pub fn collect_constants(&self, out: &mut BTreeSet<String>) {
        let mut local = BTreeSet::new();
        self.body.collect_constants(&mut local);
        local.remove(&self.variable);
        out.extend(local);
    }
}

/// Anything that can be held as a belief: a ground formula or a schema.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sentence {
    Ground(Formula),
    Schema(Schema),
}

impl Sentence {
    pub fn as_formula(&self) -> Option<&Formula> {
        match self {
            Sentence::Ground(f) => Some(f),
            Sentence::Schema(_) => None,
        }
    }

    pub fn is_schema(&self) -> bool {
        matches!(self, Sentence::Schema(_))
    }

    pub fn collect_constants(&self, out: &mut BTreeSet<String>) {
        match self {
            Sentence::Ground(f) => f.collect_constants(out),
            Sentence::Schema(s) => s.collect_constants(out),
        }
    }

    /// The sentence as an indivisible proposition: ground formulas are
    /// themselves, a schema becomes a single opaque atom.
    pub fn opaque(&self) -> Formula {
        match self {
            Sentence::Ground(f) => f.clone(),
            Sentence::Schema(_) => Formula::Atom(Atom::opaque(self.to_string())),
        }
    }

    /// Ground instances over `constants`. Schemas over an empty domain
    /// contribute nothing.
    pub fn instances(&self, constants: &BTreeSet<String>) -> Vec<Formula> {
        match self {
            Sentence::Ground(f) => vec![f.clone()],
            Sentence::Schema(s) => s.ground(constants).unwrap_or_default(),
        }
    }
}

impl From<Formula> for Sentence {
    fn from(f: Formula) -> Self {
        Sentence::Ground(f)
    }
}

impl From<Schema> for Sentence {
    fn from(s: Schema) -> Self {
        Sentence::Schema(s)
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sentence::Ground(g) => g.fmt(f),
            Sentence::Schema(s) => s.fmt(f),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl std::str::FromStr for Sentence {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sentence(s)
    }
}

impl serde::Serialize for Sentence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Sentence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_sentence(&text).map_err(serde::de::Error::custom)
    }
}
