//! Canonical text rendering with the minimum number of parentheses needed
//! for the parser to rebuild the same tree.

use std::fmt;

use super::{Atom, Formula, Schema};

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(_) => 5,
        Formula::Atom(_) => 6,
    }
}

fn write_child(
    f: &mut fmt::Formatter<'_>,
    child: &Formula,
    parent: u8,
    same_level_needs_parens: bool,
) -> fmt::Result {
    let p = precedence(child);
    if p < parent || (p == parent && same_level_needs_parens) {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Atom::is_bare_argument(self.argument()) {
            write!(f, "{}({})", self.predicate(), self.argument())
        } else {
            f.write_str(self.predicate())?;
            f.write_str("(\"")?;
            for c in self.argument().chars() {
                if c == '"' || c == '\\' {
                    f.write_str("\\")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str("\")")
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lhs, rhs, op, right_assoc) = match self {
            Formula::Atom(a) => return a.fmt(f),
            Formula::Not(inner) => {
                f.write_str("!")?;
                return write_child(f, inner, 5, false);
            }
            Formula::And(a, b) => (a, b, " & ", false),
            Formula::Or(a, b) => (a, b, " | ", false),
            Formula::Implies(a, b) => (a, b, " -> ", true),
            Formula::Iff(a, b) => (a, b, " <-> ", true),
        };
        let p = precedence(self);
        write_child(f, lhs, p, right_assoc)?;
        f.write_str(op)?;
        write_child(f, rhs, p, !right_assoc)
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "forall {}. {}", self.variable(), self.body())
    }
}
