//! Terms over the ortholattice signature with symmetric-difference sugar.
//!
//! Grammar (loosest first): the six symmetric differences `<n> <d> <+l> <+r>
//! <+l'> <+r'>` are non-associative and need parentheses when chained, then
//! `|` (join), then `&` (meet), then postfix `'` (orthocomplement).

mod check;
mod eval;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

use crate::lattice::SymDiffKind;

pub use check::{
    check_conditional, check_identity, commutes_hypothesis, exists_witness, IdentityReport,
};
pub use eval::{eval, Assignment, CompiledTerm, EvalError};
pub use parse::{parse, parse_equation, ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Ortho(Box<Term>),
    SymDiff(SymDiffKind, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn ortho(a: Term) -> Term {
        Term::Ortho(Box::new(a))
    }

    pub fn sym(kind: SymDiffKind, a: Term, b: Term) -> Term {
        Term::SymDiff(kind, Box::new(a), Box::new(b))
    }

    /// Free variables in alphabetical order.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One => {}
            Term::Ortho(t) => t.collect_vars(out),
            Term::Meet(a, b) | Term::Join(a, b) | Term::SymDiff(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn has_sym_diff(&self) -> bool {
        match self {
            Term::Var(_) | Term::Zero | Term::One => false,
            Term::Ortho(t) => t.has_sym_diff(),
            Term::Meet(a, b) | Term::Join(a, b) => a.has_sym_diff() || b.has_sym_diff(),
            Term::SymDiff(..) => true,
        }
    }

    /// Replaces every symmetric difference by its lattice formula.
    pub fn expand(&self) -> Term {
        match self {
            Term::Var(_) | Term::Zero | Term::One => self.clone(),
            Term::Ortho(t) => Term::ortho(t.expand()),
            Term::Meet(a, b) => Term::meet(a.expand(), b.expand()),
            Term::Join(a, b) => Term::join(a.expand(), b.expand()),
            Term::SymDiff(kind, a, b) => sym_diff_formula(*kind, a.expand(), b.expand()),
        }
    }
}

/// The lattice-term definition of each symmetric difference.
pub fn sym_diff_formula(kind: SymDiffKind, x: Term, y: Term) -> Term {
    let xo = || Term::ortho(x.clone());
    let yo = || Term::ortho(y.clone());
    match kind {
        SymDiffKind::Nabla => Term::join(Term::meet(x.clone(), yo()), Term::meet(xo(), y.clone())),
        SymDiffKind::Delta => Term::meet(Term::join(x.clone(), y.clone()), Term::join(xo(), yo())),
        SymDiffKind::PlusL => Term::meet(
            Term::join(x.clone(), Term::meet(xo(), y.clone())),
            Term::join(xo(), yo()),
        ),
        SymDiffKind::PlusR => Term::meet(
            Term::join(Term::meet(x.clone(), yo()), y.clone()),
            Term::join(xo(), yo()),
        ),
        SymDiffKind::PlusLp => Term::meet(
            Term::join(x.clone(), y.clone()),
            Term::join(xo(), Term::meet(x.clone(), yo())),
        ),
        SymDiffKind::PlusRp => Term::meet(
            Term::join(x.clone(), y.clone()),
            Term::join(Term::meet(xo(), y.clone()), yo()),
        ),
    }
}

// Binding strength: 0 symdiff, 1 join, 2 meet, 3 postfix/atom.
fn level(t: &Term) -> u8 {
    match t {
        Term::SymDiff(..) => 0,
        Term::Join(..) => 1,
        Term::Meet(..) => 2,
        _ => 3,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, t: &Term, min: u8) -> fmt::Result {
    if level(t) < min {
        write!(f, "(")?;
        write_at(f, t, 0)?;
        return write!(f, ")");
    }
    match t {
        Term::Var(v) => write!(f, "{v}"),
        Term::Zero => write!(f, "0"),
        Term::One => write!(f, "1"),
        Term::Ortho(a) => {
            write_at(f, a, 3)?;
            write!(f, "'")
        }
        Term::Meet(a, b) => {
            write_at(f, a, 2)?;
            write!(f, " & ")?;
            write_at(f, b, 3)
        }
        Term::Join(a, b) => {
            write_at(f, a, 1)?;
            write!(f, " | ")?;
            write_at(f, b, 2)
        }
        Term::SymDiff(k, a, b) => {
            write_at(f, a, 1)?;
            write!(f, " {} ", k.token())?;
            write_at(f, b, 1)
        }
    }
}

/// Prints with the fewest parentheses the parser needs to rebuild the same tree.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, 0)
    }
}
