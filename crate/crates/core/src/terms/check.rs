//! Exhaustive identity checking over all assignments.
//!
//! Assignments are enumerated in lexicographic order (variables sorted
//! alphabetically, the first variable most significant, elements by index).
//! The scan runs in parallel but always reports the least violating
//! assignment, so results do not depend on scheduling.

use rayon::prelude::*;
use serde::Serialize;

use super::eval::{Assignment, CompiledTerm, EvalError};
use super::Term;
use crate::lattice::{Element, Oml};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub holds: bool,
    pub counterexample: Option<Assignment>,
    /// Assignments inspected, including those skipped by hypotheses. When a
    /// counterexample exists this is its rank plus one.
    pub tuples_checked: u64,
}

/// The equation `a = (a ∧ b) ∨ (a ∧ b′)`, which holds exactly when `a`
/// commutes with `b`.
pub fn commutes_hypothesis(a: &str, b: &str) -> (Term, Term) {
    let (ta, tb) = (Term::var(a), Term::var(b));
    (
        ta.clone(),
        Term::join(
            Term::meet(ta.clone(), tb.clone()),
            Term::meet(ta, Term::ortho(tb)),
        ),
    )
}

fn decode(rank: u64, n: usize, slots: &mut [Element]) {
    let mut r = rank;
    for s in slots.iter_mut().rev() {
        *s = (r % n as u64) as Element;
        r /= n as u64;
    }
}

pub fn check_identity(l: &Oml, lhs: &Term, rhs: &Term) -> IdentityReport {
    check_conditional(l, &[], lhs, rhs)
}

/// Checks `lhs = rhs` on every assignment satisfying all `hypotheses`.
pub fn check_conditional(
    l: &Oml,
    hypotheses: &[(Term, Term)],
    lhs: &Term,
    rhs: &Term,
) -> IdentityReport {
    let mut vars = lhs.free_vars();
    vars.extend(rhs.free_vars());
    for (a, b) in hypotheses {
        vars.extend(a.free_vars());
        vars.extend(b.free_vars());
    }
    let vars: Vec<String> = vars.into_iter().collect();
    let compile = |t: &Term| CompiledTerm::new(t, &vars).expect("all variables are slotted");
    let (lc, rc) = (compile(lhs), compile(rhs));
    let hyps: Vec<(CompiledTerm, CompiledTerm)> = hypotheses
        .iter()
        .map(|(a, b)| (compile(a), compile(b)))
        .collect();

    let n = l.size();
    let total = (n as u64)
        .checked_pow(vars.len() as u32)
        .expect("assignment space fits in u64");
    let k = vars.len();

    let first_bad = (0..total)
        .into_par_iter()
        .map_init(
            || vec![0; k],
            |slots, rank| {
                decode(rank, n, slots);
                let assumed = hyps
                    .iter()
                    .all(|(a, b)| a.eval(l, slots) == b.eval(l, slots));
                (assumed && lc.eval(l, slots) != rc.eval(l, slots)).then_some(rank)
            },
        )
        .find_first(Option::is_some)
        .flatten();

    match first_bad {
        None => IdentityReport {
            holds: true,
            counterexample: None,
            tuples_checked: total,
        },
        Some(rank) => {
            let mut slots = vec![0; k];
            decode(rank, n, &mut slots);
            IdentityReport {
                holds: false,
                counterexample: Some(vars.iter().cloned().zip(slots).collect()),
                tuples_checked: rank + 1,
            }
        }
    }
}

/// Least element `c` such that binding `var := c` in `env` makes
/// `lhs = rhs` true.
pub fn exists_witness(
    l: &Oml,
    var: &str,
    lhs: &Term,
    rhs: &Term,
    env: &Assignment,
) -> Result<Option<Element>, EvalError> {
    let mut vars: Vec<String> = vec![var.to_string()];
    vars.extend(env.keys().filter(|k| *k != var).cloned());
    let lc = CompiledTerm::new(lhs, &vars)?;
    let rc = CompiledTerm::new(rhs, &vars)?;
    let mut slots: Vec<Element> = std::iter::once(0)
        .chain(env.iter().filter(|(k, _)| *k != var).map(|(_, &v)| v))
        .collect();
    Ok(l.elements().find(|&c| {
        slots[0] = c;
        lc.eval(l, &slots) == rc.eval(l, &slots)
    }))
}
