//! The free orthomodular lattice on two generators in Navara coordinates.
//!
//! `F(x, y)` splits as `[0, c] × [0, c′]` where `c` is the commutator of the
//! generators. The first factor is the 16-element Boolean algebra with atoms
//! `x∧y, x∧y′, x′∧y, x′∧y′`; the second is MO2 with atoms `x∧c′, y∧c′,
//! x′∧c′, y′∧c′`. Every element is a 4-bit atom mask plus an MO2 component,
//! and all operations act componentwise.

use std::fmt;

use serde::Serialize;

use crate::lattice::{validate, Element, Oml, RawLattice, SymDiffKind};
use crate::terms::Term;

/// Bits of the Boolean mask, in commutator order.
pub const ATOM_XY: u8 = 1 << 0;
pub const ATOM_XYP: u8 = 1 << 1;
pub const ATOM_XPY: u8 = 1 << 2;
pub const ATOM_XPYP: u8 = 1 << 3;
pub const FULL_MASK: u8 = 0b1111;

/// Element of MO2, in index order `[Zero, X, Y, Xp, Yp, One]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Mo2Part {
    Zero,
    X,
    Y,
    Xp,
    Yp,
    One,
}

impl Mo2Part {
    pub const ALL: [Mo2Part; 6] = [
        Mo2Part::Zero,
        Mo2Part::X,
        Mo2Part::Y,
        Mo2Part::Xp,
        Mo2Part::Yp,
        Mo2Part::One,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn ortho(self) -> Mo2Part {
        match self {
            Mo2Part::Zero => Mo2Part::One,
            Mo2Part::One => Mo2Part::Zero,
            Mo2Part::X => Mo2Part::Xp,
            Mo2Part::Xp => Mo2Part::X,
            Mo2Part::Y => Mo2Part::Yp,
            Mo2Part::Yp => Mo2Part::Y,
        }
    }

    // MO2 has height two: distinct middle elements meet in 0 and join to 1.
    pub fn meet(self, other: Mo2Part) -> Mo2Part {
        match (self, other) {
            (a, b) if a == b => a,
            (Mo2Part::One, b) => b,
            (a, Mo2Part::One) => a,
            _ => Mo2Part::Zero,
        }
    }

    pub fn join(self, other: Mo2Part) -> Mo2Part {
        match (self, other) {
            (a, b) if a == b => a,
            (Mo2Part::Zero, b) => b,
            (a, Mo2Part::Zero) => a,
            _ => Mo2Part::One,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Mo2Part::Zero => "0",
            Mo2Part::X => "x",
            Mo2Part::Y => "y",
            Mo2Part::Xp => "x'",
            Mo2Part::Yp => "y'",
            Mo2Part::One => "1",
        }
    }
}

/// An element of `F(x, y)`: Boolean atom mask and MO2 component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NavaraElement {
    pub mask: u8,
    pub part: Mo2Part,
}

impl NavaraElement {
    pub const fn new(mask: u8, part: Mo2Part) -> Self {
        NavaraElement { mask, part }
    }

    /// Index in the [`FreeOml`] lattice: `mask * 6 + part`.
    pub fn index(self) -> Element {
        self.mask as usize * 6 + self.part.index()
    }

    pub fn from_index(e: Element) -> Self {
        assert!(e < 96, "free lattice has 96 elements");
        NavaraElement::new((e / 6) as u8, Mo2Part::ALL[e % 6])
    }

    pub fn all() -> impl Iterator<Item = NavaraElement> {
        (0..96).map(NavaraElement::from_index)
    }

    /// The generator `x = (x∧y) ∨ (x∧y′) ∨ (x∧c′)`.
    pub const fn x() -> Self {
        NavaraElement::new(ATOM_XY | ATOM_XYP, Mo2Part::X)
    }

    /// The generator `y = (x∧y) ∨ (x′∧y) ∨ (y∧c′)`.
    pub const fn y() -> Self {
        NavaraElement::new(ATOM_XY | ATOM_XPY, Mo2Part::Y)
    }
}

impl fmt::Display for NavaraElement {
    /// Atom bits in commutator order, then the MO2 component: `1100:x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in 0..4 {
            write!(f, "{}", (self.mask >> bit) & 1)?;
        }
        write!(f, ":{}", self.part.label())
    }
}

pub fn nav_join(a: NavaraElement, b: NavaraElement) -> NavaraElement {
    NavaraElement::new(a.mask | b.mask, a.part.join(b.part))
}

pub fn nav_meet(a: NavaraElement, b: NavaraElement) -> NavaraElement {
    NavaraElement::new(a.mask & b.mask, a.part.meet(b.part))
}

pub fn nav_ortho(a: NavaraElement) -> NavaraElement {
    NavaraElement::new(!a.mask & FULL_MASK, a.part.ortho())
}

/// The homomorphism onto the free Boolean algebra on `u, v`: the MO2 part
/// lies below `c′`, which maps to 0, so only the atom mask survives.
pub fn phi(e: NavaraElement) -> u8 {
    e.mask
}

/// The free OML as an ordinary tabulated lattice, with its generators.
#[derive(Clone, Debug)]
pub struct FreeOml {
    pub oml: Oml,
    pub x: Element,
    pub y: Element,
}

/// Builds `F(x, y)`. The order is read off the componentwise meet and the
/// tables are then recomputed and checked by [`validate`].
pub fn make_free() -> FreeOml {
    let n = 96;
    let mut leq = vec![false; n * n];
    for a in NavaraElement::all() {
        for b in NavaraElement::all() {
            leq[a.index() * n + b.index()] = nav_meet(a, b) == a;
        }
    }
    let ortho = NavaraElement::all().map(|a| nav_ortho(a).index()).collect();
    let names = NavaraElement::all().map(|a| a.to_string()).collect();
    let raw = RawLattice {
        size: n,
        leq,
        ortho,
        names: Some(names),
    };
    let oml = validate(&raw).expect("the Navara model is an OML");
    FreeOml {
        oml,
        x: NavaraElement::x().index(),
        y: NavaraElement::y().index(),
    }
}

/// MO2 component of each symmetric difference of the generators.
pub fn kind_part(kind: SymDiffKind) -> Mo2Part {
    match kind {
        SymDiffKind::Nabla => Mo2Part::Zero,
        SymDiffKind::Delta => Mo2Part::One,
        SymDiffKind::PlusL => Mo2Part::X,
        SymDiffKind::PlusR => Mo2Part::Y,
        SymDiffKind::PlusLp => Mo2Part::Xp,
        SymDiffKind::PlusRp => Mo2Part::Yp,
    }
}

/// Every element mapped by [`phi`] to `u △ v`, in index order.
pub fn preimage_sym_diff() -> Vec<NavaraElement> {
    NavaraElement::all()
        .filter(|&e| phi(e) == ATOM_XYP | ATOM_XPY)
        .collect()
}

fn commutator_term() -> Term {
    let (x, y) = (Term::var("x"), Term::var("y"));
    let (xo, yo) = (Term::ortho(x.clone()), Term::ortho(y.clone()));
    Term::join(
        Term::join(
            Term::join(Term::meet(x.clone(), y.clone()), Term::meet(x, yo.clone())),
            Term::meet(xo.clone(), y),
        ),
        Term::meet(xo, yo),
    )
}

/// Canonical term for `e` in the variables `x`, `y`: the join of its Boolean
/// atoms followed by the defining meet of its MO2 component, e.g. `x ∧ c′`.
pub fn to_term(e: NavaraElement) -> Term {
    let (x, y) = (Term::var("x"), Term::var("y"));
    let (xo, yo) = (Term::ortho(x.clone()), Term::ortho(y.clone()));
    let atoms = [
        Term::meet(x.clone(), y.clone()),
        Term::meet(x.clone(), yo.clone()),
        Term::meet(xo.clone(), y.clone()),
        Term::meet(xo.clone(), yo.clone()),
    ];
    let c_perp = Term::ortho(commutator_term());
    let mut parts: Vec<Term> = (0..4)
        .filter(|bit| e.mask & (1 << bit) != 0)
        .map(|bit| atoms[bit].clone())
        .collect();
    match e.part {
        Mo2Part::Zero => {}
        Mo2Part::One => parts.push(c_perp),
        Mo2Part::X => parts.push(Term::meet(x, c_perp)),
        Mo2Part::Y => parts.push(Term::meet(y, c_perp)),
        Mo2Part::Xp => parts.push(Term::meet(xo, c_perp)),
        Mo2Part::Yp => parts.push(Term::meet(yo, c_perp)),
    }
    parts.into_iter().reduce(Term::join).unwrap_or(Term::Zero)
}
