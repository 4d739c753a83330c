//! Validated finite orthomodular lattices.
//!
//! An [`Oml`] is built from a [`RawLattice`] (order relation, or just its
//! covers, plus an orthocomplement map) by [`validate`], which computes the
//! reflexive-transitive closure, tabulates meets and joins, and checks the
//! ortholattice axioms and the orthomodular law. Failures name the first
//! violated axiom together with the lexicographically least witness.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::set::ElementSet;

/// Elements are dense indices `0..size`.
pub type Element = usize;

/// Order data before validation.
///
/// `leq` is a row-major `size × size` relation: `leq[i * size + j]` means
/// `i ≤ j`. It may hold only the cover pairs; validation closes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawLattice {
    pub size: usize,
    pub leq: Vec<bool>,
    pub ortho: Vec<Element>,
    pub names: Option<Vec<String>>,
}

impl RawLattice {
    /// Builds a raw lattice from cover pairs `(lower, upper)`.
    pub fn from_covers(size: usize, covers: &[(Element, Element)], ortho: Vec<Element>) -> Self {
        let mut leq = vec![false; size * size];
        for &(i, j) in covers {
            leq[i * size + j] = true;
        }
        RawLattice {
            size,
            leq,
            ortho,
            names: None,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        self.names = Some(names);
        self
    }

    pub fn name(&self, e: Element) -> String {
        element_name(self.names.as_deref(), e)
    }
}

fn element_name(names: Option<&[String]>, e: Element) -> String {
    match names.and_then(|n| n.get(e)) {
        Some(n) => n.clone(),
        None => format!("e{e}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    Meet,
    Join,
}

/// The first axiom violated by a [`RawLattice`], with its witness.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ValidationError {
    #[error("lattice must have at least one element")]
    Empty,
    #[error("order relation has {len} entries, expected {expected}")]
    BadOrderShape { len: usize, expected: usize },
    #[error("orthocomplement is not a permutation of the elements")]
    OrthoNotPermutation,
    #[error("not a partial order: {0} and {1} lie on a cycle")]
    NotAPoset(Element, Element),
    #[error("not a lattice: {0} and {1} have no {2:?}")]
    NotALattice(Element, Element, BoundKind),
    #[error("orthocomplement is not an involution at {0}")]
    OrthoNotInvolution(Element),
    #[error("orthocomplement is not a complement at {0}")]
    OrthoNotComplement(Element),
    #[error("orthocomplement is not antitone at ({0}, {1})")]
    OrthoNotAntitone(Element, Element),
    #[error("orthomodular law fails at ({0}, {1})")]
    NotOrthomodular(Element, Element),
}

impl ValidationError {
    /// Short variant name, used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            ValidationError::Empty => "Empty",
            ValidationError::BadOrderShape { .. } => "BadOrderShape",
            ValidationError::OrthoNotPermutation => "OrthoNotPermutation",
            ValidationError::NotAPoset(..) => "NotAPoset",
            ValidationError::NotALattice(..) => "NotALattice",
            ValidationError::OrthoNotInvolution(_) => "OrthoNotInvolution",
            ValidationError::OrthoNotComplement(_) => "OrthoNotComplement",
            ValidationError::OrthoNotAntitone(..) => "OrthoNotAntitone",
            ValidationError::NotOrthomodular(..) => "NotOrthomodular",
        }
    }

    pub fn witness(&self) -> Vec<Element> {
        match *self {
            ValidationError::NotAPoset(a, b)
            | ValidationError::NotALattice(a, b, _)
            | ValidationError::OrthoNotAntitone(a, b)
            | ValidationError::NotOrthomodular(a, b) => vec![a, b],
            ValidationError::OrthoNotInvolution(a) | ValidationError::OrthoNotComplement(a) => {
                vec![a]
            }
            _ => Vec::new(),
        }
    }
}

/// The six binary terms that coincide with XOR on every Boolean algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SymDiffKind {
    /// `(x ∧ y′) ∨ (x′ ∧ y)`
    Nabla,
    /// `(x ∨ y) ∧ (x′ ∨ y′)`
    Delta,
    /// `(x ∨ (x′ ∧ y)) ∧ (x′ ∨ y′)`
    PlusL,
    /// `((x ∧ y′) ∨ y) ∧ (x′ ∨ y′)`
    PlusR,
    /// `(x ∨ y) ∧ (x′ ∨ (x ∧ y′))`
    PlusLp,
    /// `(x ∨ y) ∧ ((x′ ∧ y) ∨ y′)`
    PlusRp,
}

impl SymDiffKind {
    pub const ALL: [SymDiffKind; 6] = [
        SymDiffKind::Nabla,
        SymDiffKind::Delta,
        SymDiffKind::PlusL,
        SymDiffKind::PlusR,
        SymDiffKind::PlusLp,
        SymDiffKind::PlusRp,
    ];

    /// ASCII operator token in the term grammar.
    pub fn token(self) -> &'static str {
        match self {
            SymDiffKind::Nabla => "<n>",
            SymDiffKind::Delta => "<d>",
            SymDiffKind::PlusL => "<+l>",
            SymDiffKind::PlusR => "<+r>",
            SymDiffKind::PlusLp => "<+l'>",
            SymDiffKind::PlusRp => "<+r'>",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            SymDiffKind::Nabla => "▽",
            SymDiffKind::Delta => "△",
            SymDiffKind::PlusL => "+ₗ",
            SymDiffKind::PlusR => "+ᵣ",
            SymDiffKind::PlusLp => "+ₗ′",
            SymDiffKind::PlusRp => "+ᵣ′",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SymDiffKind::Nabla => "Nabla",
            SymDiffKind::Delta => "Delta",
            SymDiffKind::PlusL => "PlusL",
            SymDiffKind::PlusR => "PlusR",
            SymDiffKind::PlusLp => "PlusLp",
            SymDiffKind::PlusRp => "PlusRp",
        }
    }

    pub fn from_token(tok: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.token() == tok)
    }

    pub fn is_commutative(self) -> bool {
        matches!(self, SymDiffKind::Nabla | SymDiffKind::Delta)
    }
}

impl fmt::Display for SymDiffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A validated finite orthomodular lattice with precomputed tables.
///
/// Immutable once built; share it freely across threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oml {
    size: usize,
    leq: Vec<bool>,
    meet: Vec<u32>,
    join: Vec<u32>,
    ortho: Vec<u32>,
    bottom: Element,
    top: Element,
    names: Option<Vec<String>>,
}

/// Validates `raw` and returns the tabulated lattice.
pub fn validate(raw: &RawLattice) -> Result<Oml, ValidationError> {
    let n = raw.size;
    if n == 0 {
        return Err(ValidationError::Empty);
    }
    if raw.leq.len() != n * n {
        return Err(ValidationError::BadOrderShape {
            len: raw.leq.len(),
            expected: n * n,
        });
    }
    if raw.ortho.len() != n || raw.ortho.iter().any(|&o| o >= n) {
        return Err(ValidationError::OrthoNotPermutation);
    }
    let image = ElementSet::from_elements(n, raw.ortho.iter().copied());
    if image.len() != n {
        return Err(ValidationError::OrthoNotPermutation);
    }

    // Reflexive-transitive closure on up-sets.
    let mut up: Vec<ElementSet> = (0..n)
        .map(|i| {
            let mut s = ElementSet::from_elements(n, (0..n).filter(|&j| raw.leq[i * n + j]));
            s.insert(i);
            s
        })
        .collect();
    for k in 0..n {
        let up_k = up[k].clone();
        for set in up.iter_mut() {
            if set.contains(k) {
                set.union_with(&up_k);
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if up[a].contains(b) && up[b].contains(a) {
                return Err(ValidationError::NotAPoset(a, b));
            }
        }
    }
    let mut down: Vec<ElementSet> = vec![ElementSet::empty(n); n];
    for (i, set) in up.iter().enumerate() {
        for j in set.iter() {
            down[j].insert(i);
        }
    }
    let down_size: Vec<usize> = down.iter().map(ElementSet::len).collect();
    let up_size: Vec<usize> = up.iter().map(ElementSet::len).collect();

    let mut meet = vec![0u32; n * n];
    let mut join = vec![0u32; n * n];
    for a in 0..n {
        for b in a..n {
            let lower = down[a].intersection(&down[b]);
            let m = lower
                .iter()
                .max_by_key(|&m| down_size[m])
                .filter(|&m| lower.is_subset(&down[m]))
                .ok_or(ValidationError::NotALattice(a, b, BoundKind::Meet))?;
            let upper = up[a].intersection(&up[b]);
            let j = upper
                .iter()
                .max_by_key(|&j| up_size[j])
                .filter(|&j| upper.is_subset(&up[j]))
                .ok_or(ValidationError::NotALattice(a, b, BoundKind::Join))?;
            meet[a * n + b] = m as u32;
            meet[b * n + a] = m as u32;
            join[a * n + b] = j as u32;
            join[b * n + a] = j as u32;
        }
    }

    let mut leq = vec![false; n * n];
    for (i, set) in up.iter().enumerate() {
        for j in set.iter() {
            leq[i * n + j] = true;
        }
    }
    let ortho: Vec<u32> = raw.ortho.iter().map(|&o| o as u32).collect();
    let oml = Oml::from_tables(leq, meet, join, ortho, raw.names.clone());
    oml.check_ortho_axioms()?;
    Ok(oml)
}

impl Oml {
    /// Assembles an `Oml` from complete tables. Callers guarantee that the
    /// tables describe a lattice; the ortho axioms are still checked by
    /// [`Oml::check_ortho_axioms`] where needed.
    pub(crate) fn from_tables(
        leq: Vec<bool>,
        meet: Vec<u32>,
        join: Vec<u32>,
        ortho: Vec<u32>,
        names: Option<Vec<String>>,
    ) -> Oml {
        let size = ortho.len();
        let bottom = (0..size)
            .find(|&a| (0..size).all(|b| leq[a * size + b]))
            .expect("lattice has a bottom");
        let top = (0..size)
            .find(|&a| (0..size).all(|b| leq[b * size + a]))
            .expect("lattice has a top");
        Oml {
            size,
            leq,
            meet,
            join,
            ortho,
            bottom,
            top,
            names,
        }
    }

    pub(crate) fn check_ortho_axioms(&self) -> Result<(), ValidationError> {
        let n = self.size;
        for a in 0..n {
            if self.ortho(self.ortho(a)) != a {
                return Err(ValidationError::OrthoNotInvolution(a));
            }
        }
        for a in 0..n {
            let o = self.ortho(a);
            if self.meet(a, o) != self.bottom || self.join(a, o) != self.top {
                return Err(ValidationError::OrthoNotComplement(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.leq(a, b) && !self.leq(self.ortho(b), self.ortho(a)) {
                    return Err(ValidationError::OrthoNotAntitone(a, b));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.leq(a, b) && self.join(a, self.meet(b, self.ortho(a))) != b {
                    return Err(ValidationError::NotOrthomodular(a, b));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    #[inline]
    pub fn bottom(&self) -> Element {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> Element {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: Element, b: Element) -> bool {
        self.leq[a * self.size + b]
    }

    #[inline]
    pub fn meet(&self, a: Element, b: Element) -> Element {
        self.meet[a * self.size + b] as Element
    }

    #[inline]
    pub fn join(&self, a: Element, b: Element) -> Element {
        self.join[a * self.size + b] as Element
    }

    #[inline]
    pub fn ortho(&self, a: Element) -> Element {
        self.ortho[a] as Element
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of `e`: its declared name, or `e<index>`.
    pub fn name(&self, e: Element) -> String {
        element_name(self.names.as_deref(), e)
    }

    /// Looks an element up by display name.
    pub fn element_by_name(&self, name: &str) -> Option<Element> {
        self.elements().find(|&e| self.name(e) == name)
    }

    /// Cover pairs `(lower, upper)` in lexicographic order.
    pub fn covers(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a != b
                    && self.leq(a, b)
                    && !self
                        .elements()
                        .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Converts back to raw order data (full order relation).
    pub fn to_raw(&self) -> RawLattice {
        RawLattice {
            size: self.size,
            leq: self.leq.clone(),
            ortho: self.ortho.iter().map(|&o| o as Element).collect(),
            names: self.names.clone(),
        }
    }

    /// Least subset containing `seed`, bottom and top that is closed under
    /// meet, join and orthocomplement.
    pub fn generated_subalgebra(&self, seed: &[Element]) -> ElementSet {
        let mut set = ElementSet::empty(self.size);
        let mut members = Vec::new();
        let push = |set: &mut ElementSet, members: &mut Vec<Element>, e: Element| {
            if set.insert(e) {
                members.push(e);
            }
        };
        push(&mut set, &mut members, self.bottom);
        push(&mut set, &mut members, self.top);
        for &s in seed {
            push(&mut set, &mut members, s);
        }
        // Worklist: each new element is combined with everything seen so far.
        let mut next = 0;
        while next < members.len() {
            let e = members[next];
            next += 1;
            push(&mut set, &mut members, self.ortho(e));
            let mut i = 0;
            while i < next {
                let f = members[i];
                push(&mut set, &mut members, self.meet(e, f));
                push(&mut set, &mut members, self.join(e, f));
                i += 1;
            }
        }
        set
    }

    fn distributive_on(&self, elems: &[Element]) -> bool {
        elems.iter().all(|&x| {
            elems.iter().all(|&y| {
                elems.iter().all(|&z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                })
            })
        })
    }

    /// True iff the subalgebra generated by `{a, b}` is a Boolean algebra.
    ///
    /// A distributive ortholattice is Boolean, so this checks distributivity
    /// exhaustively inside the generated subalgebra. The four seed elements
    /// are tried first since they already expose most failures.
    pub fn commutes(&self, a: Element, b: Element) -> bool {
        let seeds = [a, b, self.ortho(a), self.ortho(b)];
        if !self.distributive_on(&seeds) {
            return false;
        }
        let sub = self.generated_subalgebra(&[a, b]).to_vec();
        self.distributive_on(&sub)
    }

    /// The equational form `a = (a ∧ b) ∨ (a ∧ b′)` of commutation.
    pub fn commutes_by_equation(&self, a: Element, b: Element) -> bool {
        a == self.join(self.meet(a, b), self.meet(a, self.ortho(b)))
    }

    /// Least-index common complement of `a` and `b`, if any.
    pub fn perspective(&self, a: Element, b: Element) -> Option<Element> {
        self.elements().find(|&c| {
            self.meet(a, c) == self.bottom
                && self.meet(b, c) == self.bottom
                && self.join(a, c) == self.top
                && self.join(b, c) == self.top
        })
    }

    /// `(a ∧ b) ∨ (a ∧ b′) ∨ (a′ ∧ b) ∨ (a′ ∧ b′)`
    pub fn commutator(&self, a: Element, b: Element) -> Element {
        let (ao, bo) = (self.ortho(a), self.ortho(b));
        let j1 = self.join(self.meet(a, b), self.meet(a, bo));
        let j2 = self.join(self.meet(ao, b), self.meet(ao, bo));
        self.join(j1, j2)
    }

    pub fn sym_diff(&self, kind: SymDiffKind, a: Element, b: Element) -> Element {
        let (ao, bo) = (self.ortho(a), self.ortho(b));
        match kind {
            SymDiffKind::Nabla => self.join(self.meet(a, bo), self.meet(ao, b)),
            SymDiffKind::Delta => self.meet(self.join(a, b), self.join(ao, bo)),
            SymDiffKind::PlusL => self.meet(self.join(a, self.meet(ao, b)), self.join(ao, bo)),
            SymDiffKind::PlusR => self.meet(self.join(self.meet(a, bo), b), self.join(ao, bo)),
            SymDiffKind::PlusLp => self.meet(self.join(a, b), self.join(ao, self.meet(a, bo))),
            SymDiffKind::PlusRp => self.meet(self.join(a, b), self.join(self.meet(ao, b), bo)),
        }
    }

    #[inline]
    pub fn plus_l(&self, a: Element, b: Element) -> Element {
        self.sym_diff(SymDiffKind::PlusL, a, b)
    }

    #[inline]
    pub fn delta(&self, a: Element, b: Element) -> Element {
        self.sym_diff(SymDiffKind::Delta, a, b)
    }

    pub fn is_distributive(&self) -> bool {
        let all: Vec<Element> = self.elements().collect();
        self.distributive_on(&all)
    }

    /// An OML is Boolean iff it is distributive.
    pub fn is_boolean(&self) -> bool {
        self.is_distributive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn mo2() -> Oml {
        catalog::mo(2).unwrap()
    }

    #[test]
    fn mo2_raw_validates() {
        // 0 < a, b, a', b' < 1
        let covers = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 5),
            (2, 5),
            (3, 5),
            (4, 5),
        ];
        let raw = RawLattice::from_covers(6, &covers, vec![5, 3, 4, 1, 2, 0]);
        let l = validate(&raw).unwrap();
        assert_eq!(l.size(), 6);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 5);
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join(1, 2), 5);
    }

    #[test]
    fn singleton_is_valid() {
        let raw = RawLattice::from_covers(1, &[], vec![0]);
        let l = validate(&raw).unwrap();
        assert_eq!(l.bottom(), l.top());
        assert!(l.is_boolean());
    }

    #[test]
    fn benzene_fails_orthomodularity_at_a_b() {
        let err = validate(&catalog::benzene()).unwrap_err();
        // indices: 0, a, b, b', a', 1
        assert_eq!(err, ValidationError::NotOrthomodular(1, 2));
        assert_eq!(err.kind(), "NotOrthomodular");
    }

    #[test]
    fn error_paths() {
        assert_eq!(
            validate(&RawLattice::from_covers(0, &[], vec![])),
            Err(ValidationError::Empty)
        );
        // cycle 0 < 1 < 0
        let raw = RawLattice::from_covers(2, &[(0, 1), (1, 0)], vec![1, 0]);
        assert_eq!(validate(&raw), Err(ValidationError::NotAPoset(0, 1)));
        // two incomparable elements, no meet
        let raw = RawLattice::from_covers(2, &[], vec![1, 0]);
        assert_eq!(
            validate(&raw),
            Err(ValidationError::NotALattice(0, 1, BoundKind::Meet))
        );
        let raw = RawLattice::from_covers(2, &[(0, 1)], vec![0, 0]);
        assert_eq!(validate(&raw), Err(ValidationError::OrthoNotPermutation));
        // chain 0<1<2 with ortho a 3-cycle
        let raw = RawLattice::from_covers(3, &[(0, 1), (1, 2)], vec![1, 2, 0]);
        assert_eq!(validate(&raw), Err(ValidationError::OrthoNotInvolution(0)));
        // chain 0<1<2 with ortho fixing the middle
        let raw = RawLattice::from_covers(3, &[(0, 1), (1, 2)], vec![2, 1, 0]);
        assert_eq!(validate(&raw), Err(ValidationError::OrthoNotComplement(1)));
    }

    #[test]
    fn antitone_failure_is_reported() {
        // Hexagon 0 < a < b < 1, 0 < c < d < 1 with a <-> c, b <-> d: every
        // element is complemented but a <= b while d is not below c.
        let covers = [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)];
        let raw = RawLattice::from_covers(6, &covers, vec![5, 3, 4, 1, 2, 0]);
        assert_eq!(validate(&raw), Err(ValidationError::OrthoNotAntitone(1, 2)));
    }

    #[test]
    fn commutes_examples() {
        let l = mo2();
        assert!(!l.commutes(1, 2));
        assert!(l.commutes(1, 3));
        for a in l.elements() {
            for b in l.elements() {
                if l.leq(a, b) {
                    assert!(l.commutes(a, b));
                }
            }
        }
        let b2 = catalog::boolean_algebra(2).unwrap();
        for a in b2.elements() {
            for b in b2.elements() {
                assert!(b2.commutes(a, b));
            }
        }
    }

    #[test]
    fn generated_subalgebra_examples() {
        let l = mo2();
        assert_eq!(l.generated_subalgebra(&[1]).to_vec(), vec![0, 1, 3, 5]);
        assert_eq!(l.generated_subalgebra(&[1, 2]).len(), 6);
        let b3 = catalog::boolean_algebra(3).unwrap();
        assert_eq!(b3.generated_subalgebra(&[1]).to_vec(), vec![0, 1, 6, 7]);
    }

    #[test]
    fn perspective_examples() {
        let l = mo2();
        // b and a share the complement a' (index 3)
        assert_eq!(l.perspective(1, 2), Some(3));
        for a in l.elements() {
            let c = l.perspective(a, a).unwrap();
            assert_eq!(l.meet(a, c), l.bottom());
            assert_eq!(l.join(a, c), l.top());
        }
        let b2 = catalog::boolean_algebra(2).unwrap();
        assert_eq!(b2.perspective(1, 2), None);
    }

    #[test]
    fn commutator_examples() {
        let l = mo2();
        assert_eq!(l.commutator(1, 2), 0);
        for a in l.elements() {
            assert_eq!(l.commutator(a, l.top()), l.top());
        }
    }

    #[test]
    fn sym_diff_on_mo2_atoms() {
        let l = mo2();
        let (a, b, ap, bp) = (1, 2, 3, 4);
        let got: Vec<Element> = SymDiffKind::ALL
            .iter()
            .map(|&k| l.sym_diff(k, a, b))
            .collect();
        assert_eq!(got, vec![0, 5, a, b, ap, bp]);
        for x in l.elements() {
            for k in SymDiffKind::ALL {
                assert_eq!(l.sym_diff(k, x, x), l.bottom());
            }
        }
    }

    #[test]
    fn kind_tokens_round_trip() {
        for k in SymDiffKind::ALL {
            assert_eq!(SymDiffKind::from_token(k.token()), Some(k));
        }
        assert_eq!(SymDiffKind::from_token("<x>"), None);
    }
}
