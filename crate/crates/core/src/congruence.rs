//! p-ideals, congruences, and the congruence-class formulas.
//!
//! Congruences of an OML correspond one-to-one to p-ideals: lattice ideals
//! `I` with `x ∧ (i ∨ x′) ∈ I` for every `x` and every `i ∈ I`. The congruence
//! of `I` relates `x` and `y` exactly when `x △ y ∈ I`, or equivalently when
//! `x +ₗ y ∈ I`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{Element, Oml, SymDiffKind};
use crate::set::ElementSet;
use crate::terms::{Assignment, IdentityReport};

/// Subset-scan guards.
pub const BRUTE_FORCE_LIMIT: usize = 8;
pub const CAVEAT_SEARCH_LIMIT: usize = 24;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("lattice has {size} elements; this scan is limited to {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("relation `{variant:?} ∈ I` is not a congruence at ({a}, {b})")]
    RelationNotCongruence {
        variant: Variant,
        a: Element,
        b: Element,
    },
}

/// Which symmetric difference defines the congruence of a p-ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    Delta,
    PlusL,
}

impl Variant {
    pub fn kind(self) -> SymDiffKind {
        match self {
            Variant::Delta => SymDiffKind::Delta,
            Variant::PlusL => SymDiffKind::PlusL,
        }
    }
}

/// Why a subset is not a p-ideal. Witnesses are lexicographically least.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PIdealViolation {
    MissingBottom,
    /// `below ≤ member` but `below` is missing.
    NotDownClosed {
        member: Element,
        below: Element,
    },
    NotJoinClosed {
        a: Element,
        b: Element,
    },
    /// `x ∧ (i ∨ x′)` is missing.
    Condition {
        x: Element,
        i: Element,
    },
    /// `x +ₗ (i +ₗ x)` is missing.
    PlusLCondition {
        x: Element,
        i: Element,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PIdeal {
    members: ElementSet,
}

impl PIdeal {
    /// Checks `members` against the p-ideal definition.
    pub fn new(l: &Oml, members: ElementSet) -> Result<PIdeal, PIdealViolation> {
        check_p_ideal(l, &members)?;
        Ok(PIdeal { members })
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn contains(&self, e: Element) -> bool {
        self.members.contains(e)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn down_closed(l: &Oml, s: &ElementSet) -> Result<(), PIdealViolation> {
    for member in s.iter() {
        if let Some(below) = l.elements().find(|&b| l.leq(b, member) && !s.contains(b)) {
            return Err(PIdealViolation::NotDownClosed { member, below });
        }
    }
    Ok(())
}

/// Nonempty, downward closed and closed under joins.
pub fn check_lattice_ideal(l: &Oml, s: &ElementSet) -> Result<(), PIdealViolation> {
    if !s.contains(l.bottom()) {
        return Err(PIdealViolation::MissingBottom);
    }
    down_closed(l, s)?;
    for a in s.iter() {
        for b in s.iter() {
            if !s.contains(l.join(a, b)) {
                return Err(PIdealViolation::NotJoinClosed { a, b });
            }
        }
    }
    Ok(())
}

pub fn is_lattice_ideal(l: &Oml, s: &ElementSet) -> bool {
    check_lattice_ideal(l, s).is_ok()
}

/// Lattice ideal plus `x ∧ (i ∨ x′) ∈ S` for all `x` and `i ∈ S`.
pub fn check_p_ideal(l: &Oml, s: &ElementSet) -> Result<(), PIdealViolation> {
    check_lattice_ideal(l, s)?;
    for x in l.elements() {
        for i in s.iter() {
            if !s.contains(l.meet(x, l.join(i, l.ortho(x)))) {
                return Err(PIdealViolation::Condition { x, i });
            }
        }
    }
    Ok(())
}

pub fn is_p_ideal(l: &Oml, s: &ElementSet) -> bool {
    check_p_ideal(l, s).is_ok()
}

/// Lattice ideal plus `x +ₗ (i +ₗ x) ∈ S` for all `x` and `i ∈ S`.
pub fn check_p_ideal_alt(l: &Oml, s: &ElementSet) -> Result<(), PIdealViolation> {
    check_lattice_ideal(l, s)?;
    for x in l.elements() {
        for i in s.iter() {
            if !s.contains(l.plus_l(x, l.plus_l(i, x))) {
                return Err(PIdealViolation::PlusLCondition { x, i });
            }
        }
    }
    Ok(())
}

pub fn is_p_ideal_alt(l: &Oml, s: &ElementSet) -> bool {
    check_p_ideal_alt(l, s).is_ok()
}

fn principal_down(l: &Oml, t: Element) -> ElementSet {
    ElementSet::from_elements(l.size(), l.elements().filter(|&e| l.leq(e, t)))
}

/// Least p-ideal containing `s`.
///
/// Ideals of a finite lattice are principal, so the closure is `↓t` for the
/// least `t` above `⋁ s` with `x ∧ (t ∨ x′) ≤ t` for every `x`; condition
/// (ii) only needs checking at the generator since it is monotone in `i`.
pub fn p_ideal_closure(l: &Oml, s: &ElementSet) -> PIdeal {
    let mut top = s.iter().fold(l.bottom(), |acc, e| l.join(acc, e));
    loop {
        let next = l.elements().fold(top, |acc, x| {
            l.join(acc, l.meet(x, l.join(top, l.ortho(x))))
        });
        if next == top {
            break;
        }
        top = next;
    }
    PIdeal {
        members: principal_down(l, top),
    }
}

/// Every p-ideal, sorted by size and then by member list.
///
/// Starts from the principal closures and closes the family under
/// `I ∨ J = closure(I ∪ J)`.
pub fn all_p_ideals(l: &Oml) -> Vec<PIdeal> {
    let mut family: HashSet<PIdeal> = l
        .elements()
        .map(|a| p_ideal_closure(l, &ElementSet::from_elements(l.size(), [a])))
        .collect();
    loop {
        let current: Vec<PIdeal> = family.iter().cloned().collect();
        let mut grew = false;
        for (n, a) in current.iter().enumerate() {
            for b in &current[n + 1..] {
                if a.members.is_subset(&b.members) || b.members.is_subset(&a.members) {
                    continue;
                }
                let mut u = a.members.clone();
                u.union_with(&b.members);
                grew |= family.insert(p_ideal_closure(l, &u));
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<PIdeal> = family.into_iter().collect();
    out.sort();
    out
}

/// A congruence as a canonical block map: `block[e]` is the least member of
/// the class of `e`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Congruence {
    block: Vec<Element>,
}

impl Congruence {
    /// Canonicalizes `labels` (any class labelling) without checking
    /// compatibility.
    fn from_labels(labels: &[usize]) -> Congruence {
        let mut least: HashMap<usize, Element> = HashMap::new();
        let block = labels
            .iter()
            .enumerate()
            .map(|(e, &lab)| *least.entry(lab).or_insert(e))
            .collect();
        Congruence { block }
    }

    pub fn identity(l: &Oml) -> Congruence {
        Congruence {
            block: l.elements().collect(),
        }
    }

    pub fn all(l: &Oml) -> Congruence {
        Congruence {
            block: vec![0; l.size()],
        }
    }

    pub fn blocks(&self) -> &[Element] {
        &self.block
    }

    #[inline]
    pub fn related(&self, a: Element, b: Element) -> bool {
        self.block[a] == self.block[b]
    }

    pub fn class_of(&self, a: Element) -> ElementSet {
        let rep = self.block[a];
        ElementSet::from_elements(
            self.block.len(),
            (0..self.block.len()).filter(|&e| self.block[e] == rep),
        )
    }

    /// Classes ordered by least member.
    pub fn classes(&self) -> Vec<ElementSet> {
        (0..self.block.len())
            .filter(|&e| self.block[e] == e)
            .map(|rep| self.class_of(rep))
            .collect()
    }

    pub fn num_classes(&self) -> usize {
        (0..self.block.len())
            .filter(|&e| self.block[e] == e)
            .count()
    }

    /// Compatibility with meet, join and ortho, via unary translations.
    fn first_incompatibility(&self, l: &Oml) -> Option<(Element, Element)> {
        for a in l.elements() {
            for b in l.elements() {
                if a == b || !self.related(a, b) {
                    continue;
                }
                if !self.related(l.ortho(a), l.ortho(b)) {
                    return Some((a, b));
                }
                for c in l.elements() {
                    if !self.related(l.meet(a, c), l.meet(b, c))
                        || !self.related(l.join(a, c), l.join(b, c))
                    {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    pub fn is_compatible(&self, l: &Oml) -> bool {
        self.first_incompatibility(l).is_none()
    }

    /// The relation as rows: `rows[x]` is the set of `y` with `x θ y`.
    fn rows(&self) -> Vec<ElementSet> {
        (0..self.block.len()).map(|x| self.class_of(x)).collect()
    }
}

/// `{(x, y) : x ⋆ y ∈ I}` for the chosen symmetric difference `⋆`.
pub fn congruence_from_pideal(
    l: &Oml,
    ideal: &PIdeal,
    variant: Variant,
) -> Result<Congruence, CongruenceError> {
    let kind = variant.kind();
    let rel = |x, y| ideal.contains(l.sym_diff(kind, x, y));
    let block: Vec<Element> = l
        .elements()
        .map(|x| l.elements().find(|&y| rel(x, y)).unwrap_or(x))
        .collect();
    let theta = Congruence { block };
    // The block map must reproduce the relation exactly.
    for x in l.elements() {
        for y in l.elements() {
            if rel(x, y) != theta.related(x, y) {
                return Err(CongruenceError::RelationNotCongruence {
                    variant,
                    a: x,
                    b: y,
                });
            }
        }
    }
    if let Some((a, b)) = theta.first_incompatibility(l) {
        return Err(CongruenceError::RelationNotCongruence { variant, a, b });
    }
    Ok(theta)
}

/// The class of the bottom element.
pub fn kernel(l: &Oml, theta: &Congruence) -> PIdeal {
    PIdeal {
        members: theta.class_of(l.bottom()),
    }
}

pub fn class_of(theta: &Congruence, a: Element) -> ElementSet {
    theta.class_of(a)
}

/// Outcome of the four class formulas for one p-ideal and one element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFormulas {
    /// `[a]θ = I +ₗ a`
    pub class_via_plus_l: bool,
    /// `[a]θ = a ∨ (I ∧ a′)`, read literally as `{a ∨ (i ∧ a′) : i ∈ I}`.
    pub class_via_join: bool,
    /// `[a]θ ∩ ↑a = a ∨ (I ∧ a′)`: the join formula yields the part of the
    /// class above `a`.
    pub upper_part_via_join: bool,
    /// `I = [a]θ +ₗ a`
    pub ideal_via_plus_l: bool,
    /// `I = [a]θ △ [a]θ`
    pub ideal_via_delta: bool,
    /// `i ↦ i +ₗ a` and `u ↦ u +ₗ a` are mutually inverse bijections.
    pub bijective: bool,
}

impl ClassFormulas {
    /// The `+ₗ` formulas and the bijection between classes.
    pub fn plus_l_formulas_hold(&self) -> bool {
        self.class_via_plus_l && self.ideal_via_plus_l && self.bijective
    }

    pub fn all_hold(&self) -> bool {
        self.class_via_plus_l
            && self.class_via_join
            && self.ideal_via_plus_l
            && self.ideal_via_delta
            && self.bijective
    }
}

pub fn class_formulas_check(l: &Oml, ideal: &PIdeal, a: Element) -> ClassFormulas {
    let theta =
        congruence_from_pideal(l, ideal, Variant::PlusL).expect("p-ideals induce congruences");
    let class = theta.class_of(a);
    let n = l.size();
    let image = |src: &ElementSet, f: &dyn Fn(Element) -> Element| {
        ElementSet::from_elements(n, src.iter().map(f))
    };
    let i_plus_a = image(ideal.members(), &|i| l.plus_l(i, a));
    let a_join = image(ideal.members(), &|i| l.join(a, l.meet(i, l.ortho(a))));
    let class_plus_a = image(&class, &|u| l.plus_l(u, a));
    let class_delta = ElementSet::from_elements(
        n,
        class
            .iter()
            .flat_map(|u| class.iter().map(move |v| l.delta(u, v))),
    );
    let bijective = i_plus_a.len() == ideal.len()
        && class_plus_a.len() == class.len()
        && ideal
            .members()
            .iter()
            .all(|i| l.plus_l(l.plus_l(i, a), a) == i)
        && class.iter().all(|u| l.plus_l(l.plus_l(u, a), a) == u);
    ClassFormulas {
        class_via_plus_l: i_plus_a == class,
        class_via_join: a_join == class,
        upper_part_via_join: a_join
            == ElementSet::from_elements(n, class.iter().filter(|&u| l.leq(a, u))),
        ideal_via_plus_l: &class_plus_a == ideal.members(),
        ideal_via_delta: &class_delta == ideal.members(),
        bijective,
    }
}

/// The group-like kernel conditions, each evaluated on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    /// `0 ∈ S` and `S +ₗ S ⊆ S`.
    pub subgroup_ok: bool,
    /// `x +ₗ (S +ₗ x) ⊆ S` for all `x`.
    pub normal_ok: bool,
    /// `S` is a nonempty down-set.
    pub order_ideal_ok: bool,
    pub is_kernel: bool,
}

pub fn kernel_conditions(l: &Oml, s: &ElementSet) -> KernelReport {
    let subgroup_ok = s.contains(l.bottom())
        && s.iter()
            .all(|i| s.iter().all(|j| s.contains(l.plus_l(i, j))));
    let normal_ok = l
        .elements()
        .all(|x| s.iter().all(|i| s.contains(l.plus_l(x, l.plus_l(i, x)))));
    let order_ideal_ok = !s.is_empty() && down_closed(l, s).is_ok();
    KernelReport {
        subgroup_ok,
        normal_ok,
        order_ideal_ok,
        is_kernel: subgroup_ok && normal_ok && order_ideal_ok,
    }
}

/// A subset satisfying the subgroup and order-ideal conditions and the
/// swapped normality `(x +ₗ S) +ₗ x ⊆ S`, but which is not a p-ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaveatFinding {
    pub subset: ElementSet,
    pub report: KernelReport,
}

fn down_sets(l: &Oml) -> Vec<ElementSet> {
    let principals: Vec<ElementSet> = l.elements().map(|t| principal_down(l, t)).collect();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut stack = vec![principals[l.bottom()].clone()];
    seen.insert(stack[0].clone());
    while let Some(d) = stack.pop() {
        for e in l.elements().filter(|&e| !d.contains(e)) {
            let mut next = d.clone();
            next.union_with(&principals[e]);
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// Least subset (by size, then members) showing that the normality condition
/// cannot be replaced by `(x +ₗ I) +ₗ x ⊆ I`, if one exists in `l`.
pub fn kernel_caveat_search(l: &Oml) -> Result<Option<CaveatFinding>, CongruenceError> {
    if l.size() > CAVEAT_SEARCH_LIMIT {
        return Err(CongruenceError::TooLarge {
            size: l.size(),
            limit: CAVEAT_SEARCH_LIMIT,
        });
    }
    let swapped_normal = |s: &ElementSet| {
        l.elements()
            .all(|x| s.iter().all(|i| s.contains(l.plus_l(l.plus_l(x, i), x))))
    };
    let found = down_sets(l)
        .into_iter()
        .filter(|s| {
            let r = kernel_conditions(l, s);
            r.subgroup_ok && r.order_ideal_ok && swapped_normal(s) && !is_p_ideal(l, s)
        })
        .min();
    Ok(found.map(|subset| CaveatFinding {
        report: kernel_conditions(l, &subset),
        subset,
    }))
}

fn triple_scan(l: &Oml, bad: impl Fn(Element, Element, Element) -> bool + Sync) -> IdentityReport {
    let n = l.size() as u64;
    let total = n * n * n;
    let split = |r: u64| {
        (
            (r / (n * n)) as Element,
            ((r / n) % n) as Element,
            (r % n) as Element,
        )
    };
    let first = (0..total).into_par_iter().find_first(|&r| {
        let (x, y, z) = split(r);
        bad(x, y, z)
    });
    match first {
        None => IdentityReport {
            holds: true,
            counterexample: None,
            tuples_checked: total,
        },
        Some(r) => {
            let (x, y, z) = split(r);
            let cx: Assignment = [
                ("x".to_string(), x),
                ("y".to_string(), y),
                ("z".to_string(), z),
            ]
            .into_iter()
            .collect();
            IdentityReport {
                holds: false,
                counterexample: Some(cx),
                tuples_checked: r + 1,
            }
        }
    }
}

/// Checks `m(x, y, z) = (x +ₗ y) +ₗ z` over all triples: the Mal'cev
/// identities `m(x, z, z) = x`, `m(x, x, z) = z`, and the Csákány condition
/// `m(x, y, z) = z ⇔ x = y`.
pub fn malcev_csakany_check(l: &Oml) -> (IdentityReport, IdentityReport) {
    let m = |x, y, z| l.plus_l(l.plus_l(x, y), z);
    let malcev = triple_scan(l, |x, y, z| {
        let v = m(x, y, z);
        (y == z && v != x) || (x == y && v != z)
    });
    let csakany = triple_scan(l, |x, y, z| (m(x, y, z) == z) != (x == y));
    (malcev, csakany)
}

#[derive(Clone, Debug)]
pub struct CongruenceReport {
    pub congruences: Vec<(PIdeal, Congruence)>,
    pub regular: bool,
    pub uniform: bool,
    pub permutable: bool,
}

fn compose(a: &[ElementSet], b: &[ElementSet]) -> Vec<ElementSet> {
    a.iter()
        .map(|row| {
            let mut out = ElementSet::empty(row.universe());
            for y in row.iter() {
                out.union_with(&b[y]);
            }
            out
        })
        .collect()
}

pub fn congruence_properties(l: &Oml) -> CongruenceReport {
    let congruences: Vec<(PIdeal, Congruence)> = all_p_ideals(l)
        .into_iter()
        .map(|i| {
            let theta =
                congruence_from_pideal(l, &i, Variant::PlusL).expect("p-ideals induce congruences");
            (i, theta)
        })
        .collect();

    let mut owner: HashMap<ElementSet, usize> = HashMap::new();
    let mut regular = true;
    for (n, (_, theta)) in congruences.iter().enumerate() {
        for class in theta.classes() {
            if *owner.entry(class).or_insert(n) != n {
                regular = false;
            }
        }
    }

    let uniform = congruences.iter().all(|(_, theta)| {
        let sizes: HashSet<usize> = theta.classes().iter().map(ElementSet::len).collect();
        sizes.len() <= 1
    });

    let rows: Vec<Vec<ElementSet>> = congruences.iter().map(|(_, t)| t.rows()).collect();
    let mut permutable = true;
    for a in 0..rows.len() {
        for b in a + 1..rows.len() {
            if compose(&rows[a], &rows[b]) != compose(&rows[b], &rows[a]) {
                permutable = false;
            }
        }
    }

    CongruenceReport {
        congruences,
        regular,
        uniform,
        permutable,
    }
}

/// Every congruence, found by scanning all set partitions. Independent of the
/// p-ideal machinery; limited to [`BRUTE_FORCE_LIMIT`] elements.
pub fn brute_force_congruences(l: &Oml) -> Result<Vec<Congruence>, CongruenceError> {
    let n = l.size();
    if n > BRUTE_FORCE_LIMIT {
        return Err(CongruenceError::TooLarge {
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let compatible = |lab: &[usize]| {
        let rel = |a: Element, b: Element| lab[a] == lab[b];
        for a in 0..n {
            for b in 0..n {
                if !rel(a, b) {
                    continue;
                }
                if !rel(l.ortho(a), l.ortho(b)) {
                    return false;
                }
                for c in 0..n {
                    for d in 0..n {
                        if rel(c, d)
                            && (!rel(l.meet(a, c), l.meet(b, d))
                                || !rel(l.join(a, c), l.join(b, d)))
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    };

    // Restricted growth strings enumerate each partition once.
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn walk(at: usize, max: usize, labels: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if at == labels.len() {
            visit(labels);
            return;
        }
        for lab in 0..=max + 1 {
            labels[at] = lab;
            walk(at + 1, max.max(lab), labels, visit);
        }
    }
    let mut visit = |lab: &[usize]| {
        if compatible(lab) {
            out.push(Congruence::from_labels(lab));
        }
    };
    if n == 1 {
        visit(&labels);
    } else {
        labels[0] = 0;
        walk(1, 0, &mut labels, &mut visit);
    }
    out.sort();
    Ok(out)
}
