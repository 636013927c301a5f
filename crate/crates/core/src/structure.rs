//! Tree-order certificates for classes of VC dimension at most 1.
//!
//! For a class `H` and a member `f`, point `x` sits below `y` when every
//! hypothesis that disagrees with `f` at `y` also disagrees with `f` at `x`.
//! On VC-1 classes this relation is a tree ordering under which every
//! disagreement set `h_f` is a principal down-set (a down-closed chain).
//! When the class has dimension 2 or more, the same construction fails at a
//! specific triple or pair of points, from which a shattered pair together
//! with four hypotheses realizing it is read off.
//!
//! Two points whose columns are equal or complementary have equal
//! disagreement columns for every `f ∈ H`, so the relation is only
//! antisymmetric after merging them. The certificate therefore quotients the
//! f-representation `H_f`, not `H` itself, and carries the [`QuotientMap`]
//! so results lift back to the original domain. A point where no hypothesis
//! disagrees with `f` lies in no `h_f`; it is kept as an isolated element.

use std::fmt::Write as _;

use crate::concept::{
    f_representation, quotient_indistinguishable, ConceptClass, Domain, Hypothesis, QuotientMap,
};
use crate::error::{Error, Result};

/// A binary relation on `0..n`, stored as a dense matrix.
/// `holds(x, y)` reads "x is below y".
#[derive(Clone, PartialEq, Eq)]
pub struct OrderRelation {
    n: usize,
    holds: Vec<bool>,
}

impl OrderRelation {
    pub fn from_fn(n: usize, mut rel: impl FnMut(usize, usize) -> bool) -> Self {
        let mut holds = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                holds.push(rel(x, y));
            }
        }
        OrderRelation { n, holds }
    }

    /// The discrete order: every element related only to itself.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |x, y| x == y)
    }

    /// The total relation, every pair related both ways.
    pub fn full(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// The chain `order[0] ≤ order[1] ≤ ...`.
    pub fn chain(order: &[usize]) -> Self {
        let mut pos = vec![0; order.len()];
        for (i, &e) in order.iter().enumerate() {
            pos[e] = i;
        }
        Self::from_fn(order.len(), |x, y| pos[x] <= pos[y])
    }

    /// The reflexive-transitive closure of a parent forest.
    pub fn from_parents(parents: &[Option<usize>]) -> Self {
        let n = parents.len();
        Self::from_fn(n, |x, y| {
            let mut cur = Some(y);
            let mut steps = 0;
            while let Some(c) = cur {
                if c == x {
                    return true;
                }
                cur = parents[c];
                steps += 1;
                assert!(steps <= n, "parent forest contains a cycle");
            }
            false
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn holds(&self, x: usize, y: usize) -> bool {
        self.holds[x * self.n + y]
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.holds(x, y) || self.holds(y, x)
    }

    /// `I_x = {y : y ≤ x}`, ascending.
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| self.holds(y, x)).collect()
    }

    /// For a tree ordering: each element's unique maximal strict
    /// predecessor, or `None` for roots.
    pub fn parents(&self) -> Vec<Option<usize>> {
        (0..self.n)
            .map(|x| {
                let below: Vec<usize> = self
                    .down_set(x)
                    .into_iter()
                    .filter(|&y| y != x)
                    .collect();
                below
                    .iter()
                    .copied()
                    .find(|&p| below.iter().all(|&q| self.holds(q, p)))
            })
            .collect()
    }

    /// Parent-to-child edges of [`OrderRelation::parents`], ascending by child.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.parents()
            .into_iter()
            .enumerate()
            .filter_map(|(child, p)| p.map(|p| (p, child)))
            .collect()
    }
}

impl std::fmt::Debug for OrderRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pairs: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|x| (0..self.n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && self.holds(x, y))
            .collect();
        write!(f, "OrderRelation(n={}, strict={:?})", self.n, pairs)
    }
}

/// First failure of a partial-order axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderViolation {
    NotReflexive(usize),
    NotTransitive(usize, usize, usize),
    NotAntisymmetric(usize, usize),
}

pub fn verify_partial_order(order: &OrderRelation) -> std::result::Result<(), OrderViolation> {
    let n = order.n();
    if let Some(x) = (0..n).find(|&x| !order.holds(x, x)) {
        return Err(OrderViolation::NotReflexive(x));
    }
    for x in 0..n {
        for y in 0..n {
            if !order.holds(x, y) {
                continue;
            }
            if x != y && order.holds(y, x) {
                return Err(OrderViolation::NotAntisymmetric(x.min(y), x.max(y)));
            }
            if let Some(z) = (0..n).find(|&z| order.holds(y, z) && !order.holds(x, z)) {
                return Err(OrderViolation::NotTransitive(x, y, z));
            }
        }
    }
    Ok(())
}

/// `y` and `z` are both below `x` but incomparable, so `I_x` is not a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeViolation {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// Every down-set is a chain. Assumes `order` is a partial order.
pub fn verify_tree_order(order: &OrderRelation) -> std::result::Result<(), TreeViolation> {
    for x in 0..order.n() {
        if let Some((y, z)) = find_incomparable(&order.down_set(x), order) {
            return Err(TreeViolation { x, y, z });
        }
    }
    Ok(())
}

/// Down-closed: `y ∈ set` and `x ≤ y` imply `x ∈ set`.
pub fn is_initial_segment(set: &[usize], order: &OrderRelation) -> bool {
    let mut member = vec![false; order.n()];
    for &s in set {
        member[s] = true;
    }
    set.iter()
        .all(|&y| (0..order.n()).all(|x| !order.holds(x, y) || member[x]))
}

/// The first pair (ascending) of elements of `set` that the order does not
/// compare.
pub fn find_incomparable(set: &[usize], order: &OrderRelation) -> Option<(usize, usize)> {
    set.iter().enumerate().find_map(|(i, &a)| {
        set[i + 1..]
            .iter()
            .find(|&&b| !order.comparable(a, b))
            .map(|&b| (a.min(b), a.max(b)))
    })
}

/// Per-point sets of hypotheses (as bit vectors over `H`'s order) that
/// disagree with `f` at that point.
fn disagreement_columns(class: &ConceptClass, f: &Hypothesis) -> Vec<Hypothesis> {
    (0..class.n())
        .map(|x| {
            Hypothesis::from_fn(class.len(), |j| class.hypotheses()[j].get(x) != f.get(x))
        })
        .collect()
}

/// The relation `x ≤ y ⇔ ∀h ∈ H: h(y) ≠ f(y) → h(x) ≠ f(x)` on a class
/// whose points are pairwise separated in the f-representation.
///
/// A point at which every hypothesis agrees with `f` is related only to
/// itself. The result is reflexive, transitive and antisymmetric for every
/// admissible input, whatever its VC dimension.
pub fn build_order(class: &ConceptClass, f: &Hypothesis) -> Result<OrderRelation> {
    if f.len() != class.n() {
        return Err(Error::LengthMismatch {
            expected: class.n(),
            found: f.len(),
        });
    }
    if !class.contains(f) {
        return Err(Error::NotAMember(f.to_string()));
    }
    let cols = disagreement_columns(class, f);
    for x in 0..cols.len() {
        if let Some(y) = (x + 1..cols.len()).find(|&y| cols[x] == cols[y]) {
            return Err(Error::NotQuotiented(x, y));
        }
    }
    Ok(OrderRelation::from_fn(class.n(), |x, y| {
        x == y || (!cols[y].is_zero() && cols[y].is_subset_of(&cols[x]))
    }))
}

/// Evidence that `H` has VC dimension at most 1.
///
/// Order elements are quotient classes: element `i` stands for
/// `quotient.classes()[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeOrderCertificate {
    f: Hypothesis,
    quotient: QuotientMap,
    order: OrderRelation,
}

impl TreeOrderCertificate {
    /// The reference hypothesis, over the original domain.
    pub fn f(&self) -> &Hypothesis {
        &self.f
    }

    pub fn quotient(&self) -> &QuotientMap {
        &self.quotient
    }

    pub fn order(&self) -> &OrderRelation {
        &self.order
    }

    /// Quotient classes on which `h` disagrees with `f`.
    pub fn disagreement_set(&self, h: &Hypothesis) -> Vec<usize> {
        self.quotient
            .classes()
            .iter()
            .enumerate()
            .filter(|(_, members)| h.get(members[0]) != self.f.get(members[0]))
            .map(|(i, _)| i)
            .collect()
    }

    /// DOT digraph of the parent forest, one node per quotient class.
    pub fn to_dot(&self, domain: &Domain) -> String {
        let mut out = String::from("digraph tree_order {\n");
        for i in 0..self.quotient.num_classes() {
            let label = self.quotient.class_label(i, domain).replace('"', "\\\"");
            let _ = writeln!(out, "    n{i} [label=\"{label}\"];");
        }
        for (parent, child) in self.order.edges() {
            let _ = writeln!(out, "    n{parent} -> n{child};");
        }
        out.push_str("}\n");
        out
    }
}

/// Two points and four members of `H` realizing all four label patterns on
/// them. `hab` labels `y` with `a` and `z` with `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShatteredPairWitness {
    pub y: usize,
    pub z: usize,
    pub h00: Hypothesis,
    pub h10: Hypothesis,
    pub h01: Hypothesis,
    pub h11: Hypothesis,
}

impl ShatteredPairWitness {
    pub fn rows(&self) -> [(&'static str, &Hypothesis); 4] {
        [("00", &self.h00), ("10", &self.h10), ("01", &self.h01), ("11", &self.h11)]
    }

    /// Each row carries the pattern its name claims.
    pub fn is_valid(&self) -> bool {
        self.rows().iter().all(|(pat, h)| {
            let b = pat.as_bytes();
            h.get(self.y) == (b[0] == b'1') && h.get(self.z) == (b[1] == b'1')
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureCertificate {
    Tree(TreeOrderCertificate),
    Shattered(ShatteredPairWitness),
}

impl StructureCertificate {
    pub fn is_tree(&self) -> bool {
        matches!(self, StructureCertificate::Tree(_))
    }

    pub fn tree(&self) -> Option<&TreeOrderCertificate> {
        match self {
            StructureCertificate::Tree(t) => Some(t),
            StructureCertificate::Shattered(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&ShatteredPairWitness> {
        match self {
            StructureCertificate::Shattered(w) => Some(w),
            StructureCertificate::Tree(_) => None,
        }
    }
}

/// Resolve an optional reference hypothesis: the given one must be a member
/// of `class`; the default is the lexicographically least member.
pub fn choose_reference(class: &ConceptClass, f: Option<&Hypothesis>) -> Result<Hypothesis> {
    match f {
        None => Ok(class.lex_min().clone()),
        Some(f) if f.len() != class.n() => Err(Error::LengthMismatch {
            expected: class.n(),
            found: f.len(),
        }),
        Some(f) if !class.contains(f) => Err(Error::NotAMember(f.to_string())),
        Some(f) => Ok(f.clone()),
    }
}

/// Build a tree-order certificate for `class`, or a shattered pair when its
/// VC dimension is at least 2.
///
/// The pair comes from one of two failures, both resolved the same way. If
/// some `I_x` holds incomparable `y, z`, any hypothesis disagreeing with `f`
/// at `x` disagrees at both. If some `h_f` holds incomparable `y, z`, that
/// `h` does. Incomparability then supplies one hypothesis for each mixed
/// pattern, and `f` realizes the agreeing one.
pub fn structure_certificate(
    class: &ConceptClass,
    f: Option<&Hypothesis>,
) -> Result<StructureCertificate> {
    let f = choose_reference(class, f)?;
    let (quotient, _) = quotient_indistinguishable(&f_representation(class, &f)?);
    let reps = quotient.representatives();
    let reduced = class.restrict_points(&reps)?;
    let order = build_order(&reduced, &f.restrict(&reps))
        .map_err(|e| Error::Invariant(format!("order construction on quotient failed: {e}")))?;
    if let Err(v) = verify_partial_order(&order) {
        return Err(Error::Invariant(format!("quotient order is not a partial order: {v:?}")));
    }

    let disagrees = |h: &Hypothesis, i: usize| h.get(reps[i]) != f.get(reps[i]);
    let pair_witness = |y: usize, z: usize, common: &Hypothesis| -> Result<StructureCertificate> {
        let mixed = |on: usize, off: usize| {
            class
                .hypotheses()
                .iter()
                .find(|h| disagrees(h, on) && !disagrees(h, off))
                .cloned()
                .ok_or_else(|| {
                    Error::Invariant(format!("incomparable classes {y}, {z} lack a separating hypothesis"))
                })
        };
        let only_z = mixed(z, y)?;
        let only_y = mixed(y, z)?;
        let (py, pz) = (reps[y], reps[z]);
        let mut rows: [Option<Hypothesis>; 4] = Default::default();
        for h in [&f, &only_y, &only_z, common] {
            rows[(h.get(py) as usize) << 1 | h.get(pz) as usize] = Some(h.clone());
        }
        let [h00, h01, h10, h11] = rows.map(|h| h.expect("four distinct patterns"));
        let w = ShatteredPairWitness {
            y: py,
            z: pz,
            h00,
            h10,
            h01,
            h11,
        };
        debug_assert!(w.is_valid());
        Ok(StructureCertificate::Shattered(w))
    };

    if let Err(TreeViolation { x, y, z }) = verify_tree_order(&order) {
        let common = class
            .hypotheses()
            .iter()
            .find(|h| disagrees(h, x))
            .ok_or_else(|| Error::Invariant(format!("class {x} has comparable elements but no disagreement")))?;
        return pair_witness(y, z, common);
    }

    let cert = TreeOrderCertificate { f: f.clone(), quotient, order };
    for h in class.hypotheses() {
        let set = cert.disagreement_set(h);
        if !is_initial_segment(&set, &cert.order) {
            return Err(Error::Invariant(format!("disagreement set of {h} is not down-closed")));
        }
        if let Some((y, z)) = find_incomparable(&set, &cert.order) {
            return pair_witness(y, z, h);
        }
    }
    Ok(StructureCertificate::Tree(cert))
}
