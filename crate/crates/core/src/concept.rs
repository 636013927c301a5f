//! Finite concept classes and the primitive combinatorics on them.
//!
//! A [`ConceptClass`] is a finite [`Domain`] together with a nonempty,
//! deduplicated set of [`Hypothesis`] label vectors. Everything else in the
//! crate is built from the operations here: restriction patterns,
//! shattering, brute-force VC dimension, f-representations (pointwise XOR
//! with a reference labeling), quotienting of points that no hypothesis
//! separates, and exact 0-1 losses.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num::{BigInt, BigRational};

use crate::error::{Error, Result};

/// Exact rational used for every loss and error value.
pub type Rational = BigRational;

const WORD: usize = 64;

/// A binary labeling of the domain, stored bit-packed.
///
/// Ordering is lexicographic over the label sequence (point 0 first, with
/// `0 < 1`), which is the order in which the string form `"0110"` sorts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypothesis {
    len: usize,
    words: Vec<u64>,
}

impl Hypothesis {
    pub fn zeros(len: usize) -> Self {
        Hypothesis {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn ones(len: usize) -> Self {
        Self::from_fn(len, |_| true)
    }

    pub fn from_fn(len: usize, mut label: impl FnMut(usize) -> bool) -> Self {
        let mut h = Self::zeros(len);
        for i in 0..len {
            if label(i) {
                h.words[i / WORD] |= 1 << (i % WORD);
            }
        }
        h
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        Self::from_fn(bits.len(), |i| bits[i])
    }

    /// Indicator of `points` over a domain of `len` points.
    pub fn indicator(len: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut h = Self::zeros(len);
        for p in points {
            h.set(p, true);
        }
        h
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Label at point `i`. Panics when `i` is out of range.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "label index {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "label index {i} out of range {}", self.len);
        let bit = 1 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    /// Pointwise XOR. Panics on length mismatch; see [`f_representation`]
    /// for the checked public form.
    pub fn xor(&self, other: &Hypothesis) -> Hypothesis {
        assert_eq!(self.len, other.len, "xor of hypotheses of different length");
        Hypothesis {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of points where `self` and `other` disagree.
    pub fn hamming(&self, other: &Hypothesis) -> usize {
        assert_eq!(self.len, other.len, "hamming of hypotheses of different length");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Every point labeled 1 by `self` is labeled 1 by `other`.
    pub fn is_subset_of(&self, other: &Hypothesis) -> bool {
        assert_eq!(self.len, other.len, "subset test of hypotheses of different length");
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices labeled 1, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Restriction to `points`, in the order given.
    pub fn restrict(&self, points: &[usize]) -> Hypothesis {
        Hypothesis::from_fn(points.len(), |j| self.get(points[j]))
    }

    fn restrict_key(&self, points: &[usize]) -> u64 {
        points
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &p)| acc | (self.get(p) as u64) << j)
    }
}

impl Ord for Hypothesis {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = diff.trailing_zeros();
                return if a >> bit & 1 == 1 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Hypothesis {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypothesis({self})")
    }
}

impl FromStr for Hypothesis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Invalid(format!(
                    "hypothesis {s:?} contains {other:?}; only '0' and '1' are allowed"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Hypothesis::from_bits(bits))
    }
}

/// An ordered list of distinct point identifiers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Domain {
    points: Vec<String>,
}

impl Domain {
    pub fn new(points: Vec<String>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(Error::DuplicatePoint(p.clone()));
            }
        }
        Ok(Domain { points })
    }

    /// The domain `p0, p1, ..., p(n-1)`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("p{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.points[index]
    }

    pub fn names(&self) -> &[String] {
        &self.points
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                size: self.len(),
            })
        }
    }

    /// Render a set of indices as `{p0,p2}`.
    pub fn format_set(&self, indices: &[usize]) -> String {
        format!("{{{}}}", indices.iter().map(|&i| self.name(i)).join(","))
    }
}

/// A finite concept class: a domain and a nonempty set of hypotheses.
///
/// Hypotheses are kept sorted (lexicographically) and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConceptClass {
    domain: Domain,
    hypotheses: Vec<Hypothesis>,
}

impl ConceptClass {
    pub fn new(domain: Domain, hypotheses: impl IntoIterator<Item = Hypothesis>) -> Result<Self> {
        let mut hypotheses: Vec<Hypothesis> = hypotheses.into_iter().collect();
        if hypotheses.is_empty() {
            return Err(Error::EmptyClass);
        }
        for h in &hypotheses {
            if h.len() != domain.len() {
                return Err(Error::LengthMismatch {
                    expected: domain.len(),
                    found: h.len(),
                });
            }
        }
        hypotheses.sort();
        hypotheses.dedup();
        Ok(ConceptClass { domain, hypotheses })
    }

    /// Build a class over `p0..p(n-1)` from `'0'/'1'` strings.
    pub fn from_bit_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let hypotheses = rows
            .iter()
            .map(|r| r.as_ref().parse())
            .collect::<Result<Vec<Hypothesis>>>()?;
        let n = hypotheses.first().map(Hypothesis::len).ok_or(Error::EmptyClass)?;
        Self::new(Domain::numbered(n)?, hypotheses)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// Number of domain points.
    pub fn n(&self) -> usize {
        self.domain.len()
    }

    pub fn hypotheses(&self) -> &[Hypothesis] {
        &self.hypotheses
    }

    pub fn len(&self) -> usize {
        self.hypotheses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hypotheses.is_empty()
    }

    pub fn contains(&self, h: &Hypothesis) -> bool {
        self.hypotheses.binary_search(h).is_ok()
    }

    /// The lexicographically least member.
    pub fn lex_min(&self) -> &Hypothesis {
        &self.hypotheses[0]
    }

    /// The labels every hypothesis gives point `x`, in class order.
    pub fn column(&self, x: usize) -> Hypothesis {
        Hypothesis::from_fn(self.hypotheses.len(), |j| self.hypotheses[j].get(x))
    }

    /// The class restricted to `points` (kept in the given order), with the
    /// corresponding sub-domain.
    pub fn restrict_points(&self, points: &[usize]) -> Result<ConceptClass> {
        for &p in points {
            self.domain.check_index(p)?;
        }
        let domain = Domain::new(points.iter().map(|&p| self.domain.name(p).to_string()).collect())?;
        ConceptClass::new(domain, self.hypotheses.iter().map(|h| h.restrict(points)))
    }

    /// Every nonempty class over `p0..p(n-1)`, i.e. every nonempty subset of
    /// the `2^n` labelings. Only `n <= 4` is supported (65,535 classes).
    pub fn enumerate_all(n: usize) -> Result<impl Iterator<Item = ConceptClass>> {
        if !(1..=4).contains(&n) {
            return Err(Error::SearchCap(format!(
                "full class enumeration supports 1..=4 points, got {n}"
            )));
        }
        let domain = Domain::numbered(n)?;
        let labelings: Vec<Hypothesis> = (0..1usize << n)
            .map(|code| Hypothesis::from_fn(n, |i| code >> i & 1 == 1))
            .collect();
        let total = 1u64 << labelings.len();
        Ok((1..total).map(move |mask| {
            let members = labelings
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, h)| h.clone());
            ConceptClass::new(domain.clone(), members).expect("nonempty by construction")
        }))
    }
}

/// A sequence of `(point index, label)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LabeledSample {
    pairs: Vec<(usize, bool)>,
}

impl LabeledSample {
    pub fn new(pairs: Vec<(usize, bool)>) -> Self {
        LabeledSample { pairs }
    }

    /// The sample of `points` labeled by `h`.
    pub fn labeled_by(h: &Hypothesis, points: &[usize]) -> Self {
        LabeledSample {
            pairs: points.iter().map(|&p| (p, h.get(p))).collect(),
        }
    }

    pub fn pairs(&self) -> &[(usize, bool)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn check_indices(&self, n: usize) -> Result<()> {
        match self.pairs.iter().find(|(p, _)| *p >= n) {
            Some(&(index, _)) => Err(Error::IndexOutOfRange { index, size: n }),
            None => Ok(()),
        }
    }

    pub fn is_consistent_with(&self, h: &Hypothesis) -> bool {
        self.pairs.iter().all(|&(p, y)| h.get(p) == y)
    }

    /// Some member of `class` labels every pair correctly.
    pub fn is_realizable(&self, class: &ConceptClass) -> bool {
        self.realizer(class).is_some()
    }

    pub fn realizer<'a>(&self, class: &'a ConceptClass) -> Option<&'a Hypothesis> {
        class.hypotheses().iter().find(|h| self.is_consistent_with(h))
    }

    pub fn reversed(&self) -> Self {
        LabeledSample {
            pairs: self.pairs.iter().rev().copied().collect(),
        }
    }
}

fn normalize_points(class: &ConceptClass, points: &[usize]) -> Result<Vec<usize>> {
    for &p in points {
        class.domain().check_index(p)?;
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(sorted)
}

/// The distinct restrictions `{h ∩ A : h ∈ H}`, each indexed by `A` in
/// ascending order.
pub fn patterns(class: &ConceptClass, points: &[usize]) -> Result<BTreeSet<Hypothesis>> {
    let points = normalize_points(class, points)?;
    Ok(class.hypotheses().iter().map(|h| h.restrict(&points)).collect())
}

fn pattern_count(class: &ConceptClass, points: &[usize]) -> usize {
    debug_assert!(points.len() <= 64);
    let mut keys: Vec<u64> = class
        .hypotheses()
        .iter()
        .map(|h| h.restrict_key(points))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    keys.len()
}

fn shatters_sorted(class: &ConceptClass, points: &[usize]) -> bool {
    let k = points.len();
    if k >= usize::BITS as usize - 1 || class.len() < 1usize << k {
        return false;
    }
    pattern_count(class, points) == 1usize << k
}

/// Whether every one of the `2^|A|` label patterns on `A` is realized.
pub fn shatters(class: &ConceptClass, points: &[usize]) -> Result<bool> {
    let points = normalize_points(class, points)?;
    Ok(shatters_sorted(class, &points))
}

/// Bounds on the exhaustive VC-dimension search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_domain: usize,
    pub max_hypotheses: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_domain: 24,
            max_hypotheses: 1 << 16,
        }
    }
}

/// Exact VC dimension together with one shattered set of that size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcDimension {
    pub dimension: usize,
    pub witness: Vec<usize>,
}

/// Size-increasing exhaustive search, stopping at the first size with no
/// shattered set. Sizes above `floor(log2 |H|)` are never tried.
pub fn vc_dimension_with_witness(class: &ConceptClass) -> VcDimension {
    let cap = class.len().ilog2() as usize;
    let mut best = VcDimension {
        dimension: 0,
        witness: Vec::new(),
    };
    for k in 1..=cap.min(class.n()) {
        match (0..class.n())
            .combinations(k)
            .find(|a| shatters_sorted(class, a))
        {
            Some(a) => {
                best = VcDimension {
                    dimension: k,
                    witness: a,
                }
            }
            None => break,
        }
    }
    best
}

pub fn vc_dimension(class: &ConceptClass) -> usize {
    vc_dimension_with_witness(class).dimension
}

/// [`vc_dimension_with_witness`], refusing classes beyond `limits`.
pub fn vc_dimension_bounded(class: &ConceptClass, limits: SearchLimits) -> Result<VcDimension> {
    if class.n() > limits.max_domain {
        return Err(Error::SearchCap(format!(
            "domain has {} points, exact search is capped at {}",
            class.n(),
            limits.max_domain
        )));
    }
    if class.len() > limits.max_hypotheses {
        return Err(Error::SearchCap(format!(
            "class has {} hypotheses, exact search is capped at {}",
            class.len(),
            limits.max_hypotheses
        )));
    }
    Ok(vc_dimension_with_witness(class))
}

/// `H_f = {h XOR f : h ∈ H}`. `f` need not belong to `H`.
pub fn f_representation(class: &ConceptClass, f: &Hypothesis) -> Result<ConceptClass> {
    if f.len() != class.n() {
        return Err(Error::LengthMismatch {
            expected: class.n(),
            found: f.len(),
        });
    }
    ConceptClass::new(
        class.domain().clone(),
        class.hypotheses().iter().map(|h| h.xor(f)),
    )
}

/// Partition of the domain into classes of points that carry identical
/// labels under every hypothesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    representative: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl QuotientMap {
    /// Representative (minimum index of its class) of point `x`.
    pub fn representative(&self, x: usize) -> usize {
        self.representative[x]
    }

    /// Position of `x`'s class in [`QuotientMap::classes`].
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// The classes, each ascending, ordered by representative.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Number of original points.
    pub fn domain_size(&self) -> usize {
        self.class_of.len()
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.classes.len() == self.class_of.len()
    }

    /// Class members joined with `|`, e.g. `p0|p3`.
    pub fn class_label(&self, class: usize, domain: &Domain) -> String {
        self.classes[class].iter().map(|&p| domain.name(p)).join("|")
    }
}

/// Merge points whose label column is identical across `H`. Returns the map
/// and the class restricted to the representatives, in which every two
/// points are separated by some hypothesis.
pub fn quotient_indistinguishable(class: &ConceptClass) -> (QuotientMap, ConceptClass) {
    let n = class.n();
    let mut by_column: HashMap<Hypothesis, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = Vec::with_capacity(n);
    for x in 0..n {
        let next = classes.len();
        let c = *by_column.entry(class.column(x)).or_insert(next);
        if c == next {
            classes.push(Vec::new());
        }
        classes[c].push(x);
        class_of.push(c);
    }
    let representative = class_of.iter().map(|&c| classes[c][0]).collect();
    let map = QuotientMap {
        representative,
        class_of,
        classes,
    };
    let reduced = class
        .restrict_points(&map.representatives())
        .expect("representatives are valid indices");
    (map, reduced)
}

/// `L_S(h)`: the fraction of sample pairs that `h` mislabels.
pub fn empirical_loss(h: &Hypothesis, sample: &LabeledSample) -> Result<Rational> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    sample.check_indices(h.len())?;
    let mistakes = sample.pairs().iter().filter(|&&(p, y)| h.get(p) != y).count();
    Ok(Rational::new(BigInt::from(mistakes), BigInt::from(sample.len())))
}

/// Error of `h` against target `t` under the uniform distribution on the
/// domain: Hamming distance over `N`.
pub fn true_error_uniform(h: &Hypothesis, t: &Hypothesis) -> Result<Rational> {
    if h.len() != t.len() {
        return Err(Error::LengthMismatch {
            expected: t.len(),
            found: h.len(),
        });
    }
    if h.is_empty() {
        return Err(Error::EmptyDomain);
    }
    Ok(Rational::new(BigInt::from(h.hamming(t)), BigInt::from(h.len())))
}
