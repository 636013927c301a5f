//! Size-1 unlabeled sample compression for classes of VC dimension 1.
//!
//! The compressor keeps the greatest sample point, under the certificate
//! order, among those whose label disagrees with the reference `f`. The
//! reconstructor flips `f` on the down-set of that point. Both depend only on
//! the tree-order certificate built by [`crate::structure`].

use itertools::Itertools;

use crate::concept::{ConceptClass, Hypothesis, LabeledSample};
use crate::error::{Error, Result};
use crate::structure::{structure_certificate, StructureCertificate, TreeOrderCertificate};

/// Output of the compressor: nothing, or one unlabeled domain point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompressedSample {
    Empty,
    Single(usize),
}

impl CompressedSample {
    pub fn len(&self) -> usize {
        match self {
            CompressedSample::Empty => 0,
            CompressedSample::Single(_) => 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, CompressedSample::Empty)
    }

    pub fn point(&self) -> Option<usize> {
        match *self {
            CompressedSample::Empty => None,
            CompressedSample::Single(x) => Some(x),
        }
    }
}

/// A class paired with its tree-order certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeContext {
    class: ConceptClass,
    certificate: TreeOrderCertificate,
}

impl SchemeContext {
    /// Certify `class` (VC dimension at most 1) with reference `f`, defaulting
    /// to its lexicographically least member.
    pub fn new(class: &ConceptClass, f: Option<&Hypothesis>) -> Result<Self> {
        match structure_certificate(class, f)? {
            StructureCertificate::Tree(certificate) => Ok(SchemeContext {
                class: class.clone(),
                certificate,
            }),
            StructureCertificate::Shattered(w) => Err(Error::Shattered(w.y, w.z)),
        }
    }

    pub fn class(&self) -> &ConceptClass {
        &self.class
    }

    pub fn certificate(&self) -> &TreeOrderCertificate {
        &self.certificate
    }

    pub fn f(&self) -> &Hypothesis {
        self.certificate.f()
    }
}

fn describe_conflict(sample: &LabeledSample, class: &ConceptClass) -> String {
    let dom = class.domain();
    let fmt = |&(p, y): &(usize, bool)| format!("{}={}", dom.name(p), y as u8);
    if let Some(single) = sample
        .pairs()
        .iter()
        .find(|pair| !LabeledSample::new(vec![**pair]).is_realizable(class))
    {
        return format!("{} is realized by no hypothesis", fmt(single));
    }
    for (a, b) in sample.pairs().iter().tuple_combinations() {
        if !LabeledSample::new(vec![*a, *b]).is_realizable(class) {
            return format!("({}, {}) is realized by no hypothesis", fmt(a), fmt(b));
        }
    }
    "every pair is realizable but no hypothesis fits the whole sample".to_string()
}

/// Keep the certificate-greatest sample point whose label differs from `f`.
///
/// Rejects samples that no member of the class labels correctly. When
/// several sample points fall in the greatest quotient class, the smallest of
/// them is kept, so the output is always a point of the sample.
pub fn compress(sample: &LabeledSample, ctx: &SchemeContext) -> Result<CompressedSample> {
    sample.check_indices(ctx.class.n())?;
    if !sample.is_realizable(&ctx.class) {
        return Err(Error::NotRealizable(describe_conflict(sample, &ctx.class)));
    }
    let cert = &ctx.certificate;
    let quotient = cert.quotient();
    let order = cert.order();
    let disagreeing: Vec<(usize, usize)> = sample
        .pairs()
        .iter()
        .filter(|&&(p, y)| y != cert.f().get(p))
        .map(|&(p, _)| (quotient.class_of(p), p))
        .collect();
    let Some(&(first, _)) = disagreeing.first() else {
        return Ok(CompressedSample::Empty);
    };
    let mut top = first;
    for &(c, _) in &disagreeing[1..] {
        if order.holds(top, c) {
            top = c;
        } else if !order.holds(c, top) {
            return Err(Error::Invariant(format!(
                "disagreeing sample classes {top} and {c} are incomparable"
            )));
        }
    }
    let point = disagreeing
        .iter()
        .filter(|&&(c, _)| c == top)
        .map(|&(_, p)| p)
        .min()
        .expect("top class comes from the sample");
    Ok(CompressedSample::Single(point))
}

/// `f` with its labels flipped on the down-set of the retained point,
/// lifted to the original domain.
pub fn reconstruct(compressed: &CompressedSample, ctx: &SchemeContext) -> Result<Hypothesis> {
    let cert = &ctx.certificate;
    let f = cert.f();
    let x = match *compressed {
        CompressedSample::Empty => return Ok(f.clone()),
        CompressedSample::Single(x) => x,
    };
    ctx.class.domain().check_index(x)?;
    let quotient = cert.quotient();
    let mut flip = vec![false; quotient.num_classes()];
    for c in cert.order().down_set(quotient.class_of(x)) {
        flip[c] = true;
    }
    Ok(Hypothesis::from_fn(f.len(), |p| {
        f.get(p) ^ flip[quotient.class_of(p)]
    }))
}

/// First sample on which the scheme broke its contract.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeFailure {
    pub hypothesis: Hypothesis,
    pub points: Vec<usize>,
    pub compressed: CompressedSample,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeReport {
    /// Distinct (hypothesis, point-set) samples, plus one for the empty sample.
    pub sample_sets: usize,
    /// Individual `G(F(S))(x) = y` comparisons.
    pub label_checks: usize,
    /// Reordered samples compared against the original compression.
    pub permutation_checks: usize,
    pub failure: Option<SchemeFailure>,
}

impl SchemeReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn check_sample(
    ctx: &SchemeContext,
    h: &Hypothesis,
    points: &[usize],
    report: &mut SchemeReport,
) -> Result<Option<SchemeFailure>> {
    let sample = LabeledSample::labeled_by(h, points);
    let compressed = compress(&sample, ctx)?;
    let fail = |reason: String| {
        Some(SchemeFailure {
            hypothesis: h.clone(),
            points: points.to_vec(),
            compressed,
            reason,
        })
    };
    report.sample_sets += 1;
    if let Some(x) = compressed.point() {
        if !points.contains(&x) {
            return Ok(fail(format!("compressed point {x} is not in the sample")));
        }
    }
    let rebuilt = reconstruct(&compressed, ctx)?;
    for &(p, y) in sample.pairs() {
        report.label_checks += 1;
        if rebuilt.get(p) != y {
            return Ok(fail(format!("reconstruction {rebuilt} mislabels point {p}")));
        }
    }
    if points.len() > 1 {
        let mut rotated = sample.pairs().to_vec();
        rotated.rotate_left(1);
        for reordered in [sample.reversed(), LabeledSample::new(rotated)] {
            report.permutation_checks += 1;
            if compress(&reordered, ctx)? != compressed {
                return Ok(fail("compression depends on sample order".to_string()));
            }
        }
    }
    Ok(None)
}

/// Exhaustively audit the scheme on `ctx`: every member of the class, every
/// point-set of size `1..=up_to_m`, plus the empty sample.
pub fn verify_scheme_with(ctx: &SchemeContext, up_to_m: usize) -> Result<SchemeReport> {
    let mut report = SchemeReport {
        sample_sets: 0,
        label_checks: 0,
        permutation_checks: 0,
        failure: None,
    };
    report.sample_sets += 1;
    if compress(&LabeledSample::default(), ctx)? != CompressedSample::Empty
        || reconstruct(&CompressedSample::Empty, ctx)? != *ctx.f()
    {
        report.failure = Some(SchemeFailure {
            hypothesis: ctx.f().clone(),
            points: Vec::new(),
            compressed: CompressedSample::Empty,
            reason: "empty sample does not round-trip to f".to_string(),
        });
        return Ok(report);
    }
    let n = ctx.class.n();
    for h in ctx.class.hypotheses() {
        for k in 1..=up_to_m.min(n) {
            for points in (0..n).combinations(k) {
                if let Some(f) = check_sample(ctx, h, &points, &mut report)? {
                    report.failure = Some(f);
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// [`verify_scheme_with`] on the default certificate of `class`. Fails with
/// [`Error::Shattered`] when the class has VC dimension 2 or more.
pub fn verify_scheme(class: &ConceptClass, up_to_m: usize) -> Result<SchemeReport> {
    verify_scheme_with(&SchemeContext::new(class, None)?, up_to_m)
}
