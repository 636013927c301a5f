//! A finite laboratory for the ordinal initial-segment class and the
//! adversarial ERM rule that outputs the segment below the highest-ranked
//! positive sample point.
//!
//! A rank permutation stands in for the well-ordering. At every finite size
//! the rule's expected error decays to zero as the sample grows, and both
//! iterated averages of the indicator of `{(x, y) : x ≺ y}` agree. The
//! probability-one failure needs an uncountable well-ordered domain with
//! countable initial segments and cannot be instantiated here; the exact
//! decay curve and the finite Fubini check are what this module measures.

use num::{BigInt, BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::concept::{true_error_uniform, ConceptClass, Domain, Hypothesis, LabeledSample, Rational};
use crate::error::{Error, Result};

/// Generator used by [`monte_carlo_error`]; trial `i` is seeded with
/// `seed + i` (wrapping) through `SeedableRng::seed_from_u64`.
pub const GENERATOR: &str = "rand_chacha::ChaCha8Rng/seed_from_u64(seed+trial)";

/// Ranks `1..=N` for points `0..N`: `rank(x) < rank(y)` reads `x ≺ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinalClassConfig {
    ranks: Vec<usize>,
}

impl OrdinalClassConfig {
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        let n = ranks.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("no points".into()));
        }
        let mut seen = vec![false; n];
        for (p, &r) in ranks.iter().enumerate() {
            if !(1..=n).contains(&r) {
                return Err(Error::InvalidPermutation(format!(
                    "point {p} has rank {r}, expected 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[r - 1], true) {
                return Err(Error::InvalidPermutation(format!("rank {r} assigned twice")));
            }
        }
        Ok(OrdinalClassConfig { ranks })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n).collect())
    }

    /// Uniformly random ranks.
    pub fn shuffled<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        use rand::seq::SliceRandom;
        let mut ranks: Vec<usize> = (1..=n).collect();
        ranks.shuffle(rng);
        Self::new(ranks)
    }

    /// Reversal of the order: rank `r` becomes `N + 1 - r`.
    pub fn reversed(&self) -> Self {
        let n = self.n();
        OrdinalClassConfig {
            ranks: self.ranks.iter().map(|r| n + 1 - r).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.ranks.len()
    }

    pub fn rank(&self, point: usize) -> usize {
        self.ranks[point]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `h_r = {s : s ≺ r}`.
    pub fn segment_below(&self, r: usize) -> Hypothesis {
        let cut = self.rank(r);
        Hypothesis::from_fn(self.n(), |s| self.rank(s) < cut)
    }
}

/// The full domain together with every open segment `h_r`. Always `N + 1`
/// distinct hypotheses.
pub fn build_ordinal_class(cfg: &OrdinalClassConfig) -> ConceptClass {
    let n = cfg.n();
    let hypotheses = std::iter::once(Hypothesis::ones(n)).chain((0..n).map(|r| cfg.segment_below(r)));
    ConceptClass::new(Domain::numbered(n).expect("n >= 1"), hypotheses)
        .expect("lengths match the domain")
}

/// Which segment the adversarial rule returns for the top positive point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SegmentConvention {
    /// `{s : s ⪯ r*}`, which fits every all-positive sample exactly.
    #[default]
    Closed,
    /// `{s : s ≺ r*}`, the literal segment; mislabels `r*` itself.
    Open,
}

impl SegmentConvention {
    pub fn name(&self) -> &'static str {
        match self {
            SegmentConvention::Closed => "closed",
            SegmentConvention::Open => "open",
        }
    }
}

/// Return the segment ending at the highest-ranked positively labeled
/// sample point.
pub fn bad_erm(
    sample: &LabeledSample,
    cfg: &OrdinalClassConfig,
    convention: SegmentConvention,
) -> Result<Hypothesis> {
    sample.check_indices(cfg.n())?;
    let top = sample
        .pairs()
        .iter()
        .filter(|&&(_, y)| y)
        .map(|&(p, _)| cfg.rank(p))
        .max()
        .ok_or(Error::NoPositivePoint)?;
    Ok(Hypothesis::from_fn(cfg.n(), |s| match convention {
        SegmentConvention::Closed => cfg.rank(s) <= top,
        SegmentConvention::Open => cfg.rank(s) < top,
    }))
}

/// Expected uniform error of [`bad_erm`] (closed segments) against the
/// all-ones target, over `m` i.i.d. uniform draws from `N` points:
/// `(1/N) Σ_{k=0}^{N-1} (k/N)^m`.
pub fn exact_expected_error(n: u64, m: u32) -> Rational {
    assert!(n >= 1 && m >= 1, "exact_expected_error needs N, m >= 1");
    let total: BigInt = (0..n).map(|k| num::pow(BigInt::from(k), m as usize)).sum();
    BigRational::new(total, num::pow(BigInt::from(n), m as usize + 1))
}

/// [`exact_expected_error`] under either convention. The open segment also
/// misses the top point, adding exactly `1/N`.
pub fn exact_expected_error_with(n: u64, m: u32, convention: SegmentConvention) -> Rational {
    let closed = exact_expected_error(n, m);
    match convention {
        SegmentConvention::Closed => closed,
        SegmentConvention::Open => closed + BigRational::new(BigInt::one(), BigInt::from(n)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    /// Three standard errors.
    pub half_width: f64,
    pub trials: u64,
    pub generator: &'static str,
}

/// Average true error of [`bad_erm`] over `trials` independent samples of
/// size `m`. The standard error uses the unbiased sample variance and is
/// zero for a single trial.
pub fn monte_carlo_error(
    cfg: &OrdinalClassConfig,
    m: usize,
    trials: u64,
    seed: u64,
    convention: SegmentConvention,
) -> Result<MonteCarloEstimate> {
    if trials == 0 {
        return Err(Error::Invalid("monte carlo needs at least one trial".into()));
    }
    if m == 0 {
        return Err(Error::NoPositivePoint);
    }
    let n = cfg.n();
    let target = Hypothesis::ones(n);
    let mut errors = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial));
        let sample = LabeledSample::new((0..m).map(|_| (rng.gen_range(0..n), true)).collect());
        let chosen = bad_erm(&sample, cfg, convention)?;
        errors.push(chosen.hamming(&target) as f64 / n as f64);
    }
    let count = trials as f64;
    let mean = errors.iter().sum::<f64>() / count;
    let std_error = if trials > 1 {
        let var = errors.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (count - 1.0);
        (var / count).sqrt()
    } else {
        0.0
    };
    Ok(MonteCarloEstimate {
        mean,
        std_error,
        half_width: 3.0 * std_error,
        trials,
        generator: GENERATOR,
    })
}

/// One ERM run on an all-positive sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErmTrialResult {
    pub sample: LabeledSample,
    pub chosen: Hypothesis,
    pub empirical_risk: Rational,
    pub true_error: Rational,
}

pub fn run_trial(
    cfg: &OrdinalClassConfig,
    points: &[usize],
    convention: SegmentConvention,
) -> Result<ErmTrialResult> {
    let target = Hypothesis::ones(cfg.n());
    let sample = LabeledSample::labeled_by(&target, points);
    let chosen = bad_erm(&sample, cfg, convention)?;
    let empirical_risk = crate::concept::empirical_loss(&chosen, &sample)?;
    let true_error = true_error_uniform(&chosen, &target)?;
    Ok(ErmTrialResult {
        sample,
        chosen,
        empirical_risk,
        true_error,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FubiniReport {
    /// `(1/N) Σ_y |{x : x ≺ y}| / N`: inner average over `x`.
    pub row_mean: Rational,
    /// `(1/N) Σ_x |{y : x ≺ y}| / N`: inner average over `y`.
    pub col_mean: Rational,
    pub pair_count: u64,
}

/// Both iterated uniform averages of the indicator of `x ≺ y` on the grid,
/// and the number of ordered pairs in the relation.
pub fn fubini_check(cfg: &OrdinalClassConfig) -> FubiniReport {
    let n = cfg.n();
    let nn = BigInt::from(n);
    let inner = |fixed_is_y: bool, fixed: usize| -> usize {
        (0..n)
            .filter(|&other| {
                let (x, y) = if fixed_is_y { (other, fixed) } else { (fixed, other) };
                cfg.rank(x) < cfg.rank(y)
            })
            .count()
    };
    let iterated = |fixed_is_y: bool| -> (Rational, u64) {
        let mut acc = Rational::zero();
        let mut pairs = 0u64;
        for fixed in 0..n {
            let c = inner(fixed_is_y, fixed);
            pairs += c as u64;
            acc += BigRational::new(BigInt::from(c), nn.clone());
        }
        (acc / BigRational::from_integer(nn.clone()), pairs)
    };
    let (row_mean, pair_count) = iterated(true);
    let (col_mean, col_pairs) = iterated(false);
    debug_assert_eq!(pair_count, col_pairs);
    FubiniReport {
        row_mean,
        col_mean,
        pair_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::{empirical_loss, vc_dimension};

    fn q(n: i64, d: i64) -> Rational {
        BigRational::new(n.into(), d.into())
    }

    fn positives(points: &[usize]) -> LabeledSample {
        LabeledSample::new(points.iter().map(|&p| (p, true)).collect())
    }

    #[test]
    fn config_validation() {
        assert!(OrdinalClassConfig::new(vec![]).is_err());
        assert!(OrdinalClassConfig::new(vec![1, 1]).is_err());
        assert!(OrdinalClassConfig::new(vec![0, 1]).is_err());
        assert!(OrdinalClassConfig::new(vec![2, 3, 1]).is_ok());
    }

    #[test]
    fn ordinal_class_identity() {
        let c = build_ordinal_class(&OrdinalClassConfig::identity(3).unwrap());
        assert_eq!(c, ConceptClass::from_bit_strings(&["111", "000", "100", "110"]).unwrap());
        assert_eq!(vc_dimension(&c), 1);
        let one = build_ordinal_class(&OrdinalClassConfig::identity(1).unwrap());
        assert_eq!(one, ConceptClass::from_bit_strings(&["1", "0"]).unwrap());
    }

    #[test]
    fn bad_erm_examples() {
        let cfg = OrdinalClassConfig::identity(10).unwrap();
        let s = positives(&[3, 7, 5]);
        let open = bad_erm(&s, &cfg, SegmentConvention::Open).unwrap();
        assert_eq!(open.to_string(), "1111111000");
        let closed = bad_erm(&s, &cfg, SegmentConvention::Closed).unwrap();
        assert_eq!(closed.to_string(), "1111111100");
        assert_eq!(empirical_loss(&closed, &s).unwrap(), q(0, 1));

        let s = positives(&[0]);
        let open = bad_erm(&s, &cfg, SegmentConvention::Open).unwrap();
        assert!(open.is_zero());
        assert_eq!(empirical_loss(&open, &s).unwrap(), q(1, 1));
        let closed = bad_erm(&s, &cfg, SegmentConvention::Closed).unwrap();
        assert_eq!(closed.support().collect::<Vec<_>>(), [0]);
        assert_eq!(empirical_loss(&closed, &s).unwrap(), q(0, 1));

        let none = LabeledSample::new(vec![(1, false)]);
        assert_eq!(bad_erm(&none, &cfg, SegmentConvention::Closed), Err(Error::NoPositivePoint));
    }

    #[test]
    fn closed_segment_is_a_member() {
        let cfg = OrdinalClassConfig::new(vec![3, 1, 4, 2]).unwrap();
        let class = build_ordinal_class(&cfg);
        for p in 0..4 {
            let h = bad_erm(&positives(&[p]), &cfg, SegmentConvention::Closed).unwrap();
            assert!(class.contains(&h));
        }
    }

    #[test]
    fn exact_error_small() {
        assert_eq!(exact_expected_error(2, 1), q(1, 4));
        assert_eq!(exact_expected_error(1, 5), q(0, 1));
        assert_eq!(exact_expected_error_with(2, 1, SegmentConvention::Open), q(3, 4));
    }

    #[test]
    fn monte_carlo_determinism_and_single_trial() {
        let cfg = OrdinalClassConfig::identity(20).unwrap();
        let a = monte_carlo_error(&cfg, 3, 200, 7, SegmentConvention::Closed).unwrap();
        let b = monte_carlo_error(&cfg, 3, 200, 7, SegmentConvention::Closed).unwrap();
        assert_eq!(a, b);

        let one = monte_carlo_error(&cfg, 3, 1, 11, SegmentConvention::Closed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pts: Vec<usize> = (0..3).map(|_| rng.gen_range(0..20)).collect();
        let trial = run_trial(&cfg, &pts, SegmentConvention::Closed).unwrap();
        let expected = trial.true_error;
        assert_eq!(one.mean, num::ToPrimitive::to_f64(&expected).unwrap());
        assert_eq!(one.half_width, 0.0);

        assert!(monte_carlo_error(&cfg, 3, 0, 0, SegmentConvention::Closed).is_err());
    }

    #[test]
    fn fubini_small() {
        let r = fubini_check(&OrdinalClassConfig::new(vec![2, 4, 1, 3]).unwrap());
        assert_eq!(r.row_mean, q(3, 8));
        assert_eq!(r.col_mean, q(3, 8));
        assert_eq!(r.pair_count, 6);
        let r1 = fubini_check(&OrdinalClassConfig::identity(1).unwrap());
        assert_eq!((r1.row_mean, r1.col_mean, r1.pair_count), (q(0, 1), q(0, 1), 0));
    }

    #[test]
    fn fubini_reversal_symmetry() {
        let cfg = OrdinalClassConfig::new(vec![5, 2, 4, 1, 3]).unwrap();
        let a = fubini_check(&cfg);
        let b = fubini_check(&cfg.reversed());
        assert_eq!(a, b);
    }

    #[test]
    fn trial_identities() {
        let cfg = OrdinalClassConfig::new(vec![4, 2, 5, 1, 3]).unwrap();
        let t = run_trial(&cfg, &[1, 4, 3], SegmentConvention::Closed).unwrap();
        // top rank is 3, so 2 of 5 points are missed
        assert_eq!(t.empirical_risk, q(0, 1));
        assert_eq!(t.true_error, q(2, 5));
    }
}
