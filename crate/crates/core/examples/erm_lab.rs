//! The adversarial ERM rule on ordinal classes: exact expected error against
//! Monte Carlo for a range of sample sizes.

use num::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vcone::erm::{
    build_ordinal_class, exact_expected_error, exact_expected_error_with, monte_carlo_error, run_trial,
    OrdinalClassConfig, SegmentConvention,
};

fn main() -> vcone::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cfg = OrdinalClassConfig::shuffled(8, &mut rng)?;
    println!("ranks {:?}", cfg.ranks());
    let class = build_ordinal_class(&cfg);
    for h in class.hypotheses() {
        println!("  {h}");
    }

    let trial = run_trial(&cfg, &[0, 3, 5], SegmentConvention::Closed)?;
    println!(
        "sample {:?}: chose {}, empirical risk {}, true error {}",
        trial.sample.pairs(),
        trial.chosen,
        trial.empirical_risk,
        trial.true_error
    );

    let n = 200;
    let cfg = OrdinalClassConfig::identity(n)?;
    println!("N={n}");
    println!("{:>4} {:>10} {:>10} {:>10} {:>10}", "m", "exact", "mc", "3se", "open");
    for m in [1u32, 2, 5, 10, 20, 50, 100] {
        let exact = exact_expected_error(n as u64, m).to_f64().unwrap_or(f64::NAN);
        let open = exact_expected_error_with(n as u64, m, SegmentConvention::Open).to_f64().unwrap_or(f64::NAN);
        let mc = monte_carlo_error(&cfg, m as usize, 20_000, 0, SegmentConvention::Closed)?;
        println!("{m:>4} {exact:>10.6} {:>10.6} {:>10.6} {open:>10.6}", mc.mean, mc.half_width);
    }
    Ok(())
}
