//! Both iterated averages of the strict rank order agree at every finite N.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vcone::erm::{fubini_check, OrdinalClassConfig};

fn main() -> vcone::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [1, 2, 3, 10, 100, 1000] {
        let cfg = OrdinalClassConfig::shuffled(n, &mut rng)?;
        let r = fubini_check(&cfg);
        println!("N={n:<5} row={:<10} col={:<10} pairs={}", r.row_mean, r.col_mean, r.pair_count);
    }
    Ok(())
}
