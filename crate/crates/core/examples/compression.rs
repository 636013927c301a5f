//! Size-1 unlabeled compression: compress a sample, reconstruct a
//! hypothesis, and audit the scheme exhaustively.

use vcone::compression::{compress, reconstruct, verify_scheme, SchemeContext};
use vcone::io::parse_sample;
use vcone::ConceptClass;

fn main() -> vcone::Result<()> {
    let class = ConceptClass::from_bit_strings(&["0000", "1000", "1100", "1010", "1011"])?;
    let ctx = SchemeContext::new(&class, None)?;
    for spec in ["p0=1,p1=1,p2=0", "p0=1,p2=1,p3=1", "p1=0,p3=0", "", "p0=1,p1=0"] {
        let sample = parse_sample(spec, class.domain())?;
        let kept = compress(&sample, &ctx)?;
        let label = kept.point().map_or("EMPTY".to_string(), |p| class.domain().name(p).to_string());
        let h = reconstruct(&kept, &ctx)?;
        println!("{:<16} -> {label:<5} -> {h}  consistent={}", format!("[{spec}]"), sample.is_consistent_with(&h));
    }

    let report = verify_scheme(&class, 4)?;
    println!(
        "audit: {} sample sets, {} label checks, {} permutation checks, passed={}",
        report.sample_sets,
        report.label_checks,
        report.permutation_checks,
        report.passed()
    );

    let square = ConceptClass::from_bit_strings(&["00", "10", "01", "11"])?;
    match SchemeContext::new(&square, None) {
        Ok(_) => println!("square: unexpectedly compressible"),
        Err(e) => println!("square: {e}"),
    }
    Ok(())
}
