//! Exhaustive sweep: certificate against brute-force dimension for every
//! class on up to four points, with a scheme audit on each VC-1 class.

use vcone::compression::verify_scheme;
use vcone::concept::vc_dimension;
use vcone::structure::structure_certificate;
use vcone::ConceptClass;

fn main() -> vcone::Result<()> {
    for n in 1..=4 {
        let (mut classes, mut trees, mut mismatches, mut audited) = (0, 0, 0, 0);
        for class in ConceptClass::enumerate_all(n)? {
            classes += 1;
            let tree = structure_certificate(&class, None)?.is_tree();
            if tree != (vc_dimension(&class) <= 1) {
                mismatches += 1;
            }
            if tree {
                trees += 1;
                if verify_scheme(&class, n)?.passed() {
                    audited += 1;
                }
            }
        }
        println!("n={n}: {classes} classes, {trees} with VCdim<=1, {audited} audited, {mismatches} mismatches");
    }
    Ok(())
}
