//! Tree-order certificates and shattered-pair witnesses.

use vcone::structure::{structure_certificate, StructureCertificate};
use vcone::ConceptClass;

fn show(rows: &[&str]) -> vcone::Result<()> {
    let class = ConceptClass::from_bit_strings(rows)?;
    println!("H = {{{}}}", rows.join(","));
    match structure_certificate(&class, None)? {
        StructureCertificate::Tree(cert) => {
            println!("  tree order, f = {}", cert.f());
            for (parent, child) in cert.order().edges() {
                let q = cert.quotient();
                println!(
                    "  {} -> {}",
                    q.class_label(parent, class.domain()),
                    q.class_label(child, class.domain())
                );
            }
            for h in class.hypotheses() {
                println!("  {h} disagrees with f on classes {:?}", cert.disagreement_set(h));
            }
            print!("{}", cert.to_dot(class.domain()));
        }
        StructureCertificate::Shattered(w) => {
            println!("  shattered pair ({}, {})", class.domain().name(w.y), class.domain().name(w.z));
            for (pattern, h) in w.rows() {
                println!("  {pattern} {h}");
            }
        }
    }
    Ok(())
}

fn main() -> vcone::Result<()> {
    show(&["000", "100", "110", "111"])?;
    show(&["000", "100", "110", "101"])?;
    // Points p1 and p2 carry identical labels and merge into one class.
    show(&["000", "011", "111"])?;
    show(&["00", "10", "01", "11"])?;
    Ok(())
}
