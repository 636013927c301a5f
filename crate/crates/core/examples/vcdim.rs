//! Shattering and VC dimension of a few small classes.

use vcone::concept::{f_representation, patterns, shatters, vc_dimension_with_witness};
use vcone::ConceptClass;

fn main() -> vcone::Result<()> {
    let classes = [
        ("chain", vec!["000", "100", "110", "111"]),
        ("branching", vec!["000", "100", "110", "101"]),
        ("square", vec!["00", "10", "01", "11"]),
        ("singletons", vec!["000", "100", "010", "001"]),
    ];
    for (name, rows) in classes {
        let class = ConceptClass::from_bit_strings(&rows)?;
        let vc = vc_dimension_with_witness(&class);
        let witness = class.domain().format_set(&vc.witness);
        println!("{name:<10} |H|={} vcdim={} witness={witness}", class.len(), vc.dimension);
        let all: Vec<usize> = (0..class.n()).collect();
        println!("           patterns on the domain: {}", patterns(&class, &all)?.len());
        println!("           shatters {{p0,p1}}: {}", shatters(&class, &[0, 1])?);
    }

    let chain = ConceptClass::from_bit_strings(&["000", "100", "110", "111"])?;
    let f = "110".parse()?;
    let hf = f_representation(&chain, &f)?;
    let rows: Vec<String> = hf.hypotheses().iter().map(|h| h.to_string()).collect();
    println!("chain XOR 110 = {{{}}}, vcdim {}", rows.join(","), vc_dimension_with_witness(&hf).dimension);
    Ok(())
}
