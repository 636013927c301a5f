//! Reading and writing class files in both formats.

use vcone::io::ClassFile;

fn main() -> vcone::Result<()> {
    let plain = "# a chain\n000\n100\n110\n111\n";
    let file = ClassFile::parse(plain)?;
    print!("{}", file.to_json());
    let class = file.to_class()?;
    println!("{} hypotheses over {:?}", class.len(), class.domain().names());

    let renamed = ClassFile {
        domain: vec!["north".into(), "east".into()],
        hypotheses: vec!["00".into(), "10".into()],
    };
    let back = ClassFile::parse(&renamed.to_json())?;
    println!("round trip equal: {}", back == renamed);

    for bad in ["000\n01x\n", "{\"domain\": [\"a\"], \"hypotheses\": [\"2\"]}"] {
        match ClassFile::parse(bad) {
            Ok(_) => println!("unexpectedly parsed {bad:?}"),
            Err(e) => println!("{e}"),
        }
    }
    Ok(())
}
