//! Loads a structure from JSON, binds some symbols to numbers and writes the
//! explicit table form back out. Without a path the built-in balanced M_2
//! structure is used.
//!
//!     cargo run --example structure_json -- [structure.json] [name=value ...]

use oqa::io::{builtin_structure, Bindings, StructureFile};
use oqa::oqa::check_axioms;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (paths, specs): (Vec<&String>, Vec<&String>) = args.iter().partition(|a| !a.contains('='));
    let text = match paths.first() {
        Some(path) => std::fs::read_to_string(path)?,
        None => builtin_structure("balanced-n2").unwrap().to_string(),
    };
    let mut bindings = Bindings::new();
    for spec in specs {
        bindings.push_spec(spec)?;
    }

    let file = StructureFile::from_json_str(&text, &bindings)?;
    println!("axioms: {}", check_axioms(&file.structure).summary());

    let exported = file.to_json_string();
    println!("{exported}");

    let again = StructureFile::from_json_str(&exported, &Bindings::new())?;
    assert_eq!(again.to_json_string(), exported);
    println!("round trip is byte-identical");
    Ok(())
}
