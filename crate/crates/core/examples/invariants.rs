//! Evaluates the tangle and link invariants of the balanced M_2 structure with
//! symbolic parameters, along with the formal word behind each value.
//!
//!     cargo run --example invariants

use oqa::diagram::builtin;
use oqa::io::{builtin_structure, element_terms, Bindings, StructureFile};
use oqa::{formal_word, Evaluator};

fn main() -> oqa::Result<()> {
    let file = StructureFile::from_json_str(builtin_structure("balanced-n2").unwrap(), &Bindings::new())?;
    let (t, s) = (&file.symbols, &file.structure);
    let eval = Evaluator::new(s);

    for name in ["curl", "curl_op", "trefoil_tangle"] {
        let d = builtin(name)?;
        println!("{name}: {d}");
        println!("  word  {}", formal_word(&d));
        for term in element_terms(s.algebra(), t, &eval.tangle(&d)?) {
            println!("  {:>4}  {}", term.k, term.c);
        }
    }

    for name in ["unknot_ccw", "unknot_cw", "hopf", "trefoil_knot", "figure8_knot"] {
        let d = builtin(name)?;
        let stats = d.stats();
        println!("{name}: writhe {}, whitney {:?}", d.writhe(), stats.whitney);
        println!("  {}", t.format(&eval.link(&d)?));
    }
    Ok(())
}
