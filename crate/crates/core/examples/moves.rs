//! Applies every available move to a diagram and checks that the invariant of
//! a numeric structure and the HOMFLY polynomial do not change.
//!
//!     cargo run --example moves -- "cup_cw 0 / cup_cw 2 / cap_cw 2 / cap_cw 0"

use std::collections::BTreeMap;

use oqa::diagram::{applicable_moves, apply_move, builtin, parse_diagram};
use oqa::homfly::homfly;
use oqa::io::{builtin_structure, Bindings, StructureFile};
use oqa::Evaluator;

fn main() -> oqa::Result<()> {
    let input = std::env::args().nth(1).unwrap_or_else(|| "trefoil_knot".into());
    let d = builtin(&input).or_else(|_| parse_diagram(&input))?;

    let mut bind = Bindings::new();
    for spec in ["a=2", "sbc=3", "w1=1"] {
        bind.push_spec(spec)?;
    }
    let file = StructureFile::from_json_str(builtin_structure("balanced-n2").unwrap(), &bind)?;
    let eval = Evaluator::new(&file.structure);
    let (f, h) = (eval.link(&d)?, homfly(&d)?);
    println!("{d}");
    println!("F = {}, H = {h}", file.symbols.format(&f));

    let mut tally: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for (mv, site, dir) in applicable_moves(&d) {
        let image = apply_move(&d, mv, site, dir)?;
        let same = eval.link(&image)? == f && homfly(&image)? == h;
        let entry = tally.entry(format!("{mv} {dir:?}")).or_default();
        entry.0 += 1;
        entry.1 += usize::from(same);
    }
    for (name, (sites, kept)) in &tally {
        println!("{name:<16} {sites:>3} sites, {kept:>3} unchanged");
    }
    Ok(())
}
