//! HOMFLY and Conway polynomials from the skein recursion. Diagrams are given
//! as Morse words or built-in names.
//!
//!     cargo run --example skein -- "cup_ccw 0 / cup_cw 2 / xp 1 / cap_cw 2 / cap_ccw 0"

use oqa::diagram::{builtin, parse_diagram};
use oqa::homfly::{conway, homfly};
use oqa::MorseDiagram;

fn main() -> oqa::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs: Vec<String> = if args.is_empty() {
        ["unknot_ccw", "hopf", "trefoil_knot", "figure8_knot"].map(String::from).to_vec()
    } else {
        args
    };
    for input in &inputs {
        let d: MorseDiagram = match builtin(input) {
            Ok(d) => d,
            Err(_) => parse_diagram(input)?,
        };
        let h = homfly(&d)?;
        println!("{input}");
        println!("  H           = {h}");
        println!("  α^-w H      = {}", h.shift(-d.writhe(), 0));
        println!("  ∇           = {}", conway(&d)?);
        println!("  H of mirror = {}", homfly(&d.mirror())?);
    }
    Ok(())
}
