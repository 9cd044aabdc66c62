//! Compares the invariant of single-block structures on M_n with the HOMFLY
//! and Conway polynomials. The sign list picks the diagonal entries of ρ:
//! `T` gives `a`, `F` gives `-bc/a`. Balanced signs land in the HOMFLY branch,
//! signs with `Tr(G) = 0` in the Alexander branch.
//!
//!     cargo run --example single_block -- TTF

use oqa::diagram::builtin;
use oqa::homfly::{SingleBlock, SkeinTriple};
use oqa::{evaluate_link, evaluate_tangle, SymbolTable};

fn main() -> oqa::Result<()> {
    let signs: Vec<bool> = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "TT".into())
        .chars()
        .map(|c| c == 'T')
        .collect();
    let t = SymbolTable::new(["a", "sbc"])?;
    let ctx = SingleBlock::new(&t.parse("a")?, &t.parse("sbc")?, &signs)?;
    let s = ctx.structure()?;
    let branch = if ctx.is_alexander_branch() { "alexander" } else { "homfly" };
    println!("n = {}, η = {}, {branch} branch", ctx.n, ctx.eta);
    println!("Tr(G) = {}", t.format(&ctx.tr_g));

    for name in ["unknot_ccw", "hopf", "trefoil_knot", "figure8_knot"] {
        let d = builtin(name)?;
        let f = evaluate_link(&s, &d, None)?;
        let id = ctx.identify(&d, &f)?;
        println!("{name}: {} (P = {})", verdict(id.passes), id.polynomial);
        println!("  F         = {}", t.format(&id.f_value));
        println!("  predicted = {}", t.format(&id.predicted));
    }

    for name in ["curl", "trefoil_tangle"] {
        let d = builtin(name)?;
        let id = ctx.identify_open(&d, &evaluate_tangle(&s, &d)?)?;
        println!("{name} cut open: {}", verdict(id.passes));
    }

    let trefoil = builtin("trefoil_knot")?;
    let first = trefoil.slices().iter().position(|x| x.kind.is_crossing()).unwrap();
    let check = ctx.skein_triple(&s, &SkeinTriple::at(&trefoil, first)?)?;
    println!("skein triple at slice {first} of the trefoil: {}", verdict(check.passes));
    Ok(())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}
