//! Builds the balanced structure on M_2 and the Sweedler structure, checks the
//! axioms, then breaks one entry of ρ and shows the witness.
//!
//!     cargo run --example axioms

use std::collections::BTreeMap;

use oqa::oqa::{build_balanced_mn, check_axioms, minimal_subalgebra, sweedler_oqa, OrientedQuantumAlgebra};
use oqa::{Scalar, SymbolTable};

fn main() -> oqa::Result<()> {
    let t = SymbolTable::new(["a", "sbc", "b", "w1", "alpha"])?;
    let s = |text: &str| t.parse(text).unwrap();

    let b = BTreeMap::from([((0, 1), s("b"))]);
    let m2 = build_balanced_mn(2, &s("a"), &s("sbc^2"), &b, &s("w1"))?;
    report("balanced M_2", &m2);
    println!("  minimal subalgebra has dimension {}", minimal_subalgebra(&m2).len());

    let sweedler = sweedler_oqa(&s("alpha"))?;
    report("Sweedler H_4", &sweedler);

    let mut rho = m2.rho().clone();
    let alg = m2.algebra();
    rho.add_term(alg.matrix_unit(0, 0), alg.matrix_unit(1, 1), Scalar::one());
    match OrientedQuantumAlgebra::new(alg.clone(), rho, m2.t_d().clone(), m2.t_u().clone()) {
        Ok(broken) => {
            let r = check_axioms(&broken);
            report("M_2 with ρ_1122 shifted by 1", &broken);
            if let Some(w) = r.witnesses.first() {
                println!("  first witness: {} at [{}]: {}", w.axiom, w.slot.join(", "), w.detail);
            }
        }
        Err(e) => println!("tampered table rejected: {e}"),
    }
    Ok(())
}

fn report(name: &str, s: &OrientedQuantumAlgebra) {
    let r = check_axioms(s);
    println!("{name}: {}", r.summary());
}
