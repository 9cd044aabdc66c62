//! Samples random ρ tables on M_n, some valid and some tampered, and compares
//! the block classification with a direct check of the axioms.
//!
//!     cargo run --release --example classify -- [count] [seed]

use oqa::oqa::blocks::{random_params, Tamper};
use oqa::oqa::classify_blocks;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut agree = 0;
    for k in 0..count {
        let n = rng.gen_range(2..=3);
        let tamper = if rng.gen_bool(0.5) { Some(Tamper::ALL[rng.gen_range(0..Tamper::ALL.len())]) } else { None };
        let (params, blocks) = random_params(&mut rng, n, tamper);
        let report = classify_blocks(&params);
        let axioms = params.axioms_hold();
        agree += usize::from(report.passes() == axioms);
        let first = report.first_failure().map(|(c, d)| format!("{c}: {d}")).unwrap_or_else(|| "all clauses".into());
        println!(
            "{k:>3}  n = {n}  blocks {blocks:?}  tamper {:<18}  axioms {:<5}  {first}",
            tamper.map(|t| format!("{t:?}")).unwrap_or_else(|| "-".into()),
            axioms,
        );
    }
    println!("{agree}/{count} agree");
}
