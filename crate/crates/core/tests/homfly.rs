mod common;

use common::*;
use oqa::diagram::{applicable_moves, apply_move, builtin, curl_family, parse_diagram, CurlFamily};
use oqa::homfly::{conway, homfly, Branch, SingleBlock, SkeinPolynomial, SkeinTriple};
use oqa::oqa::check_axioms;
use oqa::{evaluate_link, MorseDiagram, Scalar};

fn sym_block(signs: &[bool]) -> SingleBlock {
    let t = syms();
    SingleBlock::new(&p(&t, "a"), &p(&t, "sbc"), signs).unwrap()
}

const CLOSED: [&str; 5] = ["unknot_ccw", "unknot_cw", "hopf", "trefoil_knot", "figure8_knot"];

#[test]
fn skein_values() {
    let b = |n: &str| builtin(n).unwrap();
    assert_eq!(homfly(&b("unknot_ccw")).unwrap(), SkeinPolynomial::one());
    let kink = parse_diagram("cup_ccw 0 / cup_cw 2 / xp 1 / cap_cw 2 / cap_ccw 0").unwrap();
    assert_eq!(homfly(&kink).unwrap(), SkeinPolynomial::monomial(1, 1, 0));
    assert_eq!(homfly(&kink.mirror()).unwrap(), SkeinPolynomial::monomial(1, -1, 0));
    assert_eq!(conway(&b("trefoil_knot")).unwrap().to_string(), "z^2 + 1");
    assert_eq!(conway(&b("figure8_knot")).unwrap().to_string(), "-z^2 + 1");
    assert_eq!(conway(&b("hopf")).unwrap().to_string(), "z");
    let unlink = parse_diagram("cup_cw 0 / cup_cw 2 / cap_cw 2 / cap_cw 0").unwrap();
    assert!(conway(&unlink).unwrap().is_zero());
    assert_eq!(homfly(&unlink).unwrap().to_string(), "α z^-1 - α^-1 z^-1");
    assert!(homfly(&builtin("curl").unwrap()).is_err());
}

#[test]
fn golden_skein_values() {
    let golden = [
        ("hopf", "α z + α z^-1 - α^-1 z^-1", "z"),
        ("trefoil_knot", "α z^2 + 2 α - α^-1", "z^2 + 1"),
        ("figure8_knot", "-z^2 + α^2 - 1 + α^-2", "-z^2 + 1"),
    ];
    for (name, h, c) in golden {
        let d = builtin(name).unwrap();
        let hv = homfly(&d).unwrap();
        assert_eq!(hv.to_string(), h, "{name}");
        assert_eq!(conway(&d).unwrap().to_string(), c, "{name}");
        assert_eq!(hv.shift(-d.writhe(), 0).at_alpha_one(), conway(&d).unwrap(), "{name}");
    }
}

#[test]
fn skein_polynomials_are_move_invariant() {
    let mut applied = 0;
    for d in move_corpus() {
        let (h, c) = (homfly(&d).unwrap(), conway(&d).unwrap());
        for (mv, site, dir) in applicable_moves(&d) {
            let image = apply_move(&d, mv, site, dir).unwrap();
            assert_eq!(homfly(&image).unwrap(), h, "{d} → {image}");
            assert_eq!(conway(&image).unwrap(), c, "{d} → {image}");
            applied += 1;
        }
    }
    assert!(applied >= 100);
}

#[test]
fn closed_form_examples() {
    let t = syms();
    let balanced = sym_block(&[true, true]);
    assert_eq!(balanced.eta, 2);
    assert_eq!(balanced.tr_g, &Scalar::one() + &p(&t, "a^2/sbc^2"));
    let alexander = sym_block(&[true, false]);
    assert_eq!(alexander.eta, 0);
    assert!(alexander.tr_g.is_zero() && alexander.tr_g_inv.is_zero());
    assert!(alexander.is_alexander_branch());
    assert_eq!(balanced.curl_value(CurlFamily::RPlus, 0), balanced.tr_g_inv);
    assert_eq!(balanced.curl_value(CurlFamily::LPlus, 2), &p(&t, "a^2") * &balanced.tr_g);
    assert!(SingleBlock::new(&p(&t, "a"), &p(&t, "sbc"), &[false, true]).is_err());
}

fn sign_lists(max_n: usize) -> Vec<Vec<bool>> {
    (2..=max_n)
        .flat_map(|n| (0..1usize << (n - 1)).map(move |m| (0..n).map(|i| i == 0 || m >> (i - 1) & 1 == 0).collect()))
        .collect()
}

#[test]
fn closed_forms_are_consistent() {
    let t = syms();
    let x = p(&t, "alpha");
    let one = Scalar::one();
    for signs in sign_lists(4) {
        let ctx = sym_block(&signs);
        if let Err(e) = ctx.consistency() {
            panic!("{signs:?}: {e}");
        }
        let wx = ctx.omega_sq_at(&x);
        let wx_inv = ctx.omega_sq_at(&x.inv().unwrap());
        for (u, v) in wx.iter().zip(&wx_inv) {
            assert_eq!(u * v, one, "{signs:?}");
        }
        let e = |l: usize, m: usize| ctx.eta_plus(l, m) - ctx.eta_minus(l, m);
        for l in 0..=ctx.n {
            let head: Scalar = wx[..l].iter().cloned().sum();
            let tail: Scalar = wx[l..].iter().cloned().sum();
            let head_form = &(&one - &x.powi(e(0, l))) / &(&one - &x);
            let tail_form = &x.powi(e(0, l)) * &(&(&one - &x.powi(e(l, ctx.n))) / &(&one - &x));
            assert_eq!(head, head_form, "{signs:?} ℓ = {l}");
            assert_eq!(tail, tail_form, "{signs:?} ℓ = {l}");
        }
    }
}

#[test]
fn telescoping_identity() {
    let names: Vec<String> = (0..6).map(|j| format!("z{j}")).collect();
    let t = oqa::SymbolTable::new(names.iter().map(String::as_str)).unwrap();
    let z: Vec<Scalar> = names.iter().map(|n| t.parse(n).unwrap()).collect();
    let prod = |i: usize, l: usize| -> Scalar { z[i..l].iter().cloned().product() };
    for i in 0..z.len() {
        for m in i + 1..=(i + 5).min(z.len()) {
            let lhs = &prod(i, m) - &z[i];
            let rhs: Scalar = (i + 1..m).map(|l| &prod(i, l) * &(&z[l] - &Scalar::one())).sum();
            assert_eq!(lhs, rhs, "i = {i}, m = {m}");
        }
    }
}

#[test]
fn single_block_structures_satisfy_axioms() {
    for signs in sign_lists(3) {
        let s = sym_block(&signs).structure().unwrap();
        assert!(check_axioms(&s).holds(), "{signs:?}");
    }
}

#[test]
fn curl_families_match_closed_forms() {
    for signs in [vec![true, true], vec![true, true, true], vec![true, false, true]] {
        let ctx = sym_block(&signs);
        let s = ctx.structure().unwrap();
        for f in CurlFamily::ALL {
            for m in 0..=3 {
                let d = curl_family(f, m);
                assert_eq!(evaluate_link(&s, &d, None).unwrap(), ctx.curl_value(f, m), "{signs:?} {} {m}", f.name());
            }
        }
    }
}

#[test]
fn homfly_branch_identification() {
    for signs in [vec![true, true], vec![true, true, false]] {
        let ctx = sym_block(&signs);
        let s = ctx.structure().unwrap();
        for name in CLOSED {
            let d = builtin(name).unwrap();
            let f = evaluate_link(&s, &d, None).unwrap();
            let id = ctx.identify(&d, &f).unwrap();
            assert_eq!(id.branch, Branch::Homfly);
            assert!(id.passes, "{signs:?} {name}");
        }
    }
}

#[test]
fn alexander_branch_invariant_vanishes() {
    let ctx = sym_block(&[true, false]);
    let s = ctx.structure().unwrap();
    for name in CLOSED {
        let d = builtin(name).unwrap();
        let f = evaluate_link(&s, &d, None).unwrap();
        assert!(f.is_zero(), "{name}");
        let id = ctx.identify(&d, &f).unwrap();
        assert_eq!(id.branch, Branch::Alexander);
        assert!(!id.passes, "{name}");
    }
}

#[test]
fn skein_triples() {
    let ctx = sym_block(&[true, true]);
    let s = ctx.structure().unwrap();
    let kink = parse_diagram("cup_ccw 0 / cup_cw 2 / xp 1 / cap_cw 2 / cap_ccw 0").unwrap();
    let sites: [(MorseDiagram, usize); 4] = [
        (builtin("hopf").unwrap(), 2),
        (builtin("trefoil_knot").unwrap(), 3),
        (kink, 2),
        (builtin("figure8_knot").unwrap(), 4),
    ];
    for (d, i) in &sites {
        let triple = SkeinTriple::at(d, *i).unwrap();
        assert!(ctx.skein_triple(&s, &triple).unwrap().passes, "{d} at {i}");
        let swapped = SkeinTriple { xp: triple.xn.clone(), xn: triple.xp.clone(), smoothed: triple.smoothed.clone() };
        assert!(!ctx.skein_triple(&s, &swapped).unwrap().passes, "{d} at {i}");
    }
    let hopf = builtin("hopf").unwrap();
    let bad = SkeinTriple::new(hopf.clone(), hopf.clone(), hopf.smooth_crossing(2).unwrap());
    assert!(bad.is_err());
    let ok = SkeinTriple::new(hopf.clone(), hopf.switch_crossing(2).unwrap(), hopf.smooth_crossing(2).unwrap());
    assert!(ok.is_ok());
}

#[test]
fn invariant_is_homogeneous_of_writhe_degree() {
    let t = syms();
    let vars = [t.index("a").unwrap(), t.index("sbc").unwrap()];
    let ctx = sym_block(&[true, true, false]);
    let s = ctx.structure().unwrap();
    let mut diagrams: Vec<MorseDiagram> = CLOSED.iter().map(|n| builtin(n).unwrap()).collect();
    diagrams.extend(CurlFamily::ALL.iter().map(|&f| curl_family(f, 2)));
    for d in diagrams {
        let f = evaluate_link(&s, &d, None).unwrap();
        assert_eq!(f.laurent_homogeneous_degree(&vars).unwrap(), Some(d.writhe()), "{d}");
    }
}

#[test]
fn open_tangles_recover_both_polynomials() {
    let tangles = [
        builtin("curl").unwrap(),
        builtin("curl_op").unwrap(),
        builtin("trefoil_tangle").unwrap(),
        parse_diagram("boundary: open / cup_cw 1 / cup_cw 2 / xp 0 / xn 1 / xp 0 / xn 1 / cap_cw 2 / cap_cw 1").unwrap(),
        parse_diagram("boundary: open / cup_ccw 0 / xn 1 / xn 1 / xn 1 / cap_ccw 0").unwrap(),
    ];
    for signs in [vec![true, false], vec![true, true], vec![true, false, true]] {
        let ctx = sym_block(&signs);
        let s = ctx.structure().unwrap();
        for t in &tangles {
            let w = oqa::evaluate_tangle(&s, t).unwrap();
            let id = ctx.identify_open(t, &w).unwrap();
            assert!(id.passes, "{signs:?} {t}: {:?} vs {:?}", id.f_value, id.predicted);
        }
    }
}

#[test]
fn closure_of_figure_eight_tangle() {
    let t = parse_diagram("boundary: open / cup_cw 1 / cup_cw 2 / xp 0 / xn 1 / xp 0 / xn 1 / cap_cw 2 / cap_cw 1").unwrap();
    assert_eq!(t.closure(), builtin("figure8_knot").unwrap());
    assert_eq!(conway(&builtin("curl_op").unwrap().closure()).unwrap(), SkeinPolynomial::one());
}
