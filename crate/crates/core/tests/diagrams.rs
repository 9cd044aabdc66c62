mod common;

use common::{move_corpus, random_closed};
use oqa::diagram::{
    applicable_moves, apply_move, builtin, builtin_names, curl_family, parse_diagram, CurlFamily, Event, Move,
    MoveDirection, MoveSite,
};
use oqa::{Boundary, MorseDiagram, OqaError, SliceKind};
use proptest::prelude::*;


const CLOSED: [&str; 6] = ["trefoil_knot", "hopf", "figure8_knot", "unknot_cw", "unknot_ccw", "c_r_plus(2)"];

#[test]
fn hopf_word_and_stats() {
    let d = parse_diagram("cup_ccw 0 / cup_cw 2 / xp 1 / xp 1 / cap_cw 2 / cap_ccw 0").unwrap();
    assert_eq!(d, builtin("hopf").unwrap());
    assert_eq!(d.component_count(), 2);
    let st = d.stats();
    assert_eq!(st.writhe, 2);
    assert_eq!(st.whitney, vec![-1, 1]);
    let m = d.mirror().stats();
    assert_eq!((m.writhe, m.whitney), (-2, vec![-1, 1]));
}

#[test]
fn hopf_components_alternate_over_and_under() {
    let rec = builtin("hopf").unwrap().traverse();
    let sides: Vec<Vec<bool>> = rec.components.iter().map(|c| c.labels.iter().map(|l| l.first).collect()).collect();
    assert_eq!(sides, vec![vec![true, false], vec![false, true]]);
}

#[test]
fn parse_edge_cases() {
    let empty = parse_diagram("").unwrap();
    assert_eq!(empty.boundary(), Boundary::Closed);
    assert_eq!(empty.component_count(), 0);
    assert!(matches!(parse_diagram("xp 0"), Err(OqaError::Invalid { slice: 0, .. })));
    assert!(matches!(parse_diagram("cup_ccw 0 / cap_cw 0"), Err(OqaError::Invalid { slice: 1, .. })));
    assert!(matches!(parse_diagram("cup_cw 0\ncap_cw x"), Err(OqaError::Syntax { line: 2, .. })));
    assert!(matches!(parse_diagram("twist 0"), Err(OqaError::Syntax { line: 1, .. })));
    assert!(matches!(parse_diagram("cup_cw 0 / boundary: open"), Err(OqaError::Syntax { .. })));
    let multi = parse_diagram("# curl\nboundary: open\ncup_cw 1\nxp 0   # the kink\ncap_cw 1\n").unwrap();
    assert_eq!(multi, builtin("curl").unwrap());
}

#[test]
fn builtins_validate_and_round_trip() {
    for name in builtin_names() {
        let name = name.replace("(m)", "(3)");
        let d = builtin(&name).unwrap();
        assert_eq!(parse_diagram(&d.serialize()).unwrap(), d, "{name}");
        assert_eq!(parse_diagram(&d.word()).unwrap(), d, "{name}");
    }
    assert!(matches!(builtin("granny"), Err(OqaError::UnknownBuiltin(_))));
    assert_eq!(builtin("c_l_minus:2").unwrap(), curl_family(CurlFamily::LMinus, 2));
    assert_eq!(builtin("c_r_plus(0)").unwrap(), builtin("unknot_ccw").unwrap());
    assert_eq!(builtin("c_l_plus(0)").unwrap(), builtin("unknot_cw").unwrap());
}

#[test]
fn builtin_stats() {
    let expect = [
        ("curl", 1, vec![1]),
        ("trefoil_tangle", 3, vec![-1]),
        ("trefoil_knot", 3, vec![0]),
        ("figure8_knot", 0, vec![3]),
        ("unknot_cw", 0, vec![1]),
        ("unknot_ccw", 0, vec![-1]),
        ("c_r_plus(3)", 3, vec![2]),
        ("c_r_minus(1)", -1, vec![0]),
        ("c_l_plus(2)", 2, vec![-1]),
    ];
    for (name, writhe, whitney) in expect {
        let st = builtin(name).unwrap().stats();
        assert_eq!((st.writhe, st.whitney), (writhe, whitney), "{name}");
    }
}

#[test]
fn curl_labels() {
    let rec = builtin("curl").unwrap().traverse();
    let c = &rec.components[0];
    assert!(!c.closed);
    let labels: Vec<_> = c.labels.iter().map(|l| (l.first, l.u_d, l.u_u)).collect();
    assert_eq!(labels, vec![(true, -1, -1), (false, 0, 0)]);
    assert_eq!(c.extrema(), vec![SliceKind::CapCw, SliceKind::CupCw]);
    let id = MorseDiagram::identity().traverse();
    assert!(id.components[0].labels.is_empty());
    assert_eq!(id.components[0].whitney(), 0);
}

/// Along closed components, labels on upward crossings satisfy `u_d = u_u = −d(rest)`.
#[test]
fn counters_match_remaining_whitney_degree() {
    for name in CLOSED.iter().copied().chain(["c_l_minus(3)"]) {
        let d = builtin(name).unwrap();
        for c in d.traverse().components {
            let mut k = 0;
            for (i, e) in c.events.iter().enumerate() {
                if let Event::Cross { .. } = e {
                    let l = c.labels[k];
                    k += 1;
                    let rest: i64 = c.events[i + 1..]
                        .iter()
                        .map(|e| match e {
                            Event::Extremum { kind, .. } if kind.is_clockwise() => 1,
                            Event::Extremum { .. } => -1,
                            _ => 0,
                        })
                        .sum();
                    assert_eq!(rest % 2, 0);
                    assert_eq!((l.u_d, l.u_u), (-rest / 2, -rest / 2), "{name}");
                }
            }
        }
    }
}

#[test]
fn each_crossing_gets_two_labels() {
    for name in CLOSED {
        let d = builtin(name).unwrap();
        let rec = d.traverse();
        for (i, s) in d.slices().iter().enumerate() {
            let n = rec.components.iter().flat_map(|c| &c.labels).filter(|l| l.crossing == i).count();
            assert_eq!(n, if s.kind.is_crossing() { 2 } else { 0 }, "{name}");
            if s.kind.is_crossing() {
                let firsts = rec.components.iter().flat_map(|c| &c.labels).filter(|l| l.crossing == i && l.first).count();
                assert_eq!(firsts, 1);
            }
        }
    }
}

#[test]
fn basepoints_cover_every_upward_segment() {
    let d = builtin("hopf").unwrap();
    let bps = d.admissible_basepoints();
    assert_eq!(bps.len(), 2);
    let total: usize = bps.iter().map(Vec::len).sum();
    let ups: usize = (0..=d.len()).map(|l| d.level(l).iter().filter(|x| **x == oqa::diagram::Dir::Up).count()).sum();
    assert_eq!(total, ups);
    for b in &bps[0] {
        let rec = d.traverse_from(&[*b]).unwrap();
        assert_eq!(rec.components[0].start, *b);
        assert_eq!(rec.whitney(), vec![-1, 1]);
    }
    assert!(d.traverse_from(&[bps[0][0], bps[0][1]]).is_err());
}

#[test]
fn composition_and_orientation_reversal() {
    let curl = builtin("curl").unwrap();
    let id = MorseDiagram::identity();
    assert_eq!(MorseDiagram::compose(&id, &curl).unwrap(), curl);
    let twice = MorseDiagram::compose(&curl, &curl).unwrap();
    assert_eq!(twice.writhe(), 2);
    assert_eq!(twice.stats().whitney, vec![2]);
    assert!(MorseDiagram::compose(&curl, &builtin("hopf").unwrap()).is_err());
    assert!(MorseDiagram::compose(&curl, &builtin("curl_op").unwrap()).is_err());
    assert_eq!(curl.reverse_orientation(), builtin("curl_op").unwrap());
    for name in CLOSED {
        let d = builtin(name).unwrap();
        let r = d.reverse_orientation();
        assert_eq!(r.reverse_orientation(), d);
        assert_eq!(r.writhe(), d.writhe());
        let mut w: Vec<i64> = r.stats().whitney.iter().map(|x| -x).collect();
        let mut orig = d.stats().whitney;
        w.sort();
        orig.sort();
        assert_eq!(w, orig, "{name}");
    }
}

#[test]
fn move_examples() {
    let s = |slice, position| MoveSite { slice, position };
    let zigzag = parse_diagram("boundary: open / cup_ccw 1 / cap_cw 0").unwrap();
    assert_eq!(apply_move(&zigzag, Move::M1a, s(0, 0), MoveDirection::Forward).unwrap(), MorseDiagram::identity());
    let two = parse_diagram("cup_cw 0 / cup_cw 1 / xp 0 / xn 0 / cap_cw 1 / cap_cw 0").unwrap();
    let cancelled = apply_move(&two, Move::M2, s(2, 0), MoveDirection::Forward).unwrap();
    assert_eq!(cancelled, parse_diagram("cup_cw 0 / cup_cw 1 / cap_cw 1 / cap_cw 0").unwrap());
    let braid = parse_diagram("cup_cw 0 / cup_cw 1 / cup_cw 2 / xp 0 / xp 1 / xp 0 / cap_cw 2 / cap_cw 1 / cap_cw 0").unwrap();
    let turned = apply_move(&braid, Move::M3, s(3, 0), MoveDirection::Forward).unwrap();
    assert_eq!(
        turned,
        parse_diagram("cup_cw 0 / cup_cw 1 / cup_cw 2 / xp 1 / xp 0 / xp 1 / cap_cw 2 / cap_cw 1 / cap_cw 0").unwrap()
    );
    assert_eq!(apply_move(&turned, Move::M3, s(3, 0), MoveDirection::Backward).unwrap(), braid);
    assert!(matches!(
        apply_move(&two, Move::M3, s(0, 0), MoveDirection::Forward),
        Err(OqaError::MoveMismatch(_))
    ));
}

#[test]
fn moves_preserve_writhe_and_whitney_degrees() {
    let mut applied = 0;
    for name in CLOSED {
        let d = builtin(name).unwrap();
        let st = d.stats();
        for (mv, site, dir) in applicable_moves(&d) {
            let out = apply_move(&d, mv, site, dir).unwrap();
            let ost = out.stats();
            assert_eq!(ost.writhe, st.writhe, "{name} {mv} {site:?} {dir:?}");
            let (mut a, mut b) = (ost.whitney.clone(), st.whitney.clone());
            a.sort();
            b.sort();
            assert_eq!(a, b, "{name} {mv} {site:?} {dir:?}");
            applied += 1;
        }
    }
    assert!(applied >= 100, "{applied}");
}

#[test]
fn every_move_is_exercised() {
    let mut seen = std::collections::HashSet::new();
    let diagrams = move_corpus();
    for d in diagrams {
        let first = applicable_moves(&d);
        for (k, &(mv, site, dir)) in first.iter().enumerate() {
            seen.insert((mv, dir));
            if k % 7 == 0 {
                let next = apply_move(&d, mv, site, dir).unwrap();
                seen.extend(applicable_moves(&next).into_iter().map(|(m, _, d)| (m, d)));
            }
        }
    }
    for mv in Move::ALL {
        for dir in [MoveDirection::Forward, MoveDirection::Backward] {
            assert!(seen.contains(&(mv, dir)), "{mv} {dir:?} never applies");
        }
    }
}

proptest! {
    #[test]
    fn parse_serialize_round_trip(choices in prop::collection::vec((0u8..8, 0u8..8), 0..14)) {
        let d = random_closed(&choices);
        prop_assert_eq!(parse_diagram(&d.serialize()).unwrap(), d.clone());
        prop_assert_eq!(parse_diagram(&d.word()).unwrap(), d);
    }

    #[test]
    fn labels_pair_up(choices in prop::collection::vec((0u8..8, 0u8..8), 0..14)) {
        let d = random_closed(&choices);
        let rec = d.traverse();
        let labels: Vec<_> = rec.components.iter().flat_map(|c| c.labels.clone()).collect();
        prop_assert_eq!(labels.len(), 2 * d.crossing_count());
        let whitney_total: i64 = rec.components.iter().map(|c| c.whitney2).sum();
        let cw = d.slices().iter().filter(|s| !s.kind.is_crossing() && s.kind.is_clockwise()).count() as i64;
        let ccw = d.slices().iter().filter(|s| !s.kind.is_crossing() && !s.kind.is_clockwise()).count() as i64;
        prop_assert_eq!(whitney_total, cw - ccw);
    }
}
