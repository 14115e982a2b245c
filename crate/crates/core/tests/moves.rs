use knotcolor::coloring::count_colorings;
use knotcolor::construct::{mirror, torus2, twist_chain};
use knotcolor::moves::*;
use knotcolor::{Diagram, Orientation};
use num_bigint::BigInt;

fn trefoil() -> Diagram {
    Diagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 0)
}

fn tri(d: &Diagram) -> BigInt {
    count_colorings(d, 3).unwrap()
}

#[test]
fn curl_on_unknot() {
    let d = apply_reidemeister(
        &Diagram::unlink(1),
        &Reidemeister::R1Add { edge: 0, positive: true, left: true },
    )
    .unwrap();
    assert_eq!(d.crossing_count(), 1);
    assert_eq!(d.free_loops(), 0);
    assert_eq!(tri(&d), BigInt::from(3));
    assert_eq!(d.writhe(&Orientation::default()).unwrap(), 1);
}

#[test]
fn every_curl_variant_has_the_requested_sign() {
    for positive in [true, false] {
        for left in [true, false] {
            let d = apply_reidemeister(&trefoil(), &Reidemeister::R1Add { edge: 2, positive, left })
                .unwrap();
            let w = d.writhe(&Orientation::default()).unwrap();
            assert_eq!(w, -3 + if positive { 1 } else { -1 }, "{positive} {left}");
            assert_eq!(tri(&d), BigInt::from(9));
        }
    }
}

#[test]
fn r2_on_trefoil_keeps_tri() {
    let sites = window_sites(&trefoil()).unwrap();
    assert!(!sites.is_empty());
    for (a, b) in sites {
        let d = apply_reidemeister(&trefoil(), &Reidemeister::R2Add { over: a, under: b }).unwrap();
        assert_eq!(d.crossing_count(), 5);
        assert_eq!(tri(&d), BigInt::from(9));
        assert_eq!(d.writhe(&Orientation::default()).unwrap(), -3);
    }
}

#[test]
fn scramble_keeps_counts() {
    for seed in 1..4 {
        let d = scramble(&trefoil(), seed, 60, 14).unwrap();
        assert_eq!(tri(&d), BigInt::from(9), "seed {seed}");
        let h = scramble(&torus2(2).unwrap(), seed, 60, 14).unwrap();
        assert_eq!(h.linking_number(&Orientation::default()).unwrap().twice, 2);
    }
}

#[test]
fn twist_chain_grows_by_n_move() {
    let t1 = twist_chain(1).unwrap();
    let t3 = apply_twist_move(&t1, &[1, 2], TwistMove::NMove(2)).unwrap();
    assert_eq!(t3.canonical_code().unwrap(), twist_chain(3).unwrap().canonical_code().unwrap());
}

#[test]
fn trefoil_family_counts() {
    let fam = skein_family(&trefoil(), 0, Arity::Four).unwrap();
    let counts: Vec<BigInt> = fam.members.iter().map(tri).collect();
    assert_eq!(counts, [9, 3, 3, 3].map(BigInt::from).to_vec());
    let m = mirror(&trefoil()).unwrap();
    assert_eq!(tri(&m), BigInt::from(9));
}
