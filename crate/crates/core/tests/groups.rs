use knotcolor::coloring::{coloring_group, count_colorings, kfold_count};
use knotcolor::fixtures::{all, key};
use knotcolor::groups::*;
use knotcolor::{Diagram, Orientation};
use num_bigint::BigInt;

/// Brute-force dihedral oracle: every assignment arc → Z_n, each relator
/// multiplied out as permutations of Z_n.
fn dihedral_oracle(d: &Diagram, n: u64) -> u64 {
    let p = wirtinger(d, &Orientation::default()).unwrap();
    let g = p.generators.len() as u32;
    let mut count = 0;
    for code in 0..n.pow(g) {
        let colors: Vec<u64> = (0..g).map(|i| code / n.pow(i) % n).collect();
        let ok = p.relators.iter().all(|w| {
            (0..n).all(|x| {
                // reflections are involutions, so the sign is irrelevant
                let y = w
                    .iter()
                    .rev()
                    .fold(x, |x, &g| (2 * colors[g.unsigned_abs() as usize - 1] + n - x) % n);
                y == x
            })
        });
        count += ok as u64;
    }
    count
}

#[test]
fn wirtinger_abelianizes_to_free_group_on_components() {
    for f in all() {
        let o = Orientation::default();
        let a = abelianization(&wirtinger(&f.diagram, &o).unwrap());
        assert_eq!(a.free_rank, f.diagram.component_count(), "{}", f.name);
        assert!(a.torsion.is_empty(), "{}", f.name);
        if let Some(v) = f.expected(key::WIRTINGER_ABELIAN) {
            assert_eq!(a.to_string(), v);
        }
    }
}

#[test]
fn wirtinger_under_reorientation() {
    for f in all() {
        let com = f.diagram.topology().unwrap().components.len();
        for c in 0..com {
            let o = Orientation::reversing(com, &[c]);
            let p = wirtinger(&f.diagram, &o).unwrap();
            assert_eq!(abelianization(&p).free_rank, f.diagram.component_count(), "{}", f.name);
        }
    }
}

#[test]
fn core_group_matches_coloring_group() {
    for f in all() {
        let core = abelianization(&core_group(&f.diagram).unwrap());
        assert_eq!(core, coloring_group(&f.diagram).unwrap().group, "{}", f.name);
    }
    let fig8 = knotcolor::fixtures::builtin("figure8").unwrap().diagram;
    assert_eq!(abelianization(&core_group(&fig8).unwrap()).to_string(), "Z + Z_5");
}

#[test]
fn double_cover_presentation() {
    // H_1 of the double branched cover, plus one free factor
    for f in all() {
        let p = kfold_presentation(&f.diagram, &Orientation::default(), 2).unwrap();
        let a = abelianization(&p);
        let h = coloring_group(&f.diagram).unwrap().group;
        assert_eq!(a, h, "{}", f.name);
        if h.free_rank == 1 {
            assert_eq!(a.free_rank, 1);
        }
    }
}

#[test]
fn kfold_presentation_matches_coloring_counts() {
    // |H ⊗ Z_m| of the presentation equals the k-fold coloring count
    for f in all() {
        if f.diagram.crossing_count() > 7 {
            continue;
        }
        for k in 2..=4 {
            let a = abelianization(&kfold_presentation(&f.diagram, &Orientation::default(), k).unwrap());
            for m in [2u64, 3, 5] {
                let count = kfold_count(&f.diagram, k, m).unwrap();
                assert_eq!(a.tensor_order(m), count, "{} k={k} m={m}", f.name);
                assert_eq!(
                    alexander_mod_count(&f.diagram, &Orientation::default(), k, m).unwrap(),
                    count,
                    "{} k={k} m={m}",
                    f.name
                );
            }
        }
    }
}

#[test]
fn dihedral_count_is_col_n() {
    for f in all() {
        if f.diagram.crossing_count() > 9 {
            continue;
        }
        for n in [3u64, 5, 7] {
            assert_eq!(
                dihedral_count(&f.diagram, n).unwrap(),
                count_colorings(&f.diagram, n).unwrap(),
                "{} n={n}",
                f.name
            );
        }
    }
}

#[test]
fn dihedral_count_against_oracle() {
    for name in ["trefoil", "figure8", "hopf_minus", "unlink2"] {
        let d = knotcolor::fixtures::builtin(name).unwrap().diagram;
        for n in [3u64, 5] {
            assert_eq!(dihedral_count(&d, n).unwrap(), BigInt::from(dihedral_oracle(&d, n)), "{name}");
        }
    }
}

#[test]
fn alexander_polynomials_and_determinants() {
    let o = Orientation::default();
    for f in all() {
        let r = alexander(&f.diagram, &o).unwrap();
        assert!(r.matrix.rows_balanced(), "{}", f.name);
        let Some(p) = r.polynomial else {
            assert!(f.diagram.component_count() > 1);
            continue;
        };
        let det = coloring_group(&f.diagram).unwrap().determinant;
        assert_eq!(BigInt::from(p.eval_integer(-1).unwrap().abs()), det, "{}", f.name);
        if let Some(v) = f.expected(key::ALEXANDER) {
            assert_eq!(polynomial_text(&p), v, "{}", f.name);
        }
        // Δ is symmetric and Δ(1) = ±1
        assert_eq!(p.eval_integer(1).map(i128::abs), Some(1), "{}", f.name);
        assert_eq!(normalize(&p.invert_variable()), p, "{}", f.name);
    }
}

#[test]
fn export_format() {
    let d = knotcolor::fixtures::builtin("hopf_plus").unwrap().diagram;
    let p = wirtinger(&d, &Orientation::default()).unwrap();
    let text = p.export();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("gen x1 x2"));
    assert_eq!(lines.count(), p.relators.len());
    assert!(p.relators.iter().all(|r| !r.is_empty()));
    assert!(p.free_generators().is_empty());
}
