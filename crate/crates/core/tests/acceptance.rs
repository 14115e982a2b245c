//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always show up in `cargo test` output; exits non-zero if any
//! criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use knotcolor::algebra::{AbelianGroupInvariants, CyclotomicInteger, Laurent};
use knotcolor::coloring::{bounds, coloring_group, count_colorings, kfold_count};
use knotcolor::construct::{connected_sum, torus2};
use knotcolor::fixtures::{all, builtin, FixtureEntry};
use knotcolor::groups::{abelianization, alexander, alexander_mod_count, core_group, kfold_presentation};
use knotcolor::moves::{apply_twist_move, scramble, skein_family, window_sites, Arity, TwistMove};
use knotcolor::polynomials::{
    coherence_check, eval_at_zeta, f_at_one_minus_one, jones_at_zeta, jones_polynomial, q_polynomial,
    q_twist_closure, Limits,
};
use knotcolor::statmech::{
    coloring_state_sum, model_property_checks, vertex_partition_function, MorseWord, MAX_STATE_ARCS,
    MAX_STATE_COLORS,
};
use knotcolor::{Diagram, KnotError, Orientation, Result};

type Outcome = Result<(bool, String)>;

fn fx(name: &str) -> Diagram {
    builtin(name).unwrap().diagram
}

fn col(d: &Diagram, n: u64) -> Result<BigInt> {
    count_colorings(d, n)
}

/// Brute-force n-colorings: every arc labelling, checked crossing by crossing.
fn col_oracle(d: &Diagram, n: u64) -> u64 {
    let arcs = d.arc_decomposition().unwrap();
    let rows: Vec<[usize; 3]> = d
        .crossings()
        .iter()
        .map(|c| [arcs.arc(c.slots[1]), arcs.arc(c.slots[0]), arcs.arc(c.slots[2])])
        .collect();
    let a = arcs.arc_count as u32;
    (0..n.pow(a))
        .filter(|code| {
            let color = |i: usize| code / n.pow(i as u32) % n;
            rows.iter()
                .all(|&[o, u, v]| (2 * color(o) + 2 * n - color(u) - color(v)) % n == 0)
        })
        .count() as u64
}

/// Brute-force k-fold colorings over `Z_m[t]/(1 + t + … + t^{k−1})`.
fn kfold_oracle(d: &Diagram, k: usize, m: u64) -> u64 {
    let t = d.topology().unwrap();
    let arcs = d.arc_decomposition().unwrap();
    let o = Orientation::default();
    let dim = k - 1;
    let rows: Vec<(i64, usize, usize, usize)> = (0..d.crossing_count())
        .map(|c| {
            let (pin, pout) = t.under_ports(c, &o);
            (
                t.sign(c, &o),
                arcs.arc(d.crossings()[c].slots[1]),
                arcs.arc(t.edge_of_port[pin]),
                arcs.arc(t.edge_of_port[pout]),
            )
        })
        .collect();
    // multiply by t once, reducing t^{k−1} = −(1 + … + t^{k−2})
    let times_t = |w: &[u64]| -> Vec<u64> {
        let top = w[dim - 1];
        let mut out = vec![0; dim];
        for i in 0..dim {
            let shifted = if i == 0 { 0 } else { w[i - 1] };
            out[i] = (shifted + m - top) % m;
        }
        out
    };
    let t_pow = |w: &[u64], e: i64| -> Vec<u64> {
        let mut v = w.to_vec();
        for _ in 0..e.rem_euclid(k as i64) {
            v = times_t(&v);
        }
        v
    };
    let total = (arcs.arc_count * dim) as u32;
    let mut count = 0;
    for code in 0..m.pow(total) {
        let w = |a: usize| -> Vec<u64> { (0..dim).map(|i| code / m.pow((a * dim + i) as u32) % m).collect() };
        let ok = rows.iter().all(|&(eps, i, j, kk)| {
            let wi = w(i);
            let tei = t_pow(&wi, eps);
            let tek = t_pow(&w(kk), eps);
            let wj = w(j);
            (0..dim).all(|x| (wi[x] + m - tei[x] + tek[x] + m - wj[x]) % m == 0)
        });
        count += ok as u64;
    }
    count
}

fn three_equal_fourth_times(counts: &[BigInt], n: u64, allow_all_equal: bool) -> bool {
    let nb = BigInt::from(n);
    if counts.iter().all(|c| *c == counts[0]) {
        return allow_all_equal;
    }
    (0..counts.len()).any(|i| {
        let rest: Vec<&BigInt> = (0..counts.len()).filter(|&j| j != i).map(|j| &counts[j]).collect();
        rest.iter().all(|c| *c == rest[0]) && counts[i] == rest[0] * &nb
    })
}

fn small(max: usize) -> Vec<FixtureEntry> {
    all().into_iter().filter(|f| f.diagram.crossing_count() <= max).collect()
}

fn c1() -> Outcome {
    let got = [
        col(&fx("figure8"), 5)?,
        col(&fx("figure8"), 3)?,
        col(&fx("trefoil"), 3)?,
        col(&fx("unknot"), 3)?,
        col(&fx("square_knot"), 3)?,
    ];
    let want = [25, 3, 9, 3, 27].map(BigInt::from);
    Ok((got == want, format!("col5(4_1), tri(4_1), tri(3_1), tri(O), tri(3_1#3̄_1) = {:?}", got.map(|b| b.to_string()))))
}

fn c2() -> Outcome {
    let limits = Limits::default();
    let fixtures = small(10);
    let mut bad = Vec::new();
    for f in &fixtures {
        let d = &f.diagram;
        let tri = BigInt::from(col_oracle(d, 3));
        let v = eval_at_zeta(&jones_polynomial(d, &Orientation::default(), &limits)?);
        // |V(e^{2πi/6})²| = |V(ζ)|²
        let v2 = v.norm_squared().ok_or_else(|| KnotError::CheckFailed(format!("{v}")))?;
        let f11 = f_at_one_minus_one(d, &limits)?;
        if tri != BigInt::from(3 * v2) || tri != BigInt::from(3 * f11.abs()) {
            bad.push(f.name.clone());
        }
    }
    Ok((
        bad.is_empty() && fixtures.len() >= 10,
        format!("{} fixtures, failures {bad:?}", fixtures.len()),
    ))
}

fn c3() -> Outcome {
    let mut crossings = 0;
    let mut bad = Vec::new();
    for f in small(10) {
        for c in 0..f.diagram.crossing_count() {
            crossings += 1;
            let fam = skein_family(&f.diagram, c, Arity::Four)?;
            let tri: Vec<BigInt> = fam.members.iter().map(|m| col(m, 3)).collect::<Result<_>>()?;
            let col5: Vec<BigInt> = fam.members.iter().map(|m| col(m, 5)).collect::<Result<_>>()?;
            if !three_equal_fourth_times(&tri, 3, false) || !three_equal_fourth_times(&col5, 5, true) {
                bad.push(format!("{}@{c}", f.name));
            }
        }
    }
    Ok((bad.is_empty() && crossings > 0, format!("{crossings} crossings, failures {bad:?}")))
}

fn c4() -> Outcome {
    let limits = Limits::default();
    let o = Orientation::default();
    let snapshot = |d: &Diagram| -> Result<Vec<String>> {
        let h = coloring_group(d)?;
        Ok(vec![
            col(d, 3)?.to_string(),
            col(d, 5)?.to_string(),
            h.group.to_string(),
            d.linking_number(&o)?.to_string(),
            eval_at_zeta(&jones_polynomial(d, &o, &limits)?).to_string(),
            q_polynomial(d, &limits)?.to_string(),
            h.determinant.to_string(),
        ])
    };
    let mut runs = 0;
    let mut bad = Vec::new();
    for name in ["trefoil", "figure8", "hopf_plus", "hopf_minus"] {
        let d = fx(name);
        let before = snapshot(&d)?;
        for seed in 1..=10 {
            let s = scramble(&d, seed, 100, d.crossing_count() + 8)?;
            runs += 1;
            if snapshot(&s)? != before {
                bad.push(format!("{name}/{seed}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("{runs} scrambles of 100 moves, failures {bad:?}")))
}

fn c5() -> Outcome {
    let mut applied = [0usize; 4];
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for f in all() {
        let d = &f.diagram;
        if d.crossing_count() == 0 {
            continue;
        }
        let mut sites = window_sites(d)?;
        sites.shuffle(&mut rng);
        for &(a, b) in sites.iter().take(4) {
            for n in [3u64, 5, 7] {
                let m = apply_twist_move(d, &[a, b], TwistMove::NMove(n as i64))?;
                applied[0] += 1;
                if col(&m, n)? != col(d, n)? {
                    bad.push(format!("{} {n}-move", f.name));
                }
            }
        }
        for (p, q) in [(2u32, 2u32), (2, 3), (3, 2), (4, 4)] {
            let n = (p * q + 1) as u64;
            for &(a, b) in &sites {
                if let Ok(m) = apply_twist_move(d, &[a, b], TwistMove::PQ(p, q)) {
                    applied[1] += 1;
                    if col(&m, n)? != col(d, n)? {
                        bad.push(format!("{} [{p},{q}]", f.name));
                    }
                }
            }
        }
        if d.crossing_count() <= 7 {
            let es: Vec<u32> = (1..=d.edge_count() as u32).collect();
            let mut triples = Vec::new();
            for &x in &es {
                for &y in &es {
                    for &z in &es {
                        if x != y && y != z && x != z {
                            triples.push([x, y, z]);
                        }
                    }
                }
            }
            triples.shuffle(&mut rng);
            let mut done = 0;
            for t in triples {
                if done == 3 {
                    break;
                }
                let Ok(m) = apply_twist_move(d, &t, TwistMove::HalfTwistPower { k: 3, m: 4 }) else {
                    continue;
                };
                done += 1;
                applied[2] += 1;
                if col(&m, 3)? != col(d, 3)? || col(&m, 5)? != col(d, 5)? {
                    bad.push(format!("{} t⁴", f.name));
                }
            }
        }
    }
    // the 3-move on tri is the n = 3 case above; spell it out on the trefoil
    let t = fx("trefoil");
    let (a, b) = window_sites(&t)?[0];
    let three = apply_twist_move(&t, &[a, b], TwistMove::NMove(3))?;
    applied[3] += 1;
    let ok3 = col(&three, 3)? == col(&t, 3)?;
    Ok((
        bad.is_empty() && ok3 && applied.iter().all(|&x| x > 0),
        format!("n-moves {}, [p,q] {}, t⁴ {}; failures {bad:?}", applied[0], applied[1], applied[2]),
    ))
}

fn c6() -> Outcome {
    let limits = Limits::default();
    let x = Laurent::term(1, 1);
    let q = q_twist_closure(17)?;
    let p = Laurent::from_terms([(0, 1), (1, -4), (2, -10), (3, 10), (4, 15), (5, -6), (6, -7), (7, 1), (8, 1)]);
    // x(Q − (2 − x)/x) = 2(x − 1)p²
    let lhs = &(&x * &q) - &Laurent::from_terms([(0, 2), (1, -1)]);
    let rhs = &Laurent::from_terms([(1, 2), (0, -2)]) * &(&p * &p);
    let factor = lhs == rhs;
    let mut closed = true;
    for n in 0..=7u32 {
        closed &= q_polynomial(&torus2(n as i64)?, &limits)? == q_twist_closure(n)?;
    }
    Ok((factor && closed, format!("factorization {factor}, Q(torus2(n)) = closed form for n ≤ 7: {closed}")))
}

fn c7() -> Outcome {
    let limits = Limits::default();
    let o = Orientation::default();
    let sq = jones_at_zeta(&fx("square_knot"), &o, &limits)?;
    let s7 = jones_at_zeta(&fx("7_7"), &o, &limits)?;
    let sq_ok = sq.value == CyclotomicInteger::from_int(3) && sq.epsilon == -1;
    let s7_ok = s7.value == -CyclotomicInteger::i_sqrt3() && s7.epsilon == -1;
    let mut crossings = 0;
    let mut bad = Vec::new();
    for f in small(10) {
        if f.diagram.component_count() != 1 {
            continue;
        }
        for c in 0..f.diagram.crossing_count() {
            crossings += 1;
            if !coherence_check(&f.diagram, c, &limits)?.holds {
                bad.push(format!("{}@{c}", f.name));
            }
        }
    }
    Ok((
        sq_ok && s7_ok && bad.is_empty(),
        format!(
            "square_knot {} ε={}, 7_7 {} ε={}, coherence at {crossings} crossings, failures {bad:?}",
            sq.value, sq.epsilon, s7.value, s7.epsilon
        ),
    ))
}

/// `H` with one free summand split off, plus `Z`.
fn reduced_plus_z(h: &AbelianGroupInvariants) -> AbelianGroupInvariants {
    AbelianGroupInvariants {
        free_rank: h.free_rank.max(1),
        torsion: h.torsion.clone(),
    }
}

fn c8() -> Outcome {
    let o = Orientation::default();
    let tref = coloring_group(&fx("trefoil"))?.group.to_string();
    let fig8 = coloring_group(&fx("figure8"))?.group.to_string();
    // oracle: |H ⊗ Z_n| against brute-force counts
    let mut oracle_ok = true;
    for name in ["trefoil", "figure8"] {
        let d = fx(name);
        let h = coloring_group(&d)?.group;
        for n in [2u64, 3, 5, 6] {
            oracle_ok &= h.tensor_order(n) == BigInt::from(col_oracle(&d, n));
        }
    }
    let mut bad = Vec::new();
    for f in all() {
        let d = &f.diagram;
        let h = coloring_group(d)?;
        if abelianization(&core_group(d)?) != h.group {
            bad.push(format!("{} core", f.name));
        }
        if abelianization(&kfold_presentation(d, &o, 2)?) != reduced_plus_z(&h.group) {
            bad.push(format!("{} k=2", f.name));
        }
        if d.component_count() == 1 {
            let p = alexander(d, &o)?.polynomial.unwrap_or_default();
            if p.eval_integer(-1).map(|v| BigInt::from(v.abs())) != Some(h.determinant.clone()) {
                bad.push(format!("{} Δ(−1)", f.name));
            }
        }
    }
    Ok((
        tref == "Z + Z_3" && fig8 == "Z + Z_5" && oracle_ok && bad.is_empty(),
        format!("H(3_1) = {tref}, H(4_1) = {fig8}, failures {bad:?}"),
    ))
}

fn c9() -> Outcome {
    let o = Orientation::default();
    let mut cases = Vec::new();
    let mut ok = true;
    for name in ["trefoil", "figure8"] {
        let d = fx(name);
        for k in [2usize, 3] {
            for m in [2u64, 3] {
                let lib = kfold_count(&d, k, m)?;
                let brute = BigInt::from(kfold_oracle(&d, k, m));
                let alex = alexander_mod_count(&d, &o, k, m)?;
                ok &= lib == brute && lib == alex;
                cases.push(format!("{name}({k},{m})={lib}"));
            }
        }
    }
    Ok((ok, cases.join(" ")))
}

fn c10() -> Outcome {
    let mut failed = Vec::new();
    for k in [2usize, 3] {
        let r = model_property_checks(k)?;
        for (name, ok) in &r.checks {
            if !ok {
                failed.push(format!("k={k}: {name}"));
            }
        }
        let z = vertex_partition_function(&MorseWord::unknot(), k)?;
        let num = &Laurent::term(1, k as i32) - &Laurent::term(1, -(k as i32));
        let den = &Laurent::term(1, 1) - &Laurent::term(1, -1);
        if &z * &den != num {
            failed.push(format!("k={k}: unknot"));
        }
        let names: Vec<&str> = r.checks.iter().map(|(n, _)| n.as_str()).collect();
        for needed in ["Yang–Baxter", "R2", "skein", "Hopf", "trefoil"] {
            if !names.iter().any(|n| n.contains(needed)) {
                failed.push(format!("k={k}: no {needed} check"));
            }
        }
    }
    Ok((failed.is_empty(), format!("k = 2, 3; failures {failed:?}")))
}

fn c11() -> Outcome {
    let sq = bounds(&fx("square_knot"), 3)?.unknotting_lower;
    let f8 = fx("figure8");
    let ff = bounds(&connected_sum(&f8, 1, &f8, 1)?, 5)?.unknotting_lower;
    let bridge = bounds(&f8, 5)?.bridge_check(2);
    Ok((
        sq == Some(2) && ff == Some(2) && bridge,
        format!("u(3_1#3̄_1) ≥ {sq:?}, u(4_1#4_1) ≥ {ff:?}, figure8 b = 2 compatible: {bridge}"),
    ))
}

fn c12() -> Outcome {
    let mut pairs = 0;
    let mut bad = Vec::new();
    for f in all() {
        if f.diagram.arc_decomposition()?.arc_count > MAX_STATE_ARCS {
            continue;
        }
        for n in 2..=MAX_STATE_COLORS {
            pairs += 1;
            if coloring_state_sum(&f.diagram, n)? != col(&f.diagram, n)? {
                bad.push(format!("{}/{n}", f.name));
            }
        }
    }
    Ok((bad.is_empty() && pairs > 0, format!("{pairs} (diagram, n) pairs, failures {bad:?}")))
}

fn main() {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 12] = [
        (1, "tricoloring and 5-coloring values", 1, c1),
        (2, "tri = 3|V(ζ)|² = 3|F(1,−1)| on fixtures ≤ 10 crossings", 30, c2),
        (3, "skein-family laws for n = 3 and n = 5", 10, c3),
        (4, "Reidemeister invariance, seeds 1–10 × 100 moves", 30, c4),
        (5, "n-, [p,q]- and t⁴-move invariance", 20, c5),
        (6, "Q of the 17-twist closure and the closed form", 5, c6),
        (7, "Jones at ζ values and (ε, r) coherence", 20, c7),
        (8, "homology: coloring, core and double-cover groups, |Δ(−1)|", 20, c8),
        (9, "k-fold colorings by three routes", 20, c9),
        (10, "vertex model identities", 20, c10),
        (11, "unknotting and bridge bounds", 5, c11),
        (12, "coloring state sum equals col_n", 30, c12),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (i, name, budget, run) in criteria {
        let t = Instant::now();
        let out = run();
        let took = t.elapsed();
        let in_time = took <= Duration::from_secs(budget);
        let (ok, detail) = match out {
            Ok((ok, d)) => (ok && in_time, d),
            Err(e) => (false, format!("error: {e}")),
        };
        failures += !ok as u32;
        println!(
            "criterion {i:>2}: {} — {name} ({detail}) [{:.2}s / {budget}s]",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of 12 criteria passed in {:.2}s",
        12 - failures,
        start.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
