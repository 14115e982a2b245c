//! Kauffman bracket by a frontier sweep, and the Jones polynomial from it.

use std::collections::HashMap;

use crate::algebra::cyclotomic::CyclotomicInteger;
use crate::algebra::laurent::Laurent;
use crate::algebra::polymat::exact_div;
use crate::coloring::{count_colorings, exact_log};
use crate::diagram::{Diagram, EdgeId, Orientation};
use crate::error::{KnotError, Result};

use super::Limits;

/// Open arcs of a partial state, as sorted pairs of frontier edge labels.
type Matching = Vec<(EdgeId, EdgeId)>;

/// Joins frontier ends `p` and `q` by an arc; true when this closes a loop.
fn add_arc(m: &mut Matching, p: EdgeId, q: EdgeId) -> bool {
    if p == q {
        return true;
    }
    let take = |m: &mut Matching, e: EdgeId| -> Option<EdgeId> {
        let i = m.iter().position(|&(a, b)| a == e || b == e)?;
        let (a, b) = m.swap_remove(i);
        Some(if a == e { b } else { a })
    };
    let p_end = match take(m, p) {
        Some(x) if x == q => return true,
        Some(x) => x,
        None => p,
    };
    let q_end = take(m, q).unwrap_or(q);
    m.push((p_end.min(q_end), p_end.max(q_end)));
    m.sort_unstable();
    false
}

/// `−A² − A⁻²`.
pub fn loop_value() -> Laurent {
    Laurent::from_terms([(2, -1), (-2, -1)])
}

/// Crossings in an order that keeps the frontier small: each step takes the
/// crossing sharing most edges with what is already placed.
fn sweep_order(d: &Diagram) -> Vec<usize> {
    let n = d.crossing_count();
    let mut placed = vec![false; n];
    let mut seen: HashMap<EdgeId, usize> = HashMap::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&c| !placed[c])
            .max_by_key(|&c| {
                let shared = d.crossings()[c]
                    .slots
                    .iter()
                    .filter(|e| seen.get(e).copied().unwrap_or(0) == 1)
                    .count();
                (shared, std::cmp::Reverse(c))
            })
            .unwrap();
        placed[next] = true;
        for e in d.crossings()[next].slots {
            *seen.entry(e).or_insert(0) += 1;
        }
        order.push(next);
    }
    order
}

/// ⟨D⟩ in `A`, normalized by ⟨unknot⟩ = 1.
pub fn kauffman_bracket(d: &Diagram, limits: &Limits) -> Result<Laurent> {
    d.topology()?;
    limits.check(d)?;
    let delta = loop_value();
    let mut states: HashMap<Matching, Laurent> = HashMap::new();
    states.insert(Vec::new(), Laurent::one());
    for c in sweep_order(d) {
        let [a, b, x, y] = d.crossings()[c].slots;
        let mut next: HashMap<Matching, Laurent> = HashMap::new();
        for (m, poly) in &states {
            // A-smoothing joins slots (0,1),(2,3); B joins (0,3),(1,2)
            for (pairs, shift) in [([(a, b), (x, y)], 2), ([(a, y), (b, x)], -2)] {
                let mut m2 = m.clone();
                let mut term = poly.shift(shift);
                for (p, q) in pairs {
                    if add_arc(&mut m2, p, q) {
                        term = &term * &delta;
                    }
                }
                let slot = next.entry(m2).or_insert_with(Laurent::zero);
                *slot += &term;
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    let mut total = states.remove(&Vec::new()).unwrap_or_else(Laurent::zero);
    for _ in 0..d.free_loops() {
        total = &total * &delta;
    }
    if d.crossing_count() == 0 && d.free_loops() == 0 {
        return Ok(Laurent::one());
    }
    exact_div(&total, &delta)
        .ok_or_else(|| KnotError::CheckFailed("bracket not divisible by the loop value".into()))
}

/// `V(t)` as a Laurent polynomial in `t` (half-integer exponents allowed):
/// `V = (−A³)^{−w} ⟨D⟩` at `A = t^{−1/4}`.
pub fn jones_polynomial(d: &Diagram, o: &Orientation, limits: &Limits) -> Result<Laurent> {
    let bracket = kauffman_bracket(d, limits)?;
    let w = d.writhe(o)?;
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let mut v = Laurent::zero();
    for (half, c) in bracket.iter() {
        // `half` is twice the A-exponent
        let e = half / 2 - 3 * w as i32;
        if e % 2 != 0 {
            return Err(KnotError::CheckFailed("odd A-exponent after normalization".into()));
        }
        // A^e = t^{−e/4}, doubled exponent −e/2
        v.add_term(-e / 2, sign * c);
    }
    Ok(v)
}

/// `V(t)` at `t^{1/2} = −ζ`, `ζ = e^{2πi/12}`.
pub fn eval_at_zeta(v: &Laurent) -> CyclotomicInteger {
    let mut acc = CyclotomicInteger::ZERO;
    for (h, c) in v.iter() {
        let sign = if h.rem_euclid(2) == 0 { c } else { -c };
        acc = acc + CyclotomicInteger::zeta_pow(h as i64).scale(sign);
    }
    acc
}

/// `V(e^{2πi/6}) = ε · i^{com−1} · (i√3)^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JonesZetaValue {
    pub value: CyclotomicInteger,
    pub epsilon: i8,
    pub r: u32,
    pub com: usize,
}

/// Splits a value into `(ε, r)` given `com`; `None` if it has another shape.
pub fn decompose(value: CyclotomicInteger, com: usize, r: u32) -> Option<i8> {
    let base = CyclotomicInteger::i().pow((com as u32).saturating_sub(1)) * CyclotomicInteger::i_sqrt3().pow(r);
    if value == base {
        Some(1)
    } else if value == -base {
        Some(-1)
    } else {
        None
    }
}

pub fn jones_at_zeta(d: &Diagram, o: &Orientation, limits: &Limits) -> Result<JonesZetaValue> {
    let v = jones_polynomial(d, o, limits)?;
    let value = eval_at_zeta(&v);
    let com = d.component_count();
    let tri = count_colorings(d, 3)?;
    let r = exact_log(&tri, 3)
        .and_then(|k| k.checked_sub(1))
        .ok_or_else(|| KnotError::CheckFailed(format!("tri = {tri} is not 3^(r+1)")))?;
    let epsilon = decompose(value, com, r).ok_or_else(|| {
        KnotError::CheckFailed(format!(
            "V(ζ) = {value} is not ±i^{}·(i√3)^{r}",
            com.saturating_sub(1)
        ))
    })?;
    Ok(JonesZetaValue {
        value,
        epsilon,
        r,
        com,
    })
}

/// `ε_K` of a knot and the parity `l(ε_K)` with `(−1)^l = ε_K`: any
/// trivializing set of `r(K)` crossing changes changes a number of negative
/// crossings of that parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraczykParity {
    pub epsilon: i8,
    pub negative_crossing_parity: u8,
}

pub fn traczyk_parity(k: &Diagram, limits: &Limits) -> Result<TraczykParity> {
    if k.component_count() != 1 {
        return Err(KnotError::InvalidArgument(format!(
            "parity needs a knot, got {} components",
            k.component_count()
        )));
    }
    let j = jones_at_zeta(k, &Orientation::default(), limits)?;
    Ok(TraczykParity {
        epsilon: j.epsilon,
        negative_crossing_parity: if j.epsilon == 1 { 0 } else { 1 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::torus2;

    fn bracket(d: &Diagram) -> Laurent {
        kauffman_bracket(d, &Limits::default()).unwrap()
    }

    #[test]
    fn small_brackets() {
        assert_eq!(bracket(&Diagram::unlink(1)), Laurent::one());
        assert_eq!(bracket(&Diagram::unlink(2)), loop_value());
        assert_eq!(
            bracket(&torus2(2).unwrap()),
            Laurent::from_terms([(4, -1), (-4, -1)])
        );
        assert_eq!(
            bracket(&torus2(3).unwrap()),
            Laurent::from_terms([(5, -1), (-3, -1), (-7, 1)])
        );
    }

    #[test]
    fn positive_trefoil_jones() {
        let v = jones_polynomial(&torus2(3).unwrap(), &Orientation::default(), &Limits::default())
            .unwrap();
        assert_eq!(v, Laurent::from_terms([(1, 1), (3, 1), (4, -1)]));
    }

    #[test]
    fn hopf_at_zeta_is_i() {
        let j = jones_at_zeta(&torus2(2).unwrap(), &Orientation::default(), &Limits::default())
            .unwrap();
        assert_eq!(j.value, CyclotomicInteger::i());
        assert_eq!((j.epsilon, j.r, j.com), (1, 0, 2));
    }
}
