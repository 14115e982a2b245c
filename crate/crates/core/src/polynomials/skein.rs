//! Skein evaluators terminating on descending diagrams.
//!
//! A diagram is descending for a choice of base point and direction per
//! component and an order of components when every crossing is first met
//! on its over-strand (self-crossings) or has the earlier component on top.
//! Descending diagrams are unlinks. Each recursion step switches one bad
//! crossing or removes crossings, so `(crossings, bad crossings)` drops.

use std::collections::HashMap;

use crate::algebra::laurent::{Laurent, Laurent2};
use crate::diagram::{Diagram, Orientation, Topology};
use crate::error::Result;
use crate::moves::{resolve, simplify, Resolution};
use crate::net::split_pieces;

use super::Limits;

pub(crate) trait Ring: Clone {
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;

    fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Ring for i128 {
    fn one() -> Self {
        1
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Ring for Laurent {
    fn one() -> Self {
        Laurent::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Ring for Laurent2 {
    fn one() -> Self {
        Laurent2::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

/// A crossing that is not descending under the best base-point choice, or
/// `None` when the diagram is descending. `oriented` fixes the traversal
/// direction of every component to the default orientation.
pub(crate) fn bad_crossing(t: &Topology, oriented: bool) -> Option<usize> {
    let n = t.crossing_count();
    let comps = &t.components;
    let mut bad_self: Vec<Option<usize>> = Vec::with_capacity(comps.len());
    for comp in comps {
        let len = comp.len();
        let mut best: Option<(usize, Option<usize>)> = None;
        let directions: &[bool] = if oriented { &[true] } else { &[true, false] };
        for &forward in directions {
            for start in 0..len {
                let mut first_seen = vec![false; n];
                let mut count = 0;
                let mut witness = None;
                for k in 0..len {
                    let idx = if forward {
                        (start + k) % len
                    } else {
                        (start + len - k) % len
                    };
                    let p = comp[idx];
                    let c = p / 4;
                    if !first_seen[c] {
                        first_seen[c] = true;
                        let other_same = (0..4).any(|s| {
                            let q = 4 * c + s;
                            q % 2 != p % 2 && t.component_of_port[q] == t.component_of_port[p]
                        });
                        if other_same && p % 2 == 0 {
                            count += 1;
                            witness.get_or_insert(c);
                        }
                    }
                }
                if best.map_or(true, |(b, _)| count < b) {
                    best = Some((count, witness));
                }
                if count == 0 {
                    break;
                }
            }
        }
        bad_self.push(best.and_then(|(_, w)| w));
    }
    if let Some(c) = bad_self.iter().flatten().next() {
        return Some(*c);
    }
    // inter-component crossings: (over component, under component, crossing)
    let mut inter: Vec<(usize, usize, usize)> = Vec::new();
    for c in 0..n {
        let over = t.component_of_port[4 * c + 1];
        let under = t.component_of_port[4 * c];
        if over != under {
            inter.push((over, under, c));
        }
    }
    if inter.is_empty() {
        return None;
    }
    let order = component_order(comps.len(), &inter);
    let rank: Vec<usize> = {
        let mut r = vec![0; comps.len()];
        for (i, &c) in order.iter().enumerate() {
            r[c] = i;
        }
        r
    };
    inter
        .iter()
        .find(|&&(over, under, _)| rank[over] > rank[under])
        .map(|&(_, _, c)| c)
}

/// Component order (top first) with few inter-component bad crossings:
/// exhaustive for up to seven components, greedy beyond.
fn component_order(k: usize, inter: &[(usize, usize, usize)]) -> Vec<usize> {
    let cost = |order: &[usize]| {
        let mut rank = vec![0; k];
        for (i, &c) in order.iter().enumerate() {
            rank[c] = i;
        }
        inter.iter().filter(|&&(o, u, _)| rank[o] > rank[u]).count()
    };
    if k <= 7 {
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut perm: Vec<usize> = (0..k).collect();
        permute(&mut perm, 0, &mut |p| {
            let c = cost(p);
            if best.as_ref().map_or(true, |(b, _)| c < *b) {
                best = Some((c, p.to_vec()));
            }
        });
        return best.unwrap().1;
    }
    // greedy: components that are mostly on top come first
    let mut score = vec![0i64; k];
    for &(o, u, _) in inter {
        score[o] -= 1;
        score[u] += 1;
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&c| (score[c], c));
    order
}

fn permute(v: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == v.len() {
        f(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permute(v, i + 1, f);
        v.swap(i, j);
    }
}

/// Unoriented skein `Q₊ + Q₋ = x(Q₀ + Q_∞)`, with `μ` the value of a
/// two-component unlink; instantiated for `Q(x)` and for `F(1, −1)`.
pub(crate) struct Unoriented<R: Ring> {
    pub x: R,
    pub mu: R,
    memo: HashMap<Vec<u8>, R>,
}

impl<R: Ring> Unoriented<R> {
    pub fn new(x: R, mu: R) -> Self {
        Unoriented {
            x,
            mu,
            memo: HashMap::new(),
        }
    }

    pub fn eval(&mut self, d: &Diagram, limits: &Limits) -> Result<R> {
        limits.check(d)?;
        self.eval_inner(d)
    }

    fn eval_inner(&mut self, d: &Diagram) -> Result<R> {
        let d = simplify(d)?;
        if d.crossing_count() == 0 {
            return Ok(self.mu.pow(d.free_loops().saturating_sub(1)));
        }
        let (parts, free) = split_pieces(&d)?;
        if parts.len() > 1 || free > 0 {
            let mut acc = self.mu.pow(parts.len() + free - 1);
            for p in &parts {
                acc = acc.mul(&self.eval_inner(p)?);
            }
            return Ok(acc);
        }
        let key = d.canonical_code_unchecked();
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let t = d.topology()?;
        let value = match bad_crossing(&t, false) {
            None => self.mu.pow(t.components.len() - 1),
            Some(c) => {
                let switched = self.eval_inner(&resolve(&d, c, Resolution::Switch)?)?;
                let h = self.eval_inner(&resolve(&d, c, Resolution::Horizontal)?)?;
                let v = self.eval_inner(&resolve(&d, c, Resolution::Vertical)?)?;
                self.x.mul(&h.add(&v)).sub(&switched)
            }
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }
}

/// Oriented skein `a P₊ − a⁻¹ P₋ = z P₀` in `Z[a^±, z^±]`.
pub(crate) struct Homfly {
    memo: HashMap<Vec<u8>, Laurent2>,
}

impl Homfly {
    pub fn new() -> Self {
        Homfly {
            memo: HashMap::new(),
        }
    }

    /// `(a − a⁻¹)/z`.
    pub fn mu() -> Laurent2 {
        let mut m = Laurent2::zero();
        m.add_term(1, -1, 1);
        m.add_term(-1, -1, -1);
        m
    }

    /// Evaluates `d` under its default orientation.
    pub fn eval(&mut self, d: &Diagram) -> Result<Laurent2> {
        let d = simplify(d)?;
        if d.crossing_count() == 0 {
            return Ok(Ring::pow(&Self::mu(), d.free_loops().saturating_sub(1)));
        }
        let (parts, free) = split_pieces(&d)?;
        if parts.len() > 1 || free > 0 {
            let mut acc = Ring::pow(&Self::mu(), parts.len() + free - 1);
            for p in &parts {
                acc = acc.mul(&self.eval(p)?);
            }
            return Ok(acc);
        }
        let key = d.oriented_code()?;
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let t = d.topology()?;
        let value = match bad_crossing(&t, true) {
            None => Ring::pow(&Self::mu(), t.components.len() - 1),
            Some(c) => {
                let switched = self.eval(&resolve(&d, c, Resolution::Switch)?)?;
                let smoothed = self.eval(&resolve(&d, c, Resolution::Oriented)?)?;
                if t.sign(c, &Orientation::default()) > 0 {
                    // P₊ = a⁻² P₋ + a⁻¹ z P₀
                    switched.shift(-2, 0).add(&smoothed.shift(-1, 1))
                } else {
                    // P₋ = a² P₊ − a z P₀
                    switched.shift(2, 0).sub(&smoothed.shift(1, 1))
                }
            }
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }
}
