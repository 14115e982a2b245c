//! Sparse Laurent polynomials with integer coefficients.
//!
//! Exponents are stored doubled so that half-integer powers (needed for
//! `t^{1/2}` and `q^{1/2}`) are exact. `Laurent2` is the two-variable
//! variant used for HOMFLYPT, with plain integer exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Single-variable Laurent polynomial, keyed by doubled exponent.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Laurent {
    terms: BTreeMap<i32, i128>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^(half_exp / 2)`.
    pub fn monomial(c: i128, half_exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(half_exp, c);
        }
        Laurent { terms }
    }

    /// `c * v^e` for an integer exponent.
    pub fn term(c: i128, e: i32) -> Self {
        Self::monomial(c, 2 * e)
    }

    /// Builds from `(integer exponent, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i32, i128)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(2 * e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, half_exp: i32, c: i128) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(half_exp).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&half_exp);
        }
    }

    /// Iterates `(doubled exponent, coefficient)` in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, i128)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, half_exp: i32) -> i128 {
        self.terms.get(&half_exp).copied().unwrap_or(0)
    }

    pub fn min_half_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_half_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `v^(half_shift / 2)`.
    pub fn shift(&self, half_shift: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (e + half_shift, c)).collect(),
        }
    }

    pub fn scale(&self, k: i128) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (e, c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `v -> v^factor` (doubled exponents scale by `factor`).
    pub fn substitute_power(&self, factor: i32) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.iter() {
            out.add_term(e * factor, c);
        }
        out
    }

    /// Substitutes `v -> v^-1`.
    pub fn invert_variable(&self) -> Self {
        self.substitute_power(-1)
    }

    /// True when every exponent is an integer.
    pub fn has_integral_exponents(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// Exact division by `v - r` for an integer `r`. Requires integral
    /// exponents; returns `None` when the remainder is nonzero.
    pub fn div_linear(&self, r: i128) -> Option<Laurent> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if !self.has_integral_exponents() {
            return None;
        }
        let lo = self.min_half_exp().unwrap() / 2;
        let hi = self.max_half_exp().unwrap() / 2;
        // dense coefficients of v^-lo * self, highest first
        let dense: Vec<i128> = (lo..=hi).rev().map(|e| self.coeff(2 * e)).collect();
        let mut quot = Vec::with_capacity(dense.len());
        let mut carry = 0i128;
        for &c in &dense {
            carry = carry * r + c;
            quot.push(carry);
        }
        let rem = quot.pop().unwrap();
        if rem != 0 {
            return None;
        }
        let mut out = Self::zero();
        let top = hi - 1;
        for (i, c) in quot.into_iter().enumerate() {
            out.add_term(2 * (top - i as i32), c);
        }
        Some(out)
    }

    /// Evaluates at an integer point (integral exponents, nonnegative or v = ±1).
    pub fn eval_integer(&self, v: i128) -> Option<i128> {
        let mut acc = 0i128;
        for (e, c) in self.iter() {
            if e % 2 != 0 {
                return None;
            }
            let e = e / 2;
            let val = if e >= 0 {
                v.checked_pow(e as u32)?
            } else if v == 1 || v == -1 {
                v.pow((-e) as u32)
            } else {
                return None;
            };
            acc += c * val;
        }
        Some(acc)
    }

    /// Renders as `c*v^e` terms in increasing exponent order.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in self.iter() {
            let exp = if e % 2 == 0 {
                format!("{}", e / 2)
            } else {
                format!("{}/2", e)
            };
            parts.push(format!("{c}*{var}^{exp}"));
        }
        parts.join(" + ")
    }

    /// Parses the output of [`Laurent::to_text`].
    pub fn parse_text(s: &str, var: &str) -> Option<Laurent> {
        let s = s.trim();
        if s == "0" {
            return Some(Self::zero());
        }
        let mut out = Self::zero();
        for part in s.split(" + ") {
            let (c, rest) = part.split_once('*')?;
            let exp = rest.strip_prefix(var)?.strip_prefix('^')?;
            let c: i128 = c.parse().ok()?;
            let half = match exp.split_once('/') {
                Some((num, "2")) => num.parse::<i32>().ok()?,
                Some(_) => return None,
                None => 2 * exp.parse::<i32>().ok()?,
            };
            out.add_term(half, c);
        }
        Some(out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("v"))
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        &self + &rhs
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (e, c) in rhs.iter() {
            self.add_term(e, c);
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        &self - &rhs
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-1)
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-1)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in self.iter() {
            for (e2, c2) in rhs.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

/// Two-variable Laurent polynomial in `(a, z)` with integer exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Laurent2 {
    terms: BTreeMap<(i32, i32), i128>,
}

impl Laurent2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(1, 0, 0)
    }

    /// `c * a^i * z^j`.
    pub fn term(c: i128, i: i32, j: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn add_term(&mut self, i: i32, j: i32, c: i128) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i32, i32), i128)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn min_z_exp(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.1).min()
    }

    /// Multiplies by `a^di z^dj`.
    pub fn shift(&self, di: i32, dj: i32) -> Self {
        Laurent2 {
            terms: self.terms.iter().map(|(&(i, j), &c)| ((i + di, j + dj), c)).collect(),
        }
    }

    /// Substitutes `a -> v^a_half/2`, `z -> zpoly`, requiring `z` powers to be
    /// nonnegative (multiply by a power of z first to clear denominators).
    pub fn specialize(&self, a_half: i32, z: &Laurent) -> Option<Laurent> {
        let mut out = Laurent::zero();
        for ((i, j), c) in self.iter() {
            if j < 0 {
                return None;
            }
            let t = z.pow(j as u32).shift(i * a_half).scale(c);
            out += &t;
        }
        Some(out)
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(&(i, j), &c)| format!("{c}*a^{i}*z^{j}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Laurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &Laurent2 {
    type Output = Laurent2;
    fn add(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = self.clone();
        for ((i, j), c) in rhs.iter() {
            out.add_term(i, j, c);
        }
        out
    }
}

impl Sub for &Laurent2 {
    type Output = Laurent2;
    fn sub(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = self.clone();
        for ((i, j), c) in rhs.iter() {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Neg for &Laurent2 {
    type Output = Laurent2;
    fn neg(self) -> Laurent2 {
        let mut out = Laurent2::zero();
        for ((i, j), c) in self.iter() {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul for &Laurent2 {
    type Output = Laurent2;
    fn mul(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = Laurent2::zero();
        for ((i1, j1), c1) in self.iter() {
            for ((i2, j2), c2) in rhs.iter() {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_cancels_zero_terms() {
        let p = Laurent::from_terms([(1, 1), (-1, 1)]);
        let q = Laurent::from_terms([(1, 1), (-1, -1)]);
        assert_eq!(&p + &q, Laurent::term(2, 1));
        assert_eq!(&p - &p, Laurent::zero());
        // (v + v^-1)(v - v^-1) = v^2 - v^-2
        assert_eq!(&p * &q, Laurent::from_terms([(2, 1), (-2, -1)]));
    }

    #[test]
    fn division_by_linear_factor() {
        // v^2 - 3v + 2 = (v - 1)(v - 2)
        let p = Laurent::from_terms([(2, 1), (1, -3), (0, 2)]);
        assert_eq!(p.div_linear(2).unwrap(), Laurent::from_terms([(1, 1), (0, -1)]));
        assert!(p.div_linear(3).is_none());
        // negative exponents survive: v^-1 (v - 2) / (v - 2) = v^-1
        let r = Laurent::from_terms([(0, 1), (-1, -2)]);
        assert_eq!(r.div_linear(2).unwrap(), Laurent::term(1, -1));
    }

    #[test]
    fn text_round_trip_with_half_exponents() {
        let mut p = Laurent::monomial(-3, -3);
        p.add_term(4, 2);
        let s = p.to_text("t");
        assert_eq!(s, "-3*t^-3/2 + 2*t^2");
        assert_eq!(Laurent::parse_text(&s, "t").unwrap(), p);
    }

    #[test]
    fn two_variable_specialization() {
        // a*z + a^-1 at a = q^2, z = q - q^-1
        let p = &Laurent2::term(1, 1, 1) + &Laurent2::term(1, -1, 0);
        let z = Laurent::from_terms([(1, 1), (-1, -1)]);
        let s = p.specialize(4, &z).unwrap();
        assert_eq!(s, Laurent::from_terms([(3, 1), (1, -1), (-2, 1)]));
    }
}
