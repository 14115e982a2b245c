//! Exact arithmetic in `Z[ζ]`, `ζ = e^{2πi/12}`.
//!
//! Elements are coefficient vectors over `1, ζ, ζ², ζ³`, reduced with
//! `ζ⁴ = ζ² − 1` (the 12th cyclotomic polynomial).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::laurent::Laurent;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct CyclotomicInteger(pub [i128; 4]);

impl CyclotomicInteger {
    pub const ZERO: Self = CyclotomicInteger([0, 0, 0, 0]);
    pub const ONE: Self = CyclotomicInteger([1, 0, 0, 0]);

    pub fn from_int(n: i128) -> Self {
        CyclotomicInteger([n, 0, 0, 0])
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(12) as usize;
        let mut acc = Self::ONE;
        let zeta = CyclotomicInteger([0, 1, 0, 0]);
        for _ in 0..k {
            acc = acc * zeta;
        }
        acc
    }

    /// `i = ζ³`.
    pub fn i() -> Self {
        Self::zeta_pow(3)
    }

    /// `√3 = ζ + ζ⁻¹`.
    pub fn sqrt3() -> Self {
        Self::zeta_pow(1) + Self::zeta_pow(-1)
    }

    /// `i√3`.
    pub fn i_sqrt3() -> Self {
        Self::i() * Self::sqrt3()
    }

    pub fn pow(self, n: u32) -> Self {
        let mut acc = Self::ONE;
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    /// Complex conjugation, `ζ ↦ ζ⁻¹`.
    pub fn conj(self) -> Self {
        let mut acc = Self::ZERO;
        for (k, &c) in self.0.iter().enumerate() {
            acc = acc + Self::zeta_pow(-(k as i64)).scale(c);
        }
        acc
    }

    pub fn scale(self, k: i128) -> Self {
        CyclotomicInteger(self.0.map(|c| c * k))
    }

    /// `|z|²`, which lies in `Z[√3] ∩ R`; returned when it is a rational integer.
    pub fn norm_squared(self) -> Option<i128> {
        let n = self * self.conj();
        if n.0[1] == 0 && n.0[2] == 0 && n.0[3] == 0 {
            Some(n.0[0])
        } else {
            None
        }
    }

    /// Evaluates a Laurent polynomial whose variable is `ζ^(k/2)` per half-exponent
    /// step; `base` is the value of the polynomial variable, `base_inv` its inverse.
    pub fn eval(p: &Laurent, base: Self, base_inv: Self) -> Option<Self> {
        let mut acc = Self::ZERO;
        for (half, c) in p.iter() {
            if half % 2 != 0 {
                return None;
            }
            let e = half / 2;
            let v = if e >= 0 {
                base.pow(e as u32)
            } else {
                base_inv.pow((-e) as u32)
            };
            acc = acc + v.scale(c);
        }
        Some(acc)
    }

    /// Decimal approximation, only for human-readable output.
    pub fn approx(self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in self.0.iter().enumerate() {
            let ang = std::f64::consts::PI * (k as f64) / 6.0;
            re += c as f64 * ang.cos();
            im += c as f64 * ang.sin();
        }
        (re, im)
    }
}

impl fmt::Display for CyclotomicInteger {
    /// `m` or `m·i√3` when the value has that shape, otherwise the
    /// coefficient vector over `1, ζ, ζ², ζ³`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        if b == 0 && c == 0 && d == 0 {
            return write!(f, "{a}");
        }
        // m·i√3 = m(2ζ² − 1)
        if b == 0 && d == 0 && c % 2 == 0 && a == -c / 2 {
            return write!(f, "{}i√3", unit_prefix(c / 2));
        }
        // m·i = mζ³, m·√3 = m(2ζ − ζ³)
        if a == 0 && b == 0 && c == 0 {
            return write!(f, "{}i", unit_prefix(d));
        }
        if a == 0 && c == 0 && b % 2 == 0 && d == -b / 2 {
            return write!(f, "{}√3", unit_prefix(b / 2));
        }
        write!(f, "[{a},{b},{c},{d}]")
    }
}

fn unit_prefix(m: i128) -> String {
    match m {
        1 => String::new(),
        -1 => "-".to_string(),
        m => m.to_string(),
    }
}

impl Add for CyclotomicInteger {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        CyclotomicInteger(out)
    }
}

impl Sub for CyclotomicInteger {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for CyclotomicInteger {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1)
    }
}

impl Mul for CyclotomicInteger {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut wide = [0i128; 7];
        for i in 0..4 {
            for j in 0..4 {
                wide[i + j] += self.0[i] * rhs.0[j];
            }
        }
        // ζ^k = ζ^{k-2} - ζ^{k-4}, highest degree first
        for k in (4..7).rev() {
            let c = wide[k];
            wide[k] = 0;
            wide[k - 2] += c;
            wide[k - 4] -= c;
        }
        CyclotomicInteger([wide[0], wide[1], wide[2], wide[3]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(z: CyclotomicInteger, re: f64, im: f64) -> bool {
        let (a, b) = z.approx();
        (a - re).abs() < 1e-9 && (b - im).abs() < 1e-9
    }

    #[test]
    fn zeta_has_order_twelve() {
        assert_eq!(CyclotomicInteger::zeta_pow(12), CyclotomicInteger::ONE);
        assert_eq!(CyclotomicInteger::zeta_pow(6), CyclotomicInteger::from_int(-1));
        for k in 1..12 {
            assert_ne!(CyclotomicInteger::zeta_pow(k), CyclotomicInteger::ONE);
        }
    }

    #[test]
    fn named_constants_match_complex_values() {
        assert!(close(CyclotomicInteger::i(), 0.0, 1.0));
        assert!(close(CyclotomicInteger::sqrt3(), 3f64.sqrt(), 0.0));
        assert_eq!(
            CyclotomicInteger::sqrt3() * CyclotomicInteger::sqrt3(),
            CyclotomicInteger::from_int(3)
        );
        assert_eq!(
            CyclotomicInteger::i_sqrt3().pow(2),
            CyclotomicInteger::from_int(-3)
        );
    }

    #[test]
    fn conjugation_and_norm() {
        let z = CyclotomicInteger([1, 2, -1, 3]);
        assert_eq!(z.conj().conj(), z);
        assert_eq!(z.norm_squared(), None);
        let w = CyclotomicInteger::ONE + CyclotomicInteger::i().scale(2);
        assert_eq!(w.norm_squared(), Some(5));
        assert_eq!(CyclotomicInteger::i_sqrt3().norm_squared(), Some(3));
        assert_eq!(CyclotomicInteger::i_sqrt3().to_string(), "i√3");
        assert_eq!((-CyclotomicInteger::i_sqrt3()).scale(3).to_string(), "-3i√3");
        assert_eq!(CyclotomicInteger::sqrt3().to_string(), "√3");
        assert_eq!(CyclotomicInteger::i().scale(-3).to_string(), "-3i");
        assert_eq!(CyclotomicInteger::from_int(-3).to_string(), "-3");
    }
}
