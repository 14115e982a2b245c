//! Closed form of `Q` on the two-strand twist closures.

use crate::algebra::laurent::Laurent;
use crate::error::{KnotError, Result};

fn x() -> Laurent {
    Laurent::term(1, 1)
}

/// `Uᵢ(x)` with `U₀ = 1`, `U₁ = x`, `Uᵢ = x Uᵢ₋₁ − Uᵢ₋₂`; the recursion run
/// backwards gives `U₋₁ = 0`, `U₋₂ = −1`.
pub fn chebyshev_u(i: i64) -> Laurent {
    match i {
        i64::MIN..=-3 => {
            // U_{i} = x U_{i+1} − U_{i+2}
            let a = chebyshev_u(i + 1);
            let b = chebyshev_u(i + 2);
            &(&x() * &a) - &b
        }
        -2 => Laurent::constant(-1),
        -1 => Laurent::zero(),
        _ => {
            let (mut prev, mut cur) = (Laurent::zero(), Laurent::one());
            for _ in 0..i {
                let next = &(&x() * &cur) - &prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// `Q` of the closure of `n` half-twists:
/// `U_{n−1} Q₁ − U_{n−2} Q₀ + x/(x−2) · (U_{n−1} − U_{n−2} − 1) Q_∞`
/// with `Q₁ = Q_∞ = 1` (unknots) and `Q₀ = 2x⁻¹ − 1` (two-component unlink).
pub fn q_twist_closure(n: u32) -> Result<Laurent> {
    let n = n as i64;
    let u1 = chebyshev_u(n - 1);
    let u2 = chebyshev_u(n - 2);
    let q0 = Laurent::from_terms([(-1, 2), (0, -1)]);
    let numer = &(&u1 - &u2) - &Laurent::one();
    let frac = (&x() * &numer)
        .div_linear(2)
        .ok_or_else(|| KnotError::CheckFailed("twist closure: x − 2 does not divide".into()))?;
    Ok(&(&u1 - &(&u2 * &q0)) + &frac)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_start() {
        assert_eq!(chebyshev_u(0), Laurent::one());
        assert_eq!(chebyshev_u(1), x());
        assert_eq!(chebyshev_u(2), Laurent::from_terms([(2, 1), (0, -1)]));
        // U₋₁, U₋₂ are consistent with the forward recursion
        assert_eq!(chebyshev_u(0), &(&x() * &chebyshev_u(-1)) - &chebyshev_u(-2));
    }

    #[test]
    fn small_closures() {
        assert_eq!(q_twist_closure(0).unwrap(), Laurent::from_terms([(-1, 2), (0, -1)]));
        assert_eq!(q_twist_closure(1).unwrap(), Laurent::one());
        assert_eq!(
            q_twist_closure(2).unwrap(),
            Laurent::from_terms([(1, 2), (0, 1), (-1, -2)])
        );
    }

    #[test]
    fn seventeen_twists_factor() {
        // x·Q − (2 − x) = 2(x − 1)·p²
        let q = q_twist_closure(17).unwrap();
        let p = Laurent::from_terms([
            (0, 1),
            (1, -4),
            (2, -10),
            (3, 10),
            (4, 15),
            (5, -6),
            (6, -7),
            (7, 1),
            (8, 1),
        ]);
        let lhs = &(&x() * &q) - &Laurent::from_terms([(0, 2), (1, -1)]);
        let rhs = &Laurent::from_terms([(1, 2), (0, -2)]) * &(&p * &p);
        assert_eq!(lhs, rhs);
    }
}
