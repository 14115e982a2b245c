//! Determinants over `Z[t^{±1}]` by fraction-free (Bareiss) elimination.

use super::laurent::Laurent;

/// Exact quotient `num / den` in `Z[t^{±1}]` (integral exponents), or `None`
/// if `den` does not divide `num`.
pub fn exact_div(num: &Laurent, den: &Laurent) -> Option<Laurent> {
    if den.is_zero() {
        return None;
    }
    let mut rem = num.clone();
    let mut quot = Laurent::zero();
    let dlo = den.min_half_exp()?;
    let dhi = den.max_half_exp()?;
    let lead = den.coeff(dhi);
    while !rem.is_zero() {
        let rhi = rem.max_half_exp()?;
        let rlo = rem.min_half_exp()?;
        if rhi - rlo < dhi - dlo {
            return None;
        }
        let c = rem.coeff(rhi);
        if c % lead != 0 {
            return None;
        }
        let t = Laurent::monomial(c / lead, rhi - dhi);
        rem = &rem - &(&t * den);
        quot += &t;
    }
    Some(quot)
}

/// Determinant of a square matrix of Laurent polynomials.
pub fn determinant(m: &[Vec<Laurent>]) -> Laurent {
    let n = m.len();
    if n == 0 {
        return Laurent::one();
    }
    let mut a: Vec<Vec<Laurent>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = Laurent::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Laurent::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = exact_div(&num, &prev).expect("Bareiss division is exact");
            }
            a[i][k] = Laurent::zero();
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].scale(sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: i32) -> Laurent {
        Laurent::term(1, e)
    }

    #[test]
    fn integer_determinant() {
        let m = vec![
            vec![Laurent::constant(2), Laurent::constant(-1)],
            vec![Laurent::constant(-1), Laurent::constant(2)],
        ];
        assert_eq!(determinant(&m), Laurent::constant(3));
    }

    #[test]
    fn polynomial_determinant_with_pivot_swap() {
        // [[0, t], [1 - t, 1]] has determinant -t(1 - t) = t^2 - t
        let m = vec![
            vec![Laurent::zero(), t(1)],
            vec![&Laurent::one() - &t(1), Laurent::one()],
        ];
        assert_eq!(determinant(&m), &t(2) - &t(1));
    }

    #[test]
    fn division_detects_non_divisors() {
        let a = &t(2) - &Laurent::one();
        let b = &t(1) - &Laurent::one();
        assert_eq!(exact_div(&a, &b).unwrap(), &t(1) + &Laurent::one());
        assert!(exact_div(&b, &a).is_none());
    }
}
