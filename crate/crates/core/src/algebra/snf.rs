//! Integer Smith normal form and the abelian-group invariants it yields.
//!
//! Pivot selection always takes the smallest nonzero entry by absolute
//! value among the remaining block; arithmetic is arbitrary precision.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Free rank plus torsion invariant factors `d₁ | d₂ | …`, each `dᵢ ≥ 2`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AbelianGroupInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupInvariants {
    pub fn free(rank: usize) -> Self {
        AbelianGroupInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn new(free_rank: usize, torsion: &[i64]) -> Self {
        AbelianGroupInvariants {
            free_rank,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, t| acc * t)
    }

    /// Cokernel of an integer matrix (relations as rows, generators as columns).
    pub fn from_relations(m: &IntMatrix) -> Self {
        let diag = smith_diagonal(m);
        let rank = diag.len();
        AbelianGroupInvariants {
            free_rank: m.cols - rank,
            torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    /// `|G ⊗ Z_n|`.
    pub fn tensor_order(&self, n: u64) -> BigInt {
        let n = BigInt::from(n);
        let mut acc = num_traits::pow(n.clone(), self.free_rank);
        for d in &self.torsion {
            acc *= d.gcd(&n);
        }
        acc
    }
}

impl fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z_{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }
}

/// Nonzero diagonal entries of the Smith normal form, positive and in
/// divisibility order (including unit entries).
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| m.row(r).iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    smith_diagonal_big(&mut a, m.cols)
}

/// Same as [`smith_diagonal`] on an arbitrary-precision matrix (consumed).
pub fn smith_diagonal_big(a: &mut [Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        // smallest nonzero pivot in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() {
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => v.abs() < a[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let pivot = a[t][t].clone();
            let mut dirty = false;
            // clear column t
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&pivot);
                if !q.is_zero() {
                    for j in t..cols {
                        let sub = &q * &a[t][j];
                        a[i][j] -= sub;
                    }
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            // clear row t
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&pivot);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let sub = &q * &row[t];
                        row[j] -= sub;
                    }
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // enforce divisibility against the rest of the block
                let mut offender = None;
                'scan: for (i, row) in a.iter().enumerate().skip(t + 1) {
                    for v in row.iter().skip(t + 1) {
                        if !(v % &pivot).is_zero() {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t into the pivot
            let mut bi = t;
            let mut bj = t;
            let mut bv = a[t][t].abs();
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < bv {
                    bv = a[i][t].abs();
                    bi = i;
                    bj = t;
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < bv {
                    bv = a[t][j].abs();
                    bi = t;
                    bj = j;
                }
            }
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Number of solutions of `M x ≡ 0 (mod n)` with `x ∈ Z_n^cols`.
pub fn solution_count_mod(m: &IntMatrix, n: u64) -> BigInt {
    let diag = smith_diagonal(m);
    let nb = BigInt::from(n);
    let mut acc = num_traits::pow(nb.clone(), m.cols - diag.len());
    for d in &diag {
        acc *= d.gcd(&nb);
    }
    acc
}

/// Converts to `u128` when it fits.
pub fn to_u128(b: &BigInt) -> Option<u128> {
    b.to_u128()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_of_small_matrices() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        let d: Vec<i64> = smith_diagonal(&m).iter().map(|b| b.to_i64().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn trefoil_relations_give_z_plus_z3() {
        let m = IntMatrix::from_rows(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]], 3);
        let g = AbelianGroupInvariants::from_relations(&m);
        assert_eq!(g, AbelianGroupInvariants::new(1, &[3]));
        assert_eq!(g.to_string(), "Z + Z_3");
    }

    #[test]
    fn empty_relation_set_is_free() {
        let m = IntMatrix::zeros(0, 3);
        assert_eq!(AbelianGroupInvariants::from_relations(&m), AbelianGroupInvariants::free(3));
        assert_eq!(solution_count_mod(&m, 5), BigInt::from(125));
    }

    fn brute_count(m: &IntMatrix, n: u64) -> u64 {
        let total = n.pow(m.cols as u32);
        let mut count = 0;
        for code in 0..total {
            let mut x = vec![0i64; m.cols];
            let mut c = code;
            for xi in x.iter_mut() {
                *xi = (c % n) as i64;
                c /= n;
            }
            let ok = (0..m.rows).all(|r| {
                let s: i64 = m.row(r).iter().zip(&x).map(|(a, b)| a * b).sum();
                s.rem_euclid(n as i64) == 0
            });
            if ok {
                count += 1;
            }
        }
        count
    }

    proptest::proptest! {
        #[test]
        fn solution_count_matches_enumeration(
            entries in proptest::collection::vec(-4i64..=4, 9),
            n in 2u64..7,
        ) {
            let m = IntMatrix { rows: 3, cols: 3, data: entries };
            let fast = solution_count_mod(&m, n).to_u64().unwrap();
            proptest::prop_assert_eq!(fast, brute_count(&m, n));
        }

        #[test]
        fn diagonal_is_a_divisibility_chain(
            entries in proptest::collection::vec(-9i64..=9, 12),
        ) {
            let m = IntMatrix { rows: 3, cols: 4, data: entries };
            let d = smith_diagonal(&m);
            for w in d.windows(2) {
                proptest::prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }
}
