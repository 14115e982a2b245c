//! Fox colorings as integer linear algebra.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::snf::solution_count_mod;
use crate::algebra::{AbelianGroupInvariants, IntMatrix};
use crate::diagram::{Diagram, Orientation};
use crate::error::{KnotError, Result};
use crate::moves::{skein_family, Arity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MatrixVariant {
    /// Crossings × arcs: `2·over − under − under` per row.
    Relations,
    /// Arcs × crossings, the transpose (the incidence numbers `b_{i,j}`).
    Incidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringMatrix {
    pub variant: MatrixVariant,
    pub matrix: IntMatrix,
}

/// (over arc, incoming under arc, outgoing under arc) of every crossing.
pub(crate) fn crossing_arcs(d: &Diagram) -> Result<Vec<(usize, usize, usize)>> {
    let arcs = d.arc_decomposition()?;
    Ok(d
        .crossings()
        .iter()
        .map(|c| (arcs.arc(c.slots[1]), arcs.arc(c.slots[0]), arcs.arc(c.slots[2])))
        .collect())
}

pub fn coloring_matrix(d: &Diagram, variant: MatrixVariant) -> Result<ColoringMatrix> {
    let arcs = d.arc_decomposition()?;
    let mut m = IntMatrix::zeros(d.crossing_count(), arcs.arc_count);
    for (r, (over, j, k)) in crossing_arcs(d)?.into_iter().enumerate() {
        m.add_to(r, over, 2);
        m.add_to(r, j, -1);
        m.add_to(r, k, -1);
    }
    let matrix = match variant {
        MatrixVariant::Relations => m,
        MatrixVariant::Incidence => m.transpose(),
    };
    Ok(ColoringMatrix { variant, matrix })
}

fn check_modulus(n: u64) -> Result<()> {
    if n < 2 {
        return Err(KnotError::InvalidArgument(format!("modulus must be >= 2, got {n}")));
    }
    Ok(())
}

/// `col_n(D)`, from the Smith form of the relations matrix.
pub fn count_colorings(d: &Diagram, n: u64) -> Result<BigInt> {
    check_modulus(n)?;
    let m = coloring_matrix(d, MatrixVariant::Relations)?;
    Ok(solution_count_mod(&m.matrix, n))
}

/// Exact `log_base(v)` when `v` is a power of `base`.
pub fn exact_log(v: &BigInt, base: u64) -> Option<u32> {
    let b = BigInt::from(base);
    let mut x = v.clone();
    let mut k = 0;
    while x > BigInt::one() {
        if !(&x % &b).is_zero() {
            return None;
        }
        x /= &b;
        k += 1;
    }
    x.is_one().then_some(k)
}

/// `(−1)^{log₃ tri} · tri`.
pub fn signed_tri(d: &Diagram) -> Result<BigInt> {
    let tri = count_colorings(d, 3)?;
    let k = exact_log(&tri, 3)
        .ok_or_else(|| KnotError::CheckFailed(format!("tri = {tri} is not a power of 3")))?;
    Ok(if k % 2 == 1 { -tri } else { tri })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringGroup {
    pub group: AbelianGroupInvariants,
    /// Order of the torsion part when the free rank is 1, otherwise 0.
    pub determinant: BigInt,
}

pub fn coloring_group(d: &Diagram) -> Result<ColoringGroup> {
    let m = coloring_matrix(d, MatrixVariant::Relations)?;
    let group = AbelianGroupInvariants::from_relations(&m.matrix);
    let determinant = if group.free_rank == 1 {
        group.torsion_order()
    } else {
        BigInt::zero()
    };
    Ok(ColoringGroup { group, determinant })
}

/// Multiplication by `t^e` on `Z[t]/(1 + t + … + t^{k−1})` in the basis
/// `1, t, …, t^{k−2}`, as a dense matrix (column = input basis vector).
pub(crate) fn t_power_block(k: usize, e: i64) -> Vec<Vec<i64>> {
    let dim = k - 1;
    // t^e acts as t^{e mod k}; t^{k−1} = −(1 + … + t^{k−2})
    let e = e.rem_euclid(k as i64) as usize;
    let mut m = vec![vec![0; dim]; dim];
    for col in 0..dim {
        let deg = (col + e) % k;
        if deg < dim {
            m[deg][col] += 1;
        } else {
            for row in m.iter_mut() {
                row[col] -= 1;
            }
        }
    }
    m
}

/// Integer matrix of the k-fold coloring system: per crossing
/// `(1 − t^ε) w_over + t^ε w_out − w_in = 0` over `Z[t]/(Φ)`.
pub fn kfold_matrix(d: &Diagram, k: usize) -> Result<IntMatrix> {
    if k < 2 {
        return Err(KnotError::InvalidArgument(format!("k must be >= 2, got {k}")));
    }
    let arcs = d.arc_decomposition()?;
    let t = d.topology()?;
    let o = Orientation::default();
    let dim = k - 1;
    let mut m = IntMatrix::zeros(d.crossing_count() * dim, arcs.arc_count * dim);
    let rows = crossing_arcs(d)?;
    for (c, &(over, inc, out)) in rows.iter().enumerate() {
        let eps = t.sign(c, &o);
        let te = t_power_block(k, eps);
        let mut add = |arc: usize, block: &dyn Fn(usize, usize) -> i64| {
            for r in 0..dim {
                for s in 0..dim {
                    m.add_to(c * dim + r, arc * dim + s, block(r, s));
                }
            }
        };
        add(over, &|r, s| i64::from(r == s) - te[r][s]);
        add(out, &|r, s| te[r][s]);
        add(inc, &|r, s| -i64::from(r == s));
    }
    Ok(m)
}

/// Number of k-fold colorings with coefficients in `Z_m`.
pub fn kfold_count(d: &Diagram, k: usize, m: u64) -> Result<BigInt> {
    check_modulus(m)?;
    Ok(solution_count_mod(&kfold_matrix(d, k)?, m))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|i| i * i <= n).all(|i| n % i != 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub n: u64,
    pub colorings: BigInt,
    pub log_n: u32,
    /// `log_n(col_n) − 1`, for knots only.
    pub unknotting_lower: Option<i64>,
}

impl Bounds {
    /// A `b`-bridge presentation is compatible iff `b ≥ log_n(col_n)`.
    pub fn bridge_check(&self, b: u32) -> bool {
        b >= self.log_n
    }
}

pub fn bounds(d: &Diagram, n: u64) -> Result<Bounds> {
    if !is_prime(n) {
        return Err(KnotError::InvalidArgument(format!("{n} is not prime")));
    }
    let colorings = count_colorings(d, n)?;
    let log_n = exact_log(&colorings, n).ok_or_else(|| {
        KnotError::CheckFailed(format!("col_{n} = {colorings} is not a power of {n}"))
    })?;
    let unknotting_lower = (d.component_count() == 1).then(|| (log_n as i64 - 1).max(0));
    Ok(Bounds {
        n,
        colorings,
        log_n,
        unknotting_lower,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FamilyPattern {
    AllEqual,
    /// All but one equal, the odd one `n` times bigger.
    OneNTimesBigger,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyLawReport {
    pub n: u64,
    pub counts: Vec<BigInt>,
    pub pattern: FamilyPattern,
    /// The law for this family size: four-member families allow both
    /// listed patterns (and, at n = 3, not all equal); n+1-member families
    /// require `OneNTimesBigger`.
    pub holds: bool,
}

pub fn classify(counts: &[BigInt], n: u64) -> FamilyPattern {
    let first = &counts[0];
    if counts.iter().all(|c| c == first) {
        return FamilyPattern::AllEqual;
    }
    let nb = BigInt::from(n);
    for i in 0..counts.len() {
        let rest: Vec<&BigInt> = counts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, c)| c)
            .collect();
        if rest.iter().all(|c| *c == rest[0]) && counts[i] == rest[0] * &nb {
            return FamilyPattern::OneNTimesBigger;
        }
    }
    FamilyPattern::Other
}

/// Coloring counts over the skein family at a crossing and the law they obey.
pub fn quadruple_law_check(
    d: &Diagram,
    crossing: usize,
    n: u64,
    arity: Arity,
) -> Result<FamilyLawReport> {
    if !is_prime(n) {
        return Err(KnotError::InvalidArgument(format!("{n} is not prime")));
    }
    let fam = skein_family(d, crossing, arity)?;
    let counts = fam
        .members
        .iter()
        .map(|m| count_colorings(m, n))
        .collect::<Result<Vec<_>>>()?;
    let pattern = classify(&counts, n);
    let holds = match arity {
        Arity::Four if n == 3 => pattern == FamilyPattern::OneNTimesBigger,
        Arity::Four => pattern != FamilyPattern::Other,
        Arity::NAry(_) => pattern == FamilyPattern::OneNTimesBigger,
    };
    Ok(FamilyLawReport {
        n,
        counts,
        pattern,
        holds,
    })
}

pub fn to_u64(b: &BigInt) -> Option<u64> {
    b.to_u64()
}
