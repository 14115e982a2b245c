//! Group presentations read off a diagram, their abelianizations, and the
//! Alexander matrix.
//!
//! At every crossing `i` is the over-arc, `j` the incoming and `k` the
//! outgoing under-arc. The Wirtinger relators are `x_i⁻¹x_j⁻¹x_ix_k`
//! (positive) and `x_ix_jx_i⁻¹x_k⁻¹` (negative); the cover relators use
//! the same labels, so both abelianize to the rows of the Alexander matrix.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::polymat::determinant;
use crate::algebra::snf::solution_count_mod;
use crate::algebra::{AbelianGroupInvariants, IntMatrix, Laurent};
use crate::coloring::t_power_block;
use crate::diagram::{Diagram, Orientation};
use crate::error::{KnotError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PresentationKind {
    Wirtinger,
    Core,
    KFold(usize),
}

impl fmt::Display for PresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationKind::Wirtinger => f.write_str("wirtinger"),
            PresentationKind::Core => f.write_str("core"),
            PresentationKind::KFold(k) => write!(f, "kfold({k})"),
        }
    }
}

/// Generators plus relator words. A word entry `±g` is generator `g − 1`
/// (1-based) to the power `±1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i64>>,
    pub kind: PresentationKind,
}

impl GroupPresentation {
    /// Generators that occur in no relator.
    pub fn free_generators(&self) -> Vec<usize> {
        let mut used = vec![false; self.generators.len()];
        for r in &self.relators {
            for &g in r {
                used[g.unsigned_abs() as usize - 1] = true;
            }
        }
        (0..used.len()).filter(|&g| !used[g]).collect()
    }

    /// Exponent-sum matrix, relators × generators.
    pub fn exponent_sums(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators.len());
        for (r, w) in self.relators.iter().enumerate() {
            for &g in w {
                m.add_to(r, g.unsigned_abs() as usize - 1, g.signum());
            }
        }
        m
    }

    /// `gen a b c` then one `rel a -b ...` line per relator.
    pub fn export(&self) -> String {
        let mut out = format!("gen {}\n", self.generators.join(" "));
        for r in &self.relators {
            let letters: Vec<String> = r
                .iter()
                .map(|&g| {
                    let name = &self.generators[g.unsigned_abs() as usize - 1];
                    if g < 0 {
                        format!("-{name}")
                    } else {
                        name.clone()
                    }
                })
                .collect();
            out.push_str(&format!("rel {}\n", letters.join(" ")));
        }
        out
    }

    fn push(&mut self, word: Vec<i64>) {
        let w = reduce(word);
        if !w.is_empty() {
            self.relators.push(w);
        }
    }
}

/// Cancels adjacent inverse pairs.
fn reduce(word: Vec<i64>) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(word.len());
    for g in word {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

fn inverse(word: &[i64]) -> Vec<i64> {
    word.iter().rev().map(|g| -g).collect()
}

/// Per crossing: (sign, over arc, incoming under arc, outgoing under arc).
pub(crate) fn labelled_crossings(
    d: &Diagram,
    o: &Orientation,
) -> Result<(Vec<(i64, usize, usize, usize)>, usize)> {
    let t = d.topology()?;
    let arcs = d.arc_decomposition()?;
    let rows = (0..d.crossing_count())
        .map(|c| {
            let (pin, pout) = t.under_ports(c, o);
            (
                t.sign(c, o),
                arcs.arc(d.crossings()[c].slots[1]),
                arcs.arc(t.edge_of_port[pin]),
                arcs.arc(t.edge_of_port[pout]),
            )
        })
        .collect();
    Ok((rows, arcs.arc_count))
}

fn wirtinger_word(sign: i64, i: i64, j: i64, k: i64) -> Vec<i64> {
    if sign > 0 {
        vec![-i, -j, i, k]
    } else {
        vec![i, j, -i, -k]
    }
}

fn named(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// The Wirtinger presentation: one generator per arc, one relator per crossing.
pub fn wirtinger(d: &Diagram, o: &Orientation) -> Result<GroupPresentation> {
    let (rows, arcs) = labelled_crossings(d, o)?;
    let mut p = GroupPresentation {
        generators: named("x", arcs),
        relators: Vec::new(),
        kind: PresentationKind::Wirtinger,
    };
    for (s, i, j, k) in rows {
        p.push(wirtinger_word(s, i as i64 + 1, j as i64 + 1, k as i64 + 1));
    }
    Ok(p)
}

/// The core group: relator `y_i y_j⁻¹ y_i y_k⁻¹` per crossing; no orientation.
pub fn core_group(d: &Diagram) -> Result<GroupPresentation> {
    let (rows, arcs) = labelled_crossings(d, &Orientation::default())?;
    let mut p = GroupPresentation {
        generators: named("y", arcs),
        relators: Vec::new(),
        kind: PresentationKind::Core,
    };
    for (_, i, j, k) in rows {
        let (i, j, k) = (i as i64 + 1, j as i64 + 1, k as i64 + 1);
        p.push(vec![i, -j, i, -k]);
    }
    Ok(p)
}

/// Presentation of `Π^{(k)} ∗ Z^{∗(k−1)}`: generators `τ^j(y_i)` for
/// `0 ≤ j < k−1`, relators `τ^j(r_s)` with
/// `τ^{k−1}(y) = (y τ(y) … τ^{k−2}(y))⁻¹` substituted.
pub fn kfold_presentation(d: &Diagram, o: &Orientation, k: usize) -> Result<GroupPresentation> {
    if k < 2 {
        return Err(KnotError::InvalidArgument(format!("k must be >= 2, got {k}")));
    }
    let (rows, arcs) = labelled_crossings(d, o)?;
    let dim = k - 1;
    let mut generators = Vec::with_capacity(arcs * dim);
    for a in 1..=arcs {
        for j in 0..dim {
            generators.push(format!("y{a}_{j}"));
        }
    }
    // word for τ^j(y_arc), 0 ≤ j ≤ k−1
    let tau = |arc: usize, j: usize| -> Vec<i64> {
        let g = |jj: usize| (arc * dim + jj) as i64 + 1;
        if j < dim {
            vec![g(j)]
        } else {
            inverse(&(0..dim).map(g).collect::<Vec<_>>())
        }
    };
    let mut p = GroupPresentation {
        generators,
        relators: Vec::new(),
        kind: PresentationKind::KFold(k),
    };
    for (s, i, jj, kk) in rows {
        // r = y_i τ(y_b) τ(y_i)⁻¹ y_a⁻¹ with (a, b) = (j, k) or (k, j)
        let (a, b) = if s > 0 { (jj, kk) } else { (kk, jj) };
        for j in 0..dim {
            let mut w = tau(i, j);
            w.extend(tau(b, j + 1));
            w.extend(inverse(&tau(i, j + 1)));
            w.extend(inverse(&tau(a, j)));
            p.push(w);
        }
    }
    Ok(p)
}

/// Smith normal form of the exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> AbelianGroupInvariants {
    AbelianGroupInvariants::from_relations(&p.exponent_sums())
}

/// An element `x ↦ a·x + b` of the dihedral group of order `2n`, `a = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Dihedral {
    flip: bool,
    shift: u64,
}

impl Dihedral {
    fn identity() -> Self {
        Dihedral { flip: false, shift: 0 }
    }

    /// The reflection `x ↦ 2c − x`.
    fn reflection(c: u64, n: u64) -> Self {
        Dihedral {
            flip: true,
            shift: (2 * c) % n,
        }
    }

    /// `self ∘ other`.
    fn compose(self, other: Self, n: u64) -> Self {
        let inner = if self.flip { n - other.shift % n } else { other.shift };
        Dihedral {
            flip: self.flip != other.flip,
            shift: (inner + self.shift) % n,
        }
    }

    fn inverse(self, n: u64) -> Self {
        if self.flip {
            self
        } else {
            Dihedral {
                flip: false,
                shift: (n - self.shift) % n,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DihedralOutcome {
    Pass,
    /// The first crossing whose Wirtinger relator is not the identity.
    Fail { crossing: usize },
}

fn relator_holds(word: &[i64], colors: &[u64], n: u64) -> bool {
    let mut acc = Dihedral::identity();
    for &g in word {
        let s = Dihedral::reflection(colors[g.unsigned_abs() as usize - 1], n);
        let s = if g < 0 { s.inverse(n) } else { s };
        acc = acc.compose(s, n);
    }
    acc == Dihedral::identity()
}

/// Sends each Wirtinger generator `x_a` to the reflection `s_{color(a)}` and
/// evaluates every crossing relator in the dihedral group of order `2n`.
pub fn dihedral_check(d: &Diagram, coloring: &[u64], n: u64) -> Result<DihedralOutcome> {
    if n < 2 {
        return Err(KnotError::InvalidArgument(format!("modulus must be >= 2, got {n}")));
    }
    let (rows, arcs) = labelled_crossings(d, &Orientation::default())?;
    if coloring.len() != arcs || coloring.iter().any(|&c| c >= n) {
        return Err(KnotError::InvalidArgument(format!(
            "coloring needs {arcs} colors in 0..{n}, got {:?}",
            coloring
        )));
    }
    for (c, &(s, i, j, k)) in rows.iter().enumerate() {
        let w = wirtinger_word(s, i as i64 + 1, j as i64 + 1, k as i64 + 1);
        if !relator_holds(&w, coloring, n) {
            return Ok(DihedralOutcome::Fail { crossing: c });
        }
    }
    Ok(DihedralOutcome::Pass)
}

/// Number of assignments arc → Z_n whose reflections satisfy every Wirtinger
/// relator, by depth-first search that tests a crossing once its arcs are set.
pub fn dihedral_count(d: &Diagram, n: u64) -> Result<BigInt> {
    if n < 2 {
        return Err(KnotError::InvalidArgument(format!("modulus must be >= 2, got {n}")));
    }
    let (rows, arcs) = labelled_crossings(d, &Orientation::default())?;
    let words: Vec<(Vec<i64>, usize)> = rows
        .iter()
        .map(|&(s, i, j, k)| {
            let w = wirtinger_word(s, i as i64 + 1, j as i64 + 1, k as i64 + 1);
            (w, i.max(j).max(k))
        })
        .collect();
    // crossings grouped by the last arc they need
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); arcs];
    for (c, (_, last)) in words.iter().enumerate() {
        closing[*last].push(c);
    }
    fn go(
        a: usize,
        colors: &mut Vec<u64>,
        n: u64,
        words: &[(Vec<i64>, usize)],
        closing: &[Vec<usize>],
    ) -> BigInt {
        if a == colors.len() {
            return BigInt::from(1);
        }
        let mut total = BigInt::from(0);
        for v in 0..n {
            colors[a] = v;
            if closing[a].iter().all(|&c| relator_holds(&words[c].0, colors, n)) {
                total += go(a + 1, colors, n, words, closing);
            }
        }
        total
    }
    Ok(go(0, &mut vec![0; arcs], n, &words, &closing))
}

/// Crossings × arcs matrix over `Z[t^{±1}]`, row
/// `(1 − t^ε) y_i + t^ε y_k − y_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderMatrix {
    pub rows: Vec<Vec<Laurent>>,
    pub arcs: usize,
}

impl AlexanderMatrix {
    /// Each row evaluated at `t = 1` sums to zero.
    pub fn rows_balanced(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().map(|p| p.eval_integer(1).unwrap_or(1)).sum::<i128>() == 0)
    }
}

pub fn alexander_matrix(d: &Diagram, o: &Orientation) -> Result<AlexanderMatrix> {
    let (rows, arcs) = labelled_crossings(d, o)?;
    let mut m = vec![vec![Laurent::zero(); arcs]; rows.len()];
    for (r, &(s, i, j, k)) in rows.iter().enumerate() {
        let te = Laurent::term(1, s as i32);
        m[r][i] += &(&Laurent::one() - &te);
        m[r][k] += &te;
        m[r][j] += &Laurent::constant(-1);
    }
    Ok(AlexanderMatrix { rows: m, arcs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderResult {
    pub matrix: AlexanderMatrix,
    /// Normalized; present for knots, or for links when asked for.
    pub polynomial: Option<Laurent>,
}

/// The Alexander matrix and, for knots, the polynomial: the determinant of
/// the minor without the first row and column, normalized.
pub fn alexander(d: &Diagram, o: &Orientation) -> Result<AlexanderResult> {
    alexander_with(d, o, false)
}

/// As [`alexander`]; `link_polynomial` also reports the (unit- and
/// minor-dependent) minor determinant for links.
pub fn alexander_with(d: &Diagram, o: &Orientation, link_polynomial: bool) -> Result<AlexanderResult> {
    let matrix = alexander_matrix(d, o)?;
    let polynomial = (d.component_count() == 1 || link_polynomial).then(|| {
        let minor: Vec<Vec<Laurent>> = matrix
            .rows
            .iter()
            .skip(1)
            .map(|r| r.iter().skip(1).cloned().collect())
            .collect();
        if minor.len() + 1 != matrix.arcs {
            // more arcs than crossings: free loops, the minor is singular
            return Laurent::zero();
        }
        normalize(&determinant(&minor))
    });
    Ok(AlexanderResult { matrix, polynomial })
}

/// Multiplies by `±t^j` so the lowest degree is 0 and the top coefficient
/// is positive.
pub fn normalize(p: &Laurent) -> Laurent {
    let (Some(lo), Some(hi)) = (p.min_half_exp(), p.max_half_exp()) else {
        return Laurent::zero();
    };
    let q = p.shift(-lo);
    if p.coeff(hi) < 0 {
        q.scale(-1)
    } else {
        q
    }
}

/// `t^2 - 3t + 1` style rendering, highest degree first.
pub fn polynomial_text(p: &Laurent) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(i32, i128)> = p.iter().collect();
    terms.reverse();
    let mut out = String::new();
    for (idx, (half, c)) in terms.into_iter().enumerate() {
        let e = half / 2;
        let mag = c.unsigned_abs();
        if idx == 0 {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        let var = match e {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{e}"),
        };
        if mag != 1 || var.is_empty() {
            out.push_str(&mag.to_string());
        }
        out.push_str(&var);
    }
    out
}

/// Solutions of the Alexander matrix over `Z_m[t]/(1 + t + … + t^{k−1})`,
/// each entry expanded into its `(k−1) × (k−1)` multiplication block.
pub fn alexander_mod_count(d: &Diagram, o: &Orientation, k: usize, m: u64) -> Result<BigInt> {
    if k < 2 || m < 2 {
        return Err(KnotError::InvalidArgument(format!("need k, m >= 2, got k={k}, m={m}")));
    }
    let a = alexander_matrix(d, o)?;
    let dim = k - 1;
    let mut big = IntMatrix::zeros(a.rows.len() * dim, a.arcs * dim);
    for (r, row) in a.rows.iter().enumerate() {
        for (c, p) in row.iter().enumerate() {
            for (half, coeff) in p.iter() {
                let block = t_power_block(k, (half / 2) as i64);
                for x in 0..dim {
                    for y in 0..dim {
                        big.add_to(r * dim + x, c * dim + y, coeff as i64 * block[x][y]);
                    }
                }
            }
        }
    }
    Ok(solution_count_mod(&big, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::builtin;

    fn fx(name: &str) -> Diagram {
        builtin(name).unwrap().diagram
    }

    #[test]
    fn small_presentations() {
        let o = Orientation::default();
        let u = wirtinger(&fx("unknot"), &o).unwrap();
        assert_eq!((u.generators.len(), u.relators.len()), (1, 0));
        assert_eq!(abelianization(&u).to_string(), "Z");
        let t = wirtinger(&fx("trefoil"), &o).unwrap();
        assert_eq!((t.generators.len(), t.relators.len()), (3, 3));
        assert_eq!(abelianization(&t).to_string(), "Z");
        assert_eq!(abelianization(&wirtinger(&fx("hopf_plus"), &o).unwrap()).to_string(), "Z^2");
        assert!(t.export().starts_with("gen x1 x2 x3\nrel "));
    }

    #[test]
    fn kfold_trefoil() {
        let o = Orientation::default();
        let d = fx("trefoil");
        assert_eq!(abelianization(&kfold_presentation(&d, &o, 2).unwrap()).to_string(), "Z + Z_3");
        assert_eq!(
            abelianization(&kfold_presentation(&d, &o, 3).unwrap()).to_string(),
            "Z^2 + Z_2 + Z_2"
        );
        let u = kfold_presentation(&fx("unknot"), &o, 4).unwrap();
        assert_eq!((u.generators.len(), u.relators.len()), (3, 0));
        assert!(kfold_presentation(&d, &o, 1).is_err());
    }

    #[test]
    fn alexander_values() {
        let o = Orientation::default();
        let p = |n: &str| polynomial_text(&alexander(&fx(n), &o).unwrap().polynomial.unwrap());
        assert_eq!(p("unknot"), "1");
        assert_eq!(p("trefoil"), "t^2 - t + 1");
        assert_eq!(p("figure8"), "t^2 - 3t + 1");
        assert_eq!(p("7_7"), "t^4 - 5t^3 + 9t^2 - 5t + 1");
        assert!(alexander(&fx("hopf_plus"), &o).unwrap().polynomial.is_none());
        assert!(alexander_matrix(&fx("borromean"), &o).unwrap().rows_balanced());
    }

    #[test]
    fn dihedral() {
        let d = fx("trefoil");
        let arcs = d.arc_decomposition().unwrap().arc_count;
        assert_eq!(arcs, 3);
        assert_eq!(dihedral_check(&d, &[0, 1, 2], 3).unwrap(), DihedralOutcome::Pass);
        assert_eq!(dihedral_check(&d, &[1, 1, 1], 3).unwrap(), DihedralOutcome::Pass);
        assert!(matches!(
            dihedral_check(&d, &[0, 0, 1], 3).unwrap(),
            DihedralOutcome::Fail { .. }
        ));
        assert!(dihedral_check(&d, &[0, 5, 1], 3).is_err());
        assert_eq!(dihedral_count(&d, 3).unwrap(), BigInt::from(9));
    }
}
