//! The verification suite: fixture expectations, exact identities and move
//! invariance, grouped by scope. Groups are independent and run in parallel;
//! each group is single-threaded.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::algebra::laurent::Laurent;
use crate::algebra::AbelianGroupInvariants;
use crate::codec::{emit, parse_any, Format};
use crate::coloring::{
    bounds, coloring_group, coloring_matrix, count_colorings, kfold_count, quadruple_law_check,
    signed_tri, MatrixVariant,
};
use crate::construct::{connected_sum, torus2};
use crate::diagram::{Diagram, Orientation};
use crate::error::{KnotError, Result};
use crate::fixtures::{all, builtin, key, FixtureEntry};
use crate::groups::{
    abelianization, alexander, alexander_mod_count, core_group, dihedral_check, dihedral_count,
    kfold_presentation, polynomial_text, wirtinger, DihedralOutcome,
};
use crate::moves::{
    apply_move, apply_reidemeister, apply_twist_move, parse_move_log, scramble, skein_family,
    window_sites, Arity, Reidemeister, TwistMove,
};
use crate::polynomials::{
    coherence_check, eval_at_zeta, f_at_one_minus_one, homflypt, jones_at_zeta, jones_polynomial,
    kauffman_bracket, q_polynomial, q_twist_closure, traczyk_parity, verify_identities, Limits,
};
use crate::statmech::{
    coloring_state_sum, model_property_checks, vertex_partition_function, MorseWord,
    MAX_STATE_ARCS, MAX_STATE_COLORS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scope {
    Fixtures,
    Codec,
    Coloring,
    Polynomials,
    Moves,
    Groups,
    Statmech,
}

impl Scope {
    pub const ALL: [Scope; 7] = [
        Scope::Fixtures,
        Scope::Codec,
        Scope::Coloring,
        Scope::Polynomials,
        Scope::Moves,
        Scope::Groups,
        Scope::Statmech,
    ];

    /// Parses `all` or a comma-separated list of scope names.
    pub fn parse_list(s: &str) -> Result<Vec<Scope>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                return Ok(Self::ALL.to_vec());
            }
            let sc: Scope = part.parse()?;
            if !out.contains(&sc) {
                out.push(sc);
            }
        }
        if out.is_empty() {
            return Err(KnotError::InvalidArgument("empty scope list".into()));
        }
        Ok(out)
    }
}

impl FromStr for Scope {
    type Err = KnotError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "fixtures" => Scope::Fixtures,
            "codec" => Scope::Codec,
            "coloring" => Scope::Coloring,
            "polynomials" => Scope::Polynomials,
            "moves" => Scope::Moves,
            "groups" => Scope::Groups,
            "statmech" => Scope::Statmech,
            _ => return Err(KnotError::InvalidArgument(format!("unknown scope {s:?}"))),
        })
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scope::Fixtures => "fixtures",
            Scope::Codec => "codec",
            Scope::Coloring => "coloring",
            Scope::Polynomials => "polynomials",
            Scope::Moves => "moves",
            Scope::Groups => "groups",
            Scope::Statmech => "statmech",
        };
        f.write_str(s)
    }
}

/// Library operations the suite exercises; `verify --scope all` covers all
/// of them.
pub const OPERATIONS: [&str; 39] = [
    "validate",
    "arc_decomposition",
    "component_data",
    "linking_number",
    "construct",
    "canonical_code",
    "parse_pd",
    "emit",
    "builtin",
    "apply_reidemeister",
    "scramble",
    "apply_twist_move",
    "skein_family",
    "coloring_matrix",
    "count_colorings",
    "signed_tri",
    "coloring_group",
    "kfold_count",
    "bounds",
    "quadruple_law_check",
    "kauffman_bracket",
    "jones_at_zeta",
    "traczyk_parity",
    "f_at_one_minus_one",
    "q_polynomial",
    "q_twist_closure",
    "homflypt",
    "verify_identities",
    "coloring_state_sum",
    "vertex_partition_function",
    "model_property_checks",
    "wirtinger",
    "core_group",
    "kfold_presentation",
    "abelianization",
    "dihedral_check",
    "alexander",
    "apply_move",
    "parse_move_log",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckGroup {
    pub scope: Scope,
    pub name: String,
    pub checks: Vec<Check>,
    pub operations: Vec<&'static str>,
}

impl CheckGroup {
    fn new(scope: Scope, name: &str, operations: &[&'static str]) -> Self {
        CheckGroup {
            scope,
            name: name.to_string(),
            checks: Vec::new(),
            operations: operations.to_vec(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records an equality; an error on either side is a failure.
    fn equal<T: PartialEq + fmt::Display>(&mut self, name: impl Into<String>, got: Result<T>, want: T) {
        match got {
            Ok(g) => {
                let ok = g == want;
                self.check(name, ok, if ok { g.to_string() } else { format!("got {g}, want {want}") })
            }
            Err(e) => self.check(name, false, format!("error: {e}")),
        }
    }

    fn holds(&mut self, name: impl Into<String>, r: Result<bool>) {
        match r {
            Ok(ok) => self.check(name, ok, ""),
            Err(e) => self.check(name, false, format!("error: {e}")),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub groups: Vec<CheckGroup>,
}

impl SuiteReport {
    pub fn failing_groups(&self) -> usize {
        self.groups.iter().filter(|g| !g.passed()).count()
    }

    pub fn check_count(&self) -> usize {
        self.groups.iter().map(|g| g.checks.len()).sum()
    }

    /// Number of failing groups, capped at 100.
    pub fn exit_code(&self) -> i32 {
        self.failing_groups().min(100) as i32
    }

    pub fn operations(&self) -> Vec<&'static str> {
        let mut ops: Vec<&'static str> = self.groups.iter().flat_map(|g| g.operations.clone()).collect();
        ops.sort_unstable();
        ops.dedup();
        ops
    }

    /// One line per group, plus one line per failing check.
    pub fn render(&self, verbose: bool) -> String {
        let mut out = String::new();
        for g in &self.groups {
            let failed = g.checks.iter().filter(|c| !c.passed).count();
            out.push_str(&format!(
                "{} {}/{}: {}/{} checks passed\n",
                if g.passed() { "PASS" } else { "FAIL" },
                g.scope,
                g.name,
                g.checks.len() - failed,
                g.checks.len()
            ));
            for c in &g.checks {
                if verbose || !c.passed {
                    out.push_str(&format!(
                        "  {} {}{}\n",
                        if c.passed { "ok  " } else { "FAIL" },
                        c.name,
                        if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) }
                    ));
                }
            }
        }
        out.push_str(&format!(
            "{} groups, {} checks, {} failing groups\n",
            self.groups.len(),
            self.check_count(),
            self.failing_groups()
        ));
        out
    }
}

/// Runs the groups of the given scopes; `seeds` drive the move-invariance
/// scrambles. Output order is fixed regardless of scheduling.
pub fn run_suite(scopes: &[Scope], seeds: &[u64]) -> SuiteReport {
    let mut jobs: Vec<(Scope, fn(&[u64]) -> Vec<CheckGroup>)> = Vec::new();
    let table: [(Scope, fn(&[u64]) -> Vec<CheckGroup>); 7] = [
        (Scope::Fixtures, fixture_groups),
        (Scope::Codec, codec_groups),
        (Scope::Coloring, coloring_groups),
        (Scope::Polynomials, polynomial_groups),
        (Scope::Moves, move_groups),
        (Scope::Groups, group_groups),
        (Scope::Statmech, statmech_groups),
    ];
    for (s, f) in table {
        if scopes.contains(&s) {
            jobs.push((s, f));
        }
    }
    let results: Vec<Vec<CheckGroup>> = std::thread::scope(|sc| {
        let handles: Vec<_> = jobs.iter().map(|&(_, f)| sc.spawn(move || f(seeds))).collect();
        handles
            .into_iter()
            .zip(&jobs)
            .map(|(h, &(s, _))| {
                h.join().unwrap_or_else(|_| {
                    let mut g = CheckGroup::new(s, "panic", &[]);
                    g.check("group ran to completion", false, "a check panicked");
                    vec![g]
                })
            })
            .collect()
    });
    SuiteReport {
        groups: results.into_iter().flatten().collect(),
    }
}

/// Computes the invariant named by a fixture key, rendered as in the tables.
pub fn compute_key(d: &Diagram, k: &str, limits: &Limits) -> Result<String> {
    let o = Orientation::default();
    Ok(match k {
        key::CROSSINGS => d.crossing_count().to_string(),
        key::COMPONENTS => d.component_count().to_string(),
        key::TRI => count_colorings(d, 3)?.to_string(),
        key::COL5 => count_colorings(d, 5)?.to_string(),
        key::DET => coloring_group(d)?.determinant.to_string(),
        key::COLORING_GROUP => coloring_group(d)?.group.to_string(),
        key::WRITHE => d.writhe(&o)?.to_string(),
        key::LK => d.linking_number(&o)?.to_string(),
        key::JONES_ZETA => jones_at_zeta(d, &o, limits)?.value.to_string(),
        key::JONES_ZETA_NORM2 => {
            let v = eval_at_zeta(&jones_polynomial(d, &o, limits)?);
            v.norm_squared()
                .ok_or_else(|| KnotError::CheckFailed(format!("|{v}|² is not an integer")))?
                .to_string()
        }
        key::ALEXANDER => {
            let p = alexander(d, &o)?
                .polynomial
                .ok_or_else(|| KnotError::InvalidArgument("Alexander polynomial needs a knot".into()))?;
            polynomial_text(&p)
        }
        key::WIRTINGER_ABELIAN => abelianization(&wirtinger(d, &o)?).to_string(),
        key::UNKNOTTING_LOWER_3 => bounds(d, 3)?
            .unknotting_lower
            .ok_or_else(|| KnotError::InvalidArgument("unknotting bound needs a knot".into()))?
            .to_string(),
        other => return Err(KnotError::InvalidArgument(format!("unknown invariant {other:?}"))),
    })
}

fn fixtures_up_to(n: usize) -> Vec<FixtureEntry> {
    all().into_iter().filter(|f| f.diagram.crossing_count() <= n).collect()
}

fn fixture_groups(_seeds: &[u64]) -> Vec<CheckGroup> {
    let limits = Limits::default();
    let mut g = CheckGroup::new(
        Scope::Fixtures,
        "expected invariants",
        &["builtin", "validate", "arc_decomposition", "component_data", "linking_number", "construct"],
    );
    for f in all() {
        g.check(format!("{} validates", f.name), f.diagram.validate().is_ok(), "");
        for (k, want) in &f.expected {
            g.equal(format!("{} {k}", f.name), compute_key(&f.diagram, k, &limits), want.clone());
        }
        // writhe = self writhes + twice the total linking number
        g.holds(
            format!("{} writhe splits into self and linking parts", f.name),
            (|| {
                let o = Orientation::default();
                let cd = f.diagram.component_data(&o)?;
                let lk = f.diagram.linking_number(&o)?;
                Ok(cd.writhe == cd.self_writhe.iter().sum::<i64>() + lk.twice)
            })(),
        );
        g.holds(
            format!("{} arcs cover every edge", f.name),
            f.diagram.arc_decomposition().map(|a| {
                a.arc_of_edge.len() == f.diagram.edge_count()
                    && a.arc_count >= f.diagram.crossing_count().min(1)
            }),
        );
    }
    g.holds(
        "figure8 # figure8 has col_5 = 125",
        (|| {
            let f8 = builtin("figure8")?.diagram;
            Ok(count_colorings(&connected_sum(&f8, 1, &f8, 1)?, 5)? == BigInt::from(125))
        })(),
    );
    vec![g]
}

fn codec_groups(_seeds: &[u64]) -> Vec<CheckGroup> {
    let mut g = CheckGroup::new(Scope::Codec, "round trips", &["parse_pd", "emit", "canonical_code"]);
    for f in all() {
        for fmt in [Format::Pd, Format::Structured] {
            g.holds(
                format!("{} {fmt:?} round trip", f.name),
                (|| {
                    let text = emit(&f.diagram, fmt)?;
                    let back = parse_any(&text)?;
                    Ok(back.canonical_code()? == f.diagram.canonical_code()? && emit(&back, fmt)? == text)
                })(),
            );
        }
    }
    g.holds(
        "canonical code separates the trefoil from its mirror",
        (|| Ok(builtin("trefoil")?.diagram.canonical_code()? != builtin("trefoil_mirror")?.diagram.canonical_code()?))(),
    );
    g.check(
        "unclosed bracket is a syntax error at its offset",
        matches!(crate::codec::parse_pd("X[1,4,2,5] X[3,6,4"), Err(KnotError::Syntax { offset: 12, .. })),
        "",
    );
    vec![g]
}

fn coloring_groups(_seeds: &[u64]) -> Vec<CheckGroup> {
    let mut laws = CheckGroup::new(Scope::Coloring, "skein-family laws", &["quadruple_law_check", "skein_family"]);
    for f in fixtures_up_to(10) {
        for c in 0..f.diagram.crossing_count() {
            laws.holds(
                format!("{} crossing {c}: tri law", f.name),
                quadruple_law_check(&f.diagram, c, 3, Arity::Four).map(|r| r.holds),
            );
            laws.holds(
                format!("{} crossing {c}: col_5 law on the 6-member family", f.name),
                quadruple_law_check(&f.diagram, c, 5, Arity::NAry(5)).map(|r| r.holds),
            );
        }
    }
    laws.holds(
        "skein families have 4 and n + 1 members",
        (|| {
            let d = builtin("figure8")?.diagram;
            Ok(skein_family(&d, 0, Arity::Four)?.members.len() == 4
                && skein_family(&d, 0, Arity::NAry(5))?.members.len() == 6)
        })(),
    );
    let mut counts = CheckGroup::new(
        Scope::Coloring,
        "counts and bounds",
        &["coloring_matrix", "count_colorings", "signed_tri", "coloring_group", "kfold_count", "bounds"],
    );
    for f in all() {
        let d = &f.diagram;
        counts.holds(
            format!("{} col_n = |H ⊗ Z_n| for n = 3, 5, 7", f.name),
            (|| {
                let h = coloring_group(d)?.group;
                for n in [3u64, 5, 7] {
                    if count_colorings(d, n)? != h.tensor_order(n) {
                        return Ok(false);
                    }
                }
                Ok(true)
            })(),
        );
        counts.holds(
            format!("{} incidence matrix is the transpose", f.name),
            (|| {
                let a = coloring_matrix(d, MatrixVariant::Relations)?.matrix;
                Ok(coloring_matrix(d, MatrixVariant::Incidence)?.matrix == a.transpose())
            })(),
        );
        counts.holds(
            format!("{} signed tri is ±tri", f.name),
            (|| Ok(signed_tri(d)?.magnitude() == count_colorings(d, 3)?.magnitude()))(),
        );
        counts.holds(
            format!("{} kfold_count(2, m) = col_m", f.name),
            (|| Ok(kfold_count(d, 2, 5)? == count_colorings(d, 5)?))(),
        );
    }
    counts.equal(
        "square_knot unknotting lower bound (n = 3)",
        (|| Ok(bounds(&builtin("square_knot")?.diagram, 3)?.unknotting_lower.unwrap_or(-1)))(),
        2,
    );
    counts.equal(
        "figure8 # figure8 unknotting lower bound (n = 5)",
        (|| {
            let f8 = builtin("figure8")?.diagram;
            Ok(bounds(&connected_sum(&f8, 1, &f8, 1)?, 5)?.unknotting_lower.unwrap_or(-1))
        })(),
        2,
    );
    counts.holds(
        "figure8 is compatible with 2 bridges (n = 5)",
        (|| Ok(bounds(&builtin("figure8")?.diagram, 5)?.bridge_check(2)))(),
    );
    vec![laws, counts]
}

/// `x·Q − (2 − x) = 2(x − 1)p²` for 17 half-twists, and the same at
/// `x = q + q⁻¹` against `2(q − 1 + q⁻¹) q⁻¹⁶ ((q¹⁷ − 1)/(q − 1))²`.
fn seventeen_checks(g: &mut CheckGroup) {
    let x = Laurent::term(1, 1);
    let q = match q_twist_closure(17) {
        Ok(q) => q,
        Err(e) => return g.check("Q of 17 half-twists", false, e.to_string()),
    };
    let p = Laurent::from_terms([(0, 1), (1, -4), (2, -10), (3, 10), (4, 15), (5, -6), (6, -7), (7, 1), (8, 1)]);
    let lhs = &(&x * &q) - &Laurent::from_terms([(0, 2), (1, -1)]);
    let rhs = &Laurent::from_terms([(1, 2), (0, -2)]) * &(&p * &p);
    g.check("x·Q_{17} − (2 − x) = 2(x − 1)·p(x)²", lhs == rhs, "");
    let plus = &(&x * &q) + &Laurent::from_terms([(0, 2), (1, -1)]);
    let half: Vec<(i32, i128)> = plus.iter().map(|(h, c)| (h / 2, c / 2)).collect();
    let odd = plus.iter().any(|(_, c)| c % 2 != 0);
    let deg = half.iter().map(|&(e, _)| e).max().unwrap_or(0);
    g.check("(x/2)(Q_{17} + (2 − x)/x) is integral of degree 17", !odd && deg == 17, format!("degree {deg}"));
    // substitute x = q + q⁻¹ into x·Q − (2 − x)
    let xq = Laurent::from_terms([(1, 1), (-1, 1)]);
    let mut sub = Laurent::zero();
    for (h, c) in lhs.iter() {
        sub += &xq.pow((h / 2) as u32).scale(c);
    }
    let geometric = Laurent::from_terms((0..17).map(|e| (e, 1)));
    let want = &Laurent::from_terms([(1, 2), (0, -2), (-1, 2)]).shift(-32) * &(&geometric * &geometric);
    g.check("at x = q + q⁻¹ it is 2(q − 1 + q⁻¹)q⁻¹⁶((q¹⁷ − 1)/(q − 1))²", sub == want, "");
}

fn polynomial_groups(_seeds: &[u64]) -> Vec<CheckGroup> {
    let limits = Limits::default();
    let o = Orientation::default();
    let mut ids = CheckGroup::new(
        Scope::Polynomials,
        "tricoloring identities",
        &["verify_identities", "f_at_one_minus_one", "kauffman_bracket", "jones_at_zeta"],
    );
    for f in fixtures_up_to(10) {
        match verify_identities(&f.diagram, &limits) {
            Ok(r) => {
                for (name, ok) in &r.checks {
                    ids.check(format!("{}: {name}", f.name), *ok, format!("sign rule: {}", r.sign_rule));
                }
            }
            Err(e) => ids.check(format!("{}: identities", f.name), false, e.to_string()),
        }
    }
    ids.equal(
        "bracket of the positive trefoil",
        kauffman_bracket(&torus2(3).unwrap(), &limits).map(|b| b.to_text("A")),
        Laurent::from_terms([(5, -1), (-3, -1), (-7, 1)]).to_text("A"),
    );

    let mut zeta = CheckGroup::new(Scope::Polynomials, "Jones at ζ", &["jones_at_zeta", "traczyk_parity"]);
    zeta.equal(
        "square_knot: V(ζ), ε",
        (|| {
            let j = jones_at_zeta(&builtin("square_knot")?.diagram, &o, &limits)?;
            Ok(format!("{} {}", j.value, j.epsilon))
        })(),
        "3 -1".to_string(),
    );
    zeta.equal(
        "7_7: V(ζ), ε",
        (|| {
            let j = jones_at_zeta(&builtin("7_7")?.diagram, &o, &limits)?;
            Ok(format!("{} {}", j.value, j.epsilon))
        })(),
        "-i√3 -1".to_string(),
    );
    for f in fixtures_up_to(10) {
        if f.diagram.component_count() != 1 {
            continue;
        }
        for c in 0..f.diagram.crossing_count() {
            zeta.holds(
                format!("{} crossing {c}: ε flips iff r drops", f.name),
                coherence_check(&f.diagram, c, &limits).map(|r| r.holds),
            );
        }
        zeta.holds(
            format!("{} parity matches ε", f.name),
            traczyk_parity(&f.diagram, &limits).map(|p| (p.epsilon == 1) == (p.negative_crossing_parity == 0)),
        );
    }

    let mut q = CheckGroup::new(
        Scope::Polynomials,
        "Q and HOMFLYPT",
        &["q_polynomial", "q_twist_closure", "homflypt"],
    );
    seventeen_checks(&mut q);
    for n in 0..=7u32 {
        q.holds(
            format!("Q(torus2({n})) = closed form"),
            (|| Ok(q_polynomial(&torus2(n as i64)?, &limits)? == q_twist_closure(n)?))(),
        );
    }
    for f in fixtures_up_to(8) {
        q.holds(
            format!("{}: Q(x = −1) = f(1, −1)", f.name),
            (|| {
                let qq = q_polynomial(&f.diagram, &limits)?;
                Ok(qq.eval_integer(-1) == Some(f_at_one_minus_one(&f.diagram, &limits)?))
            })(),
        );
        q.holds(
            format!("{}: P(a = t⁻¹, z = t^½ − t^−½) = V", f.name),
            (|| {
                let p = homflypt(&f.diagram, &o, &limits)?;
                let v = jones_polynomial(&f.diagram, &o, &limits)?;
                let z = Laurent::from_terms([]) + Laurent::monomial(1, 1) - Laurent::monomial(1, -1);
                let s = -p.min_z_exp().unwrap_or(0).min(0);
                let lhs = p
                    .shift(0, s)
                    .specialize(-2, &z)
                    .ok_or_else(|| KnotError::CheckFailed("specialization".into()))?;
                Ok(lhs == &v * &z.pow(s as u32))
            })(),
        );
    }
    vec![ids, zeta, q]
}

fn move_groups(seeds: &[u64]) -> Vec<CheckGroup> {
    let limits = Limits::default();
    let o = Orientation::default();
    let mut inv = CheckGroup::new(Scope::Moves, "Reidemeister invariance", &["scramble", "apply_reidemeister"]);
    let snapshot = |d: &Diagram| -> Result<Vec<String>> {
        Ok(vec![
            count_colorings(d, 3)?.to_string(),
            count_colorings(d, 5)?.to_string(),
            coloring_group(d)?.group.to_string(),
            d.linking_number(&o)?.to_string(),
            eval_at_zeta(&jones_polynomial(d, &o, &limits)?).to_string(),
            q_polynomial(d, &limits)?.to_string(),
            coloring_group(d)?.determinant.to_string(),
        ])
    };
    for name in ["trefoil", "figure8", "hopf_plus"] {
        let d = builtin(name).unwrap().diagram;
        let before = snapshot(&d);
        for &seed in seeds {
            inv.holds(
                format!("{name} seed {seed}: tri, col_5, H, lk, V(ζ), Q, det"),
                (|| {
                    let s = scramble(&d, seed, 100, d.crossing_count() + 8)?;
                    Ok(snapshot(&s)? == *before.as_ref().map_err(Clone::clone)?)
                })(),
            );
        }
    }
    inv.holds(
        "curl then uncurl on the trefoil",
        (|| {
            let d = builtin("trefoil")?.diagram;
            let c = apply_reidemeister(&d, &Reidemeister::R1Add { edge: 1, positive: true, left: true })?;
            Ok(c.crossing_count() == 4 && count_colorings(&c, 3)? == count_colorings(&d, 3)?)
        })(),
    );

    let mut tw = CheckGroup::new(
        Scope::Moves,
        "twist-move invariance",
        &["apply_twist_move", "apply_move", "parse_move_log"],
    );
    for name in ["trefoil", "figure8", "7_7", "torus2_n(5)"] {
        let d = builtin(name).unwrap().diagram;
        let sites = window_sites(&d).unwrap_or_default();
        for (a, b) in sites.iter().copied().step_by(5) {
            for n in [3u64, 5, 7] {
                tw.holds(
                    format!("{name} ({a},{b}) {n}-move keeps col_{n}"),
                    (|| {
                        let m = apply_twist_move(&d, &[a, b], TwistMove::NMove(n as i64))?;
                        Ok(count_colorings(&m, n)? == count_colorings(&d, n)?)
                    })(),
                );
            }
        }
        for (p, q) in [(2u32, 2u32), (2, 3), (3, 2), (4, 4)] {
            let n = (p * q + 1) as u64;
            for &(a, b) in &sites {
                if let Ok(m) = apply_twist_move(&d, &[a, b], TwistMove::PQ(p, q)) {
                    tw.holds(
                        format!("{name} ({a},{b}) [{p},{q}] keeps col_{n}"),
                        (|| Ok(count_colorings(&m, n)? == count_colorings(&d, n)?))(),
                    );
                }
            }
        }
    }
    tw.holds(
        "t⁴ on three strands of the borromean rings keeps col_3 and col_5",
        (|| {
            let d = builtin("borromean")?.diagram;
            let es: Vec<u32> = (1..=d.edge_count() as u32).collect();
            let mut applied = 0;
            for &a in &es {
                for &b in &es {
                    for &c in &es {
                        let Ok(m) = apply_twist_move(&d, &[a, b, c], TwistMove::HalfTwistPower { k: 3, m: 4 }) else {
                            continue;
                        };
                        applied += 1;
                        for n in [3, 5] {
                            if count_colorings(&m, n)? != count_colorings(&d, n)? {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
            Ok(applied > 0)
        })(),
    );
    tw.holds(
        "move log: twist_chain(1) + nmove 2 = twist_chain(3)",
        (|| {
            let mut d = builtin("twist_chain(1)")?.diagram;
            for (_, mv) in parse_move_log("nmove 2 e1 e2\n")? {
                d = apply_move(&d, &mv)?;
            }
            Ok(d.canonical_code()? == builtin("twist_chain(3)")?.diagram.canonical_code()?)
        })(),
    );
    vec![inv, tw]
}

fn group_groups(_seeds: &[u64]) -> Vec<CheckGroup> {
    let o = Orientation::default();
    let mut g = CheckGroup::new(
        Scope::Groups,
        "presentations",
        &["wirtinger", "core_group", "kfold_presentation", "abelianization", "dihedral_check", "alexander"],
    );
    for f in all() {
        let d = &f.diagram;
        g.equal(
            format!("{}: wirtinger abelianizes to Z^com", f.name),
            wirtinger(d, &o).map(|p| abelianization(&p)),
            AbelianGroupInvariants::free(d.component_count()),
        );
        g.holds(
            format!("{}: core group abelianizes to H", f.name),
            (|| Ok(abelianization(&core_group(d)?) == coloring_group(d)?.group))(),
        );
        g.holds(
            format!("{}: double-cover presentation abelianizes to H₁(M²) ⊕ Z", f.name),
            (|| {
                let h = coloring_group(d)?.group;
                let a = abelianization(&kfold_presentation(d, &o, 2)?);
                Ok(h.free_rank >= 1 && a == h)
            })(),
        );
        if d.crossing_count() <= 9 {
            g.holds(
                format!("{}: dihedral assignments = col_n, n = 3, 5, 7", f.name),
                (|| {
                    for n in [3u64, 5, 7] {
                        if dihedral_count(d, n)? != count_colorings(d, n)? {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                })(),
            );
        }
        if d.crossing_count() <= 7 {
            g.holds(
                format!("{}: k-fold counts by both routes, k = 2, 3; m = 2, 3", f.name),
                (|| {
                    for k in [2usize, 3] {
                        for m in [2u64, 3] {
                            if kfold_count(d, k, m)? != alexander_mod_count(d, &o, k, m)? {
                                return Ok(false);
                            }
                        }
                    }
                    Ok(true)
                })(),
            );
        }
        if d.component_count() == 1 {
            g.holds(
                format!("{}: |Δ(−1)| = det", f.name),
                (|| {
                    let p = alexander(d, &o)?.polynomial.unwrap_or_default();
                    Ok(p.eval_integer(-1).map(|v| BigInt::from(v.abs())) == Some(coloring_group(d)?.determinant))
                })(),
            );
        }
    }
    g.equal(
        "trefoil: k = 3 presentation abelianizes to Z² ⊕ Z₂ ⊕ Z₂",
        (|| Ok(abelianization(&kfold_presentation(&builtin("trefoil")?.diagram, &o, 3)?).to_string()))(),
        "Z^2 + Z_2 + Z_2".to_string(),
    );
    g.holds(
        "trefoil: a non-coloring fails the dihedral check",
        (|| {
            let d = builtin("trefoil")?.diagram;
            Ok(dihedral_check(&d, &[0, 1, 2], 3)? == DihedralOutcome::Pass
                && matches!(dihedral_check(&d, &[0, 0, 1], 3)?, DihedralOutcome::Fail { .. }))
        })(),
    );
    vec![g]
}

fn statmech_groups(_seeds: &[u64]) -> Vec<CheckGroup> {
    let mut model = CheckGroup::new(
        Scope::Statmech,
        "vertex model",
        &["model_property_checks", "vertex_partition_function"],
    );
    for k in [2usize, 3] {
        match model_property_checks(k) {
            Ok(r) => {
                for (name, ok) in &r.checks {
                    model.check(format!("k = {k}: {name}"), *ok, "");
                }
            }
            Err(e) => model.check(format!("k = {k}: model checks"), false, e.to_string()),
        }
        model.holds(
            format!("k = {k}: Z(unknot) = (q^k − q^−k)/(q − q⁻¹)"),
            (|| {
                let z = vertex_partition_function(&MorseWord::unknot(), k)?;
                let num = &Laurent::term(1, k as i32) - &Laurent::term(1, -(k as i32));
                let den = &Laurent::term(1, 1) - &Laurent::term(1, -1);
                Ok(&z * &den == num)
            })(),
        );
    }
    let mut states = CheckGroup::new(Scope::Statmech, "coloring state sums", &["coloring_state_sum"]);
    for f in all() {
        let arcs = f.diagram.arc_decomposition().map(|a| a.arc_count).unwrap_or(usize::MAX);
        if arcs > MAX_STATE_ARCS {
            continue;
        }
        for n in 2..=MAX_STATE_COLORS as u64 {
            states.holds(
                format!("{} n = {n}: Z_D(n) = col_n", f.name),
                (|| Ok(coloring_state_sum(&f.diagram, n)? == count_colorings(&f.diagram, n)?))(),
            );
        }
    }
    vec![model, states]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scopes_parse() {
        assert_eq!(Scope::parse_list("all").unwrap().len(), 7);
        assert_eq!(
            Scope::parse_list("coloring,groups").unwrap(),
            vec![Scope::Coloring, Scope::Groups]
        );
        assert!(Scope::parse_list("colouring").is_err());
    }
}

