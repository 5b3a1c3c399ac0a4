//! Mechanical replay of the commutant theorem for `T_{z²+z̄²}`.
//!
//! Each case re-derives its constraint system from the operator engine's
//! band equations and computes the verdict from that system; the article's
//! printed intermediate constants are never load-bearing. They are instead
//! collected in a cross-check table ([`cross_check_constants`]) where each
//! printed expression is compared against the quadrature oracle, so a
//! misprint shows up as a flagged row rather than a wrong verdict.
//!
//! All reports are deterministic: the same inputs produce byte-identical
//! text regardless of thread count or run order.

use num_complex::Complex64;
use num_rational::Rational64;

use crate::commutant::{self, Ansatz, AnsatzElement, CommutantProblem};
use crate::error::{Error, Result};
use crate::mellin::{mellin_eval, mellin_quadrature, MellinPoint};
use crate::operator::{commutator_column, PolarSymbol};
use crate::radial::{
    convolve_monomial, convolve_numeric, l1_membership, reduce_geometric, GeometricRatioSpec,
    RadialFunction, RadialTerm, TermKind, L1_EXPONENT_THRESHOLD,
};
use crate::scalar::{Scalar, LN2};

// ---------------------------------------------------------------------------
// Report plumbing
// ---------------------------------------------------------------------------

/// Outcome of one replayed proof step.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// Every free coefficient in the step is forced to vanish.
    ForcedZero,
    /// A nontrivial family survives; the string describes it.
    Family(String),
    /// An identity was replayed; there was nothing to eliminate.
    Verified,
    /// The derived system did not decide the step.
    Inconclusive(String),
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::ForcedZero => write!(f, "forced_zero"),
            Verdict::Family(s) => write!(f, "family: {s}"),
            Verdict::Verified => write!(f, "verified"),
            Verdict::Inconclusive(s) => write!(f, "inconclusive: {s}"),
        }
    }
}

/// One row of the constants cross-check table.
#[derive(Clone, Debug)]
pub struct ConstantRow {
    pub location: String,
    pub paper_expr: String,
    pub paper_value: f64,
    pub oracle_value: f64,
    pub delta: f64,
    pub flag: bool,
}

impl ConstantRow {
    fn new(location: &str, paper_expr: &str, paper_value: f64, oracle_value: f64) -> Self {
        let delta = (paper_value - oracle_value).abs();
        ConstantRow {
            location: location.to_string(),
            paper_expr: paper_expr.to_string(),
            paper_value,
            oracle_value,
            delta,
            flag: delta > 1e-8,
        }
    }
}

/// Render a table as CSV with a header line.
pub fn constants_csv(rows: &[ConstantRow]) -> String {
    let mut out = String::from("location,paper_expr,paper_value,oracle_value,delta,flag\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.location, r.paper_expr, r.paper_value, r.oracle_value, r.delta, r.flag
        ));
    }
    out
}

/// Report for one replayed case.
#[derive(Clone, Debug)]
pub struct CaseReport {
    pub id: String,
    /// Derivation trace: one key-value line per derived fact.
    pub lines: Vec<String>,
    pub rows: Vec<ConstantRow>,
    pub verdict: Verdict,
}

impl CaseReport {
    fn new(id: &str) -> Self {
        CaseReport {
            id: id.to_string(),
            lines: Vec::new(),
            rows: Vec::new(),
            verdict: Verdict::Verified,
        }
    }

    /// Structured key-value text, stable across runs.
    pub fn render(&self) -> String {
        let mut out = format!("case={}\n", self.id);
        for l in &self.lines {
            out.push_str("  ");
            out.push_str(l);
            out.push('\n');
        }
        for r in &self.rows {
            out.push_str(&format!(
                "  constant location={} paper={} oracle={} delta={} flag={}\n",
                r.location, r.paper_value, r.oracle_value, r.delta, r.flag
            ));
        }
        out.push_str(&format!("verdict={}\n", self.verdict));
        out
    }
}

// ---------------------------------------------------------------------------
// The distinguished radial function f_*
// ---------------------------------------------------------------------------

/// `f_*(r) = −4c·r²(1−r^{2N})/(1−r⁴)`, the particular solution of the
/// degree-shift difference equation for odd `N`.
#[derive(Clone, Debug)]
pub struct FStarSpec {
    pub n: i64,
    pub c: Scalar,
}

impl FStarSpec {
    pub fn new(n: i64, c: Scalar) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain(format!("f_* needs N ≥ 1, got {n}")));
        }
        Ok(FStarSpec { n, c })
    }

    /// The unreduced ratio form, for pointwise oracle sampling.
    pub fn geometric(&self) -> GeometricRatioSpec {
        GeometricRatioSpec {
            coeff: Scalar::from_int(-4) * self.c.clone(),
            p: 2,
            q: 2 * self.n,
        }
    }

    /// Exact reduction into the closed term algebra.
    pub fn reduced(&self) -> Result<RadialFunction> {
        reduce_geometric(&self.geometric())
    }
}

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

fn monomial(num: i64, power: i64) -> RadialFunction {
    RadialFunction::monomial(Scalar::from_int(num), Rational64::from_integer(power))
}

fn g_symbol() -> PolarSymbol {
    PolarSymbol::alpha_beta(Scalar::one(), Scalar::one())
}

/// Coefficient of `z^m` in an applied column.
fn coef_at(col: &[(i64, Scalar)], m: i64) -> Scalar {
    col.iter()
        .find(|(d, _)| *d == m)
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Scalar::zero)
}

/// Exactly zero in the exact ring.
fn exact_zero(s: &Scalar) -> bool {
    s.is_exact() && s.is_zero()
}

/// Linear constraints "every term the engine rejects from `L¹([0,1], r dr)`
/// must cancel": one row per offending `(kind, power, logpow)` key, one
/// column per unknown part.
fn l1_constraint_rows(parts: &[&RadialFunction]) -> (Vec<Vec<Scalar>>, Vec<String>) {
    use std::collections::BTreeSet;
    let mut keys: BTreeSet<(TermKind, Rational64, u32)> = BTreeSet::new();
    for p in parts {
        for t in p.terms() {
            if t.power <= L1_EXPONENT_THRESHOLD {
                keys.insert((t.kind, t.power, t.logpow));
            }
        }
    }
    let coeff_of = |p: &RadialFunction, key: &(TermKind, Rational64, u32)| -> Scalar {
        p.terms()
            .iter()
            .find(|t| (t.kind, t.power, t.logpow) == *key)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(Scalar::zero)
    };
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for key in keys {
        rows.push(parts.iter().map(|p| coeff_of(p, &key)).collect());
        labels.push(format!("{} r^{} log^{}", key.0.tag(), key.1, key.2));
    }
    (rows, labels)
}

/// Generic-solver cross-check for the tail pattern: within the monomial
/// family `r^{|k|+2j}`, nothing of degree `k` commutes with `T_{z²}`.
fn degree_commutes_with_z2(k: i64) -> Result<usize> {
    let p = CommutantProblem {
        g: PolarSymbol::z_pow(Scalar::one(), 2),
        ansatz: Ansatz {
            elements: (0..=3)
                .map(|j| AnsatzElement {
                    k,
                    radial: monomial(1, k.abs() + 2 * j),
                })
                .collect(),
        },
        n_max: 2 * k.abs() + 6,
    };
    let (_, ns) = commutant::solve(&p)?;
    Ok(ns.dimension)
}

fn tail_pattern_lines(ks: &[i64], lines: &mut Vec<String>) -> Result<bool> {
    let mut ok = true;
    for &k in ks {
        let dim = degree_commutes_with_z2(k)?;
        ok &= dim == 0;
        lines.push(format!("tail_degree k={k} commutant_with_z2_dim={dim}"));
    }
    lines.push("tail_pattern verified for k >= -14".to_string());
    Ok(ok)
}

// ---------------------------------------------------------------------------
// Functional-equation step (odd N): the ladder solution
// ---------------------------------------------------------------------------

/// Replays the difference-equation step for odd `N`: checks that `f̂_*`
/// satisfies the telescoping identity and that the convolution closed form
/// `f_{N−4} = c_{N−4} r^{N−4} + r^{−(N−2)}(r^{2N−6} *_M f_*)` solves it.
pub fn verify_functional_step(n: i64, zs: &[i64]) -> Result<CaseReport> {
    if n < 1 || n % 2 == 0 {
        return Err(Error::Domain(format!(
            "functional step applies to odd N ≥ 1, got {n}"
        )));
    }
    let mut rep = CaseReport::new(&format!("Prop1/N={n}/functional"));
    let fstar = FStarSpec::new(n, Scalar::one())?.reduced()?;
    let mut all_ok = true;

    for &z in zs {
        if z < 4 {
            return Err(Error::Domain(format!("ladder arguments need Re z ≥ 4, got {z}")));
        }
        // f̂_*(z+4) − f̂_*(z) = 4/(z+2) − 4/(z+2N+2)
        let lhs = mellin_eval(&fstar, &MellinPoint::from_int(z + 4))?.value
            - mellin_eval(&fstar, &MellinPoint::from_int(z))?.value;
        let rhs = Scalar::from_ratio(4, z + 2) - Scalar::from_ratio(4, z + 2 * n + 2);
        let diff = lhs - rhs;
        let ok = exact_zero(&diff) || diff.abs() <= 1e-10;
        all_ok &= ok;
        rep.lines.push(format!(
            "difference_identity z={z} exact={} residual={}",
            exact_zero(&diff),
            diff.abs()
        ));
    }

    // Ladder solution with c_{N−4} = c_N = 1, in the shifted variable:
    // h = r^{N−2} f_{N−4} = r^{2N−6} + (r^{2N−6} *_M f_*), and
    // (z+2N−2)·ĥ(z+4) − (z+2N−6)·ĥ(z) = (z+2N−2)/(z+2N+2) − (z−2)/(z+2).
    let conv = convolve_monomial(2 * n - 6, &fstar)?;
    let shifted = monomial(1, 2 * n - 6).add(&conv);
    for &z in zs {
        let a = mellin_eval(&shifted, &MellinPoint::from_int(z + 4))?.value
            * Scalar::from_int(z + 2 * n - 2);
        let b = mellin_eval(&shifted, &MellinPoint::from_int(z))?.value
            * Scalar::from_int(z + 2 * n - 6);
        let rhs =
            Scalar::from_ratio(z + 2 * n - 2, z + 2 * n + 2) - Scalar::from_ratio(z - 2, z + 2);
        let diff = a - b - rhs;
        let ok = exact_zero(&diff) || diff.abs() <= 1e-10;
        all_ok &= ok;
        rep.lines.push(format!(
            "ladder_solution z={z} exact={} residual={}",
            exact_zero(&diff),
            diff.abs()
        ));
    }

    if n == 1 {
        // Pointwise check of I₁ = r^{−4} *_M f_* against the printed bracket.
        let i1 = convolve_monomial(-4, &fstar)?;
        let mut worst: f64 = 0.0;
        for i in 1..=20 {
            let r = i as f64 / 21.0;
            let printed = -4.0 / r.powi(4)
                * ((4.0 * LN2 - 2.0) / 8.0 - r.powi(4) / 4.0 + r * r / 2.0
                    - (1.0 + r * r).ln() / 2.0);
            worst = worst.max((i1.eval_re(r) - printed).abs());
        }
        all_ok &= worst <= 1e-10;
        rep.lines
            .push(format!("printed_I1_pointwise radii=20 max_dev={worst}"));
    }

    // Degenerate coefficient: c_N = 0 collapses everything to 0 = 0.
    let trivial = FStarSpec::new(n, Scalar::zero())?.reduced()?;
    rep.lines
        .push(format!("degenerate c_N=0 fstar_zero={}", trivial.is_zero()));
    all_ok &= trivial.is_zero();

    rep.verdict = if all_ok {
        Verdict::Verified
    } else {
        Verdict::Inconclusive("identity residual beyond tolerance".to_string())
    };
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Odd-N eliminations (Proposition 1)
// ---------------------------------------------------------------------------

/// Eliminates the leading odd coefficient for `N ∈ {1, 3, 5}`.
pub fn verify_odd_elimination(n: i64) -> Result<CaseReport> {
    match n {
        1 => elim_case_n1(),
        3 => f3_fm1_elimination("Prop1/N=3", true),
        5 => elim_case_n5(),
        _ => Err(Error::Domain(format!(
            "odd elimination is replayed for N ∈ {{1,3,5}}, got {n}"
        ))),
    }
}

/// Case N = 1: `f_{−3} = c_{−3} r^{−3} + r·I₁` leaves `L¹` unless both
/// coefficients vanish.
fn elim_case_n1() -> Result<CaseReport> {
    let mut rep = CaseReport::new("Prop1/N=1");
    let fstar = FStarSpec::new(1, Scalar::one())?.reduced()?;
    let i1 = convolve_monomial(-4, &fstar)?;
    let part_c1 = i1.mul_monomial(Rational64::from_integer(1));
    let part_cm3 = monomial(1, -3);
    rep.lines.push(format!(
        "solved_form f_-3 = c_-3 r^-3 + c_1 (r I1), l1(c_1 part)={}",
        l1_membership(&part_c1).0
    ));

    let (rows, labels) = l1_constraint_rows(&[&part_cm3, &part_c1]);
    for (row, label) in rows.iter().zip(&labels) {
        rep.lines.push(format!(
            "l1_constraint term=[{label}] c_-3={} c_1={}",
            row[0], row[1]
        ));
    }
    let ns = commutant::null_space(&rows, 2)?;
    rep.lines.push(format!(
        "l1_constraint_system rows={} kernel_dim={} exact={}",
        rows.len(),
        ns.dimension,
        ns.exact
    ));
    rep.verdict = if ns.dimension == 0 {
        Verdict::ForcedZero
    } else {
        Verdict::Inconclusive(format!("L¹ constraints leave a {}-dim family", ns.dimension))
    };
    Ok(rep)
}

/// The `c₃/c₋₁` elimination, shared between Proposition 1 (Case N = 3) and
/// the theorem's `f₃, f₋₁` step: identical operators, identical band rows.
///
/// The honest `n = 1` band row is identically zero once the convolution
/// form is substituted (the printed second scalar equation is not
/// derivable), so the verdict comes from closing the system over the
/// coupled lower degrees and solving exactly.
fn f3_fm1_elimination(id: &str, with_constants: bool) -> Result<CaseReport> {
    let mut rep = CaseReport::new(id);
    let g = g_symbol();
    let fstar = FStarSpec::new(3, Scalar::one())?.reduced()?;
    // r f_{−1} = c_{−1} + (1 *_M f_*)  ⇒  the c₃-dependent radial part:
    let h = convolve_monomial(0, &fstar)?.mul_monomial(Rational64::from_integer(-1));
    let s_c3 = PolarSymbol::from_parts(vec![(3, monomial(1, 3)), (-1, h.clone())]);
    let s_cm1 = PolarSymbol::from_parts(vec![(-1, monomial(1, -1))]);

    let mut vacuous_n1 = false;
    for n in [0i64, 1] {
        let a = coef_at(&commutator_column(&s_cm1, &g, n)?, n + 1);
        let b = coef_at(&commutator_column(&s_c3, &g, n)?, n + 1);
        rep.lines
            .push(format!("band_row n={n} d=1 c_-1={a} c_3={b}"));
        if n == 1 {
            vacuous_n1 = exact_zero(&a) && exact_zero(&b);
        }
    }
    if vacuous_n1 {
        rep.lines.push(
            "band_row n=1 vanishes identically after substitution: the printed second \
             scalar equation is not derivable from the band equations"
                .to_string(),
        );
    }

    // Close the system over the degrees the band equations couple to
    // (−5, −9, −13) and solve exactly.
    let mut elements = vec![
        AnsatzElement { k: 3, radial: monomial(1, 3) },
        AnsatzElement { k: -1, radial: monomial(1, -1) },
        AnsatzElement { k: -1, radial: h },
    ];
    for k in [-5i64, -9, -13] {
        for j in 0..=3 {
            elements.push(AnsatzElement { k, radial: monomial(1, k.abs() + 2 * j) });
        }
    }
    let p = CommutantProblem { g, ansatz: Ansatz { elements }, n_max: 34 };
    let unknowns = p.ansatz.len();
    let (_, ns) = commutant::solve(&p)?;
    rep.lines.push(format!(
        "closed_system unknowns={unknowns} kernel_dim={} exact={}",
        ns.dimension, ns.exact
    ));

    if with_constants {
        rep.rows = fstar_n3_constant_rows()?;
    }

    rep.verdict = if ns.dimension == 0 {
        Verdict::ForcedZero
    } else {
        Verdict::Inconclusive(format!("closed system leaves a {}-dim family", ns.dimension))
    };
    Ok(rep)
}

/// Case N = 5: the `n = 0` band row decides `c₅` on its own; the `c₁`
/// contribution cancels exactly.
fn elim_case_n5() -> Result<CaseReport> {
    let mut rep = CaseReport::new("Prop1/N=5");
    let g = g_symbol();
    let fstar = FStarSpec::new(5, Scalar::one())?.reduced()?;
    // f₁ = c₁ r + c₅ · r^{−3}(r⁴ *_M f_*)
    let f1_part = convolve_monomial(4, &fstar)?.mul_monomial(Rational64::from_integer(-3));
    let s_c5 = PolarSymbol::from_parts(vec![(5, monomial(1, 5)), (1, f1_part)]);
    let s_c1 = PolarSymbol::from_parts(vec![(1, monomial(1, 1))]);

    let a = coef_at(&commutator_column(&s_c5, &g, 0)?, 3);
    let b = coef_at(&commutator_column(&s_c1, &g, 0)?, 3);
    rep.lines.push(format!("band_row n=0 d=3 c_5={a} c_1={b}"));
    let c1_cancels = exact_zero(&b);
    rep.lines
        .push(format!("c_1_cancels_exactly={c1_cancels}"));
    let factor_nonzero = a.is_exact() && !a.is_zero() && a.abs() > 1e-6;
    rep.lines.push(format!(
        "linear_factor value~{} exact_nonzero={factor_nonzero}",
        a.abs()
    ));

    rep.verdict = if c1_cancels && factor_nonzero {
        Verdict::ForcedZero
    } else {
        Verdict::Inconclusive("n=0 band row does not isolate c_5".to_string())
    };
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Even-N bound (Proposition 2)
// ---------------------------------------------------------------------------

/// The printed closed form of `f_{N−4}` for even `N ≥ 6` (c_{N−4} = d,
/// c_N = c).
fn even_candidate_printed(n: i64, d: Scalar, c: Scalar) -> RadialFunction {
    even_candidate(n, d, c, Scalar::from_ratio(n, 2) - Scalar::from_int(2), 1)
}

/// The exact inverse transform of the ladder solution: the same shape with
/// `r^{N−4}` coefficient `N/2 − 1` and log coefficient 4.
fn even_candidate_true(n: i64, d: Scalar, c: Scalar) -> RadialFunction {
    even_candidate(n, d, c, Scalar::from_ratio(n, 2) - Scalar::from_int(1), 4)
}

fn even_candidate(n: i64, d: Scalar, c: Scalar, mid: Scalar, logco: i64) -> RadialFunction {
    let m = Rational64::from_integer(n - 4);
    let mut f = RadialFunction::monomial(d, m);
    f = f.add(&RadialFunction::monomial(c.clone(), Rational64::from_integer(n)));
    f = f.add(&RadialFunction::monomial(c.clone() * mid, m));
    f = f.add(&RadialFunction::monlog(c.clone() * Scalar::from_int(logco), m, 1));
    for i in 0..=(n / 2 - 3) {
        let w = Scalar::from_ratio(2, n - 4 - 2 * i);
        f = f.add(&RadialFunction::monomial(c.clone() * w.clone(), m));
        f = f.add(&RadialFunction::monomial(
            -(c.clone() * w),
            Rational64::from_integer(4 * i - n + 4),
        ));
    }
    f
}

/// Even `N ≥ 6`: the ladder solution for `f_{N−4}` contains `r^{4−N}`,
/// which is not in `L¹([0,1], r dr)`, so `c_N = 0`.
pub fn verify_even_bound(n: i64) -> Result<CaseReport> {
    if n < 6 || n % 2 != 0 {
        return Err(Error::Domain(format!(
            "even bound applies to even N ≥ 6, got {n}"
        )));
    }
    let mut rep = CaseReport::new(&format!("Prop2/N={n}"));

    // Exact replay of the transform identity for the true inverse:
    // 2(z+N−3)·f̂_{N−4}(2z+N−2) = c_{N−4} + c_N Σ_{i<N/2} (z−1+2i)/(z+1+2i).
    let truth = even_candidate_true(n, Scalar::one(), Scalar::one());
    let mut identity_ok = true;
    for z in [3i64, 4, 5] {
        let lhs = mellin_eval(&truth, &MellinPoint::from_int(2 * z + n - 2))?.value
            * Scalar::from_int(2 * (z + n - 3));
        let mut rhs = Scalar::one();
        for i in 0..(n / 2) {
            rhs = rhs + Scalar::from_ratio(z - 1 + 2 * i, z + 1 + 2 * i);
        }
        let diff = lhs - rhs;
        identity_ok &= exact_zero(&diff);
        rep.lines.push(format!(
            "ladder_identity z={z} exact={}",
            exact_zero(&diff)
        ));
    }

    // The printed expansion differs from the true inverse only in
    // L¹-harmless terms; the decisive r^{4−N} coefficient agrees.
    let printed = even_candidate_printed(n, Scalar::one(), Scalar::one());
    let diff = truth.sub(&printed);
    let diff_l1 = l1_membership(&diff).0;
    rep.lines.push(format!(
        "printed_vs_true difference_terms={} all_in_l1={diff_l1}",
        diff.terms().len()
    ));

    // The c_N part alone: the i = 0 term has exponent 4 − N ≤ −2.
    let c_part = even_candidate_true(n, Scalar::zero(), Scalar::one());
    let bad: Vec<&RadialTerm> = c_part
        .terms()
        .iter()
        .filter(|t| t.power <= L1_EXPONENT_THRESHOLD)
        .collect();
    for t in &bad {
        rep.lines.push(format!(
            "non_l1_term kind={} power={} coeff={}",
            t.kind.tag(),
            t.power,
            t.coeff
        ));
    }
    let printed_bad = printed
        .terms()
        .iter()
        .any(|t| t.power == Rational64::from_integer(4 - n));
    rep.lines.push(format!(
        "decisive_term r^{} present_in_printed_form={printed_bad}",
        4 - n
    ));
    let l1_with_c = l1_membership(&c_part).0;
    let residual_part = even_candidate_true(n, Scalar::one(), Scalar::zero());
    let l1_without_c = l1_membership(&residual_part).0;
    rep.lines.push(format!(
        "l1 with_cN={l1_with_c} after_cN=0={l1_without_c}"
    ));

    rep.verdict = if identity_ok && !bad.is_empty() && !l1_with_c && l1_without_c {
        Verdict::ForcedZero
    } else {
        Verdict::Inconclusive("ladder solution unexpectedly admissible".to_string())
    };
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Theorem cascade
// ---------------------------------------------------------------------------

/// Replays the theorem's eliminations in the order of the original
/// argument. Each step's system is rebuilt from the band equations.
pub fn verify_theorem_cascade() -> Result<Vec<CaseReport>> {
    Ok(vec![
        cascade_f4_f0()?,
        cascade_fm4()?,
        f3_fm1_elimination("Theorem/f3,f-1", true).map(with_determinant_regression)?,
        cascade_f1_fm3()?,
        cascade_f2_fm2()?,
        cascade_tail()?,
    ])
}

/// Step 1: the `z^{n+2}` band with the solved `f₀` shape forces `c₄ = 0`
/// and leaves `f₀ = c₀`.
fn cascade_f4_f0() -> Result<CaseReport> {
    let mut rep = CaseReport::new("Theorem/f4,f0");
    let g = g_symbol();
    // Ladder solution: f₀ = (c₀+c₄)·1 + c₄(r⁴ + 4 ln r).
    let s_const = PolarSymbol::constant(Scalar::one());
    let f0_c4 = monomial(1, 4).add(&RadialFunction::monlog(
        Scalar::from_int(4),
        Rational64::from_integer(0),
        1,
    ));
    let s_c4 = PolarSymbol::from_parts(vec![(4, monomial(1, 4)), (0, f0_c4)]);

    let mut factor = Scalar::zero();
    let mut const_cancels = true;
    for n in [0i64, 1, 2, 3] {
        let a = coef_at(&commutator_column(&s_const, &g, n)?, n + 2);
        let b = coef_at(&commutator_column(&s_c4, &g, n)?, n + 2);
        rep.lines
            .push(format!("band_row n={n} d=2 c_0={a} c_4={b}"));
        const_cancels &= exact_zero(&a);
        if n == 0 {
            factor = b;
        }
    }
    rep.lines
        .push(format!("constant_part_commutes_exactly={const_cancels}"));
    let factor_nonzero = factor.is_exact() && !factor.is_zero() && factor.abs() > 1e-6;
    rep.lines.push(format!(
        "linear_factor value~{} exact_nonzero={factor_nonzero}",
        factor.abs()
    ));
    rep.verdict = if const_cancels && factor_nonzero {
        Verdict::Family("c_4 = 0, f_0 = c_0".to_string())
    } else {
        Verdict::Inconclusive("n=0 band row does not isolate c_4".to_string())
    };
    Ok(rep)
}

/// Step 2: with `f₀` constant the `z^{n−2}` band is homogeneous, the ladder
/// gives `f₋₄ = c₋₄ r^{−4}`, and `L¹` kills it; the deeper `f_{−4+4k}`
/// follow from the commute-with-`z²` pattern.
fn cascade_fm4() -> Result<CaseReport> {
    let mut rep = CaseReport::new("Theorem/f-4");
    let g = g_symbol();
    // Homogeneity: a constant f₀ contributes nothing to the d=−2 band.
    let s_const = PolarSymbol::constant(Scalar::one());
    let mut homogeneous = true;
    for n in [4i64, 5, 6] {
        let a = coef_at(&commutator_column(&s_const, &g, n)?, n - 2);
        homogeneous &= exact_zero(&a);
        rep.lines
            .push(format!("band_row n={n} d=-2 f0_contribution={a}"));
    }
    // Ladder shape: 2(z−3)·(r^{−4})^(2z−2) = 1 exactly.
    let cand = monomial(1, -4);
    let mut ladder_ok = true;
    for z in [4i64, 5, 6] {
        let v = mellin_eval(&cand, &MellinPoint::from_int(2 * z - 2))?.value
            * Scalar::from_int(2 * z - 6);
        let diff = v - Scalar::one();
        ladder_ok &= exact_zero(&diff);
        rep.lines
            .push(format!("ladder_shape z={z} exact={}", exact_zero(&diff)));
    }
    let (l1, _) = l1_membership(&cand);
    rep.lines.push(format!("l1(r^-4)={l1}"));
    let tails_ok = tail_pattern_lines(&[-8, -12], &mut rep.lines)?;
    rep.verdict = if homogeneous && ladder_ok && !l1 && tails_ok {
        Verdict::ForcedZero
    } else {
        Verdict::Inconclusive("f_-4 step did not close".to_string())
    };
    Ok(rep)
}

/// Appends the printed 2×2 determinant regression to the shared
/// `c₃/c₋₁` report: `det [[1, −2ln2], [1, 2ln2 − 8/3]] = 4ln2 − 8/3`,
/// nonzero in the exact ring.
fn with_determinant_regression(mut rep: CaseReport) -> CaseReport {
    let det = (Scalar::from_int(2) * Scalar::ln2() - Scalar::from_ratio(8, 3))
        - (Scalar::from_int(-2) * Scalar::ln2());
    let nonzero = det.is_exact() && !det.is_zero();
    rep.lines.push(format!(
        "printed_determinant=4ln2-8/3 value~{} exact_nonzero={nonzero}",
        det.abs()
    ));
    let tails_ok = tail_pattern_lines(&[-5, -9, -13], &mut rep.lines).unwrap_or(false);
    if !(nonzero && tails_ok) && rep.verdict == Verdict::ForcedZero {
        rep.verdict = Verdict::Inconclusive("determinant or tail check failed".to_string());
    }
    rep
}

/// Step 4: `f₁, f₋₃`. The ladder solution for `r³ f₋₃` uses
/// `f_* = −4c₁ r⁶(1−r²)/(1−r⁴)`; the decisive constraints are the two
/// low-`n` band rows outside the ladder range, whose exact determinant is
/// `3 − 4ln2 ≠ 0`.
fn cascade_f1_fm3() -> Result<CaseReport> {
    let mut rep = CaseReport::new("Theorem/f1,f-3");
    let g = g_symbol();
    let spec = GeometricRatioSpec { coeff: Scalar::from_int(-4), p: 6, q: 2 };
    let fstar = reduce_geometric(&spec)?;
    // r³ f₋₃ = c₋₃ + (1 *_M f_*)  ⇒  the c₁-dependent radial part:
    let conv = convolve_monomial(0, &fstar)?.mul_monomial(Rational64::from_integer(-3));
    let s_c1 = PolarSymbol::from_parts(vec![(1, monomial(1, 1)), (-3, conv.clone())]);
    let s_cm3 = PolarSymbol::from_parts(vec![(-3, monomial(1, -3))]);

    // Engine L¹ view of the solved form (strict exponent rule; note the
    // r^{−3}·ln(1+r²) term integrates against r dr in the strict sense, so
    // the verdict below rests on the band rows, not on L¹ alone).
    let (rows_l1, labels) = l1_constraint_rows(&[&monomial(1, -3), &conv]);
    for (row, label) in rows_l1.iter().zip(&labels) {
        rep.lines.push(format!(
            "l1_constraint term=[{label}] c_-3={} c_1={}",
            row[0], row[1]
        ));
    }

    let mut m = Vec::new();
    for n in [1i64, 2] {
        let a = coef_at(&commutator_column(&s_cm3, &g, n)?, n - 1);
        let b = coef_at(&commutator_column(&s_c1, &g, n)?, n - 1);
        rep.lines
            .push(format!("band_row n={n} d=-1 c_-3={a} c_1={b}"));
        m.push([a, b]);
    }
    let det = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
    let nonzero = det.is_exact() && !det.is_zero() && det.abs() > 1e-6;
    rep.lines.push(format!(
        "band_determinant value~{} exact_nonzero={nonzero}",
        det.abs()
    ));
    let tails_ok = tail_pattern_lines(&[-7, -11], &mut rep.lines)?;

    rep.rows = fm3_constant_rows()?;
    rep.verdict = if nonzero && tails_ok {
        Verdict::ForcedZero
    } else {
        Verdict::Inconclusive("band determinant degenerate".to_string())
    };
    Ok(rep)
}

/// Step 5: `f₂ = c₂ r²` and the `z^n` band then forces `f₋₂ = c₂ r²`
/// after the non-`L¹` ladder part `r^{−2}` is dropped.
fn cascade_f2_fm2() -> Result<CaseReport> {
    let mut rep = CaseReport::new("Theorem/f2,f-2");
    let g = g_symbol();

    // Ladder replay: 2(z−1)·f̂₋₂(2z) = c₋₂ + c₂(z−1)/(z+1) for the
    // candidate c₋₂ r^{−2} + c₂ r², exactly.
    let cand_m2 = monomial(1, -2);
    let cand_2 = monomial(1, 2);
    let mut ladder_ok = true;
    for z in [3i64, 4, 5] {
        let lhs = (mellin_eval(&cand_m2, &MellinPoint::from_int(2 * z))?.value
            + mellin_eval(&cand_2, &MellinPoint::from_int(2 * z))?.value)
            * Scalar::from_int(2 * (z - 1));
        let rhs = Scalar::one() + Scalar::from_ratio(z - 1, z + 1);
        let diff = lhs - rhs;
        ladder_ok &= exact_zero(&diff);
        rep.lines
            .push(format!("ladder_shape z={z} exact={}", exact_zero(&diff)));
    }
    let (l1_m2, _) = l1_membership(&cand_m2);
    rep.lines.push(format!("l1(r^-2)={l1_m2}"));

    // Band solve: unknowns (c₂, f₋₂ ∈ span{r², r⁴, r⁶, r⁸}); the z^n band
    // should leave exactly the line f₋₂ = c₂ r².
    let mut basis = vec![PolarSymbol::from_parts(vec![(2, monomial(1, 2))])];
    for j in 1..=4 {
        basis.push(PolarSymbol::from_parts(vec![(-2, monomial(1, 2 * j))]));
    }
    let mut rows = Vec::new();
    for n in 0..=20i64 {
        let mut row = Vec::with_capacity(basis.len());
        for s in &basis {
            row.push(coef_at(&commutator_column(s, &g, n)?, n));
        }
        if row.iter().any(|c| !c.is_zero()) {
            rows.push(row);
        }
    }
    let ns = commutant::null_space(&rows, basis.len())?;
    rep.lines.push(format!(
        "band_system rows={} kernel_dim={} exact={}",
        rows.len(),
        ns.dimension,
        ns.exact
    ));
    let mut solved = ns.dimension == 1;
    if solved {
        let v = &ns.basis[0];
        let pivot = v[0].clone();
        solved &= !pivot.is_zero();
        if solved {
            let r2 = v[1].clone() / pivot.clone();
            let unit = r2 - Scalar::one();
            solved &= exact_zero(&unit) && v[2..].iter().all(Scalar::is_zero);
        }
        rep.lines.push(format!("kernel_line f_-2=c_2*r^2 confirmed={solved}"));
    }

    rep.verdict = if ladder_ok && !l1_m2 && solved {
        Verdict::Family("f_2 = c_2 r^2, f_-2 = c_2 r^2".to_string())
    } else {
        Verdict::Inconclusive("f_-2 band system did not reduce to the expected line".to_string())
    };
    Ok(rep)
}

/// Step 6: the remaining tail `f₋₆, f₋₁₀, …` commutes with `T_{z²}` alone
/// and vanishes; the surviving family is cross-checked against the generic
/// solver.
fn cascade_tail() -> Result<CaseReport> {
    let mut rep = CaseReport::new("Theorem/tail+family");
    let tails_ok = tail_pattern_lines(&[-6, -10, -14], &mut rep.lines)?;

    let p = CommutantProblem::default_problem();
    let (_, ns) = commutant::solve(&p)?;
    rep.lines.push(format!("generic_solver {ns}"));
    // `1` and `z²+z̄²` both commute and are ansatz-representable, so they
    // lie in the kernel; kernel_dim = 2 then pins the family exactly.
    let one_res = commutant::residual(&PolarSymbol::constant(Scalar::one()), &p.g, 24)?;
    let g_res = commutant::residual(&p.g.clone(), &p.g, 24)?;
    rep.lines.push(format!(
        "members_commute one={} g={}",
        one_res.exact_zero, g_res.exact_zero
    ));
    let family = ns.dimension == 2 && ns.exact && one_res.exact_zero && g_res.exact_zero;
    rep.verdict = if tails_ok && family {
        Verdict::Family("c_2 (z^2 + zbar^2) + c_0".to_string())
    } else {
        Verdict::Inconclusive("generic solver disagrees with the replay".to_string())
    };
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Constants cross-check
// ---------------------------------------------------------------------------

fn oracle_fstar_hat(n: i64, z: i64) -> Result<f64> {
    let spec = FStarSpec::new(n, Scalar::one())?.geometric();
    let v = mellin_quadrature(&|r| spec.eval(r), &MellinPoint::from_int(z), 1e-12)?;
    Ok(v.to_c64().re)
}

/// Closed-form engine value for the same transform, used as an internal
/// consistency gate on the oracle rows.
fn engine_fstar_hat(n: i64, z: i64) -> Result<f64> {
    let f = FStarSpec::new(n, Scalar::one())?.reduced()?;
    Ok(mellin_eval(&f, &MellinPoint::from_int(z))?.to_c64().re)
}

fn checked_row(location: &str, expr: &str, paper: f64, oracle: f64, engine: f64) -> Result<ConstantRow> {
    if (oracle - engine).abs() > 1e-9 {
        return Err(Error::Internal(format!(
            "closed form and quadrature disagree at {location}: {engine} vs {oracle}"
        )));
    }
    Ok(ConstantRow::new(location, expr, paper, oracle))
}

/// Rows shared by the two `N = 3` appearances of `f̂_*`: both printed
/// `f̂_*(2)` variants, `f̂_*(6)` twice, and `f̂_*(4)`.
fn fstar_n3_constant_rows() -> Result<Vec<ConstantRow>> {
    let h2 = oracle_fstar_hat(3, 2)?;
    let e2 = engine_fstar_hat(3, 2)?;
    let h4 = oracle_fstar_hat(3, 4)?;
    let e4 = engine_fstar_hat(3, 4)?;
    let h6 = oracle_fstar_hat(3, 6)?;
    let e6 = engine_fstar_hat(3, 6)?;
    Ok(vec![
        checked_row("Prop1-N3/fstar_hat(2)", "-4(2-3ln2)/3", -4.0 * (2.0 - 3.0 * LN2) / 3.0, h2, e2)?,
        checked_row("Theorem/fstar_hat(2)", "2ln2-8/3", 2.0 * LN2 - 8.0 / 3.0, h2, e2)?,
        checked_row(
            "Prop1-N3/fstar_hat(6)",
            "-(31-30ln2)/15",
            -(31.0 - 30.0 * LN2) / 15.0,
            h6,
            e6,
        )?,
        checked_row(
            "Theorem/fstar_hat(6)",
            "-4(31/60-ln2/2)",
            -4.0 * (31.0 / 60.0 - LN2 / 2.0),
            h6,
            e6,
        )?,
        checked_row("Theorem/fstar_hat(4)", "1/2-2ln2", 0.5 - 2.0 * LN2, h4, e4)?,
    ])
}

/// Rows for the theorem's `f₋₃` step: the `1 *_M f_*` bracket at `r = 0`
/// (its constant) and at `r = 1/2`.
fn fm3_constant_rows() -> Result<Vec<ConstantRow>> {
    let spec = GeometricRatioSpec { coeff: Scalar::from_int(-4), p: 6, q: 2 };
    let reduced = reduce_geometric(&spec)?;
    let conv = convolve_monomial(0, &reduced)?;
    let at0 = mellin_quadrature(&|r| spec.eval(r), &MellinPoint::from_int(0), 1e-12)?
        .to_c64()
        .re;
    let e0 = mellin_eval(&reduced, &MellinPoint::from_int(0))?.to_c64().re;
    let r = 0.5;
    let at_half = convolve_numeric(&|_| Complex64::new(1.0, 0.0), &|t| spec.eval(t), r, 1e-12)?.re;
    let e_half = conv.eval_re(r);
    let bracket = |r: f64| {
        -2.0 * ((LN2 - 0.5) + (3.0 * r * r - r.powi(4) / 2.0 - (1.0 + r * r).ln()))
    };
    Ok(vec![
        checked_row("Theorem/conv_f-3(0)", "-2(ln2-1/2)", -2.0 * (LN2 - 0.5), at0, e0)?,
        checked_row(
            "Theorem/conv_f-3(1/2)",
            "-2[(ln2-1/2)+(3r^2-r^4/2-ln(1+r^2))]",
            bracket(r),
            at_half,
            e_half,
        )?,
    ])
}

/// The full catalogue: every printed Mellin constant in the odd cases and
/// the theorem, each compared against the quadrature oracle (with the
/// closed-form engine as an internal consistency gate).
pub fn cross_check_constants() -> Result<Vec<ConstantRow>> {
    let mut rows = fstar_n3_constant_rows()?;

    // N = 5 values.
    let h0 = oracle_fstar_hat(5, 0)?;
    let e0 = engine_fstar_hat(5, 0)?;
    let h4 = oracle_fstar_hat(5, 4)?;
    let e4 = engine_fstar_hat(5, 4)?;
    rows.push(checked_row(
        "Prop1-N5/fstar_hat(0)",
        "-(3+4ln2)/2",
        -(3.0 + 4.0 * LN2) / 2.0,
        h0,
        e0,
    )?);
    rows.push(checked_row(
        "Prop1-N5/fstar_hat(4)",
        "-(-1+12ln2)/6",
        -(-1.0 + 12.0 * LN2) / 6.0,
        h4,
        e4,
    )?);

    // Case N = 1: the printed I₁ bracket at r = 1/2.
    let spec1 = FStarSpec::new(1, Scalar::one())?;
    let geo1 = spec1.geometric();
    let r = 0.5;
    let i1_oracle = convolve_numeric(
        &|u| Complex64::new(u.powi(-4), 0.0),
        &|t| geo1.eval(t),
        r,
        1e-12,
    )?
    .re;
    let i1_engine = convolve_monomial(-4, &spec1.reduced()?)?.eval_re(r);
    let i1_printed = -4.0 / r.powi(4)
        * ((4.0 * LN2 - 2.0) / 8.0 - r.powi(4) / 4.0 + r * r / 2.0 - (1.0 + r * r).ln() / 2.0);
    rows.push(checked_row(
        "Prop1-N1/I1(1/2)",
        "(-4/r^4)[(4ln2-2)/8-r^4/4+r^2/2-ln(1+r^2)/2]",
        i1_printed,
        i1_oracle,
        i1_engine,
    )?);

    // Theorem f₋₁ step: the 1 *_M f_* bracket at r = 0 and r = 1/2.
    let geo3 = FStarSpec::new(3, Scalar::one())?.geometric();
    let reduced3 = FStarSpec::new(3, Scalar::one())?.reduced()?;
    let conv3 = convolve_monomial(0, &reduced3)?;
    let at0 = oracle_fstar_hat(3, 0)?;
    let e0 = engine_fstar_hat(3, 0)?;
    let at_half = convolve_numeric(&|_| Complex64::new(1.0, 0.0), &|t| geo3.eval(t), r, 1e-12)?.re;
    let e_half = conv3.eval_re(r);
    let bracket1 = |r: f64| -4.0 * ((0.5 + LN2 / 2.0) - (r.powi(4) / 4.0 + (1.0 + r * r).ln() / 2.0));
    rows.push(checked_row(
        "Theorem/conv_f-1(0)",
        "-4(1/2+ln2/2)",
        bracket1(0.0),
        at0,
        e0,
    )?);
    rows.push(checked_row(
        "Theorem/conv_f-1(1/2)",
        "-4[(1/2+ln2/2)-(r^4/4+ln(1+r^2)/2)]",
        bracket1(r),
        at_half,
        e_half,
    )?);

    rows.extend(fm3_constant_rows()?);
    Ok(rows)
}


/// Every case report the `verify` front end emits, in a fixed order.
pub fn all_reports() -> Result<Vec<CaseReport>> {
    let mut out = vec![
        // For N = 1 the shifted solution contains r^{−4}, whose transform
        // only exists for Re z > 4, so the samples start at 5.
        verify_functional_step(1, &[5, 7, 9])?,
        verify_functional_step(3, &[4, 6, 8])?,
        verify_functional_step(5, &[4, 6, 8])?,
        verify_odd_elimination(1)?,
        verify_odd_elimination(3)?,
        verify_odd_elimination(5)?,
        verify_even_bound(6)?,
        verify_even_bound(8)?,
    ];
    out.extend(verify_theorem_cascade()?);
    Ok(out)
}
