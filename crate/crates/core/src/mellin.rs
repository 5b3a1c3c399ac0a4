//! Mellin transforms `φ̂(z) = ∫₀¹ φ(r) r^{z−1} dr` on the term algebra.
//!
//! Closed forms carry the exact scalar ring `Q(i) + Q(i)·ln2` as far as it
//! goes: monomial-log terms are always exact at rational `z`, the
//! `r^a/(1+r²)` and `r^a·ln(1+r²)` kinds are exact exactly when the shifted
//! argument lands on a positive even integer. Everything else is evaluated
//! by an accelerated alternating series, with adaptive quadrature as a
//! fully independent oracle.

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::quad;
use crate::radial::{convolve_monomial, convolve_numeric, RadialFunction, RadialTerm, TermKind};
use crate::scalar::Scalar;

/// Argument of a Mellin transform. The rational representative, when
/// present, enables the exact evaluation path; `z` is always usable.
#[derive(Clone, Copy, Debug)]
pub struct MellinPoint {
    pub z: Complex64,
    pub rational: Option<Rational64>,
}

impl MellinPoint {
    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational64::from_integer(n))
    }

    pub fn from_rational(q: Rational64) -> Self {
        MellinPoint {
            z: Complex64::new(q.to_f64().unwrap(), 0.0),
            rational: Some(q),
        }
    }

    pub fn from_c64(z: Complex64) -> Self {
        MellinPoint { z, rational: None }
    }
}

/// Result of a Mellin evaluation. `exact` is true only when every
/// contributing term went through a closed form in the exact ring.
#[derive(Clone, Debug)]
pub struct MellinValue {
    pub value: Scalar,
    pub exact: bool,
    pub domain_ok: bool,
}

impl MellinValue {
    pub fn to_c64(&self) -> Complex64 {
        self.value.to_c64()
    }

    /// One-line CLI rendering: `value=<decimal17> exact=<bool> form=<...>`.
    pub fn render(&self) -> String {
        let v = self.to_c64();
        let value = if v.im == 0.0 {
            format!("{}", v.re)
        } else if v.im > 0.0 {
            format!("{}+{}i", v.re, v.im)
        } else {
            format!("{}{}i", v.re, v.im)
        };
        let form = match self.value.as_exact() {
            Some(p) if p.lambda_degree() == 0 => "rational",
            Some(_) => "rational+q*ln2",
            None => "float",
        };
        format!("value={value} exact={} form={form}", self.exact)
    }
}

fn scalar_powi(base: &Scalar, n: u32) -> Scalar {
    let mut acc = Scalar::one();
    for _ in 0..n {
        acc = acc * base.clone();
    }
    acc
}

fn factorial(n: u32) -> Scalar {
    let mut acc = Scalar::one();
    for k in 2..=n as i64 {
        acc = acc * Scalar::from_int(k);
    }
    acc
}

/// `B(s) = ∫₀¹ r^{s−1}/(1+r²) dr` for positive even integer `s`, exactly.
/// `B(2) = ln2/2` and `B(s) = 1/(s−2) − B(s−2)`.
fn inv1p_exact_even(s: i64) -> Scalar {
    debug_assert!(s >= 2 && s % 2 == 0);
    let mut acc = Scalar::ln2() / Scalar::from_int(2);
    let mut k = 4;
    while k <= s {
        acc = Scalar::from_ratio(1, k - 2) - acc;
        k += 2;
    }
    acc
}

/// `B(s) = Σ_{j≥0} (−1)^j/(s+2j)` for `Re s > 0`, by iterated averaging
/// (Euler transformation) of the alternating partial sums.
pub fn inv1p_series(s: Complex64) -> Complex64 {
    const M: usize = 48;
    let mut rows: Vec<Complex64> = Vec::with_capacity(M);
    let mut partial = Complex64::new(0.0, 0.0);
    for j in 0..M {
        let term = 1.0 / (s + 2.0 * j as f64);
        partial += if j % 2 == 0 { term } else { -term };
        rows.push(partial);
    }
    // Repeated averaging of adjacent partial sums; the last surviving entry
    // is the accelerated value.
    let mut len = rows.len();
    while len > 1 {
        for i in 0..len - 1 {
            rows[i] = 0.5 * (rows[i] + rows[i + 1]);
        }
        len -= 1;
    }
    rows[0]
}

/// Direct averaged-pair partial summation of the same series: the mean of
/// two consecutive partial sums, `(S_N + S_{N+1})/2`, with error `O(1/N²)`.
/// Slow on purpose — this is the independent check on [`inv1p_series`].
pub fn inv1p_series_direct(s: Complex64, n: usize) -> Complex64 {
    let mut partial = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let term = 1.0 / (s + 2.0 * j as f64);
        partial += if j % 2 == 0 { term } else { -term };
    }
    let next = {
        let term = 1.0 / (s + 2.0 * n as f64);
        partial + if n % 2 == 0 { term } else { -term }
    };
    0.5 * (partial + next)
}

/// Closed-form Mellin transform of a single term at `z`, with per-term
/// domain check `Re z + a > 0`.
fn mellin_term(t: &RadialTerm, z: &MellinPoint) -> Result<(Scalar, bool)> {
    let a = t.power.to_f64().unwrap();
    if z.z.re + a <= 0.0 {
        return Err(Error::Domain(format!(
            "Mellin transform of {} r^{} term needs Re(z) + a > 0, got {}",
            t.kind.tag(),
            t.power,
            z.z.re + a
        )));
    }
    let exact_arg = match (&z.rational, t.coeff.is_exact()) {
        (Some(zr), true) => Some(*zr + t.power),
        _ => None,
    };
    match t.kind {
        TermKind::MonomialLog => {
            // c·(−1)^b·b!/(z+a)^{b+1}
            let b = t.logpow;
            match exact_arg {
                Some(q) => {
                    let inv = Scalar::from_ratio(*q.denom(), *q.numer());
                    let sign = if b % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
                    Ok((t.coeff.clone() * sign * factorial(b) * scalar_powi(&inv, b + 1), true))
                }
                None => {
                    let q = z.z + a;
                    let sign = if b % 2 == 0 { 1.0 } else { -1.0 };
                    let fact = (1..=b as u64).map(|k| k as f64).product::<f64>();
                    let v = t.coeff.to_c64() * sign * fact / q.powu(b + 1);
                    Ok((Scalar::from_c64(v), false))
                }
            }
        }
        TermKind::InverseOnePlusSquare => match exact_arg {
            Some(q) if q.is_integer() && q.numer() % 2 == 0 => {
                Ok((t.coeff.clone() * inv1p_exact_even(*q.numer()), true))
            }
            _ => {
                let v = t.coeff.to_c64() * inv1p_series(z.z + a);
                Ok((Scalar::from_c64(v), false))
            }
        },
        TermKind::LogOnePlusSquare => {
            // By parts: ln2/s − (2/s)·B(s+2), s = z + a.
            match exact_arg {
                Some(q) if q.is_integer() && q.numer() % 2 == 0 => {
                    let s = *q.numer();
                    let v = (Scalar::ln2() - Scalar::from_int(2) * inv1p_exact_even(s + 2))
                        / Scalar::from_int(s);
                    Ok((t.coeff.clone() * v, true))
                }
                _ => {
                    let s = z.z + a;
                    let v = (Complex64::new(std::f64::consts::LN_2, 0.0)
                        - 2.0 * inv1p_series(s + 2.0))
                        / s;
                    Ok((Scalar::from_c64(t.coeff.to_c64() * v), false))
                }
            }
        }
    }
}

/// Mellin transform of a term-algebra function at `z`; exact whenever every
/// term admits an exact closed form at this argument.
pub fn mellin_eval(f: &RadialFunction, z: &MellinPoint) -> Result<MellinValue> {
    let mut value = Scalar::zero();
    let mut exact = true;
    for t in f.terms() {
        let (v, e) = mellin_term(t, z)?;
        exact &= e;
        value = value + v;
    }
    Ok(MellinValue { value, exact, domain_ok: true })
}

/// Independent oracle: adaptive quadrature of `∫₀¹ f(r) r^{z−1} dr` for any
/// pointwise-evaluable radial function.
pub fn mellin_quadrature(
    f: &dyn Fn(f64) -> Complex64,
    z: &MellinPoint,
    tol: f64,
) -> Result<MellinValue> {
    let z0 = z.z;
    let v = if z0.im == 0.0 {
        quad::integrate_01(&|r| f(r) * r.powf(z0.re - 1.0), tol)?
    } else {
        quad::integrate_01(&|r| f(r) * Complex64::new(r, 0.0).powc(z0 - 1.0), tol)?
    };
    Ok(MellinValue { value: Scalar::from_c64(v), exact: false, domain_ok: true })
}

/// Max residual of the convolution identity `(f *_M g)^(z) = f̂(z)·ĝ(z)`
/// over the given arguments. When `f` is a pure monomial the convolution is
/// done symbolically; otherwise both sides fall back to numerics.
pub fn convolution_identity_check(
    f: &RadialFunction,
    g: &RadialFunction,
    zs: &[MellinPoint],
    tol: f64,
) -> Result<f64> {
    if f.is_zero() || g.is_zero() {
        return Ok(0.0);
    }
    let symbolic = monomial_exponent(f).and_then(|(c, m)| {
        convolve_monomial(m, &g.scale(&c)).ok()
    });
    let mut worst: f64 = 0.0;
    for z in zs {
        let lhs = match &symbolic {
            Some(conv) => mellin_eval(conv, z)?.to_c64(),
            None => {
                let conv = |r: f64| {
                    convolve_numeric(&|u| f.eval(u), &|t| g.eval(t), r, tol * 1e-2)
                        .unwrap_or(Complex64::new(f64::NAN, 0.0))
                };
                mellin_quadrature(&conv, z, tol * 1e-1)?.to_c64()
            }
        };
        let rhs = mellin_eval(f, z)?.to_c64() * mellin_eval(g, z)?.to_c64();
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// `Some((c, m))` when `f` is exactly `c·r^m` with integer `m`.
fn monomial_exponent(f: &RadialFunction) -> Option<(Scalar, i64)> {
    match f.terms() {
        [t] if t.kind == TermKind::MonomialLog && t.logpow == 0 && t.power.is_integer() => {
            Some((t.coeff.clone(), *t.power.numer()))
        }
        _ => None,
    }
}

/// Certificate for the finite injectivity proxy: the exact determinant of
/// the Cauchy-type matrix `[1/(z_i + a_j)]`.
#[derive(Clone, Debug)]
pub struct NullTestCertificate {
    pub det: Scalar,
    pub nonzero: bool,
}

/// Finite stand-in for Mellin injectivity on monomial spans: a nonzero
/// determinant of `[1/(z_i + a_j)]` certifies that `Σ c_j r^{a_j}` with
/// vanishing transform at all the nodes must vanish identically.
pub fn vandermonde_null_test(
    exponents: &[Rational64],
    nodes: &[Rational64],
) -> Result<NullTestCertificate> {
    if exponents.len() != nodes.len() || exponents.is_empty() {
        return Err(Error::Domain(
            "need equally many exponents and nodes, at least one each".into(),
        ));
    }
    for w in [exponents, nodes] {
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] == w[j] {
                    return Err(Error::Domain(format!("repeated entry {}", w[i])));
                }
            }
        }
    }
    for a in exponents {
        if *a <= Rational64::from_integer(-2) {
            return Err(Error::Domain(format!("exponent {a} not > -2")));
        }
    }
    for z in nodes {
        if *z < Rational64::from_integer(2) {
            return Err(Error::Domain(format!("node {z} below Re z = 2")));
        }
    }
    let det = cauchy_det_elimination(exponents, nodes)?;
    let nonzero = !det.is_zero();
    Ok(NullTestCertificate { det, nonzero })
}

fn cauchy_entry(z: Rational64, a: Rational64) -> Scalar {
    let q = z + a;
    Scalar::from_ratio(*q.denom(), *q.numer())
}

/// Determinant by exact Gaussian elimination.
pub fn cauchy_det_elimination(exponents: &[Rational64], nodes: &[Rational64]) -> Result<Scalar> {
    let d = nodes.len();
    let mut m: Vec<Vec<Scalar>> = nodes
        .iter()
        .map(|&z| exponents.iter().map(|&a| cauchy_entry(z, a)).collect())
        .collect();
    let mut det = Scalar::one();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !m[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return Ok(Scalar::zero()),
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = det * p.clone();
        for r in col + 1..d {
            let factor = m[r][col].clone() / p.clone();
            for c in col..d {
                let sub = factor.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - sub;
            }
        }
    }
    Ok(det)
}

/// Determinant by cofactor expansion along the first row; exponential-cost
/// oracle used to cross-check the elimination for small `d`.
pub fn cauchy_det_cofactor(exponents: &[Rational64], nodes: &[Rational64]) -> Scalar {
    let d = nodes.len();
    if d == 1 {
        return cauchy_entry(nodes[0], exponents[0]);
    }
    let mut det = Scalar::zero();
    for (j, &a) in exponents.iter().enumerate() {
        let minor_exps: Vec<Rational64> = exponents
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, &v)| v)
            .collect();
        let minor = cauchy_det_cofactor(&minor_exps, &nodes[1..]);
        let signed = cauchy_entry(nodes[0], a) * minor;
        det = if j % 2 == 0 { det + signed } else { det - signed };
    }
    det
}

/// Least-squares fit of a constant offset `c` with `F ≈ G + c` on the
/// ladder `z₀ + p·j`, `j = 0..=jmax`; returns `(c, max |F − G − c|)`.
pub fn fit_constant_offset(
    f: &dyn Fn(f64) -> f64,
    g: &dyn Fn(f64) -> f64,
    z0: f64,
    p: f64,
    jmax: usize,
) -> (f64, f64) {
    let diffs: Vec<f64> = (0..=jmax).map(|j| {
        let z = z0 + p * j as f64;
        f(z) - g(z)
    }).collect();
    let c = diffs.iter().sum::<f64>() / diffs.len() as f64;
    let dev = diffs.iter().map(|d| (d - c).abs()).fold(0.0, f64::max);
    (c, dev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{reduce_geometric, GeometricRatioSpec};
    use crate::scalar::LN2;

    fn rat(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn fstar(n: i64) -> RadialFunction {
        reduce_geometric(&GeometricRatioSpec { coeff: Scalar::from_int(-4), p: 2, q: 2 * n })
            .unwrap()
    }

    #[test]
    fn monomial_closed_form() {
        // r̂²(4) = 1/6
        let f = RadialFunction::monomial(Scalar::one(), rat(2, 1));
        let v = mellin_eval(&f, &MellinPoint::from_int(4)).unwrap();
        assert!(v.exact);
        assert_eq!(v.value, Scalar::from_ratio(1, 6));
        assert_eq!(v.render(), "value=0.16666666666666666 exact=true form=rational");
    }

    #[test]
    fn log_closed_form() {
        // (ln r)^(2) = -1/4
        let f = RadialFunction::monlog(Scalar::one(), rat(0, 1), 1);
        let v = mellin_eval(&f, &MellinPoint::from_int(2)).unwrap();
        assert!(v.exact);
        assert_eq!(v.value, Scalar::from_ratio(-1, 4));
    }

    #[test]
    fn fstar_n5_at_zero() {
        // f̂_*(0) = -(3 + 4 ln2)/2 for N = 5, c₅ = 1.
        let v = mellin_eval(&fstar(5), &MellinPoint::from_int(0)).unwrap();
        assert!(v.exact);
        let expect = -(Scalar::from_int(3) + Scalar::from_int(4) * Scalar::ln2())
            / Scalar::from_int(2);
        assert_eq!(v.value, expect);
        assert!((v.to_c64().re - (-(3.0 + 4.0 * LN2) / 2.0)).abs() < 1e-15);
        // Printed decimal in the source analysis: ≈ -2.8863.
        assert!((v.to_c64().re - (-2.8863)).abs() < 1e-4);
    }

    #[test]
    fn fstar_n3_at_six() {
        // f̂_*(6) = -(31 - 30 ln2)/15 for N = 3, c₃ = 1.
        let v = mellin_eval(&fstar(3), &MellinPoint::from_int(6)).unwrap();
        assert!(v.exact);
        let expect = -(Scalar::from_int(31) - Scalar::from_int(30) * Scalar::ln2())
            / Scalar::from_int(15);
        assert_eq!(v.value, expect);
        assert!((v.to_c64().re - (-0.68035)).abs() < 1e-4);
    }

    #[test]
    fn domain_violation_names_term() {
        let f = RadialFunction::monomial(Scalar::one(), rat(-3, 1));
        let err = mellin_eval(&f, &MellinPoint::from_int(2)).unwrap_err();
        assert!(err.to_string().contains("MONLOG"), "{err}");
    }

    #[test]
    fn quadrature_matches_closed_forms() {
        let f = RadialFunction::monomial(Scalar::one(), rat(2, 1));
        let v = mellin_quadrature(&|r| f.eval(r), &MellinPoint::from_int(4), 1e-12).unwrap();
        assert!(!v.exact);
        assert!((v.to_c64().re - 1.0 / 6.0).abs() < 1e-12);

        // The N=3 transform at z=2: quadrature is the authority here.
        let f3 = fstar(3);
        let closed = mellin_eval(&f3, &MellinPoint::from_int(2)).unwrap();
        let oracle = mellin_quadrature(&|r| f3.eval(r), &MellinPoint::from_int(2), 1e-12).unwrap();
        assert!((closed.to_c64() - oracle.to_c64()).norm() < 1e-10);
        assert!((oracle.to_c64().re - (2.0 * LN2 - 8.0 / 3.0)).abs() < 1e-10);
    }

    #[test]
    fn quadrature_divergence() {
        let f = RadialFunction::monomial(Scalar::one(), rat(-3, 1));
        assert!(mellin_quadrature(&|r| f.eval(r), &MellinPoint::from_int(2), 1e-10).is_err());
    }

    #[test]
    fn series_acceleration_vs_direct() {
        // 5 arguments, accelerated vs 10⁶-term averaged-pair direct sums.
        for s in [1.0, 2.0, 3.5, 7.0, 12.25] {
            let s = Complex64::new(s, 0.0);
            let fast = inv1p_series(s);
            let slow = inv1p_series_direct(s, 1_000_000);
            assert!((fast - slow).norm() < 1e-12, "s={s}");
        }
    }

    #[test]
    fn series_matches_exact_even() {
        for s in [2i64, 4, 6, 10] {
            let exact = inv1p_exact_even(s).to_c64();
            let series = inv1p_series(Complex64::new(s as f64, 0.0));
            assert!((exact - series).norm() < 1e-14, "s={s}");
        }
    }

    #[test]
    fn convolution_identity_exact_monomial() {
        // (1 *_M r²)^ = 1̂ · r̂² at z ∈ {2,4,6}, exactly.
        let one = RadialFunction::constant(Scalar::one());
        let g = RadialFunction::monomial(Scalar::one(), rat(2, 1));
        let zs: Vec<MellinPoint> = [2, 4, 6].map(MellinPoint::from_int).to_vec();
        let res = convolution_identity_check(&one, &g, &zs, 1e-12).unwrap();
        assert_eq!(res, 0.0);
    }

    #[test]
    fn convolution_identity_zero() {
        let res = convolution_identity_check(
            &RadialFunction::zero(),
            &fstar(3),
            &[MellinPoint::from_int(4)],
            1e-12,
        )
        .unwrap();
        assert_eq!(res, 0.0);
    }

    #[test]
    fn convolution_identity_fstar() {
        let one = RadialFunction::constant(Scalar::one());
        let zs: Vec<MellinPoint> = [2, 4, 6, 8].map(MellinPoint::from_int).to_vec();
        let res = convolution_identity_check(&one, &fstar(3), &zs, 1e-10).unwrap();
        assert!(res < 1e-10, "residual {res}");
    }

    #[test]
    fn vandermonde_small_cases() {
        // {0,2} vs {2,4}: det = 1/2·1/6 − 1/4·1/4 = 1/48.
        let c = vandermonde_null_test(&[rat(0, 1), rat(2, 1)], &[rat(2, 1), rat(4, 1)]).unwrap();
        assert!(c.nonzero);
        assert_eq!(c.det, Scalar::from_ratio(1, 48));

        let c = vandermonde_null_test(&[rat(0, 1)], &[rat(2, 1)]).unwrap();
        assert_eq!(c.det, Scalar::from_ratio(1, 2));
    }

    #[test]
    fn vandermonde_elimination_vs_cofactor() {
        let exps = [rat(0, 1), rat(2, 1), rat(4, 1)];
        let nodes = [rat(3, 1), rat(5, 1), rat(7, 1)];
        let lhs = cauchy_det_elimination(&exps, &nodes).unwrap();
        let rhs = cauchy_det_cofactor(&exps, &nodes);
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());

        // And up to d = 5 on a generic progression.
        let exps: Vec<Rational64> = (0..5).map(|i| rat(2 * i + 1, 2)).collect();
        let nodes: Vec<Rational64> = (0..5).map(|i| rat(3 * i + 2, 1)).collect();
        assert_eq!(
            cauchy_det_elimination(&exps, &nodes).unwrap(),
            cauchy_det_cofactor(&exps, &nodes)
        );
    }

    #[test]
    fn vandermonde_rejects_bad_input() {
        assert!(vandermonde_null_test(&[rat(0, 1), rat(0, 1)], &[rat(2, 1), rat(3, 1)]).is_err());
        assert!(vandermonde_null_test(&[rat(0, 1), rat(2, 1)], &[rat(2, 1), rat(2, 1)]).is_err());
        assert!(vandermonde_null_test(&[rat(-3, 1)], &[rat(2, 1)]).is_err());
        assert!(vandermonde_null_test(&[rat(0, 1)], &[rat(1, 1)]).is_err());
        assert!(vandermonde_null_test(&[rat(0, 1)], &[rat(2, 1), rat(4, 1)]).is_err());
    }

    #[test]
    fn fit_constant_trivial() {
        let (c, dev) = fit_constant_offset(&|z| z * z, &|z| z * z, 2.0, 1.0, 10);
        assert_eq!(c, 0.0);
        assert_eq!(dev, 0.0);
    }

    #[test]
    fn fit_constant_weight_of_one() {
        // F(z) = 2(z+1)·f̂₀(2z+2) with f₀ = 1: f̂₀(2z+2) = 1/(2z+2), so F ≡ 1.
        let f0 = RadialFunction::constant(Scalar::one());
        let f = |z: f64| {
            2.0 * (z + 1.0)
                * mellin_eval(&f0, &MellinPoint::from_c64(Complex64::new(2.0 * z + 2.0, 0.0)))
                    .unwrap()
                    .to_c64()
                    .re
        };
        let (c, dev) = fit_constant_offset(&f, &|_| 0.0, 1.0, 1.0, 12);
        assert!((c - 1.0).abs() < 1e-12);
        assert!(dev < 1e-12);
    }

    #[test]
    fn linearity_and_shift_rule() {
        let f = fstar(3);
        let g = RadialFunction::monlog(Scalar::from_ratio(2, 3), rat(1, 1), 1);
        let z = MellinPoint::from_int(4);
        let alpha = Scalar::from_ratio(5, 7);
        let combo = f.scale(&alpha).add(&g);
        let lhs = mellin_eval(&combo, &z).unwrap().value;
        let rhs = alpha * mellin_eval(&f, &z).unwrap().value + mellin_eval(&g, &z).unwrap().value;
        assert_eq!(lhs, rhs);

        // mellin(r^m f)(z) = mellin(f)(z + m)
        let shifted = mellin_eval(&f.mul_monomial(rat(3, 1)), &z).unwrap().value;
        let direct = mellin_eval(&f, &MellinPoint::from_int(7)).unwrap().value;
        assert_eq!(shifted, direct);
    }

    #[test]
    fn complex_argument_float_path() {
        let f = RadialFunction::monomial(Scalar::one(), rat(2, 1));
        let z = MellinPoint::from_c64(Complex64::new(3.0, 1.5));
        let v = mellin_eval(&f, &z).unwrap();
        assert!(!v.exact);
        let oracle = mellin_quadrature(&|r| f.eval(r), &z, 1e-12).unwrap();
        assert!((v.to_c64() - oracle.to_c64()).norm() < 1e-11);
    }
}
