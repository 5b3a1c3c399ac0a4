//! A closed symbolic algebra of radial functions on (0,1].
//!
//! Three term kinds cover every radial expression the computations need:
//! `c·r^a (ln r)^b`, `c·r^a/(1+r²)` and `c·r^a·ln(1+r²)`. The algebra is
//! closed under addition, scalar multiplication, multiplication by a
//! monomial, reduction of the geometric ratios `r^p(1-r^q)/(1-r^4)`, and
//! Mellin convolution with a monomial. Anything outside it is handled
//! numerically elsewhere.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::quad;
use crate::scalar::Scalar;

/// Strict convergence threshold for membership in `L¹([0,1], r dr)`:
/// every term must have exponent `a > -2`.
pub const L1_EXPONENT_THRESHOLD: Rational64 = Rational64::new_raw(-2, 1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermKind {
    /// `c · r^a (ln r)^b`
    MonomialLog,
    /// `c · r^a / (1 + r²)`
    InverseOnePlusSquare,
    /// `c · r^a · ln(1 + r²)`
    LogOnePlusSquare,
}

impl TermKind {
    pub fn tag(self) -> &'static str {
        match self {
            TermKind::MonomialLog => "MONLOG",
            TermKind::InverseOnePlusSquare => "INV1P",
            TermKind::LogOnePlusSquare => "LOG1P",
        }
    }

    fn from_tag(s: &str) -> Result<Self> {
        match s {
            "MONLOG" => Ok(TermKind::MonomialLog),
            "INV1P" => Ok(TermKind::InverseOnePlusSquare),
            "LOG1P" => Ok(TermKind::LogOnePlusSquare),
            _ => Err(Error::Parse(format!("unknown term kind `{s}`"))),
        }
    }
}

/// A single closed-algebra term. `logpow` is meaningful only for
/// [`TermKind::MonomialLog`] and is zero for the other kinds.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialTerm {
    pub kind: TermKind,
    pub coeff: Scalar,
    pub power: Rational64,
    pub logpow: u32,
}

impl RadialTerm {
    /// Pointwise value at `r` in (0,1), coefficient included.
    pub fn eval(&self, r: f64) -> Complex64 {
        let a = self.power.to_f64().unwrap();
        let base = match self.kind {
            TermKind::MonomialLog => r.powf(a) * r.ln().powi(self.logpow as i32),
            TermKind::InverseOnePlusSquare => r.powf(a) / (1.0 + r * r),
            TermKind::LogOnePlusSquare => r.powf(a) * (1.0 + r * r).ln(),
        };
        self.coeff.to_c64() * base
    }

}

/// A finite sum of closed-algebra terms in normal form: at most one term per
/// `(kind, power, logpow)` triple, zero-coefficient terms removed, terms in
/// key order. The empty sum is the zero function.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RadialFunction {
    terms: Vec<RadialTerm>,
}

impl RadialFunction {
    pub fn zero() -> Self {
        RadialFunction { terms: vec![] }
    }

    pub fn from_terms(terms: Vec<RadialTerm>) -> Self {
        let mut map: BTreeMap<(TermKind, Rational64, u32), Scalar> = BTreeMap::new();
        for t in terms {
            let logpow = if t.kind == TermKind::MonomialLog { t.logpow } else { 0 };
            let entry = map
                .entry((t.kind, t.power, logpow))
                .or_insert_with(Scalar::zero);
            *entry = entry.clone() + t.coeff;
        }
        let terms = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((kind, power, logpow), coeff)| RadialTerm { kind, coeff, power, logpow })
            .collect();
        RadialFunction { terms }
    }

    /// `c · r^a`
    pub fn monomial(coeff: Scalar, power: Rational64) -> Self {
        Self::monlog(coeff, power, 0)
    }

    /// `c · r^a (ln r)^b`
    pub fn monlog(coeff: Scalar, power: Rational64, logpow: u32) -> Self {
        Self::from_terms(vec![RadialTerm { kind: TermKind::MonomialLog, coeff, power, logpow }])
    }

    /// `c · r^a / (1+r²)`
    pub fn inv1p(coeff: Scalar, power: Rational64) -> Self {
        Self::from_terms(vec![RadialTerm {
            kind: TermKind::InverseOnePlusSquare,
            coeff,
            power,
            logpow: 0,
        }])
    }

    /// `c · r^a ln(1+r²)`
    pub fn log1p(coeff: Scalar, power: Rational64) -> Self {
        Self::from_terms(vec![RadialTerm {
            kind: TermKind::LogOnePlusSquare,
            coeff,
            power,
            logpow: 0,
        }])
    }

    pub fn constant(coeff: Scalar) -> Self {
        Self::monomial(coeff, Rational64::zero())
    }

    pub fn terms(&self) -> &[RadialTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every coefficient is on the exact path.
    pub fn is_exact(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.is_exact())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut all = self.terms.clone();
        all.extend(rhs.terms.iter().cloned());
        Self::from_terms(all)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| RadialTerm { coeff: t.coeff.clone() * c.clone(), ..t.clone() })
                .collect(),
        )
    }

    /// Multiply by the monomial `r^m`.
    pub fn mul_monomial(&self, m: Rational64) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| RadialTerm { power: t.power + m, ..t.clone() })
                .collect(),
        )
    }

    /// Complex-conjugate all coefficients (the terms themselves are real).
    pub fn conj(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| RadialTerm { coeff: t.coeff.conj(), ..t.clone() })
                .collect(),
        )
    }

    /// Pointwise value at `r` in (0,1).
    pub fn eval(&self, r: f64) -> Complex64 {
        self.terms.iter().map(|t| t.eval(r)).sum()
    }

    pub fn eval_re(&self, r: f64) -> f64 {
        self.eval(r).re
    }

    /// Smallest exponent over all terms, `None` for the zero function.
    pub fn min_power(&self) -> Option<Rational64> {
        self.terms.iter().map(|t| t.power).min()
    }
}

// ---------------------------------------------------------------------------
// Geometric ratio reduction
// ---------------------------------------------------------------------------

/// `coeff · r^p (1 - r^q) / (1 - r^4)` with `q` even.
#[derive(Clone, Debug)]
pub struct GeometricRatioSpec {
    pub coeff: Scalar,
    pub p: i64,
    pub q: i64,
}

impl GeometricRatioSpec {
    /// Pointwise value of the unreduced ratio, for sampling checks.
    pub fn eval(&self, r: f64) -> Complex64 {
        let num = 1.0 - r.powi(self.q as i32);
        let den = 1.0 - r.powi(4);
        self.coeff.to_c64() * r.powi(self.p as i32) * num / den
    }
}

/// Exact reduction of `coeff·r^p(1-r^q)/(1-r^4)` into the term algebra.
///
/// For `q ≡ 0 (mod 4)` the ratio is the polynomial `Σ_{j<q/4} r^{4j}`; for
/// `q ≡ 2 (mod 4)` long division of `1 + r² + … + r^{q-2}` by `1 + r²`
/// leaves a polynomial in `r²` plus a constant over `1 + r²`.
pub fn reduce_geometric(spec: &GeometricRatioSpec) -> Result<RadialFunction> {
    if spec.q <= 0 || spec.q % 2 != 0 {
        return Err(Error::Domain(format!(
            "geometric ratio needs positive even q, got {}",
            spec.q
        )));
    }
    let p = Rational64::from_integer(spec.p);
    let mut out = RadialFunction::zero();
    if spec.q % 4 == 0 {
        for j in 0..spec.q / 4 {
            out = out.add(&RadialFunction::monomial(
                spec.coeff.clone(),
                p + Rational64::from_integer(4 * j),
            ));
        }
    } else {
        // (1-r^q)/(1-r^4) = (1 + x + ... + x^{q/2-1})/(1+x), x = r².
        let n = (spec.q / 2) as usize;
        let mut dividend = vec![1i64; n];
        let mut quotient = vec![0i64; n.saturating_sub(1)];
        for k in (1..n).rev() {
            let c = dividend[k];
            quotient[k - 1] = c;
            dividend[k] = 0;
            dividend[k - 1] -= c;
        }
        let remainder = dividend[0];
        for (i, &c) in quotient.iter().enumerate() {
            if c != 0 {
                out = out.add(&RadialFunction::monomial(
                    spec.coeff.clone() * Scalar::from_int(c),
                    p + Rational64::from_integer(2 * i as i64),
                ));
            }
        }
        if remainder != 0 {
            out = out.add(&RadialFunction::inv1p(
                spec.coeff.clone() * Scalar::from_int(remainder),
                p,
            ));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// L¹ membership
// ---------------------------------------------------------------------------

/// Membership in `L¹([0,1], r dr)`: every term must have `a > -2`.
/// When the function is a member, the numerically integrated norm
/// `∫_0^1 |f(r)| r dr` is also returned.
pub fn l1_membership(f: &RadialFunction) -> (bool, Option<f64>) {
    for t in f.terms() {
        if t.power <= L1_EXPONENT_THRESHOLD {
            return (false, None);
        }
    }
    if f.is_zero() {
        return (true, Some(0.0));
    }
    let norm = quad::integrate_01_real(&|r| f.eval(r).norm() * r, 1e-10).ok();
    (true, norm)
}

// ---------------------------------------------------------------------------
// Mellin convolution with a monomial
// ---------------------------------------------------------------------------

/// Antiderivative of `c · t^e (ln t)^b` within the algebra.
fn antider_monlog(coeff: Scalar, e: Rational64, b: u32) -> RadialFunction {
    if e == Rational64::from_integer(-1) {
        // ∫ (ln t)^b / t dt = (ln t)^{b+1}/(b+1)
        return RadialFunction::monlog(
            coeff / Scalar::from_int(b as i64 + 1),
            Rational64::zero(),
            b + 1,
        );
    }
    let e1 = e + 1;
    let inv = Scalar::from_ratio(*e1.denom(), *e1.numer());
    let lead = RadialFunction::monlog(coeff.clone() * inv.clone(), e1, b);
    if b == 0 {
        lead
    } else {
        let tail = antider_monlog(coeff * inv * Scalar::from_int(-(b as i64)), e, b - 1);
        lead.add(&tail)
    }
}

/// `∫ u^k/(1+u) du` written in `t` (`u = t²`), valid for any integer `k`.
fn int_u_pow_over_1p(k: i64) -> RadialFunction {
    if k == 0 {
        return RadialFunction::log1p(Scalar::one(), Rational64::zero());
    }
    if k > 0 {
        // u^k/(1+u) = u^{k-1} - u^{k-1}/(1+u)
        let lead = RadialFunction::monomial(Scalar::from_ratio(1, k), Rational64::from_integer(2 * k));
        lead.sub(&int_u_pow_over_1p(k - 1))
    } else if k == -1 {
        // 1/(u(1+u)) = 1/u - 1/(1+u);  ∫ du/u = ln u = 2 ln t
        let lnu = RadialFunction::monlog(Scalar::from_int(2), Rational64::zero(), 1);
        lnu.sub(&RadialFunction::log1p(Scalar::one(), Rational64::zero()))
    } else {
        // u^k/(1+u) = u^k - u^{k+1}/(1+u)
        let lead = RadialFunction::monomial(
            Scalar::from_ratio(1, k + 1),
            Rational64::from_integer(2 * (k + 1)),
        );
        lead.sub(&int_u_pow_over_1p(k + 1))
    }
}

/// Antiderivative of `c · t^e/(1+t²)` for odd integer `e`.
fn antider_inv1p(coeff: Scalar, e: i64) -> RadialFunction {
    debug_assert!(e % 2 != 0);
    let k = (e - 1) / 2;
    int_u_pow_over_1p(k).scale(&(coeff / Scalar::from_int(2)))
}

/// Antiderivative of `c · t^e ln(1+t²)` for odd integer `e` (`e ≠ -1`).
fn antider_log1p(coeff: Scalar, e: i64) -> Result<RadialFunction> {
    if e == -1 {
        return Err(Error::Unsupported(
            "∫ ln(1+t²)/t dt leaves the term algebra (dilogarithm)".into(),
        ));
    }
    let e1 = e + 1;
    let inv = Scalar::from_ratio(1, e1);
    let lead = RadialFunction::log1p(coeff.clone() * inv.clone(), Rational64::from_integer(e1));
    let tail = antider_inv1p(coeff * inv * Scalar::from_int(-2), e + 2);
    Ok(lead.add(&tail))
}

/// Exact value of an algebra element at `t = 1` (ln 1 = 0, ln 2 stays formal).
fn eval_exact_at_one(f: &RadialFunction) -> Scalar {
    let mut acc = Scalar::zero();
    for t in f.terms() {
        let factor = match t.kind {
            TermKind::MonomialLog => {
                if t.logpow == 0 {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }
            TermKind::InverseOnePlusSquare => Scalar::from_ratio(1, 2),
            TermKind::LogOnePlusSquare => Scalar::ln2(),
        };
        acc = acc + t.coeff.clone() * factor;
    }
    acc
}

fn as_odd_int(e: Rational64) -> Option<i64> {
    if e.is_integer() && e.numer() % 2 != 0 {
        Some(*e.numer())
    } else {
        None
    }
}

/// Mellin convolution with a monomial:
/// `(r^m *_M g)(r) = r^m ∫_r^1 t^{-m-1} g(t) dt`, evaluated exactly.
///
/// Closes whenever each integrand term is a monomial-log, or has the shape
/// `t^{odd}/(1+t²)` or `t^{odd}·ln(1+t²)`; even powers over `1+t²` would
/// need `arctan` and are rejected so the caller can fall back to numerics.
pub fn convolve_monomial(m: i64, g: &RadialFunction) -> Result<RadialFunction> {
    let shift = Rational64::from_integer(-m - 1);
    let mut antider = RadialFunction::zero();
    for t in g.terms() {
        let e = t.power + shift;
        let piece = match t.kind {
            TermKind::MonomialLog => antider_monlog(t.coeff.clone(), e, t.logpow),
            TermKind::InverseOnePlusSquare => match as_odd_int(e) {
                Some(k) => antider_inv1p(t.coeff.clone(), k),
                None => {
                    return Err(Error::Unsupported(format!(
                        "∫ t^{e}/(1+t²) dt leaves the term algebra (needs arctan)"
                    )))
                }
            },
            TermKind::LogOnePlusSquare => match as_odd_int(e) {
                Some(k) => antider_log1p(t.coeff.clone(), k)?,
                None => {
                    return Err(Error::Unsupported(format!(
                        "∫ t^{e} ln(1+t²) dt leaves the term algebra"
                    )))
                }
            },
        };
        antider = antider.add(&piece);
    }
    // ∫_r^1 = F(1) - F(r), then multiply by r^m.
    let at_one = eval_exact_at_one(&antider);
    let m_rat = Rational64::from_integer(m);
    let constant = RadialFunction::monomial(at_one, m_rat);
    Ok(constant.sub(&antider.mul_monomial(m_rat)))
}

/// Numeric evaluation of `(f *_M g)(r) = ∫_r^1 f(r/t) g(t) dt/t` for
/// pointwise-given factors; used as an oracle against the exact path.
pub fn convolve_numeric(f: &dyn Fn(f64) -> Complex64, g: &dyn Fn(f64) -> Complex64, r: f64, tol: f64) -> Result<Complex64> {
    // Substitute t = r + (1-r)s to reuse the (0,1) engine.
    let w = 1.0 - r;
    // Keep t strictly inside (0,1): rounding can push r + w·s to exactly 1,
    // where ratio-form integrands evaluate to 0/0.
    let below_one = 1.0 - 0.5 * f64::EPSILON;
    quad::integrate_01(
        &|s| {
            let t = (r + w * s).min(below_one);
            f(r / t) * g(t) / t * w
        },
        tol,
    )
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

impl fmt::Display for RadialFunction {
    /// One term per line: `KIND coeff a_num/a_den b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            writeln!(
                f,
                "{} {} {}/{} {}",
                t.kind.tag(),
                t.coeff,
                t.power.numer(),
                t.power.denom(),
                t.logpow
            )?;
        }
        Ok(())
    }
}

impl std::str::FromStr for RadialFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for line in s.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::Parse(format!(
                    "expected `kind coeff a_num/a_den b`, got `{line}`"
                )));
            }
            let kind = TermKind::from_tag(fields[0])?;
            let coeff: Scalar = fields[1].parse()?;
            let power = parse_rational64(fields[2])?;
            let logpow: u32 = fields[3]
                .parse()
                .map_err(|_| Error::Parse(format!("bad log power `{}`", fields[3])))?;
            terms.push(RadialTerm { kind, coeff, power, logpow });
        }
        Ok(RadialFunction::from_terms(terms))
    }
}

pub(crate) fn parse_rational64(s: &str) -> Result<Rational64> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: i64 = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let den: i64 = d
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if den == 0 {
        return Err(Error::Parse(format!("zero denominator `{s}`")));
    }
    Ok(Rational64::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::LN2;

    fn rat(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    /// `f_*` from the odd/even case analysis: `-4c·r²(1-r^{2N})/(1-r⁴)`.
    pub fn fstar(n: i64, c: Scalar) -> (GeometricRatioSpec, RadialFunction) {
        let spec = GeometricRatioSpec { coeff: c * Scalar::from_int(-4), p: 2, q: 2 * n };
        let reduced = reduce_geometric(&spec).unwrap();
        (spec, reduced)
    }

    #[test]
    fn reduce_q6() {
        // (c=1, p=2, q=6) → r⁴ + r²/(1+r²)
        let spec = GeometricRatioSpec { coeff: Scalar::one(), p: 2, q: 6 };
        let f = reduce_geometric(&spec).unwrap();
        let expect = RadialFunction::monomial(Scalar::one(), rat(4, 1))
            .add(&RadialFunction::inv1p(Scalar::one(), rat(2, 1)));
        assert_eq!(f, expect);
        for i in 1..100 {
            let r = i as f64 / 100.0;
            assert!((f.eval(r) - spec.eval(r)).norm() < 1e-12, "mismatch at r={r}");
        }
    }

    #[test]
    fn reduce_q4_is_constant() {
        let spec = GeometricRatioSpec { coeff: Scalar::one(), p: 0, q: 4 };
        let f = reduce_geometric(&spec).unwrap();
        assert_eq!(f, RadialFunction::constant(Scalar::one()));
    }

    #[test]
    fn reduce_q10() {
        // (c=1, p=2, q=10) → r⁸ + r⁴ + r²/(1+r²)
        let spec = GeometricRatioSpec { coeff: Scalar::one(), p: 2, q: 10 };
        let f = reduce_geometric(&spec).unwrap();
        let expect = RadialFunction::monomial(Scalar::one(), rat(8, 1))
            .add(&RadialFunction::monomial(Scalar::one(), rat(4, 1)))
            .add(&RadialFunction::inv1p(Scalar::one(), rat(2, 1)));
        assert_eq!(f, expect);
        for i in 1..100 {
            let r = i as f64 / 100.0;
            assert!((f.eval(r) - spec.eval(r)).norm() < 1e-12);
        }
    }

    #[test]
    fn reduce_rejects_odd_q() {
        let spec = GeometricRatioSpec { coeff: Scalar::one(), p: 0, q: 3 };
        assert!(reduce_geometric(&spec).is_err());
        let spec = GeometricRatioSpec { coeff: Scalar::one(), p: 0, q: 0 };
        assert!(reduce_geometric(&spec).is_err());
    }

    #[test]
    fn reduce_times_denominator_recovers_numerator() {
        // reduce output, multiplied back by (1-r⁴), equals coeff·r^p(1-r^q).
        for q in [2i64, 4, 6, 8, 10, 14] {
            let spec = GeometricRatioSpec { coeff: Scalar::from_int(3), p: 2, q };
            let f = reduce_geometric(&spec).unwrap();
            for i in 1..100 {
                let r = i as f64 / 100.0;
                let lhs = f.eval(r).re * (1.0 - r.powi(4));
                let rhs = 3.0 * r.powi(2) * (1.0 - r.powi(q as i32));
                assert!((lhs - rhs).abs() < 1e-12, "q={q} r={r}");
            }
        }
    }

    #[test]
    fn l1_simple_cases() {
        let f = RadialFunction::monomial(Scalar::one(), rat(-1, 1));
        let (ok, norm) = l1_membership(&f);
        assert!(ok);
        assert!((norm.unwrap() - 1.0).abs() < 1e-9); // ∫ r^{-1}·r dr = 1

        let g = RadialFunction::monomial(Scalar::one(), rat(-2, 1));
        assert!(!l1_membership(&g).0);
    }

    #[test]
    fn l1_case_n1_candidate_fails() {
        // The N=1 construction with c_{-3}=1, c_1=1 contains r^{-3} terms.
        let fm3 = case_n1_f_minus_3(Scalar::one(), Scalar::one());
        assert!(!l1_membership(&fm3).0);
        // With both constants zero it is the zero function.
        assert!(l1_membership(&case_n1_f_minus_3(Scalar::zero(), Scalar::zero())).0);
    }

    /// The Case N=1 candidate `f_{-3} = c_{-3}r^{-3} + r·I₁` with
    /// `I₁ = (r^{-4} *_M f_*)`, `f_* = -4c₁ r²(1-r²)/(1-r⁴)`.
    pub fn case_n1_f_minus_3(c_m3: Scalar, c1: Scalar) -> RadialFunction {
        let fs = reduce_geometric(&GeometricRatioSpec {
            coeff: c1 * Scalar::from_int(-4),
            p: 2,
            q: 2,
        })
        .unwrap();
        let i1 = convolve_monomial(-4, &fs).unwrap();
        RadialFunction::monomial(c_m3, rat(-3, 1)).add(&i1.mul_monomial(rat(1, 1)))
    }

    #[test]
    fn convolve_monomial_simple() {
        // 1 *_M r² = ∫_r^1 t dt = (1-r²)/2
        let g = RadialFunction::monomial(Scalar::one(), rat(2, 1));
        let c = convolve_monomial(0, &g).unwrap();
        let expect = RadialFunction::constant(Scalar::from_ratio(1, 2))
            .add(&RadialFunction::monomial(Scalar::from_ratio(-1, 2), rat(2, 1)));
        assert_eq!(c, expect);
        for r in [0.3, 0.7] {
            let numeric =
                convolve_numeric(&|_| Complex64::new(1.0, 0.0), &|t| g.eval(t), r, 1e-12).unwrap();
            assert!((c.eval(r) - numeric).norm() < 1e-10);
        }
    }

    #[test]
    fn convolve_zero() {
        assert!(convolve_monomial(0, &RadialFunction::zero()).unwrap().is_zero());
    }

    #[test]
    fn convolve_fstar_n3_matches_quadrature() {
        // 1 *_M f_* (N=3, c₃=1) pointwise against the defining integral.
        let (spec, fs) = fstar(3, Scalar::one());
        let c = convolve_monomial(0, &fs).unwrap();
        assert!(c.is_exact());
        for i in 1..20 {
            let r = i as f64 / 20.0;
            let numeric =
                convolve_numeric(&|_| Complex64::new(1.0, 0.0), &|t| spec.eval(t), r, 1e-12)
                    .unwrap();
            assert!((c.eval(r) - numeric).norm() < 1e-9, "r={r}");
        }
        // Closed form: -4[(1/4 + ln2/2) - (r⁴/4 + ln(1+r²)/2)].
        // (The paper's display has 1/2 where 1/4 belongs; the integral decides.)
        for i in 1..20 {
            let r = i as f64 / 20.0;
            let closed = -4.0 * ((0.25 + LN2 / 2.0) - (r.powi(4) / 4.0 + (1.0 + r * r).ln() / 2.0));
            assert!((c.eval(r).re - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn convolve_case_n1_matches_printed_bracket() {
        // I₁ = -4c₁ r^{-4} [ (4ln2-2)/8 - r⁴/4 + r²/2 - ln(1+r²)/2 ].
        let fs = reduce_geometric(&GeometricRatioSpec {
            coeff: Scalar::from_int(-4),
            p: 2,
            q: 2,
        })
        .unwrap();
        let i1 = convolve_monomial(-4, &fs).unwrap();
        for i in 1..20 {
            let r: f64 = i as f64 / 20.0;
            let bracket = (4.0 * LN2 - 2.0) / 8.0 - r.powi(4) / 4.0 + r * r / 2.0
                - (1.0 + r * r).ln() / 2.0;
            let closed = -4.0 / r.powi(4) * bracket;
            assert!((i1.eval(r).re - closed).abs() < 1e-10 * closed.abs().max(1.0), "r={r}");
        }
    }

    #[test]
    fn convolve_rejects_even_inverse_power() {
        // t^{even}/(1+t²) would need arctan.
        let g = RadialFunction::inv1p(Scalar::one(), rat(1, 1));
        assert!(convolve_monomial(0, &g).is_err());
    }

    #[test]
    fn normal_form_merges_and_drops_zero() {
        let f = RadialFunction::from_terms(vec![
            RadialTerm { kind: TermKind::MonomialLog, coeff: Scalar::from_int(2), power: rat(2, 1), logpow: 0 },
            RadialTerm { kind: TermKind::MonomialLog, coeff: Scalar::from_int(-2), power: rat(2, 1), logpow: 0 },
            RadialTerm { kind: TermKind::MonomialLog, coeff: Scalar::from_int(1), power: rat(4, 1), logpow: 0 },
        ]);
        assert_eq!(f.terms().len(), 1);
        assert_eq!(f.terms()[0].power, rat(4, 1));
    }

    #[test]
    fn text_roundtrip() {
        let f = RadialFunction::monomial(Scalar::from_ratio(3, 7), rat(-5, 2))
            .add(&RadialFunction::log1p(Scalar::ln2(), rat(1, 1)))
            .add(&RadialFunction::monlog(Scalar::from_f64(0.125), rat(0, 1), 2));
        let back: RadialFunction = f.to_string().parse().unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn terms_finite_on_open_interval() {
        let f = RadialFunction::monlog(Scalar::one(), rat(-3, 1), 2)
            .add(&RadialFunction::inv1p(Scalar::one(), rat(-1, 1)))
            .add(&RadialFunction::log1p(Scalar::one(), rat(-3, 1)));
        for i in 1..100 {
            let r = i as f64 / 100.0;
            assert!(f.eval(r).norm().is_finite());
        }
    }
}
