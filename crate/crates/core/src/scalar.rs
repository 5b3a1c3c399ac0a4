//! Dual-path scalars: exact elements of `Q(i)[λ]` with `λ` a formal symbol
//! standing for `ln 2`, or double-precision complex floats.
//!
//! Every exact constant appearing in the computations lives in `Q + Q·ln2`
//! (optionally with Gaussian-rational coefficients); anything outside that
//! ring demotes to the float path and the result carries an `is_exact()`
//! provenance flag of `false`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `ln 2` to full f64 precision, the numeric value of the formal symbol λ.
pub const LN2: f64 = std::f64::consts::LN_2;

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Gaussian rationals
// ---------------------------------------------------------------------------

/// An element of `Q(i)`: `re + im·i` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(big(n), BigRational::zero())
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        GaussianRational::new(big(p) / big(q), BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let norm = &self.re * &self.re + &self.im * &self.im;
        GaussianRational::new(&self.re / &norm, -&self.im / &norm)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

// ---------------------------------------------------------------------------
// Polynomials in λ = ln 2
// ---------------------------------------------------------------------------

/// A polynomial `Σ c_d λ^d` over `Q(i)`, with λ standing for `ln 2`.
///
/// λ is transcendental, so a nonzero polynomial is declared nonzero exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LnPoly {
    /// Coefficients by ascending degree; trailing zeros trimmed.
    coeffs: Vec<GaussianRational>,
}

impl LnPoly {
    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LnPoly { coeffs }
    }

    pub fn zero() -> Self {
        LnPoly { coeffs: vec![] }
    }

    pub fn constant(c: GaussianRational) -> Self {
        LnPoly::from_coeffs(vec![c])
    }

    /// The monomial λ (i.e. `ln 2`).
    pub fn lambda() -> Self {
        LnPoly::from_coeffs(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> GaussianRational {
        self.coeffs.get(d).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in λ; zero polynomial reports 0.
    pub fn lambda_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn conj(&self) -> Self {
        LnPoly::from_coeffs(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn to_c64(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * LN2 + c.to_c64();
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for d in 0..n {
            out.push(self.coeff(d) + rhs.coeff(d));
        }
        LnPoly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        LnPoly::from_coeffs(self.coeffs.iter().map(|c| c.clone().neg()).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return LnPoly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        LnPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        LnPoly::from_coeffs(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Polynomial division; returns `(quotient, remainder)`.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dr = rhs.coeffs.len() - 1;
        let lead = rhs.coeffs[dr].clone();
        if rem.len() <= dr {
            return (LnPoly::zero(), self.clone());
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dr];
        for k in (dr..rem.len()).rev() {
            let c = rem[k].clone() / lead.clone();
            if !c.is_zero() {
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    rem[k - dr + j] = rem[k - dr + j].clone() - c.clone() * b.clone();
                }
            }
            quot[k - dr] = c;
        }
        (LnPoly::from_coeffs(quot), LnPoly::from_coeffs(rem))
    }

    /// Exact division; errors when the remainder is nonzero.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(rhs);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal("inexact polynomial division".into()))
        }
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.coeffs[a.coeffs.len() - 1].clone();
        a.scale(&lead.recip())
    }
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

/// A dual-path number: exact element of `Q(i)[λ]` (λ = ln 2) or a complex
/// double. Mixing exact and float demotes to float.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(LnPoly),
    Float(Complex64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(LnPoly::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(LnPoly::constant(GaussianRational::from_int(n)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Scalar::Exact(LnPoly::constant(GaussianRational::from_ratio(p, q)))
    }

    pub fn from_big(q: BigRational) -> Self {
        Scalar::Exact(LnPoly::constant(GaussianRational::new(q, BigRational::zero())))
    }

    pub fn from_f64(x: f64) -> Self {
        Scalar::Float(Complex64::new(x, 0.0))
    }

    pub fn from_c64(z: Complex64) -> Self {
        Scalar::Float(z)
    }

    pub fn i() -> Self {
        Scalar::Exact(LnPoly::constant(GaussianRational::i()))
    }

    /// The formal `ln 2`.
    pub fn ln2() -> Self {
        Scalar::Exact(LnPoly::lambda())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Exact zero test on the exact path (λ transcendental, so a nonzero
    /// polynomial is nonzero exactly); bitwise zero on the float path.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(p) => p.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(p) => p.to_c64(),
            Scalar::Float(z) => *z,
        }
    }

    pub fn abs(&self) -> f64 {
        self.to_c64().norm()
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Exact(p) => Scalar::Exact(p.conj()),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    pub fn as_exact(&self) -> Option<&LnPoly> {
        match self {
            Scalar::Exact(p) => Some(p),
            Scalar::Float(_) => None,
        }
    }

    /// The value as an exact real rational, when it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Exact(p) if p.is_constant() && p.coeff(0).is_real() => Some(p.coeff(0).re),
            _ => None,
        }
    }

    pub fn recip(&self) -> Self {
        match self {
            Scalar::Exact(p) if p.is_constant() && !p.is_zero() => {
                Scalar::Exact(LnPoly::constant(p.coeff(0).recip()))
            }
            s => Scalar::Float(s.to_c64().finv()),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.add(&b)),
            (a, b) => Scalar::Float(a.to_c64() + b.to_c64()),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.mul(&b)),
            (a, b) => Scalar::Float(a.to_c64() * b.to_c64()),
        }
    }
}

impl Div for Scalar {
    type Output = Scalar;
    /// Exact when the divisor has λ-degree 0 (an invertible ring element);
    /// otherwise demotes to float.
    fn div(self, rhs: Scalar) -> Scalar {
        match (&self, &rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) if b.is_constant() && !b.is_zero() => {
                Scalar::Exact(a.scale(&b.coeff(0).recip()))
            }
            _ => Scalar::Float(self.to_c64() / rhs.to_c64()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(p) => Scalar::Exact(p.neg()),
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

fn fmt_rat(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn fmt_f64(x: f64) -> String {
    // Shortest decimal that round-trips; matches 17-significant-digit output
    // for non-terminating values like 1/6.
    let mut s = format!("{x}");
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("NaN") {
        s.push_str(".0");
    }
    s
}

impl fmt::Display for Scalar {
    /// Canonical text form: `p/q`, `p/q+s/t*ln2`, general exact sums with
    /// `*i` and `*ln2^d` factors, or float decimals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(p) => {
                if p.is_zero() {
                    return write!(f, "0/1");
                }
                let mut parts: Vec<String> = Vec::new();
                for (d, c) in p.coeffs().iter().enumerate() {
                    for (val, is_im) in [(&c.re, false), (&c.im, true)] {
                        if val.is_zero() {
                            continue;
                        }
                        let mut t = fmt_rat(val);
                        if is_im {
                            t.push_str("*i");
                        }
                        match d {
                            0 => {}
                            1 => t.push_str("*ln2"),
                            _ => t.push_str(&format!("*ln2^{d}")),
                        }
                        parts.push(t);
                    }
                }
                let mut out = String::new();
                for (i, t) in parts.iter().enumerate() {
                    if i > 0 && !t.starts_with('-') {
                        out.push('+');
                    }
                    out.push_str(t);
                }
                write!(f, "{out}")
            }
            Scalar::Float(z) => {
                if z.im == 0.0 {
                    write!(f, "{}", fmt_f64(z.re))
                } else {
                    write!(f, "{}{}{}*i", fmt_f64(z.re), if z.im < 0.0 { "" } else { "+" }, fmt_f64(z.im))
                }
            }
        }
    }
}

fn parse_big_ratio(s: &str) -> Result<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

impl std::str::FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        // Split into signed additive terms (a '-' following [eE] is an exponent).
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (idx, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && idx > 0 {
                let prev = s.as_bytes()[idx - 1] as char;
                if prev != 'e' && prev != 'E' && prev != '/' && prev != '*' {
                    terms.push(std::mem::take(&mut cur));
                    if ch == '-' {
                        cur.push('-');
                    }
                    continue;
                }
            }
            cur.push(ch);
        }
        terms.push(cur);

        let mut exact_acc = LnPoly::zero();
        let mut float_acc = Complex64::new(0.0, 0.0);
        let mut any_float = false;

        for term in terms.iter().map(|t| t.trim()).filter(|t| !t.is_empty()) {
            let mut coeff_str = term;
            let mut lam_deg = 0usize;
            let mut imag = false;
            while let Some(pos) = coeff_str.rfind('*') {
                let factor = &coeff_str[pos + 1..];
                if factor == "i" {
                    imag = true;
                } else if factor == "ln2" {
                    lam_deg += 1;
                } else if let Some(d) = factor.strip_prefix("ln2^") {
                    lam_deg += d
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad ln2 power in `{term}`")))?;
                } else {
                    break;
                }
                coeff_str = &coeff_str[..pos];
            }
            let is_float = coeff_str.contains('.')
                || (coeff_str.contains(['e', 'E']) && !coeff_str.contains('/'));
            if is_float {
                let v: f64 = coeff_str
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad float `{coeff_str}`")))?;
                if lam_deg > 0 {
                    return Err(Error::Parse(format!("float ln2 term `{term}`")));
                }
                if imag {
                    float_acc += Complex64::new(0.0, v);
                } else {
                    float_acc += Complex64::new(v, 0.0);
                }
                any_float = true;
            } else {
                let q = parse_big_ratio(coeff_str)?;
                let c = if imag {
                    GaussianRational::new(BigRational::zero(), q)
                } else {
                    GaussianRational::new(q, BigRational::zero())
                };
                let mut coeffs = vec![GaussianRational::zero(); lam_deg + 1];
                coeffs[lam_deg] = c;
                exact_acc = exact_acc.add(&LnPoly::from_coeffs(coeffs));
            }
        }

        if any_float {
            Ok(Scalar::Float(float_acc + exact_acc.to_c64()))
        } else {
            Ok(Scalar::Exact(exact_acc))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_ring_ops() {
        let a = Scalar::from_ratio(1, 2) + Scalar::from_int(2) * Scalar::ln2();
        let b = Scalar::from_ratio(-1, 2) + Scalar::from_int(-2) * Scalar::ln2();
        assert!((a.clone() + b).is_zero());
        assert!(a.is_exact());
        let prod = Scalar::ln2() * Scalar::ln2();
        assert!(prod.is_exact());
        assert!((prod.to_c64().re - LN2 * LN2).abs() < 1e-15);
    }

    #[test]
    fn nonzero_test_is_exact() {
        // 4 ln2 - 8/3 is nonzero in Q[λ] even though it is numerically small-ish.
        let det = Scalar::from_int(4) * Scalar::ln2() - Scalar::from_ratio(8, 3);
        assert!(!det.is_zero());
        assert!((det.to_c64().re - 0.10592205557311457).abs() < 1e-15);
    }

    #[test]
    fn mixing_demotes() {
        let x = Scalar::from_ratio(1, 3) + Scalar::from_f64(0.5);
        assert!(!x.is_exact());
        assert!((x.to_c64().re - (1.0 / 3.0 + 0.5)).abs() < 1e-15);
    }

    #[test]
    fn division_paths() {
        let q = Scalar::from_int(1) / Scalar::from_int(6);
        assert!(q.is_exact());
        assert_eq!(q.to_string(), "1/6");
        let d = Scalar::one() / Scalar::ln2();
        assert!(!d.is_exact());
    }

    #[test]
    fn display_and_parse_roundtrip() {
        for s in [
            "3/4",
            "-3/4+5/7*ln2",
            "1/2+-2/3*ln2",
            "2/1*i",
            "1/3+1/5*i*ln2",
            "0/1",
        ] {
            let v: Scalar = s.parse().unwrap();
            let back: Scalar = v.to_string().parse().unwrap();
            assert_eq!(v, back, "roundtrip failed for {s}");
        }
        let f: Scalar = "0.16666666666666666".parse().unwrap();
        assert!(!f.is_exact());
        assert!((f.to_c64().re - 1.0 / 6.0).abs() < 1e-16);
    }

    #[test]
    fn float_display_matches_convention() {
        assert_eq!(Scalar::from_f64(1.0 / 6.0).to_string(), "0.16666666666666666");
    }

    #[test]
    fn lnpoly_div_exact() {
        let a = LnPoly::lambda().mul(&LnPoly::lambda());
        let q = a.div_exact(&LnPoly::lambda()).unwrap();
        assert_eq!(q, LnPoly::lambda());
        assert!(LnPoly::lambda().div_exact(&a).is_err());
    }
}
