//! Quasihomogeneous Toeplitz operators as weighted shifts.
//!
//! On the Bergman space, a symbol `e^{ikθ}φ(r)` sends the basis monomial
//! `z^n` to `2(n+k+1)·φ̂(2n+k+2)·z^{n+k}` — and to `0` when `k < 0` and
//! `n < |k|`. Everything in this module is built on that single rule:
//! actions, truncated matrices, and commutators. Compositions are computed
//! at the action level, so every reported column is exact regardless of the
//! truncation size.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::mellin::{mellin_eval, mellin_quadrature, MellinPoint};
use crate::radial::{l1_membership, RadialFunction};
use crate::scalar::Scalar;

/// A quasihomogeneous symbol `e^{ikθ}·φ(r)` with L¹ radial part.
#[derive(Clone, Debug)]
pub struct QuasiSymbol {
    pub k: i64,
    pub radial: RadialFunction,
}

impl QuasiSymbol {
    pub fn new(k: i64, radial: RadialFunction) -> Result<Self> {
        if !l1_membership(&radial).0 {
            return Err(Error::Domain(format!(
                "radial part of degree-{k} symbol is not in L¹([0,1], r dr)"
            )));
        }
        Ok(QuasiSymbol { k, radial })
    }

    /// Skips the L¹ gate; for negative tests and non-member probes only.
    pub fn new_unchecked(k: i64, radial: RadialFunction) -> Self {
        QuasiSymbol { k, radial }
    }
}

/// The weighted-shift realization of a quasihomogeneous symbol.
#[derive(Clone, Debug)]
pub struct WeightedShift {
    pub k: i64,
    radial: RadialFunction,
}

impl WeightedShift {
    /// `w(n) = 2(n+k+1)·φ̂(2n+k+2)`, zero when `k < 0` and `n < |k|`.
    pub fn weight(&self, n: i64) -> Result<Scalar> {
        if n < 0 {
            return Err(Error::Domain(format!("basis index {n} negative")));
        }
        if self.k < 0 && n < -self.k {
            return Ok(Scalar::zero());
        }
        let z = MellinPoint::from_int(2 * n + self.k + 2);
        let hat = mellin_eval(&self.radial, &z)?;
        Ok(Scalar::from_int(2 * (n + self.k + 1)) * hat.value)
    }

    /// Same weight through the quadrature oracle, bypassing the closed forms.
    pub fn weight_quadrature(&self, n: i64, tol: f64) -> Result<Scalar> {
        if self.k < 0 && n < -self.k {
            return Ok(Scalar::zero());
        }
        let z = MellinPoint::from_int(2 * n + self.k + 2);
        let hat = mellin_quadrature(&|r| self.radial.eval(r), &z, tol)?;
        Ok(Scalar::from_int(2 * (n + self.k + 1)) * hat.value)
    }
}

pub fn shift_of(sym: &QuasiSymbol) -> WeightedShift {
    WeightedShift { k: sym.k, radial: sym.radial.clone() }
}

/// A finitely supported polar symbol `Σ_k e^{ikθ} f_k(r)`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PolarSymbol {
    parts: BTreeMap<i64, RadialFunction>,
}

impl PolarSymbol {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_parts(parts: Vec<(i64, RadialFunction)>) -> Self {
        let mut map: BTreeMap<i64, RadialFunction> = BTreeMap::new();
        for (k, f) in parts {
            let entry = map.entry(k).or_insert_with(RadialFunction::zero);
            *entry = entry.add(&f);
        }
        map.retain(|_, f| !f.is_zero());
        PolarSymbol { parts: map }
    }

    /// `c·z^k` (`k ≥ 0`): degree `k` with radial part `c·r^k`.
    pub fn z_pow(c: Scalar, k: i64) -> Self {
        Self::from_parts(vec![(k, RadialFunction::monomial(c, Rational64::from_integer(k)))])
    }

    /// `c·z̄^k` (`k ≥ 0`): degree `−k` with radial part `c·r^k`.
    pub fn zbar_pow(c: Scalar, k: i64) -> Self {
        Self::from_parts(vec![(-k, RadialFunction::monomial(c, Rational64::from_integer(k)))])
    }

    pub fn constant(c: Scalar) -> Self {
        Self::z_pow(c, 0)
    }

    /// `α z² + β z̄²`.
    pub fn alpha_beta(alpha: Scalar, beta: Scalar) -> Self {
        Self::z_pow(alpha, 2).add(&Self::zbar_pow(beta, 2))
    }

    pub fn parts(&self) -> impl Iterator<Item = (i64, &RadialFunction)> {
        self.parts.iter().map(|(&k, f)| (k, f))
    }

    pub fn part(&self, k: i64) -> Option<&RadialFunction> {
        self.parts.get(&k)
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.parts.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut all: Vec<(i64, RadialFunction)> =
            self.parts.iter().map(|(&k, f)| (k, f.clone())).collect();
        all.extend(rhs.parts.iter().map(|(&k, f)| (k, f.clone())));
        Self::from_parts(all)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_parts(self.parts.iter().map(|(&k, f)| (k, f.scale(c))).collect())
    }

    /// Conjugate symbol: `f̄` has degree-`(−k)` part `f̄_k`.
    pub fn conj(&self) -> Self {
        Self::from_parts(self.parts.iter().map(|(&k, f)| (-k, f.conj())).collect())
    }

    /// Largest degree shift reachable in one application, `0` for zero.
    pub fn radius(&self) -> i64 {
        self.parts.keys().map(|k| k.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for PolarSymbol {
    /// Radial-module term lines grouped under `degree k:` headers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, radial) in &self.parts {
            writeln!(f, "degree {k}:")?;
            write!(f, "{radial}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PolarSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        let mut current: Option<(i64, String)> = None;
        for line in s.lines() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix("degree ") {
                let rest = rest.trim_end_matches(':').trim();
                let k: i64 = rest
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad degree header `{trimmed}`")))?;
                if let Some((kk, body)) = current.take() {
                    parts.push((kk, body.parse::<RadialFunction>()?));
                }
                current = Some((k, String::new()));
            } else {
                match &mut current {
                    Some((_, body)) => {
                        body.push_str(trimmed);
                        body.push('\n');
                    }
                    None => {
                        return Err(Error::Parse(format!(
                            "term line `{trimmed}` before any `degree k:` header"
                        )))
                    }
                }
            }
        }
        if let Some((kk, body)) = current.take() {
            parts.push((kk, body.parse::<RadialFunction>()?));
        }
        Ok(PolarSymbol::from_parts(parts))
    }
}

/// Exact image `T_f(z^n) = Σ_k w_k(n)·z^{n+k}`, sorted by output degree,
/// zero contributions dropped.
pub fn apply(sym: &PolarSymbol, n: i64) -> Result<Vec<(i64, Scalar)>> {
    if n < 0 {
        return Err(Error::Domain(format!("basis index {n} negative")));
    }
    let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
    for (k, radial) in sym.parts() {
        let shift = WeightedShift { k, radial: radial.clone() };
        let w = shift.weight(n)?;
        if w.is_zero() {
            continue;
        }
        let entry = out.entry(n + k).or_insert_with(Scalar::zero);
        *entry = entry.clone() + w;
    }
    Ok(out.into_iter().filter(|(_, w)| !w.is_zero()).collect())
}

/// Image of `c·z^n` under `T_f` composed after an already-applied image:
/// helper for action-level composition.
fn apply_weighted(sym: &PolarSymbol, image: &[(i64, Scalar)]) -> Result<Vec<(i64, Scalar)>> {
    let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
    for (m, c) in image {
        for (d, w) in apply(sym, *m)? {
            let entry = out.entry(d).or_insert_with(Scalar::zero);
            *entry = entry.clone() + c.clone() * w;
        }
    }
    Ok(out.into_iter().filter(|(_, w)| !w.is_zero()).collect())
}

/// Column-convention truncated matrix: column `n` holds the coefficients of
/// the image of `z^n` in the basis `{z^m}`. All columns are trusted —
/// compositions are evaluated at the action level, never through a
/// truncated intermediate.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedMatrix {
    pub n_max: i64,
    /// Row-major `(n_max+1) × (n_max+1)`.
    pub entries: Vec<Vec<Scalar>>,
    pub trusted_cols: std::ops::RangeInclusive<i64>,
}

impl TruncatedMatrix {
    fn from_columns(n_max: i64, cols: Vec<Vec<(i64, Scalar)>>) -> Self {
        let dim = (n_max + 1) as usize;
        let mut entries = vec![vec![Scalar::zero(); dim]; dim];
        for (n, col) in cols.into_iter().enumerate() {
            for (m, w) in col {
                if (0..=n_max).contains(&m) {
                    entries[m as usize][n] = w;
                }
            }
        }
        TruncatedMatrix { n_max, entries, trusted_cols: 0..=n_max }
    }

    pub fn dim(&self) -> usize {
        (self.n_max + 1) as usize
    }

    pub fn entry(&self, row: i64, col: i64) -> &Scalar {
        &self.entries[row as usize][col as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(|e| e.abs()).fold(0.0, f64::max)
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_exact())
    }

    /// Row-major CSV: exact entries as fractions (with `*ln2` parts where
    /// present), float entries as shortest-roundtrip decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Matrix of `T_f` on columns `0..=n_max`.
pub fn assemble_matrix(sym: &PolarSymbol, n_max: i64) -> Result<TruncatedMatrix> {
    let cols: Result<Vec<_>> = (0..=n_max).map(|n| apply(sym, n)).collect();
    Ok(TruncatedMatrix::from_columns(n_max, cols?))
}

/// Matrix of the commutator `[T_f, T_g] = T_f T_g − T_g T_f` on columns
/// `0..=n_max`, computed exactly at the action level.
pub fn commutator(f: &PolarSymbol, g: &PolarSymbol, n_max: i64) -> Result<TruncatedMatrix> {
    let mut cols = Vec::with_capacity((n_max + 1) as usize);
    for n in 0..=n_max {
        cols.push(commutator_column(f, g, n)?);
    }
    Ok(TruncatedMatrix::from_columns(n_max, cols))
}

/// `[T_f, T_g](z^n)` as a finite list of `(degree, coefficient)`.
pub fn commutator_column(f: &PolarSymbol, g: &PolarSymbol, n: i64) -> Result<Vec<(i64, Scalar)>> {
    let fg = apply_weighted(f, &apply(g, n)?)?;
    let gf = apply_weighted(g, &apply(f, n)?)?;
    let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
    for (m, w) in fg {
        let e = out.entry(m).or_insert_with(Scalar::zero);
        *e = e.clone() + w;
    }
    for (m, w) in gf {
        let e = out.entry(m).or_insert_with(Scalar::zero);
        *e = e.clone() - w;
    }
    Ok(out.into_iter().filter(|(_, w)| !w.is_zero()).collect())
}

/// The degree-`d` band of `[T_f, T_g]`: for each `n = 0..=n_max`, the
/// coefficient of `z^{n+d}` in `[T_f, T_g](z^n)`. Empty when `d` is not a
/// reachable sum of one `f`-degree and one `g`-degree.
pub fn band(f: &PolarSymbol, g: &PolarSymbol, d: i64, n_max: i64) -> Result<Vec<Scalar>> {
    let reachable = f
        .degrees()
        .iter()
        .any(|&j| g.degrees().iter().any(|&l| j + l == d));
    if !reachable {
        return Ok(vec![]);
    }
    let mut out = Vec::with_capacity((n_max + 1) as usize);
    for n in 0..=n_max {
        let col = commutator_column(f, g, n)?;
        let v = col
            .into_iter()
            .find(|(m, _)| *m == n + d)
            .map(|(_, w)| w)
            .unwrap_or_else(Scalar::zero);
        out.push(v);
    }
    Ok(out)
}

/// Matrix of the adjoint `T_f* = T_f̄`.
pub fn adjoint_matrix(sym: &PolarSymbol, n_max: i64) -> Result<TruncatedMatrix> {
    assemble_matrix(&sym.conj(), n_max)
}

/// Entry of the matrix re-expressed in the orthonormal basis `√(n+1)·z^n`:
/// `M'(m,n) = M(m,n)·√((n+1)/(m+1))`. Used by the Hermitian-symmetry checks.
pub fn normalized_entry(m: &TruncatedMatrix, row: i64, col: i64) -> f64 {
    let factor = (((col + 1) as f64) / ((row + 1) as f64)).sqrt();
    m.entry(row, col).to_c64().re * factor
}
