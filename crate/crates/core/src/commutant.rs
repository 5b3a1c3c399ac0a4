//! The commutant problem as a finite exact linear system.
//!
//! Fix `g` (by default `z² + z̄²`) and a finite ansatz of quasihomogeneous
//! basis symbols. Requiring `[T_f, T_g](z^n) = 0` for `n` up to `n_max`
//! yields one linear equation per `(n, output degree)` band; the commutant
//! inside the ansatz is the null space of that system. On the exact path
//! the elimination runs over the field of rational functions in `λ = ln 2`
//! with Gaussian-rational coefficients, so kernel membership is certified,
//! not estimated.

use std::collections::BTreeSet;
use std::fmt;

use nalgebra::DMatrix;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::operator::{commutator, commutator_column, PolarSymbol};
use crate::radial::{l1_membership, RadialFunction};
use crate::scalar::{LnPoly, Scalar};

/// One ansatz coefficient: the symbol `e^{ikθ}·φ(r)` it multiplies.
#[derive(Clone, Debug)]
pub struct AnsatzElement {
    pub k: i64,
    pub radial: RadialFunction,
}

/// A finite linear family of polar symbols.
#[derive(Clone, Debug)]
pub struct Ansatz {
    pub elements: Vec<AnsatzElement>,
}

impl Ansatz {
    /// Default family: degrees `−K..=K`, monomials `r^{|k|+2j}` for
    /// `j = 0..=J`.
    pub fn monomials(k_range: i64, j_max: i64) -> Self {
        let mut elements = Vec::new();
        for k in -k_range..=k_range {
            for j in 0..=j_max {
                let power = Rational64::from_integer(k.abs() + 2 * j);
                elements.push(AnsatzElement {
                    k,
                    radial: RadialFunction::monomial(Scalar::one(), power),
                });
            }
        }
        Ansatz { elements }
    }

    pub fn validate(&self) -> Result<()> {
        for (i, e) in self.elements.iter().enumerate() {
            if !l1_membership(&e.radial).0 {
                return Err(Error::Domain(format!(
                    "ansatz element {i} (degree {}) is not in L¹([0,1], r dr)",
                    e.k
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max_degree(&self) -> i64 {
        self.elements.iter().map(|e| e.k.abs()).max().unwrap_or(0)
    }

    /// The symbol `Σ c_i · e_i` for a coefficient vector.
    pub fn reconstruct(&self, coeffs: &[Scalar]) -> PolarSymbol {
        let parts: Vec<(i64, RadialFunction)> = self
            .elements
            .iter()
            .zip(coeffs)
            .map(|(e, c)| (e.k, e.radial.scale(c)))
            .collect();
        PolarSymbol::from_parts(parts)
    }
}

/// A posed commutant problem.
#[derive(Clone, Debug)]
pub struct CommutantProblem {
    pub g: PolarSymbol,
    pub ansatz: Ansatz,
    pub n_max: i64,
}

impl CommutantProblem {
    pub fn default_problem() -> Self {
        CommutantProblem {
            g: PolarSymbol::alpha_beta(Scalar::one(), Scalar::one()),
            ansatz: Ansatz::monomials(4, 3),
            n_max: 60,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.ansatz.validate()?;
        let k = self.ansatz.max_degree();
        if self.n_max < 2 * k + 4 {
            return Err(Error::Domain(format!(
                "n_max = {} too small for ansatz degree {k}: need ≥ {}",
                self.n_max,
                2 * k + 4
            )));
        }
        Ok(())
    }
}

/// The assembled band system: rows labelled `(n, d)`, columns in ansatz
/// element order.
#[derive(Clone, Debug)]
pub struct BandSystem {
    pub rows: Vec<(i64, i64)>,
    pub matrix: Vec<Vec<Scalar>>,
}

/// One row per `(n, output degree)` band with at least one nonzero entry;
/// entry `(row, col)` is the coefficient of `z^{n+d}` in
/// `[T_{e_col}, T_g](z^n)`.
pub fn assemble_system(p: &CommutantProblem) -> Result<BandSystem> {
    p.validate()?;
    let cols = p.ansatz.len();
    // Per column, precompute commutator columns for all n.
    let mut actions: Vec<Vec<Vec<(i64, Scalar)>>> = Vec::with_capacity(cols);
    for e in &p.ansatz.elements {
        let sym = PolarSymbol::from_parts(vec![(e.k, e.radial.clone())]);
        let mut per_n = Vec::with_capacity((p.n_max + 1) as usize);
        for n in 0..=p.n_max {
            per_n.push(commutator_column(&sym, &p.g, n)?);
        }
        actions.push(per_n);
    }
    let mut rows = Vec::new();
    let mut matrix = Vec::new();
    for n in 0..=p.n_max {
        let ds: BTreeSet<i64> = actions
            .iter()
            .flat_map(|per_n| per_n[n as usize].iter().map(|(m, _)| m - n))
            .collect();
        for d in ds {
            let row: Vec<Scalar> = actions
                .iter()
                .map(|per_n| {
                    per_n[n as usize]
                        .iter()
                        .find(|(m, _)| *m == n + d)
                        .map(|(_, w)| w.clone())
                        .unwrap_or_else(Scalar::zero)
                })
                .collect();
            if row.iter().any(|e| !e.is_zero()) {
                rows.push((n, d));
                matrix.push(row);
            }
        }
    }
    Ok(BandSystem { rows, matrix })
}

/// Null space of a band system.
#[derive(Clone, Debug)]
pub struct NullSpaceResult {
    pub dimension: usize,
    /// Kernel basis as ansatz coefficient vectors (denominators cleared on
    /// the exact path).
    pub basis: Vec<Vec<Scalar>>,
    pub exact: bool,
    /// Float path only: raised when the singular-value gap at the rank
    /// decision is smaller than 10×.
    pub warning: Option<String>,
}

impl fmt::Display for NullSpaceResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kernel_dim={} exact={}", self.dimension, self.exact)
    }
}

/// Kernel of the system, exact whenever every entry is exact.
pub fn null_space(matrix: &[Vec<Scalar>], cols: usize) -> Result<NullSpaceResult> {
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(Error::Internal("ragged system matrix".into()));
    }
    if matrix.iter().flatten().all(|e| e.is_exact()) {
        let basis = exact_kernel(matrix, cols)?;
        // Certify: substituting each kernel vector back gives exact zeros.
        for v in &basis {
            for row in matrix {
                let mut acc = Scalar::zero();
                for (a, x) in row.iter().zip(v) {
                    acc = acc + a.clone() * x.clone();
                }
                if !acc.is_zero() {
                    return Err(Error::Internal("kernel vector fails certification".into()));
                }
            }
        }
        Ok(NullSpaceResult { dimension: basis.len(), basis, exact: true, warning: None })
    } else {
        float_kernel(matrix, cols)
    }
}

// ---------------------------------------------------------------------------
// Exact path: Gaussian elimination over the fraction field of Q(i)[λ]
// ---------------------------------------------------------------------------

/// A ratio of λ-polynomials, reduced and with monic denominator. This is a
/// field, so textbook row reduction applies even when entries carry ln 2.
#[derive(Clone, Debug)]
struct RatLn {
    num: LnPoly,
    den: LnPoly,
}

impl RatLn {
    fn from_poly(p: LnPoly) -> Self {
        RatLn { num: p, den: LnPoly::constant(crate::scalar::GaussianRational::one()) }
    }

    fn zero() -> Self {
        Self::from_poly(LnPoly::zero())
    }

    fn one() -> Self {
        Self::from_poly(LnPoly::constant(crate::scalar::GaussianRational::one()))
    }

    fn normalized(num: LnPoly, den: LnPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Internal("zero denominator in λ-rational".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        // Monic denominator for canonical form.
        let lead = den.coeff(den.lambda_degree());
        let inv = lead.recip();
        Ok(RatLn { num: num.scale(&inv), den: den.scale(&inv) })
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        Self::normalized(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        Self::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Internal("division by zero λ-rational".into()));
        }
        Self::normalized(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    fn neg(&self) -> Self {
        RatLn { num: self.num.neg(), den: self.den.clone() }
    }
}

/// Exact kernel basis with denominators cleared, so entries live back in
/// `Q(i)[λ]` and convert to `Scalar` losslessly.
pub fn exact_kernel(matrix: &[Vec<Scalar>], cols: usize) -> Result<Vec<Vec<Scalar>>> {
    let mut m: Vec<Vec<RatLn>> = matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| match e.as_exact() {
                    Some(p) => Ok(RatLn::from_poly(p.clone())),
                    None => Err(Error::Internal("float entry on exact path".into())),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    // Reduced row echelon form with deterministic pivoting (first nonzero
    // row in column order).
    let nrows = m.len();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot = (rank..nrows).find(|&r| !m[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        m.swap(rank, pivot);
        let p = m[rank][col].clone();
        for c in col..cols {
            m[rank][c] = m[rank][c].div(&p)?;
        }
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let sub = factor.mul(&m[rank][c])?;
                    m[r][c] = m[r][c].sub(&sub)?;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }

    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &free in &free_cols {
        let mut v = vec![RatLn::zero(); cols];
        v[free] = RatLn::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = m[r][free].neg();
        }
        // Clear denominators: multiply through by the product of the
        // denominators divided by shared factors (simple lcm accumulation).
        let mut lcm = LnPoly::constant(crate::scalar::GaussianRational::one());
        for e in &v {
            let g = lcm.gcd(&e.den);
            lcm = lcm.mul(&e.den.div_exact(&g)?);
        }
        let cleared: Vec<Scalar> = v
            .iter()
            .map(|e| {
                let scaled = e.num.mul(&lcm.div_exact(&e.den)?);
                Ok(Scalar::Exact(scaled))
            })
            .collect::<Result<Vec<_>>>()?;
        basis.push(cleared);
    }
    Ok(basis)
}

// ---------------------------------------------------------------------------
// Float path: rank-revealing SVD
// ---------------------------------------------------------------------------

fn float_kernel(matrix: &[Vec<Scalar>], cols: usize) -> Result<NullSpaceResult> {
    let has_imag = matrix
        .iter()
        .flatten()
        .any(|e| e.to_c64().im != 0.0);
    // Complex rows are split into real and imaginary parts: the solver
    // looks for real coefficient vectors (all exact-ring cases with complex
    // data stay on the exact path, so this restriction is benign).
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for row in matrix {
        rows.push(row.iter().map(|e| e.to_c64().re).collect());
        if has_imag {
            rows.push(row.iter().map(|e| e.to_c64().im).collect());
        }
    }
    let nrows = rows.len().max(1);
    let a = DMatrix::from_fn(nrows, cols, |r, c| {
        rows.get(r).map(|row| row[c]).unwrap_or(0.0)
    });
    let svd = a.svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::Internal("SVD did not produce V^T".into()))?;
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    // Rectangular SVD reports min(m,n) values; columns beyond that are
    // automatically null directions.
    while sv.len() < cols {
        sv.push(0.0);
    }
    let largest = sv.iter().copied().fold(0.0, f64::max).max(1e-300);
    let threshold = 1e-9 * largest;
    let null: Vec<usize> = (0..cols).filter(|&i| sv[i] <= threshold).collect();
    let kept_min = sv
        .iter()
        .copied()
        .filter(|&s| s > threshold)
        .fold(f64::INFINITY, f64::min);
    let dropped_max = sv
        .iter()
        .copied()
        .filter(|&s| s <= threshold)
        .fold(0.0, f64::max);
    let warning = if dropped_max > 0.0 && kept_min.is_finite() && kept_min / dropped_max < 10.0 {
        Some(format!(
            "singular-value gap below 10x at the rank decision: kernel dimension {} or {}",
            null.len(),
            null.len().saturating_sub(1)
        ))
    } else {
        None
    };
    let basis: Vec<Vec<Scalar>> = null
        .iter()
        .map(|&i| {
            (0..cols)
                .map(|c| {
                    let v = if i < v_t.nrows() { v_t[(i, c)] } else { 0.0 };
                    Scalar::from_f64(v)
                })
                .collect()
        })
        .collect();
    Ok(NullSpaceResult { dimension: basis.len(), basis, exact: false, warning })
}

// ---------------------------------------------------------------------------
// Residuals and problem files
// ---------------------------------------------------------------------------

/// Commutator size of a candidate against `g` on the trusted block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    /// True when the commutator is exactly zero in the exact ring, which is
    /// a strictly stronger statement than a small float.
    pub exact_zero: bool,
    pub max_abs: f64,
}

pub fn residual(f: &PolarSymbol, g: &PolarSymbol, n_max: i64) -> Result<Residual> {
    let m = commutator(f, g, n_max)?;
    Ok(Residual {
        exact_zero: m.is_exact() && m.is_zero(),
        max_abs: m.max_abs(),
    })
}

/// Solve a posed problem end to end.
pub fn solve(p: &CommutantProblem) -> Result<(BandSystem, NullSpaceResult)> {
    let system = assemble_system(p)?;
    let ns = null_space(&system.matrix, p.ansatz.len())?;
    Ok((system, ns))
}

/// Parse a problem file with `[g]`, `[ansatz]`, `[range]` sections.
///
/// `[g]` holds a polar symbol in the `degree k:` format. `[ansatz]` is
/// either a single `K=<int> J=<int>` line (default monomial family) or
/// `degree k:` headers followed by one radial basis function per line
/// (terms separated by `;`). `[range]` holds `nmax=<int>`.
pub fn parse_problem(text: &str) -> Result<CommutantProblem> {
    let mut g_lines = String::new();
    let mut ansatz_lines: Vec<String> = Vec::new();
    let mut nmax: Option<i64> = None;
    let mut section = "";
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match trimmed {
            "[g]" => section = "g",
            "[ansatz]" => section = "ansatz",
            "[range]" => section = "range",
            _ => match section {
                "g" => {
                    g_lines.push_str(trimmed);
                    g_lines.push('\n');
                }
                "ansatz" => ansatz_lines.push(trimmed.to_string()),
                "range" => {
                    let v = trimmed
                        .strip_prefix("nmax=")
                        .ok_or_else(|| Error::Parse(format!("bad range line `{trimmed}`")))?;
                    nmax = Some(v.parse().map_err(|_| {
                        Error::Parse(format!("bad nmax value `{v}`"))
                    })?);
                }
                _ => return Err(Error::Parse(format!("line `{trimmed}` outside any section"))),
            },
        }
    }
    let g: PolarSymbol = g_lines.parse()?;
    if g.is_zero() {
        return Err(Error::Parse("empty [g] section".into()));
    }
    let ansatz = parse_ansatz(&ansatz_lines)?;
    let n_max = nmax.ok_or_else(|| Error::Parse("missing [range] nmax".into()))?;
    Ok(CommutantProblem { g, ansatz, n_max })
}

fn parse_ansatz(lines: &[String]) -> Result<Ansatz> {
    if lines.len() == 1 && lines[0].starts_with("K=") {
        let parts: Vec<&str> = lines[0].split_whitespace().collect();
        if parts.len() == 2 && parts[1].starts_with("J=") {
            let k: i64 = parts[0][2..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad K in `{}`", lines[0])))?;
            let j: i64 = parts[1][2..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad J in `{}`", lines[0])))?;
            return Ok(Ansatz::monomials(k, j));
        }
        return Err(Error::Parse(format!("bad ansatz spec `{}`", lines[0])));
    }
    let mut elements = Vec::new();
    let mut degree: Option<i64> = None;
    for line in lines {
        if let Some(rest) = line.strip_prefix("degree ") {
            let rest = rest.trim_end_matches(':').trim();
            degree = Some(
                rest.parse()
                    .map_err(|_| Error::Parse(format!("bad degree header `{line}`")))?,
            );
        } else {
            let k = degree
                .ok_or_else(|| Error::Parse(format!("basis line `{line}` before degree header")))?;
            let body = line.replace(';', "\n");
            elements.push(AnsatzElement { k, radial: body.parse()? });
        }
    }
    if elements.is_empty() {
        return Err(Error::Parse("empty [ansatz] section".into()));
    }
    Ok(Ansatz { elements })
}
