//! End-to-end acceptance gate: one pass/fail line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines
//! for passing criteria too; a failing criterion always prints.

use std::time::Instant;

use num_complex::Complex64;
use num_rational::Rational64;

use qhtoep::commutant::{self, Ansatz, CommutantProblem};
use qhtoep::mellin::{convolution_identity_check, mellin_eval, mellin_quadrature, MellinPoint};
use qhtoep::operator::{shift_of, PolarSymbol, QuasiSymbol};
use qhtoep::radial::{convolve_monomial, RadialFunction};
use qhtoep::scalar::{Scalar, LN2};
use qhtoep::verify::{
    cross_check_constants, verify_even_bound, verify_odd_elimination, verify_theorem_cascade,
    all_reports, constants_csv, FStarSpec, Verdict,
};

fn report(n: u32, desc: &str, ok: bool) {
    println!("criterion {n}: {} - {desc}", if ok { "pass" } else { "fail" });
    assert!(ok, "criterion {n} failed: {desc}");
}

fn rf_monomial(num: i64, power: i64) -> RadialFunction {
    RadialFunction::monomial(Scalar::from_int(num), Rational64::from_integer(power))
}

#[test]
fn criterion_1_weights() {
    let start = Instant::now();
    let sym = QuasiSymbol::new(-2, rf_monomial(1, 2)).unwrap();
    let shift = shift_of(&sym);
    let mut ok = true;
    for n in 2..=50i64 {
        let w = shift.weight(n).unwrap();
        let expect = Scalar::from_ratio(n - 1, n + 1);
        ok &= {
            let d = w.clone() - expect;
            w.is_exact() && d.is_exact() && d.is_zero()
        };
        let q = shift.weight_quadrature(n, 1e-13).unwrap();
        ok &= (w.to_c64() - q.to_c64()).norm() <= 1e-12;
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs_f64() < 1.0;
    report(
        1,
        &format!("zbar^2 weights (n-1)/(n+1) exact + quadrature, {elapsed:.2?}"),
        ok,
    );
}

#[test]
fn criterion_2_exact_commutation() {
    let start = Instant::now();
    let g = PolarSymbol::alpha_beta(Scalar::one(), Scalar::one());
    let mut ok = true;
    for alpha in [Scalar::one(), Scalar::from_int(2), Scalar::i()] {
        for beta in [Scalar::zero(), Scalar::from_int(5)] {
            let f = g.scale(&alpha).add(&PolarSymbol::constant(beta));
            let r = commutant::residual(&f, &g, 64).unwrap();
            ok &= r.exact_zero && r.max_abs == 0.0;
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs_f64() < 1.0;
    report(2, &format!("residual(αg+β, g) exactly zero, {elapsed:.2?}"), ok);
}

/// A solved kernel equals span{1, g} when it is 2-dimensional and both of
/// those (ansatz-representable, commuting) symbols necessarily lie in it.
fn kernel_is_const_and_g(p: &CommutantProblem) -> bool {
    let (_, ns) = commutant::solve(p).unwrap();
    if ns.dimension != 2 || !ns.exact {
        return false;
    }
    let one = commutant::residual(&PolarSymbol::constant(Scalar::one()), &p.g, 40).unwrap();
    let gg = commutant::residual(&p.g.clone(), &p.g, 40).unwrap();
    one.exact_zero && gg.exact_zero
}

#[test]
fn criterion_3_commutant_kernel() {
    let start = Instant::now();
    let mut ok = kernel_is_const_and_g(&CommutantProblem::default_problem());
    // Stability under a deeper truncation and a wider ansatz.
    let mut deeper = CommutantProblem::default_problem();
    deeper.n_max = 120;
    ok &= kernel_is_const_and_g(&deeper);
    let wider = CommutantProblem {
        g: PolarSymbol::alpha_beta(Scalar::one(), Scalar::one()),
        ansatz: Ansatz::monomials(5, 3),
        n_max: 60,
    };
    ok &= kernel_is_const_and_g(&wider);
    // Any linear combination αz² + βz̄² has the same commutant.
    for (alpha, beta) in [
        (Scalar::one(), Scalar::one()),
        (Scalar::from_int(2), Scalar::one()),
        (Scalar::one(), Scalar::i()),
    ] {
        let p = CommutantProblem {
            g: PolarSymbol::alpha_beta(alpha, beta),
            ansatz: Ansatz::monomials(4, 3),
            n_max: 60,
        };
        ok &= kernel_is_const_and_g(&p);
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs_f64() < 10.0;
    report(3, &format!("commutant kernel = {{1, z^2+zbar^2}}, {elapsed:.2?}"), ok);
}

#[test]
fn criterion_4_analytic_commutant() {
    let p = CommutantProblem {
        g: PolarSymbol::z_pow(Scalar::one(), 2),
        ansatz: Ansatz::monomials(2, 2),
        n_max: 20,
    };
    let (_, ns) = commutant::solve(&p).unwrap();
    // Analytic sub-ansatz: the j = 0 monomials r^k e^{ikθ} = z^k for k ≥ 0.
    let analytic: Vec<usize> = p
        .ansatz
        .elements
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            e.k >= 0
                && e.radial.terms().len() == 1
                && e.radial.terms()[0].power == Rational64::from_integer(e.k)
        })
        .map(|(i, _)| i)
        .collect();
    let mut ok = ns.exact && ns.dimension == analytic.len();
    for v in &ns.basis {
        for (i, c) in v.iter().enumerate() {
            if !analytic.contains(&i) {
                ok &= c.is_zero();
            }
        }
    }
    report(4, "commutant of z^2 is exactly the analytic sub-ansatz", ok);
}

/// Tiny deterministic PRNG (xorshift64*), to keep the randomized suites
/// reproducible without an extra dependency.
struct Rng(u64);
impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }
    fn pick(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_term(rng: &mut Rng) -> RadialFunction {
    let coeff = Scalar::from_ratio(1 + rng.pick(5) as i64, 1 + rng.pick(3) as i64);
    match rng.pick(3) {
        0 => RadialFunction::monlog(
            coeff,
            Rational64::from_integer(rng.pick(7) as i64 - 1),
            rng.pick(3) as u32,
        ),
        1 => RadialFunction::inv1p(coeff, Rational64::from_integer(rng.pick(7) as i64)),
        _ => RadialFunction::log1p(coeff, Rational64::from_integer(rng.pick(7) as i64 - 1)),
    }
}

#[test]
fn criterion_5_mellin_engine() {
    let mut rng = Rng(0x5EED_CAFE_F00D_0001);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let f = random_term(&mut rng);
        let z = match rng.pick(3) {
            0 => MellinPoint::from_int(2 + rng.pick(8) as i64),
            1 => MellinPoint::from_rational(Rational64::new(2 * (2 + rng.pick(8) as i64) + 1, 2)),
            _ => MellinPoint::from_c64(Complex64::new(
                2.5 + rng.pick(6) as f64,
                0.5 + rng.pick(3) as f64,
            )),
        };
        let closed = mellin_eval(&f, &z).unwrap().to_c64();
        let quad = mellin_quadrature(&|r| f.eval(r), &z, 1e-12).unwrap().to_c64();
        worst = worst.max((closed - quad).norm());
    }
    let mut conv_worst: f64 = 0.0;
    let mut done = 0;
    while done < 50 {
        let m = rng.pick(6) as i64;
        let f = rf_monomial(1 + rng.pick(3) as i64, m);
        let g = random_term(&mut rng);
        // Keep to triples whose convolution stays inside the closed term
        // algebra (1/(1+r²) kernels need matching exponent parity; the
        // complement would leave the algebra via arctan terms).
        if convolve_monomial(m, &g).is_err() {
            continue;
        }
        let zs = [
            MellinPoint::from_int(7 + rng.pick(4) as i64),
            MellinPoint::from_int(8 + rng.pick(4) as i64),
        ];
        conv_worst = conv_worst.max(convolution_identity_check(&f, &g, &zs, 1e-10).unwrap());
        done += 1;
    }
    let ok = worst <= 1e-10 && conv_worst <= 1e-8;
    report(
        5,
        &format!("mellin closed-vs-quadrature worst={worst:.2e}, convolution worst={conv_worst:.2e}"),
        ok,
    );
}

#[test]
fn criterion_6_paper_constants() {
    // Oracle regressions for the uncontested constants.
    let hat = |n: i64, z: i64| -> f64 {
        let spec = FStarSpec::new(n, Scalar::one()).unwrap();
        let closed = mellin_eval(&spec.reduced().unwrap(), &MellinPoint::from_int(z))
            .unwrap()
            .to_c64()
            .re;
        let geo = spec.geometric();
        let quad = mellin_quadrature(&|r| geo.eval(r), &MellinPoint::from_int(z), 1e-12)
            .unwrap()
            .to_c64()
            .re;
        assert!((closed - quad).abs() <= 1e-10);
        closed
    };
    let mut ok = (hat(3, 6) - (-(31.0 - 30.0 * LN2) / 15.0)).abs() <= 1e-10;
    ok &= (hat(5, 0) - (-(3.0 + 4.0 * LN2) / 2.0)).abs() <= 1e-10;

    // The determinant 4ln2 − 8/3: exactly nonzero in Q[λ], numerically small
    // but safely away from zero.
    let det = Scalar::from_int(4) * Scalar::ln2() - Scalar::from_ratio(8, 3);
    ok &= det.is_exact() && !det.is_zero();
    ok &= (det.to_c64().re - (4.0 * LN2 - 8.0 / 3.0)).abs() <= 1e-10;

    // The cross-check flag set: computed, stable, and for the pair of
    // printed f̂_*(2) variants exactly one member matches the oracle.
    let rows = cross_check_constants().unwrap();
    let again = cross_check_constants().unwrap();
    let flags: Vec<(String, bool)> = rows.iter().map(|r| (r.location.clone(), r.flag)).collect();
    let flags2: Vec<(String, bool)> = again.iter().map(|r| (r.location.clone(), r.flag)).collect();
    ok &= flags == flags2;
    let pair: Vec<&qhtoep::verify::ConstantRow> = rows
        .iter()
        .filter(|r| r.location.ends_with("fstar_hat(2)"))
        .collect();
    ok &= pair.len() == 2 && pair.iter().filter(|r| r.flag).count() == 1;
    // The N = 5 f̂_*(4) row is tabulated with its oracle comparison.
    ok &= rows.iter().any(|r| r.location == "Prop1-N5/fstar_hat(4)");
    ok &= !rows.is_empty() && rows.iter().filter(|r| r.flag).count() >= 1;
    report(6, "paper-constant regressions and cross-check flag set", ok);
}

#[test]
fn criterion_7_proof_replay() {
    let start = Instant::now();
    let mut ok = true;
    for n in [1i64, 3, 5] {
        ok &= verify_odd_elimination(n).unwrap().verdict == Verdict::ForcedZero;
    }
    for n in [6i64, 8] {
        ok &= verify_even_bound(n).unwrap().verdict == Verdict::ForcedZero;
    }
    let cascade = verify_theorem_cascade().unwrap();
    let final_family = match &cascade.last().unwrap().verdict {
        Verdict::Family(s) => s.contains("z^2 + zbar^2"),
        _ => false,
    };
    ok &= final_family;
    // Independent path: the generic solver reaches the same 2-dim family.
    let (_, ns) = commutant::solve(&CommutantProblem::default_problem()).unwrap();
    ok &= ns.dimension == 2 && ns.exact;
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs_f64() < 30.0;
    report(
        7,
        &format!("replay verdicts forced-zero, final family c2(z^2+zbar^2)+c0, {elapsed:.2?}"),
        ok,
    );
}

#[test]
fn criterion_8_determinism() {
    let render = || -> String {
        let mut s: String = all_reports().unwrap().iter().map(|r| r.render()).collect();
        s.push_str(&constants_csv(&cross_check_constants().unwrap()));
        s
    };
    let here = render();
    let in_thread = std::thread::spawn(render).join().unwrap();
    let again = render();
    let ok = here == in_thread && here == again && !here.is_empty();
    report(8, "reports byte-identical across runs and threads", ok);
}
