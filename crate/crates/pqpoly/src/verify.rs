//! Randomized and sweep-based self-checks, grouped into suites the CLI can
//! run on demand. Everything exact is compared with `==` on rationals; the
//! few floating checks report a max residual against a fixed tolerance.

use crate::error::Error;
use crate::fourier::{
    fibonacci_transform_analytic, fibonacci_transform_lhs, fibonacci_transform_rhs,
    lucas_transform_analytic, lucas_transform_lhs, lucas_transform_rhs, recovery_direct,
    recovery_double_integral, FourierParams, QuadratureRule,
};
use crate::generating_functions::{
    fib_genfunc_closed, fib_genfunc_definitional, lucas_genfunc_closed,
    lucas_genfunc_definitional,
};
use crate::hypergeometric::{
    fibonacci_as_hypergeometric, inverse_fibonacci_as_4phi3, inverse_lucas_as_4phi3,
    lucas_as_hypergeometric, q_limit_fibonacci, q_limit_lucas,
};
use crate::polynomials::{
    fib_coefficient, fibonacci_poly, fibonacci_polys_recursive, inverse_param_poly,
    lucas_coefficient, lucas_from_fibonacci, lucas_poly, Family, FibRecursion, LucasAssembly,
};
use crate::pq_arithmetic::{pq_binomial, verify_binomial_identities, PQParams};
use crate::scalar::{rat, rat_to_f64, ratio, Rat, Scalar};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Binomials,
    Recursions,
    Hypergeometric,
    Genfunc,
    Fourier,
    All,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub description: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Largest observed residual, for floating checks; 0 for exact ones.
    pub max_residual: f64,
    pub passed: bool,
}

impl CheckResult {
    fn exact(id: &'static str, description: &'static str, cases: usize, failures: usize) -> Self {
        Self {
            id,
            description,
            cases,
            failures,
            max_residual: 0.0,
            passed: failures == 0,
        }
    }

    fn floating(
        id: &'static str,
        description: &'static str,
        cases: usize,
        max_residual: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            id,
            description,
            cases,
            failures: usize::from(max_residual > tolerance),
            max_residual,
            passed: max_residual <= tolerance,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Nonzero random rational, numerator in [-9,9], denominator in [1,9].
fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let mut num = 0i64;
    while num == 0 {
        num = rng.gen_range(-9..=9);
    }
    ratio(num, rng.gen_range(1..=9))
}

fn random_params(rng: &mut ChaCha8Rng) -> PQParams<Rat> {
    loop {
        let p = random_rat(rng);
        let q = random_rat(rng);
        // Distinct and non-opposite keeps every division-free path and the
        // quotient path comparable in the same sweep.
        if p != q && p != -q.clone() {
            return PQParams::new(p, q).unwrap();
        }
    }
}

pub fn run_suite(suite: Suite, seed: u64, n_max: u32) -> SuiteReport {
    let mut checks = Vec::new();
    let run_all = suite == Suite::All;
    if run_all || suite == Suite::Binomials {
        checks.extend(binomial_checks(seed, n_max));
    }
    if run_all || suite == Suite::Recursions {
        checks.extend(recursion_checks(seed, n_max.min(16)));
    }
    if run_all || suite == Suite::Hypergeometric {
        checks.extend(hypergeometric_checks(seed, n_max.min(8)));
    }
    if run_all || suite == Suite::Genfunc {
        checks.extend(genfunc_checks(seed, n_max.min(12) as usize));
    }
    if run_all || suite == Suite::Fourier {
        checks.extend(fourier_checks());
    }
    SuiteReport { seed, checks }
}

fn binomial_checks(seed: u64, n_max: u32) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut cases = 0;
    let mut failures = 0;
    for _ in 0..6 {
        let params = random_params(&mut rng);
        let report = verify_binomial_identities(n_max, &params);
        cases += report.cases;
        failures += report.failures.len();
    }
    out.push(CheckResult::exact(
        "binomial-recurrences",
        "both Pascal-type recurrences and the p=q collapse, random parameters",
        cases,
        failures,
    ));

    let mut cases = 0;
    let mut failures = 0;
    for _ in 0..6 {
        let params = random_params(&mut rng);
        let swapped = PQParams::new(params.q().clone(), params.p().clone()).unwrap();
        for n in 0..=n_max.min(14) {
            for k in 0..=n as i64 {
                cases += 1;
                if pq_binomial(n, k, &params) != pq_binomial(n, n as i64 - k, &swapped) {
                    failures += 1;
                }
            }
        }
    }
    out.push(CheckResult::exact(
        "binomial-symmetry",
        "[n,k] with (p,q) equals [n,n-k] with (q,p)",
        cases,
        failures,
    ));
    out
}

fn recursion_checks(seed: u64, n_max: u32) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut out = Vec::new();

    let mut cases = 0;
    let mut failures = 0;
    for _ in 0..4 {
        let params = random_params(&mut rng);
        let s = random_rat(&mut rng);
        let by_variant = [FibRecursion::A, FibRecursion::B, FibRecursion::C]
            .map(|variant| fibonacci_polys_recursive(n_max, &params, &s, variant));
        for n in 0..=n_max {
            let direct = fibonacci_poly(n, &params, &s);
            for built in &by_variant {
                cases += 1;
                if built[n as usize] != direct {
                    failures += 1;
                }
            }
        }
    }
    out.push(CheckResult::exact(
        "fibonacci-recursions",
        "all three recursion variants reproduce the explicit coefficient sum",
        cases,
        failures,
    ));

    let mut cases = 0;
    let mut failures = 0;
    for _ in 0..4 {
        let params = random_params(&mut rng);
        let s = random_rat(&mut rng);
        for n in 1..=n_max {
            let direct = lucas_poly(n, &params, &s);
            for variant in [LucasAssembly::A, LucasAssembly::B] {
                cases += 1;
                if lucas_from_fibonacci(n, &params, &s, variant).unwrap() != direct {
                    failures += 1;
                }
            }
        }
    }
    out.push(CheckResult::exact(
        "lucas-assemblies",
        "both Fibonacci-pair assemblies of L_n match the explicit sum",
        cases,
        failures,
    ));

    let mut cases = 0;
    let mut failures = 0;
    for _ in 0..4 {
        let params = random_params(&mut rng);
        let inv = params.inverted();
        let s = random_rat(&mut rng);
        for family in [Family::Fibonacci, Family::Lucas] {
            for n in 0..=n_max {
                cases += 1;
                let mapped = inverse_param_poly(family, n, &params, &s);
                let direct = match family {
                    Family::Fibonacci => fibonacci_poly(n, &inv, &s),
                    Family::Lucas => lucas_poly(n, &inv, &s),
                };
                if mapped != direct {
                    failures += 1;
                }
            }
        }
    }
    out.push(CheckResult::exact(
        "inverse-parameters",
        "coefficient inversion maps agree with direct evaluation at (1/p, 1/q)",
        cases,
        failures,
    ));

    let mut cases = 0;
    let mut failures = 0;
    for _ in 0..4 {
        let params = random_params(&mut rng);
        let pq = params.p().clone() * params.q().clone();
        for n in 2..=n_max as i64 {
            for k in 0..=n / 2 {
                cases += 2;
                // Pascal split of the Fibonacci coefficients:
                // c_{n,k} = q^k c_{n-1,k} + p^{n-2k} (pq)^k c_{n-2,k-1}.
                let c = fib_coefficient(n, k, &params);
                let a = params.q().powi(k as i32) * fib_coefficient(n - 1, k, &params);
                let b = params.p().powi((n - 2 * k) as i32)
                    * pq.powi(k as i32)
                    * fib_coefficient(n - 2, k - 1, &params);
                if c != a + b {
                    failures += 1;
                }
                // The Lucas coefficient through its division-free form
                // (always valid, not only when [n-k] vanishes).
                let split = pq.powi((k * (k - 1) / 2) as i32)
                    * (params.p().powi(k as i32) * pq_binomial((n - k) as u32, k, &params)
                        + if k > 0 {
                            params.q().powi((n - k) as i32)
                                * pq_binomial((n - 1 - k) as u32, k - 1, &params)
                        } else {
                            Rat::zero()
                        });
                let reference = if k == 0 {
                    Rat::one()
                } else {
                    lucas_coefficient(n, k, &params)
                };
                let split = if k == 0 { Rat::one() } else { split };
                if split != reference {
                    failures += 1;
                }
            }
        }
    }
    out.push(CheckResult::exact(
        "coefficient-identities",
        "Pascal split of Fibonacci and division-free form of Lucas coefficients",
        cases,
        failures,
    ));
    out
}

fn hypergeometric_checks(seed: u64, n_max: u32) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let mut out = Vec::new();

    // Perfect-square parameter pool keeps the half-integer powers exact.
    let squares: Vec<Rat> = vec![rat(4), rat(9), ratio(25, 16), ratio(9, 4), rat(16)];

    let mut cases = 0;
    let mut failures = 0;
    for _ in 0..4 {
        let p = squares[rng.gen_range(0..squares.len())].clone();
        let mut q = p.clone();
        while q == p {
            q = squares[rng.gen_range(0..squares.len())].clone();
        }
        let params = PQParams::new(p, q).unwrap();
        let x = random_rat(&mut rng);
        let s = random_rat(&mut rng);
        for n in 0..=n_max {
            cases += 4;
            let fib = fibonacci_poly(n + 1, &params, &s).eval(&x);
            if fibonacci_as_hypergeometric(n, &x, &s, &params).unwrap() != fib {
                failures += 1;
            }
            let luc = lucas_poly(n, &params, &s).eval(&x);
            if lucas_as_hypergeometric(n, &x, &s, &params).unwrap() != luc {
                failures += 1;
            }
            let inv = params.inverted();
            let fib_inv = fibonacci_poly(n + 1, &inv, &s).eval(&x);
            if inverse_fibonacci_as_4phi3(n, &x, &s, &params).unwrap() != fib_inv {
                failures += 1;
            }
            let luc_inv = lucas_poly(n, &inv, &s).eval(&x);
            if inverse_lucas_as_4phi3(n, &x, &s, &params).unwrap() != luc_inv {
                failures += 1;
            }
        }
    }
    out.push(CheckResult::exact(
        "series-representations",
        "terminating basic-series forms equal the polynomials, square parameters",
        cases,
        failures,
    ));

    let mut cases = 0;
    let mut max_resid = 0.0f64;
    for _ in 0..4 {
        let params = random_params(&mut rng);
        if params.p() <= &Rat::zero() || params.q() <= &Rat::zero() {
            continue;
        }
        let x = random_rat(&mut rng);
        let s = random_rat(&mut rng);
        for n in 0..=n_max.min(7) {
            cases += 2;
            let fib = rat_to_f64(&fibonacci_poly(n + 1, &params, &s).eval(&x));
            let got = rat_to_f64(&fibonacci_as_hypergeometric(n, &x, &s, &params).unwrap());
            max_resid = max_resid.max(((got - fib) / fib.abs().max(1e-30)).abs());
            let luc = rat_to_f64(&lucas_poly(n, &params, &s).eval(&x));
            let got = rat_to_f64(&lucas_as_hypergeometric(n, &x, &s, &params).unwrap());
            max_resid = max_resid.max(((got - luc) / luc.abs().max(1e-30)).abs());
        }
    }
    out.push(CheckResult::floating(
        "series-nonsquare-parameters",
        "approximate square roots keep the representations within 1e-12",
        cases,
        max_resid,
        1e-12,
    ));

    let mut cases = 0;
    let mut failures = 0;
    for _ in 0..4 {
        let q = {
            let base = random_rat(&mut rng);
            base.clone() * base // positive square => exact half powers
        };
        if q.is_zero() || q.is_one() {
            continue;
        }
        let params = PQParams::new(Rat::one(), q.clone()).unwrap();
        let x = random_rat(&mut rng);
        let s = random_rat(&mut rng);
        for n in 0..=n_max {
            cases += 2;
            if q_limit_fibonacci(n, &x, &s, &q).unwrap()
                != fibonacci_poly(n + 1, &params, &s).eval(&x)
            {
                failures += 1;
            }
            if q_limit_lucas(n, &x, &s, &q).unwrap() != lucas_poly(n, &params, &s).eval(&x) {
                failures += 1;
            }
        }
    }
    out.push(CheckResult::exact(
        "series-q-limit",
        "the p = 1 specialization of both representations",
        cases,
        failures,
    ));
    out
}

fn genfunc_checks(seed: u64, order: usize) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    let mut cases = 0;
    let mut failures = 0;
    for _ in 0..4 {
        let params = random_params(&mut rng);
        let x = random_rat(&mut rng);
        let s = random_rat(&mut rng);
        cases += 2;
        if fib_genfunc_closed(&x, &s, &params, order) != fib_genfunc_definitional(&x, &s, &params, order)
        {
            failures += 1;
        }
        if lucas_genfunc_closed(&x, &s, &params, order)
            != lucas_genfunc_definitional(&x, &s, &params, order)
        {
            failures += 1;
        }
    }
    vec![CheckResult::exact(
        "generating-functions",
        "closed forms match the term-by-term series to the requested order",
        cases,
        failures,
    )]
}

fn fourier_checks() -> Vec<CheckResult> {
    let rule = QuadratureRule::gauss_hermite(128);
    let ys: Vec<f64> = (0..13).map(|i| -3.0 + 0.5 * i as f64).collect();
    let mut out = Vec::new();

    let mut cases = 0;
    let mut max_theorem = 0.0f64;
    let mut max_quad = 0.0f64;
    for &p in &[1.1, 1.5] {
        for &kappa in &[0.2, 0.3] {
            for &s in &[0.5, 1.0] {
                for n in 0..=8u32 {
                    let fp = FourierParams::new(p, kappa, 1.0, s, n).unwrap();
                    for &y in &ys {
                        cases += 2;
                        let lhs = fibonacci_transform_lhs(&fp, y, &rule);
                        let rhs = fibonacci_transform_rhs(&fp, y);
                        max_theorem =
                            max_theorem.max((lhs - rhs).norm() / rhs.norm().max(1e-30));
                        max_quad = max_quad
                            .max((lhs - fibonacci_transform_analytic(&fp, y)).norm());
                        let lhs = lucas_transform_lhs(&fp, y, &rule);
                        let rhs = lucas_transform_rhs(&fp, y);
                        max_theorem =
                            max_theorem.max((lhs - rhs).norm() / rhs.norm().max(1e-30));
                        max_quad =
                            max_quad.max((lhs - lucas_transform_analytic(&fp, y)).norm());
                    }
                }
            }
        }
    }
    out.push(CheckResult::floating(
        "fourier-theorem",
        "Gaussian-windowed transform equals the inverse-parameter form",
        cases,
        max_theorem,
        1e-8,
    ));
    out.push(CheckResult::floating(
        "fourier-quadrature",
        "quadrature agrees with the analytic Gaussian-shift sum",
        cases,
        max_quad,
        1e-10,
    ));

    let mut cases = 0;
    let mut max_recovery = 0.0f64;
    for &p in &[1.1, 1.5] {
        for &kappa in &[0.2, 0.3] {
            for n in 0..=8u32 {
                let fp = FourierParams::new(p, kappa, 1.0, 0.5, n).unwrap();
                for family in [Family::Fibonacci, Family::Lucas] {
                    cases += 1;
                    let rec = recovery_double_integral(family, &fp, &rule);
                    let direct = recovery_direct(family, &fp);
                    max_recovery =
                        max_recovery.max((rec.re - direct).abs() / direct.abs().max(1e-30));
                }
            }
        }
    }
    out.push(CheckResult::floating(
        "fourier-recovery",
        "double-integral recovery returns the polynomial value",
        cases,
        max_recovery,
        1e-8,
    ));
    out
}

/// Render a report as aligned plain-text lines.
pub fn format_report(report: &SuiteReport) -> String {
    let mut s = String::new();
    for c in &report.checks {
        s.push_str(&format!(
            "{:<6} {:<28} cases={:<5} failures={:<3} max_residual={:.3e}\n",
            if c.passed { "ok" } else { "FAIL" },
            c.id,
            c.cases,
            c.failures,
            c.max_residual
        ));
    }
    s.push_str(if report.passed() {
        "all checks passed\n"
    } else {
        "CHECKS FAILED\n"
    });
    s
}

/// Convenience used by the CLI: error when any check fails.
pub fn run_suite_strict(suite: Suite, seed: u64, n_max: u32) -> Result<SuiteReport, Error> {
    let report = run_suite(suite, seed, n_max);
    if report.passed() {
        Ok(report)
    } else {
        Err(Error::Domain(format!(
            "verification failed:\n{}",
            format_report(&report)
        )))
    }
}
