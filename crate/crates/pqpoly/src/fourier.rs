//! Numerical verification of the Gaussian-windowed Fourier transform
//! theorems: quadrature evaluation of the transform, the analytic
//! Gaussian-shift oracle, the inverse-parameter right-hand sides, and the
//! double-integral recovery formula.

use crate::error::Error;
use crate::pq_arithmetic::PQParams;
use crate::polynomials::{fib_coefficient, lucas_coefficient, Family};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Gauss–Hermite rule for the weight exp(-u^2): exactly integrates
/// polynomials up to degree 2*count - 1.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// Nodes from the eigenvalues of the Jacobi matrix (off-diagonals
    /// sqrt(j/2)), polished by Newton steps on the orthonormal Hermite
    /// recurrence; weights from w_j = 1 / sum_k p_k(x_j)^2.
    pub fn gauss_hermite(count: usize) -> Self {
        assert!(count >= 1);
        let mut jacobi = DMatrix::<f64>::zeros(count, count);
        for j in 1..count {
            let b = (j as f64 / 2.0).sqrt();
            jacobi[(j, j - 1)] = b;
            jacobi[(j - 1, j)] = b;
        }
        let mut nodes: Vec<f64> = jacobi
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());

        let mut weights = Vec::with_capacity(count);
        for x in nodes.iter_mut() {
            for _ in 0..3 {
                let (pn, dpn, _) = orthonormal_hermite(count, *x);
                let step = pn / dpn;
                if step.is_finite() {
                    *x -= step;
                }
            }
            let (_, _, norm_sq) = orthonormal_hermite(count, *x);
            weights.push(1.0 / norm_sq);
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// integral of f against exp(-u^2).
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(u, w)| w * f(*u))
            .sum()
    }
}

/// Returns (p_n(x), p_n'(x), sum_{k<n} p_k(x)^2) for the polynomials
/// orthonormal with respect to exp(-x^2).
fn orthonormal_hermite(n: usize, x: f64) -> (f64, f64, f64) {
    let mut prev = 0.0f64;
    let mut cur = PI.powf(-0.25);
    let mut norm_sq = cur * cur;
    for k in 0..n {
        let a = (2.0 / (k as f64 + 1.0)).sqrt();
        let b = (k as f64 / (k as f64 + 1.0)).sqrt();
        let next = a * x * cur - b * prev;
        prev = cur;
        cur = next;
        if k + 1 < n {
            norm_sq += cur * cur;
        }
    }
    // p_n'(x) = sqrt(2n) p_{n-1}(x)
    let dpn = (2.0 * n as f64).sqrt() * prev;
    (cur, dpn, norm_sq)
}

/// Parameters of the transform theorems. q is not free: the theorems hold
/// under q = p^{-1} exp(-2 kappa^2).
#[derive(Clone, Copy, Debug)]
pub struct FourierParams {
    pub p: f64,
    pub kappa: f64,
    /// The arbitrary constant factor (a for Fibonacci, b for Lucas).
    pub factor: f64,
    pub s: f64,
    /// The transform order: the theorems relate F_{n+1} and L_n.
    pub n: u32,
}

impl FourierParams {
    pub fn new(p: f64, kappa: f64, factor: f64, s: f64, n: u32) -> Result<Self, Error> {
        if !(p > 0.0) {
            return Err(Error::InvalidParams("p must be positive".into()));
        }
        if kappa == 0.0 {
            return Err(Error::InvalidParams("kappa must be nonzero".into()));
        }
        Ok(Self {
            p,
            kappa,
            factor,
            s,
            n,
        })
    }

    /// The derived q = p^{-1} exp(-2 kappa^2); always positive.
    pub fn q(&self) -> f64 {
        (-2.0 * self.kappa * self.kappa).exp() / self.p
    }

    fn pq_params(&self) -> PQParams<f64> {
        PQParams::new(self.p, self.q()).expect("validated nonzero")
    }

    /// s^k-weighted coefficient list c_{n,k} s^k for k = 0..floor(n/2).
    fn weighted_coefficients(&self, family: Family) -> Vec<f64> {
        let params = self.pq_params();
        let n = self.n as i64;
        (0..=(n / 2))
            .map(|k| {
                let c = match family {
                    Family::Fibonacci => fib_coefficient(n, k, &params),
                    Family::Lucas => lucas_coefficient(n, k, &params),
                };
                c * self.s.powi(k as i32)
            })
            .collect()
    }

    /// Same, with the inverse-parameter coefficient maps and the theorem's
    /// s substitution (pq s for Fibonacci, s/(pq) for Lucas).
    fn weighted_inverse_coefficients(&self, family: Family) -> Vec<f64> {
        let params = self.pq_params();
        let pq = self.p * self.q();
        let n = self.n as i64;
        // The Gaussian-shift derivation gives s -> pq*s for Fibonacci. For
        // Lucas the inverse coefficient map (pq)^{k(k-n)} already absorbs
        // the whole shift factor (pq)^{(n-2k)^2/4 - n^2/4}, so s is
        // unchanged; the transform identity only holds in this form.
        let s_sub = match family {
            Family::Fibonacci => pq * self.s,
            Family::Lucas => self.s,
        };
        (0..=(n / 2))
            .map(|k| {
                let c = match family {
                    Family::Fibonacci => {
                        pq.powi((-k * (n + 1 - k)) as i32) * fib_coefficient(n, k, &params)
                    }
                    Family::Lucas => {
                        pq.powi((k * (k - n)) as i32) * lucas_coefficient(n, k, &params)
                    }
                };
                c * s_sub.powi(k as i32)
            })
            .collect()
    }
}

/// (1/sqrt(2 pi)) * integral of g(x) e^{ixy - x^2/2} dx, via the
/// substitution x = sqrt(2) u against the exp(-u^2) rule.
pub fn weighted_fourier_quadrature(
    g: impl Fn(f64) -> Complex64,
    y: f64,
    rule: &QuadratureRule,
) -> Complex64 {
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut acc = Complex64::new(0.0, 0.0);
    for (u, w) in rule.nodes().iter().zip(rule.weights()) {
        let x = sqrt2 * u;
        acc += w * g(x) * Complex64::new(0.0, x * y).exp();
    }
    acc / PI.sqrt()
}

fn transform_lhs(family: Family, fp: &FourierParams, y: f64, rule: &QuadratureRule) -> Complex64 {
    let coeffs = fp.weighted_coefficients(family);
    let n = fp.n as i32;
    let g = |x: f64| -> Complex64 {
        let z = fp.factor * Complex64::new(0.0, fp.kappa * x).exp();
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * z.powi(n - 2 * k as i32))
            .sum()
    };
    weighted_fourier_quadrature(g, y, rule)
}

fn transform_analytic(family: Family, fp: &FourierParams, y: f64) -> Complex64 {
    let coeffs = fp.weighted_coefficients(family);
    let n = fp.n as i32;
    let re: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let shift = fp.kappa * (n - 2 * k as i32) as f64 + y;
            c * fp.factor.powi(n - 2 * k as i32) * (-shift * shift / 2.0).exp()
        })
        .sum();
    Complex64::new(re, 0.0)
}

fn transform_rhs(family: Family, fp: &FourierParams, y: f64) -> Complex64 {
    let coeffs = fp.weighted_inverse_coefficients(family);
    let n = fp.n as i32;
    let pq = fp.p * fp.q();
    // (pq)^(n^2/4) computed through the logarithm; pq > 0 by construction
    let prefactor = ((n * n) as f64 / 4.0 * pq.ln()).exp();
    let x = fp.factor * (-fp.kappa * y).exp();
    let value: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * x.powi(n - 2 * k as i32))
        .sum();
    Complex64::new(prefactor * value * (-y * y / 2.0).exp(), 0.0)
}

/// Quadrature of x -> F_{n+1}(a e^{i kappa x}, s | p, q) against the
/// Gaussian-windowed Fourier kernel.
pub fn fibonacci_transform_lhs(fp: &FourierParams, y: f64, rule: &QuadratureRule) -> Complex64 {
    transform_lhs(Family::Fibonacci, fp, y, rule)
}

/// The closed Gaussian-shift sum: the quadrature-free oracle for the LHS.
pub fn fibonacci_transform_analytic(fp: &FourierParams, y: f64) -> Complex64 {
    transform_analytic(Family::Fibonacci, fp, y)
}

/// (pq)^(n^2/4) F_{n+1}(a e^{-kappa y}, pq s | p^{-1}, q^{-1}) e^{-y^2/2}.
pub fn fibonacci_transform_rhs(fp: &FourierParams, y: f64) -> Complex64 {
    transform_rhs(Family::Fibonacci, fp, y)
}

pub fn lucas_transform_lhs(fp: &FourierParams, y: f64, rule: &QuadratureRule) -> Complex64 {
    transform_lhs(Family::Lucas, fp, y, rule)
}

pub fn lucas_transform_analytic(fp: &FourierParams, y: f64) -> Complex64 {
    transform_analytic(Family::Lucas, fp, y)
}

/// (pq)^(n^2/4) L_n(b e^{-kappa y}, s | p^{-1}, q^{-1}) e^{-y^2/2}.
pub fn lucas_transform_rhs(fp: &FourierParams, y: f64) -> Complex64 {
    transform_rhs(Family::Lucas, fp, y)
}

/// The double-integral recovery: (1/2 pi) * double integral of the
/// transform kernel recovers the polynomial value at x = a (or b). The
/// outer y-integral is computed by the same Gaussian-weighted quadrature
/// applied to the analytic LHS, whose Gaussian factor is pulled into the
/// weight.
pub fn recovery_double_integral(
    family: Family,
    fp: &FourierParams,
    rule: &QuadratureRule,
) -> Complex64 {
    let coeffs = fp.weighted_coefficients(family);
    let n = fp.n as i32;
    // analytic LHS(y) = h(y) e^{-y^2/2} with
    // h(y) = sum_k c_k s^k a^{n-2k} e^{-kappa_k^2/2} e^{-kappa_k y}
    let h = |y: f64| -> Complex64 {
        let re: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let kap = fp.kappa * (n - 2 * k as i32) as f64;
                c * fp.factor.powi(n - 2 * k as i32) * (-kap * kap / 2.0).exp() * (-kap * y).exp()
            })
            .sum();
        Complex64::new(re, 0.0)
    };
    weighted_fourier_quadrature(h, 0.0, rule)
}

/// Direct evaluation of the recovered quantity F_{n+1}(a,s|p,q) or
/// L_n(b,s|p,q), for comparison with `recovery_double_integral`.
pub fn recovery_direct(family: Family, fp: &FourierParams) -> f64 {
    let coeffs = fp.weighted_coefficients(family);
    let n = fp.n as i32;
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * fp.factor.powi(n - 2 * k as i32))
        .sum()
}
