//! Generating functions of the deformed families as truncated formal power
//! series in t: the definitional sums over n, the closed hypergeometric
//! forms expanded coefficientwise, number-sequence specializations, and a
//! numeric summation convenience.
//!
//! The closed Lucas form printed in the literature does not reproduce the
//! definitional series (its derivation drops the p^{-n} shift riding on s).
//! The form implemented here follows from the Fibonacci assembly of L_n:
//!
//!   f_L(x,s;t) = 1/(1-xt) * [ Phi(s) + (s t^2 / p) Phi(s p^{-2}) ],
//!
//! where Phi(sigma) is the 2phi2 kernel of the Fibonacci closed form with
//! argument -q sigma t^2. This expansion is validated coefficientwise
//! against the definitional series.

use crate::error::Error;
use crate::pq_arithmetic::PQParams;
use crate::polynomials::{fibonacci_poly, lucas_poly, Family};
use crate::scalar::{Rat, Scalar};
use num_traits::{One, Zero};

/// Formal power series in t over the exact rationals, truncated at a fixed
/// order: `coeffs[m]` is the coefficient of t^m, valid for m <= order.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> Rat {
        self.coeffs.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, m: usize, c: Rat) {
        self.coeffs[m] = c;
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_coeffs((0..=order).map(|m| self.coeff(m) + other.coeff(m)).collect())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rat::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                let prod = &self.coeffs[i] * &other.coeffs[j];
                out[i + j] = &out[i + j] + &prod;
            }
        }
        Self::from_coeffs(out)
    }

    /// Multiplication by t^k (drops the top k coefficients).
    pub fn shift_up(&self, k: usize) -> Self {
        let mut out = vec![Rat::zero(); self.coeffs.len()];
        for m in k..self.coeffs.len() {
            out[m] = self.coeffs[m - k].clone();
        }
        Self::from_coeffs(out)
    }

    /// Reciprocal as a formal series; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self, Error> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "series inversion requires a nonzero constant term".into(),
            ));
        }
        let c0_inv = Rat::one() / self.coeffs[0].clone();
        let mut out = vec![Rat::zero(); self.coeffs.len()];
        out[0] = c0_inv.clone();
        for m in 1..self.coeffs.len() {
            let mut acc = Rat::zero();
            for j in 1..=m {
                acc = acc + &self.coeffs[j] * &out[m - j];
            }
            out[m] = -acc * &c0_inv;
        }
        Ok(Self::from_coeffs(out))
    }

    /// Geometric series 1/(1 - c t).
    pub fn geometric(c: &Rat, order: usize) -> Self {
        let mut out = Vec::with_capacity(order + 1);
        let mut pow = Rat::one();
        for _ in 0..=order {
            out.push(pow.clone());
            pow = pow * c.clone();
        }
        Self::from_coeffs(out)
    }
}

/// The 2phi2 kernel of the closed forms, expanded as a formal series in t:
/// sum_k (q/p)^C(k,2) (q sigma)^k t^(2k) / [ prod_{j=0}^{k-1}(p^(j+1) - x q^(j+1) t) * p^C(k+1,2) ].
/// Each k-term's denominator polynomial has constant term p^C(k+1,2) != 0,
/// so it inverts as a formal series.
fn phi22_kernel(x: &Rat, sigma: &Rat, params: &PQParams<Rat>, order: usize) -> TruncatedSeries {
    let p = params.p();
    let q = params.q();
    let mut sum = TruncatedSeries::constant(Rat::one(), order);
    let mut den_poly = TruncatedSeries::constant(Rat::one(), order);
    for k in 1..=(order / 2) {
        let ki = k as i32;
        // grow the denominator product by the factor (p^k - x q^k t)
        let mut factor = TruncatedSeries::zero(order);
        factor.set_coeff(0, p.powi(ki));
        factor.set_coeff(1, -(x.clone() * q.powi(ki)));
        den_poly = den_poly.mul(&factor);
        let coeff = (q.clone() / p.clone()).powi(ki * (ki - 1) / 2)
            * (q.clone() * sigma.clone()).powi(ki)
            / p.powi(ki * (ki + 1) / 2);
        let term = den_poly
            .invert()
            .expect("constant term p^C(k+1,2) is nonzero")
            .scale(&coeff)
            .shift_up(2 * k);
        sum = sum.add(&term);
    }
    sum
}

/// f_F(x,s;t|p,q) := sum_n F_n(x, s p^{-n}|p,q) t^n, by direct evaluation.
pub fn fib_genfunc_definitional(
    x: &Rat,
    s: &Rat,
    params: &PQParams<Rat>,
    order: usize,
) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    for n in 0..=order {
        let shifted = s.clone() * params.p().powi(-(n as i32));
        out.set_coeff(n, fibonacci_poly(n as u32, params, &shifted).eval(x));
    }
    out
}

/// The closed form t/(1-xt) * 2phi2((p,q),0; (p,xtq),(p,0) | (p,q); -qst^2),
/// expanded coefficientwise.
pub fn fib_genfunc_closed(
    x: &Rat,
    s: &Rat,
    params: &PQParams<Rat>,
    order: usize,
) -> TruncatedSeries {
    let geo = TruncatedSeries::geometric(x, order);
    geo.mul(&phi22_kernel(x, s, params, order)).shift_up(1)
}

/// f_L(x,s;t|p,q) := sum_n L_n(x, s p^{-n}|p,q) t^n, by direct evaluation.
pub fn lucas_genfunc_definitional(
    x: &Rat,
    s: &Rat,
    params: &PQParams<Rat>,
    order: usize,
) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    for n in 0..=order {
        let shifted = s.clone() * params.p().powi(-(n as i32));
        out.set_coeff(n, lucas_poly(n as u32, params, &shifted).eval(x));
    }
    out
}

/// Closed form of the Lucas generating function (see module docs for the
/// derivation): 1/(1-xt) * [Phi(s) + (s t^2 / p) Phi(s p^{-2})].
pub fn lucas_genfunc_closed(
    x: &Rat,
    s: &Rat,
    params: &PQParams<Rat>,
    order: usize,
) -> TruncatedSeries {
    let p = params.p();
    let head = phi22_kernel(x, s, params, order);
    let tail_sigma = s.clone() / (p.clone() * p.clone());
    let tail = phi22_kernel(x, &tail_sigma, params, order)
        .scale(&(s.clone() / p.clone()))
        .shift_up(2);
    TruncatedSeries::geometric(x, order).mul(&head.add(&tail))
}

/// The number generating functions: the closed forms at x = s = 1.
pub fn number_genfunc(family: Family, params: &PQParams<Rat>, order: usize) -> TruncatedSeries {
    match family {
        Family::Fibonacci => fib_genfunc_closed(&Rat::one(), &Rat::one(), params, order),
        Family::Lucas => lucas_genfunc_closed(&Rat::one(), &Rat::one(), params, order),
    }
}

/// Numeric convenience: sums the definitional series at a concrete |t| < 1
/// until the partial sum's relative change stays below `tol` for 5
/// consecutive terms.
pub fn eval_definitional_at(
    family: Family,
    x: &Rat,
    s: &Rat,
    params: &PQParams<Rat>,
    t: f64,
    tol: f64,
    max_terms: usize,
) -> Result<f64, Error> {
    if t.abs() >= 1.0 {
        return Err(Error::Domain("numeric summation requires |t| < 1".into()));
    }
    let mut sum = 0.0f64;
    let mut quiet = 0usize;
    let mut t_pow = 1.0f64;
    for n in 0..max_terms {
        let shifted = s.clone() * params.p().powi(-(n as i32));
        let coeff = match family {
            Family::Fibonacci => fibonacci_poly(n as u32, params, &shifted).eval(x),
            Family::Lucas => lucas_poly(n as u32, params, &shifted).eval(x),
        };
        let term = coeff.approx() * t_pow;
        sum += term;
        t_pow *= t;
        if term.abs() <= tol * (sum.abs() + f64::MIN_POSITIVE) {
            quiet += 1;
            if quiet >= 5 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergent { max_terms })
}
