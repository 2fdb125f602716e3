//! The (p,q)-hypergeometric function _r phi_s and the specific 8phi5 / 4phi3
//! representations of the deformed Fibonacci and Lucas polynomials.
//!
//! A term of _r phi_s multiplies the ratio of (p,q)-shifted factorials over
//! the parameter pairs by [(-1)^n (q/p)^C(n,2)]^(1+s-r) / ((p,q);(p,q))_n
//! and z^n. Bare "0" entries in a parameter list are unit placeholders: they
//! contribute factor 1 to every term but still count toward r or s in the
//! prefactor exponent.

use crate::error::Error;
use crate::pq_arithmetic::PQParams;
use crate::scalar::{rat_sqrt_approx, rat_sqrt_exact, Rat, Scalar};
use num_traits::{One, Zero};

/// One entry of a (p,q)-hypergeometric parameter list.
#[derive(Clone, Debug, PartialEq)]
pub enum ParamPair<T: Scalar> {
    /// Contributes ((a,b);(p,q))_n to its side's product.
    Explicit(T, T),
    /// Contributes exactly 1 for every n while counting toward r or s.
    UnitPlaceholder,
}

impl<T: Scalar> ParamPair<T> {
    /// The factor this pair contributes at series index n, given p^n and q^n.
    fn factor(&self, p_pow: &T, q_pow: &T) -> T {
        match self {
            ParamPair::Explicit(a, b) => a.clone() * p_pow.clone() - b.clone() * q_pow.clone(),
            ParamPair::UnitPlaceholder => T::one(),
        }
    }

    fn is_placeholder(&self) -> bool {
        matches!(self, ParamPair::UnitPlaceholder)
    }
}

#[derive(Clone, Debug)]
pub struct HypergeometricSpec<T: Scalar> {
    pub numerator: Vec<ParamPair<T>>,
    pub denominator: Vec<ParamPair<T>>,
    pub params: PQParams<T>,
}

impl<T: Scalar> HypergeometricSpec<T> {
    /// The prefactor exponent 1 + s - r, counting placeholders.
    pub fn prefactor_exponent(&self) -> i32 {
        1 + self.denominator.len() as i32 - self.numerator.len() as i32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesMode {
    /// Requires a numerator pair that eventually produces a zero factor.
    ExactTerminating,
    /// Sums until the term magnitude stays below the relative tolerance.
    NumericTruncated,
}

#[derive(Clone, Debug)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub relative_tolerance: f64,
    pub mode: SeriesMode,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 256,
            relative_tolerance: 1e-14,
            mode: SeriesMode::ExactTerminating,
        }
    }
}

pub fn evaluate_rphi_s<T: Scalar>(
    spec: &HypergeometricSpec<T>,
    z: &T,
    ctrl: &SeriesControl,
) -> Result<T, Error> {
    evaluate_rphi_s_detailed(spec, z, ctrl).map(|(v, _)| v)
}

/// Evaluates the series and also reports the number of nonzero terms summed.
pub fn evaluate_rphi_s_detailed<T: Scalar>(
    spec: &HypergeometricSpec<T>,
    z: &T,
    ctrl: &SeriesControl,
) -> Result<(T, usize), Error> {
    let terms = series_terms(spec, z, ctrl)?;
    let count = terms.len();
    let mut sum = T::zero();
    for t in terms {
        sum = sum + t;
    }
    Ok((sum, count))
}

/// The individual series terms, in order. Exposed so callers can compare
/// term-by-term against explicit summand formulas.
pub fn series_terms<T: Scalar>(
    spec: &HypergeometricSpec<T>,
    z: &T,
    ctrl: &SeriesControl,
) -> Result<Vec<T>, Error> {
    let p = spec.params.p().clone();
    let q = spec.params.q().clone();
    let exponent = spec.prefactor_exponent();
    let q_over_p = q.clone() / p.clone();

    let mut terms = vec![T::one()];
    let mut term = T::one();
    let mut p_pow = T::one(); // p^n at the current index n
    let mut q_pow = T::one();
    let mut quiet_streak = 0usize;

    for n in 0..ctrl.max_terms {
        // Step from term n to term n+1.
        let mut num_factor = T::one();
        let mut terminated = false;
        for pair in &spec.numerator {
            let f = pair.factor(&p_pow, &q_pow);
            if f.is_zero() {
                terminated = true;
                break;
            }
            num_factor = num_factor * f;
        }
        if terminated {
            return Ok(terms);
        }
        let mut den_factor = T::one();
        for (i, pair) in spec.denominator.iter().enumerate() {
            let f = pair.factor(&p_pow, &q_pow);
            if !pair.is_placeholder() && f.is_zero() {
                return Err(Error::DenominatorVanished { pair: i, index: n });
            }
            den_factor = den_factor * f;
        }
        // base (p,q)-factorial gains the factor p^(n+1) - q^(n+1)
        let base = p.clone() * p_pow.clone() - q.clone() * q_pow.clone();
        if base.is_zero() {
            return Err(Error::Domain(
                "base shifted factorial ((p,q);(p,q))_n vanished; series undefined at p = q".into(),
            ));
        }
        // prefactor ratio: [(-1) (q/p)^n]^(1+s-r)
        let pref = (-q_over_p.powi(n as i32)).powi(exponent);
        term = term * num_factor / (den_factor * base) * pref * z.clone();
        terms.push(term.clone());
        p_pow = p_pow * p.clone();
        q_pow = q_pow * q.clone();

        if ctrl.mode == SeriesMode::NumericTruncated {
            let sum_mag: f64 = terms.iter().map(|t| t.approx()).sum::<f64>().abs();
            if term.approx().abs() <= ctrl.relative_tolerance * (sum_mag + f64::MIN_POSITIVE) {
                quiet_streak += 1;
                if quiet_streak >= 3 {
                    return Ok(terms);
                }
            } else {
                quiet_streak = 0;
            }
        }
    }
    match ctrl.mode {
        SeriesMode::ExactTerminating => Err(Error::Domain(format!(
            "series did not terminate within {} terms; exact mode requires a terminating numerator pair",
            ctrl.max_terms
        ))),
        SeriesMode::NumericTruncated => Err(Error::NonConvergent {
            max_terms: ctrl.max_terms,
        }),
    }
}

/// Square roots of p and q, exact when both are rational squares, otherwise
/// 64-digit rational approximations (positive parameters only). The second
/// component reports whether the result is exact.
fn param_sqrts(params: &PQParams<Rat>) -> Result<(Rat, Rat, bool), Error> {
    match (rat_sqrt_exact(params.p()), rat_sqrt_exact(params.q())) {
        (Some(sp), Some(sq)) => Ok((sp, sq, true)),
        _ => {
            let sp = rat_sqrt_approx(params.p(), 64).ok_or_else(|| {
                Error::Domain("p must be positive for half-integer parameter powers".into())
            })?;
            let sq = rat_sqrt_approx(params.q(), 64).ok_or_else(|| {
                Error::Domain("q must be positive for half-integer parameter powers".into())
            })?;
            Ok((sp, sq, false))
        }
    }
}

/// The four numerator pairs shared by every representation below:
/// (p^{-n/2}, q^{-n/2}), (p^{(1-n)/2}, q^{(1-n)/2}) and their sign-flipped
/// partners, expressed as integer powers of sqrt(p), sqrt(q).
fn half_power_pairs(n: u32, sp: &Rat, sq: &Rat) -> Vec<ParamPair<Rat>> {
    let ni = n as i32;
    let a1 = sp.powi(-ni);
    let a2 = sp.powi(1 - ni);
    let b1 = sq.powi(-ni);
    let b2 = sq.powi(1 - ni);
    vec![
        ParamPair::Explicit(a1.clone(), b1.clone()),
        ParamPair::Explicit(a2.clone(), b2.clone()),
        ParamPair::Explicit(a1, -b1),
        ParamPair::Explicit(a2, -b2),
    ]
}

fn check_x_nonzero(x: &Rat) -> Result<(), Error> {
    if x.is_zero() {
        Err(Error::Domain(
            "hypergeometric representations require x != 0".into(),
        ))
    } else {
        Ok(())
    }
}

fn eval_representation(
    n: u32,
    x: &Rat,
    z: Rat,
    numerator: Vec<ParamPair<Rat>>,
    denominator: Vec<ParamPair<Rat>>,
    params: PQParams<Rat>,
) -> Result<Rat, Error> {
    let spec = HypergeometricSpec {
        numerator,
        denominator,
        params,
    };
    let ctrl = SeriesControl {
        max_terms: n as usize + 2,
        ..SeriesControl::default()
    };
    Ok(x.powi(n as i32) * evaluate_rphi_s(&spec, &z, &ctrl)?)
}

/// F_{n+1}(x,s|p,q) as x^n * 8phi5 with argument -s q^n p^(n+4) / x^2.
///
/// Exact when sqrt(p) and sqrt(q) are rational; otherwise p and q are
/// replaced by the squares of 64-digit rational square-root approximations
/// and the result carries that perturbation (relative error far below
/// 1e-12 for the orders used here).
pub fn fibonacci_as_hypergeometric(
    n: u32,
    x: &Rat,
    s: &Rat,
    params: &PQParams<Rat>,
) -> Result<Rat, Error> {
    check_x_nonzero(x)?;
    let (sp, sq, _) = param_sqrts(params)?;
    let (p, q) = (sp.clone() * sp.clone(), sq.clone() * sq.clone());
    let ni = n as i32;
    let mut numerator = half_power_pairs(n, &sp, &sq);
    numerator.extend(std::iter::repeat(ParamPair::UnitPlaceholder).take(4));
    let mut denominator = vec![ParamPair::Explicit(p.powi(-ni), q.powi(-ni))];
    denominator
        .extend(std::iter::repeat(ParamPair::Explicit(p.clone(), Rat::zero())).take(4));
    let z = -s.clone() * q.powi(ni) * p.powi(ni + 4) / (x.clone() * x.clone());
    eval_representation(n, x, z, numerator, denominator, PQParams::new(p, q)?)
}

/// L_n(x,s|p,q) as x^n * 8phi5; differs from the Fibonacci case only in the
/// leading denominator pair (p^(1-n), q^(1-n)).
pub fn lucas_as_hypergeometric(
    n: u32,
    x: &Rat,
    s: &Rat,
    params: &PQParams<Rat>,
) -> Result<Rat, Error> {
    check_x_nonzero(x)?;
    let (sp, sq, _) = param_sqrts(params)?;
    let (p, q) = (sp.clone() * sp.clone(), sq.clone() * sq.clone());
    let ni = n as i32;
    let mut numerator = half_power_pairs(n, &sp, &sq);
    numerator.extend(std::iter::repeat(ParamPair::UnitPlaceholder).take(4));
    let mut denominator = vec![ParamPair::Explicit(p.powi(1 - ni), q.powi(1 - ni))];
    denominator
        .extend(std::iter::repeat(ParamPair::Explicit(p.clone(), Rat::zero())).take(4));
    let z = -s.clone() * q.powi(ni) * p.powi(ni + 4) / (x.clone() * x.clone());
    eval_representation(n, x, z, numerator, denominator, PQParams::new(p, q)?)
}

/// F_{n+1}(x,s|p^{-1},q^{-1}) as x^n * 4phi3 with argument -s / x^2.
pub fn inverse_fibonacci_as_4phi3(
    n: u32,
    x: &Rat,
    s: &Rat,
    params: &PQParams<Rat>,
) -> Result<Rat, Error> {
    check_x_nonzero(x)?;
    let (sp, sq, _) = param_sqrts(params)?;
    let (p, q) = (sp.clone() * sp.clone(), sq.clone() * sq.clone());
    let ni = n as i32;
    let numerator = half_power_pairs(n, &sp, &sq);
    let denominator = vec![
        ParamPair::Explicit(p.powi(-ni), q.powi(-ni)),
        ParamPair::UnitPlaceholder,
        ParamPair::UnitPlaceholder,
    ];
    let z = -s.clone() / (x.clone() * x.clone());
    eval_representation(n, x, z, numerator, denominator, PQParams::new(p, q)?)
}

/// L_n(x,s|p^{-1},q^{-1}) as x^n * 4phi3 with argument -s p q / x^2.
pub fn inverse_lucas_as_4phi3(
    n: u32,
    x: &Rat,
    s: &Rat,
    params: &PQParams<Rat>,
) -> Result<Rat, Error> {
    check_x_nonzero(x)?;
    let (sp, sq, _) = param_sqrts(params)?;
    let (p, q) = (sp.clone() * sp.clone(), sq.clone() * sq.clone());
    let ni = n as i32;
    let numerator = half_power_pairs(n, &sp, &sq);
    let denominator = vec![
        ParamPair::Explicit(p.powi(1 - ni), q.powi(1 - ni)),
        ParamPair::UnitPlaceholder,
        ParamPair::UnitPlaceholder,
    ];
    let z = -s.clone() * p.clone() * q.clone() / (x.clone() * x.clone());
    eval_representation(n, x, z, numerator, denominator, PQParams::new(p, q)?)
}

/// The q-limit (p = 1) of the Fibonacci representation: x^n * 4phi1 with
/// single parameters q^{-n/2}, q^{(1-n)/2}, -q^{-n/2}, -q^{(1-n)/2} over
/// q^{-n} and argument -q^n s / x^2.
pub fn q_limit_fibonacci(n: u32, x: &Rat, s: &Rat, q: &Rat) -> Result<Rat, Error> {
    q_limit_representation(n, x, s, q, false)
}

/// The q-limit (p = 1) of the Lucas representation (denominator q^(1-n)).
pub fn q_limit_lucas(n: u32, x: &Rat, s: &Rat, q: &Rat) -> Result<Rat, Error> {
    q_limit_representation(n, x, s, q, true)
}

fn q_limit_representation(
    n: u32,
    x: &Rat,
    s: &Rat,
    q: &Rat,
    lucas: bool,
) -> Result<Rat, Error> {
    check_x_nonzero(x)?;
    let params = PQParams::new(Rat::one(), q.clone())?;
    let (_, sq, _) = param_sqrts(&params)?;
    let q_eff = sq.clone() * sq.clone();
    let ni = n as i32;
    let one = Rat::one();
    let numerator = vec![
        ParamPair::Explicit(one.clone(), sq.powi(-ni)),
        ParamPair::Explicit(one.clone(), sq.powi(1 - ni)),
        ParamPair::Explicit(one.clone(), -sq.powi(-ni)),
        ParamPair::Explicit(one.clone(), -sq.powi(1 - ni)),
    ];
    let den_power = if lucas { 1 - ni } else { -ni };
    let denominator = vec![ParamPair::Explicit(one.clone(), q_eff.powi(den_power))];
    let z = -q_eff.powi(ni) * s.clone() / (x.clone() * x.clone());
    eval_representation(n, x, z, numerator, denominator, PQParams::new(one, q_eff)?)
}
