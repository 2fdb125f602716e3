//! Exact primitives of (p,q)-calculus: (p,q)-numbers, shifted factorials,
//! binomial coefficients, the Jackson derivative, and the binomial identity
//! verifier.

use crate::error::Error;
use crate::scalar::Scalar;
use serde::Serialize;

/// The global deformation parameters (p, q). Both must be nonzero; p = q is
/// allowed because every quantity below is computed in division-free
/// polynomial form.
#[derive(Clone, Debug, PartialEq)]
pub struct PQParams<T: Scalar> {
    p: T,
    q: T,
}

impl<T: Scalar> PQParams<T> {
    pub fn new(p: T, q: T) -> Result<Self, Error> {
        if p.is_zero() || q.is_zero() {
            return Err(Error::InvalidParams(
                "deformation parameters p and q must be nonzero".into(),
            ));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    /// The (p^{-1}, q^{-1}) parameter pair.
    pub fn inverted(&self) -> Self {
        Self {
            p: T::one() / self.p.clone(),
            q: T::one() / self.q.clone(),
        }
    }
}

/// [n]_{p,q} computed from the sum form `sum_{k<n} p^{n-1-k} q^k`, which is
/// well defined at p = q (the quotient form (p^n - q^n)/(p - q) is not).
pub fn pq_number<T: Scalar>(n: u32, params: &PQParams<T>) -> T {
    let mut acc = T::zero();
    let mut pq_pow = params.p().powi(n as i32 - 1);
    let ratio = params.q().clone() / params.p().clone();
    for _ in 0..n {
        acc = acc + pq_pow.clone();
        pq_pow = pq_pow * ratio.clone();
    }
    acc
}

/// ((a,b);(p,q))_n = prod_{k=0}^{n-1} (a p^k - b q^k), with the empty product
/// equal to 1.
pub fn pq_shifted_factorial<T: Scalar>(a: &T, b: &T, params: &PQParams<T>, n: u32) -> T {
    let mut acc = T::one();
    let mut pk = T::one();
    let mut qk = T::one();
    for _ in 0..n {
        acc = acc * (a.clone() * pk.clone() - b.clone() * qk.clone());
        pk = pk * params.p().clone();
        qk = qk * params.q().clone();
    }
    acc
}

/// Row-by-row table of (p,q)-binomial coefficients built from the Pascal-type
/// recursion `B(m,j) = q^j B(m-1,j) + p^(m-j) B(m-1,j-1)`, which keeps every
/// entry polynomial in (p,q) and therefore valid at p = q.
pub struct PqBinomialTable<T: Scalar> {
    p: T,
    q: T,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> PqBinomialTable<T> {
    pub fn new(params: &PQParams<T>) -> Self {
        Self {
            p: params.p().clone(),
            q: params.q().clone(),
            rows: vec![vec![T::one()]],
        }
    }

    fn ensure(&mut self, n: usize) {
        while self.rows.len() <= n {
            let m = self.rows.len();
            let prev = &self.rows[m - 1];
            let mut row = Vec::with_capacity(m + 1);
            row.push(T::one());
            for j in 1..=m {
                let upper = if j < m { prev[j].clone() } else { T::zero() };
                let v = self.q.powi(j as i32) * upper
                    + self.p.powi((m - j) as i32) * prev[j - 1].clone();
                row.push(v);
            }
            self.rows.push(row);
        }
    }

    pub fn get(&mut self, n: u32, k: i64) -> T {
        if k < 0 || k > n as i64 {
            return T::zero();
        }
        self.ensure(n as usize);
        self.rows[n as usize][k as usize].clone()
    }
}

/// The (p,q)-binomial coefficient [n choose k]_{p,q}. Returns 0 outside
/// 0 <= k <= n, which is the convention the recursion sums rely on.
pub fn pq_binomial<T: Scalar>(n: u32, k: i64, params: &PQParams<T>) -> T {
    PqBinomialTable::new(params).get(n, k)
}

/// Dense polynomial in x over an exact or floating scalar field. Trailing
/// zeros are stripped; the zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq)]
pub struct XPolynomial<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> XPolynomial<T> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|v| v.clone() * c.clone()).collect())
    }

    /// Multiplication by x.
    pub fn times_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(T::zero());
        out.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(out)
    }

    /// x -> -x.
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }
}

/// The (p,q)-Jackson derivative, acting termwise: x^n -> [n]_{p,q} x^{n-1}.
/// Agrees with the divided difference (f(px)-f(qx))/((p-q)x) whenever p != q
/// and stays defined at p = q.
pub fn jackson_derivative<T: Scalar>(f: &XPolynomial<T>, params: &PQParams<T>) -> XPolynomial<T> {
    if f.is_zero() {
        return XPolynomial::zero();
    }
    let mut out = Vec::with_capacity(f.coeffs().len().saturating_sub(1));
    for i in 1..f.coeffs().len() {
        out.push(pq_number(i as u32, params) * f.coeff(i));
    }
    XPolynomial::from_coeffs(out)
}

/// One failing case of the binomial identity sweep.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct IdentityFailure {
    pub n: u32,
    pub k: u32,
    pub identity: u8,
}

/// Result of sweeping the three [n-k choose k] identities over a triangle of
/// indices. Failure is data, not an error.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub n_max: u32,
    pub cases: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks, in exact arithmetic, the three recursion identities satisfied by
/// [n-k choose k]_{p,q} for every 0 <= 2k <= n <= n_max:
///
/// 1. [n-k,k] = q^k [n-1-k,k] + p^(n-2k) [n-1-k,k-1]
/// 2. [n-k,k] = p^k [n-1-k,k] + q^(n-2k) [n-1-k,k-1]
/// 3. [n-k,k] = p^k [n-1-k,k] + p^(n-k) q^(-k) [n-1-k,k-1]
///              - (p^(n-2k+1) - q^(n-2k+1)) q^(-k) [n-k,k-1]
pub fn verify_binomial_identities<T: Scalar>(n_max: u32, params: &PQParams<T>) -> IdentityReport {
    let mut table = PqBinomialTable::new(params);
    let p = params.p().clone();
    let q = params.q().clone();
    let mut failures = Vec::new();
    let mut cases = 0usize;
    for n in 0..=n_max {
        for k in 0..=(n / 2) {
            let ki = k as i64;
            let ni = n as i32;
            let lhs = table.get(n - k, ki);
            let rhs1 = q.powi(k as i32) * table.get(n.saturating_sub(1 + k), ki)
                + p.powi(ni - 2 * k as i32) * table.get(n.saturating_sub(1 + k), ki - 1);
            let rhs2 = p.powi(k as i32) * table.get(n.saturating_sub(1 + k), ki)
                + q.powi(ni - 2 * k as i32) * table.get(n.saturating_sub(1 + k), ki - 1);
            let rhs3 = p.powi(k as i32) * table.get(n.saturating_sub(1 + k), ki)
                + p.powi(ni - k as i32) * q.powi(-(k as i32))
                    * table.get(n.saturating_sub(1 + k), ki - 1)
                - (p.powi(ni - 2 * k as i32 + 1) - q.powi(ni - 2 * k as i32 + 1))
                    * q.powi(-(k as i32))
                    * table.get(n - k, ki - 1);
            // n = 0 only admits k = 0, where all lower-index terms vanish.
            for (id, rhs) in [(1u8, rhs1), (2, rhs2), (3, rhs3)] {
                cases += 1;
                if n == 0 && k == 0 {
                    // [0,0] = 1 on both sides by convention; the saturating
                    // n-1-k index above would alias row 0 otherwise.
                    continue;
                }
                if lhs != rhs {
                    failures.push(IdentityFailure { n, k, identity: id });
                }
            }
        }
    }
    IdentityReport {
        n_max,
        cases,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio, Rat};

    fn params(p: i64, q: i64) -> PQParams<Rat> {
        PQParams::new(rat(p), rat(q)).unwrap()
    }

    #[test]
    fn rejects_zero_parameters() {
        assert!(PQParams::new(rat(0), rat(1)).is_err());
        assert!(PQParams::new(rat(1), rat(0)).is_err());
        assert!(PQParams::new(rat(3), rat(3)).is_ok());
    }

    #[test]
    fn pq_number_examples() {
        let pr = params(2, 3);
        assert_eq!(pq_number(0, &pr), rat(0));
        assert_eq!(pq_number(1, &pr), rat(1));
        assert_eq!(pq_number(2, &pr), rat(5)); // p + q
        // quotient form (p^n - q^n)/(p - q) on the dense set p != q
        for n in 0..8u32 {
            let quot = (rat(2).powi(n as i32) - rat(3).powi(n as i32)) / (rat(2) - rat(3));
            assert_eq!(pq_number(n, &pr), quot);
        }
        // sum form survives p = q
        assert_eq!(pq_number(4, &params(3, 3)), rat(4 * 27));
    }

    #[test]
    fn shifted_factorial_examples() {
        let pr = params(2, 3);
        assert_eq!(pq_shifted_factorial(&rat(1), &rat(1), &pr, 0), rat(1));
        assert_eq!(pq_shifted_factorial(&rat(1), &rat(1), &pr, 2), rat(0)); // (1-1)(2-3)
        // ((p,0);(p,q))_k = p^(k(k+1)/2)
        for k in 0..7u32 {
            assert_eq!(
                pq_shifted_factorial(&rat(2), &rat(0), &pr, k),
                rat(2).powi((k * (k + 1) / 2) as i32)
            );
        }
    }

    #[test]
    fn binomial_examples() {
        let pr = params(2, 3);
        assert_eq!(pq_binomial(2, 1, &pr), rat(5)); // p + q
        assert_eq!(pq_binomial(5, 0, &pr), rat(1));
        assert_eq!(pq_binomial(4, 2, &params(1, 1)), rat(6));
        assert_eq!(pq_binomial(4, -1, &pr), rat(0));
        assert_eq!(pq_binomial(4, 5, &pr), rat(0));
    }

    #[test]
    fn binomial_matches_factorial_quotient_when_nonsingular() {
        let pr = PQParams::new(ratio(2, 5), ratio(-3, 7)).unwrap();
        for n in 0..=10u32 {
            for k in 0..=n as i64 {
                let quot = pq_shifted_factorial(pr.p(), pr.q(), &pr, n)
                    / (pq_shifted_factorial(pr.p(), pr.q(), &pr, k as u32)
                        * pq_shifted_factorial(pr.p(), pr.q(), &pr, n - k as u32));
                assert_eq!(pq_binomial(n, k, &pr), quot, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn binomial_symmetry() {
        let pr = PQParams::new(ratio(3, 2), ratio(-5, 4)).unwrap();
        let mut table = PqBinomialTable::new(&pr);
        for n in 0..=30u32 {
            for k in 0..=n as i64 {
                assert_eq!(table.get(n, k), table.get(n, n as i64 - k));
            }
        }
    }

    #[test]
    fn binomial_well_defined_at_p_equals_q() {
        // [n choose k]_{q,q} = q^(k(n-k)) * classical binomial
        let pr = params(3, 3);
        let classical = |n: i64, k: i64| -> i64 {
            (1..=k).fold(1i64, |acc, i| acc * (n - k + i) / i)
        };
        for n in 0..=8u32 {
            for k in 0..=n as i64 {
                let expect = rat(3).powi((k * (n as i64 - k)) as i32) * rat(classical(n as i64, k));
                assert_eq!(pq_binomial(n, k, &pr), expect);
            }
        }
    }

    #[test]
    fn jackson_derivative_examples() {
        let pr = params(2, 3);
        // x^3 -> [3] x^2 = 19 x^2
        let f = XPolynomial::from_coeffs(vec![rat(0), rat(0), rat(0), rat(1)]);
        assert_eq!(
            jackson_derivative(&f, &pr),
            XPolynomial::from_coeffs(vec![rat(0), rat(0), rat(19)])
        );
        // constants -> 0
        assert!(jackson_derivative(&XPolynomial::constant(rat(7)), &pr).is_zero());
        // x -> 1
        let x = XPolynomial::from_coeffs(vec![rat(0), rat(1)]);
        assert_eq!(jackson_derivative(&x, &pr), XPolynomial::constant(rat(1)));
    }

    #[test]
    fn jackson_matches_difference_quotient() {
        let pr = params(2, 3);
        let f = XPolynomial::from_coeffs(vec![rat(4), ratio(1, 2), rat(-3), rat(7), rat(1)]);
        let d = jackson_derivative(&f, &pr);
        for xv in [rat(1), rat(2), ratio(-3, 5)] {
            let num = f.eval(&(rat(2) * xv.clone())) - f.eval(&(rat(3) * xv.clone()));
            let den = (rat(2) - rat(3)) * xv.clone();
            assert_eq!(d.eval(&xv), num / den);
        }
    }

    #[test]
    fn identity_sweep_passes() {
        let report = verify_binomial_identities(0, &params(2, 3));
        assert!(report.passed());
        let report = verify_binomial_identities(30, &params(2, 3));
        assert!(report.passed(), "failures: {:?}", report.failures);
        let report =
            verify_binomial_identities(20, &PQParams::new(ratio(-3, 4), ratio(5, 7)).unwrap());
        assert!(report.passed());
    }

    #[test]
    fn identity_one_hand_case() {
        // n=2, k=1, p=2, q=3: [1,1] = 1; RHS = q*[0,1] + p^0*[0,0] = 0 + 1
        let pr = params(2, 3);
        let mut t = PqBinomialTable::new(&pr);
        assert_eq!(t.get(1, 1), rat(1));
        assert_eq!(t.get(0, 1), rat(0));
        let rhs = rat(3) * t.get(0, 1) + rat(2).powi(0) * t.get(0, 0);
        assert_eq!(t.get(1, 1), rhs);
    }

    #[test]
    fn polynomial_normalization() {
        let p = XPolynomial::from_coeffs(vec![rat(1), rat(0), rat(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(XPolynomial::from_coeffs(vec![rat(0), rat(0)]).is_zero());
        assert_eq!(XPolynomial::<Rat>::zero().degree(), None);
    }
}
