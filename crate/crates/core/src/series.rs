//! Truncated power series over exact rationals.
//!
//! A [`TruncSeries`] of order N stores the ordinary coefficients c_0..c_N of
//! sum c_n t^n; the exponential view is recovered through
//! [`TruncSeries::egf_coeff`], which returns c_n·n!. Ordinary coefficients
//! are the storage form because multiplication (Cauchy product) and
//! composition are simplest on them.
//!
//! Composition runs Horner over the series ring — O(N^3) scalar operations,
//! which is fine at the orders used here. Exponential and logarithm use the
//! standard first-order coefficient recurrences, so every operation stays
//! exact.

use crate::scalar::{factorial, rat_int, rational_string, BigInt, BigRational};
use num_traits::{One, Zero};
use thiserror::Error;

/// Default truncation order used by the identity harness.
pub const DEFAULT_ORDER: usize = 25;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("not invertible: reciprocal needs a nonzero constant term")]
    NotInvertible,
    #[error("constant-term constraint: exp needs c0 = 0 and log needs c0 = 1")]
    ConstantTerm,
    #[error("composition requires zero constant term in the inner series")]
    InnerConstantTerm,
}

/// Power series truncated after t^order, with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<BigRational>, // length = order + 1
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// The series t.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Order implied by the coefficient count (len - 1). Panics on empty input.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least c0");
        TruncSeries { coeffs }
    }

    /// Coefficient c_n computed from the index.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigRational) -> Self {
        TruncSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Ordinary coefficient c_n. Panics beyond the truncation order.
    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs[n].clone()
    }

    /// Exponential-view coefficient c_n·n!.
    pub fn egf_coeff(&self, n: usize) -> BigRational {
        &self.coeffs[n] * BigRational::from_integer(factorial(n))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn min_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.min_order(other);
        Self::from_fn(n, |i| &self.coeffs[i] + &other.coeffs[i])
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.min_order(other);
        Self::from_fn(n, |i| &self.coeffs[i] - &other.coeffs[i])
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.min_order(other);
        let mut out = vec![BigRational::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn pow(&self, exponent: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..exponent {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let n = self.order();
        let inv0 = BigRational::one() / &self.coeffs[0];
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = inv0.clone();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                acc += &self.coeffs[k] * &out[m - k];
            }
            out[m] = -acc * &inv0;
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// exp of a series with zero constant term, by the recurrence
    /// n·b_n = sum_{k=1..n} k·a_k·b_{n-k}.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ConstantTerm);
        }
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = BigRational::one();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                acc += rat_int(k as i64) * &self.coeffs[k] * &out[m - k];
            }
            out[m] = acc / rat_int(m as i64);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// log of a series with constant term one, by the recurrence
    /// b_n = a_n - (1/n)·sum_{k=1..n-1} k·b_k·a_{n-k}.
    #[allow(clippy::needless_range_loop)] // k is a shared math index, not just a subscript
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTerm);
        }
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..m {
                acc += rat_int(k as i64) * &out[k] * &self.coeffs[m - k];
            }
            out[m] = &self.coeffs[m] - acc / rat_int(m as i64);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// self ∘ inner by Horner over the series ring; the inner series must
    /// have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::InnerConstantTerm);
        }
        let order = self.min_order(inner);
        let mut acc = TruncSeries::constant(self.coeffs[self.order()].clone(), order);
        for i in (0..self.order()).rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Coefficients as canonical "p/q" strings; the exponential view when
    /// `egf` is set.
    pub fn coefficient_strings(&self, egf: bool) -> Vec<String> {
        (0..=self.order())
            .map(|n| {
                if egf {
                    rational_string(&self.egf_coeff(n))
                } else {
                    rational_string(&self.coeffs[n])
                }
            })
            .collect()
    }

    /// JSON array of exact coefficient strings, ordinary or exponential view.
    pub fn to_json(&self, egf: bool) -> String {
        serde_json::to_string(&self.coefficient_strings(egf)).expect("string array serializes")
    }
}

/// 1/(1 - t): every ordinary coefficient is 1.
pub fn geometric(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |_| BigRational::one())
}

/// t/(1 - t) = 1/(1 - t) - 1, the ordered-block kernel: its k-th power over
/// k! generates the k-block column counts.
pub fn ordered_block_kernel(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |n| {
        if n == 0 {
            BigRational::zero()
        } else {
            BigRational::one()
        }
    })
}

/// e^t.
pub fn exp_t(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |n| BigRational::new(BigInt::one(), factorial(n)))
}

/// -log(1 - t) = sum_{n>=1} t^n/n.
pub fn neg_log_one_minus(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |n| {
        if n == 0 {
            BigRational::zero()
        } else {
            BigRational::new(BigInt::one(), BigInt::from(n))
        }
    })
}

/// 1 - e^{-t}.
pub fn one_minus_exp_neg(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |n| {
        if n == 0 {
            BigRational::zero()
        } else {
            let sign = if n % 2 == 0 { -1 } else { 1 };
            BigRational::new(BigInt::from(sign), factorial(n))
        }
    })
}

/// Column generating function (1/k!)·(t/(1-t))^k·(1/(1-t))^{2r}: exponential
/// coefficients are the k-block counts L_r(n, k).
pub fn r_lah_column_egf(k: usize, r: usize, order: usize) -> TruncSeries {
    let weight = BigRational::new(BigInt::one(), factorial(k));
    ordered_block_kernel(order)
        .pow(k)
        .scale(&weight)
        .mul(&geometric(order).pow(2 * r))
}

/// exp(t/(1-t))·(1/(1-t))^{2r}: exponential coefficients are the row sums.
pub fn r_lah_bell_egf(r: usize, order: usize) -> TruncSeries {
    let e = ordered_block_kernel(order)
        .exp()
        .expect("kernel has zero constant term");
    e.mul(&geometric(order).pow(2 * r))
}

/// exp(x·t/(1-t))·(1/(1-t))^{2r}: exponential coefficients are the row
/// polynomials evaluated at x.
pub fn r_lah_bell_poly_egf(x: &BigRational, r: usize, order: usize) -> TruncSeries {
    let e = ordered_block_kernel(order)
        .scale(x)
        .exp()
        .expect("kernel has zero constant term");
    e.mul(&geometric(order).pow(2 * r))
}

/// e^{xt}·(e^t - 1)^k/k!: exponential coefficients are the shifted
/// second-kind numbers S2(n, k | x).
pub fn stirling2_shifted_egf(k: usize, x: &BigRational, order: usize) -> TruncSeries {
    let exp_xt = TruncSeries::from_fn(order, |n| {
        x.pow(n as i32) / BigRational::from_integer(factorial(n))
    });
    let weight = BigRational::new(BigInt::one(), factorial(k));
    let em1 = exp_t(order).sub(&TruncSeries::one(order));
    exp_xt.mul(&em1.pow(k).scale(&weight))
}

/// e^{e^t - 1 + r·t}: exponential coefficients are the shifted Bell numbers.
pub fn r_bell_egf(r: usize, order: usize) -> TruncSeries {
    let arg = exp_t(order)
        .sub(&TruncSeries::one(order))
        .add(&TruncSeries::identity(order).scale(&rat_int(r as i64)));
    arg.exp().expect("argument has zero constant term")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::tables::{
        r_bell_numbers, r_lah_bell_numbers, r_lah_triangle, stirling2_shifted_triangle,
    };

    fn one_minus_t(order: usize) -> TruncSeries {
        TruncSeries::from_fn(order, |n| match n {
            0 => BigRational::one(),
            1 => rat_int(-1),
            _ => BigRational::zero(),
        })
    }

    #[test]
    fn reciprocal_of_one_minus_t_is_geometric() {
        let inv = one_minus_t(12).reciprocal().unwrap();
        assert_eq!(inv, geometric(12));
    }

    #[test]
    fn squared_geometric_coefficients() {
        let sq = one_minus_t(8).reciprocal().unwrap().pow(2);
        assert_eq!(sq.coeff(3), rat_int(4));
        for n in 0..=8 {
            assert_eq!(sq.coeff(n), rat_int(n as i64 + 1));
        }
    }

    #[test]
    fn multiplicative_identity() {
        let p = r_lah_bell_egf(1, 10);
        assert_eq!(p.mul(&TruncSeries::one(10)), p);
    }

    #[test]
    fn exp_t_has_unit_egf_coefficients() {
        let e = TruncSeries::identity(10).exp().unwrap();
        assert_eq!(e, exp_t(10));
        for n in 0..=10 {
            assert_eq!(e.egf_coeff(n), BigRational::one());
        }
    }

    #[test]
    fn log_of_geometric() {
        let l = geometric(12).log().unwrap();
        assert_eq!(l, neg_log_one_minus(12));
    }

    #[test]
    fn exp_log_round_trips() {
        let one_plus_t = TruncSeries::from_fn(10, |n| {
            if n <= 1 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        assert_eq!(one_plus_t.log().unwrap().exp().unwrap(), one_plus_t);
        let kernel = ordered_block_kernel(14);
        assert_eq!(kernel.exp().unwrap().log().unwrap(), kernel);
    }

    #[test]
    fn composition_identities() {
        let compose = exp_t(12).compose(&neg_log_one_minus(12)).unwrap();
        assert_eq!(compose, geometric(12));
        let s = r_lah_bell_egf(2, 9);
        assert_eq!(s.compose(&TruncSeries::identity(9)).unwrap(), s);
        let round = neg_log_one_minus(12)
            .compose(&one_minus_exp_neg(12))
            .unwrap();
        assert_eq!(round, TruncSeries::identity(12));
    }

    #[test]
    fn precondition_errors() {
        assert_eq!(
            ordered_block_kernel(4).reciprocal(),
            Err(SeriesError::NotInvertible)
        );
        assert_eq!(geometric(4).exp(), Err(SeriesError::ConstantTerm));
        assert_eq!(
            ordered_block_kernel(4).log(),
            Err(SeriesError::ConstantTerm)
        );
        assert_eq!(
            exp_t(4).compose(&geometric(4)),
            Err(SeriesError::InnerConstantTerm)
        );
    }

    #[test]
    fn column_egf_matches_triangle() {
        let tri = r_lah_triangle(12, 1);
        let col = r_lah_column_egf(1, 1, 12);
        assert_eq!(col.egf_coeff(2), rat_int(6));
        for n in 0..=12 {
            assert_eq!(
                col.egf_coeff(n),
                BigRational::from_integer(tri.entry(n, 1)),
                "n={n}"
            );
        }
    }

    #[test]
    fn row_sum_egf_matches_sequence() {
        let s = r_lah_bell_egf(0, 8);
        let expect = [1, 1, 3, 13];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(s.egf_coeff(n), rat_int(*e));
        }
        assert_eq!(r_lah_bell_egf(3, 6).coeff(0), BigRational::one());
        let seq = r_lah_bell_numbers(8, 2);
        let egf = r_lah_bell_egf(2, 8);
        for n in 0..=8 {
            assert_eq!(
                egf.egf_coeff(n),
                BigRational::from_integer(seq.value(n).clone())
            );
        }
    }

    #[test]
    fn poly_egf_specializes_to_number_egf() {
        let at_one = r_lah_bell_poly_egf(&rat_int(1), 2, 10);
        assert_eq!(at_one, r_lah_bell_egf(2, 10));
        let at_half = r_lah_bell_poly_egf(&rat(1, 2), 1, 6);
        assert_eq!(
            at_half.egf_coeff(1),
            crate::poly::r_lah_bell_poly(1, 1).eval(&rat(1, 2))
        );
    }

    #[test]
    fn shifted_stirling_egf_matches_triangle() {
        let tri = stirling2_shifted_triangle(10, 4);
        for k in 0..=3 {
            let egf = stirling2_shifted_egf(k, &rat_int(4), 10);
            for n in 0..=10 {
                assert_eq!(
                    egf.egf_coeff(n),
                    BigRational::from_integer(tri.entry(n, k)),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn shifted_bell_egf_matches_sequence() {
        let seq = r_bell_numbers(10, 3);
        let egf = r_bell_egf(3, 10);
        for n in 0..=10 {
            assert_eq!(
                egf.egf_coeff(n),
                BigRational::from_integer(seq.value(n).clone())
            );
        }
    }

    #[test]
    fn substitution_chains() {
        // Shifted Bell composed with -log(1-t) gives the row-sum series.
        let order = 20;
        for r in 0..=3 {
            let lhs = r_bell_egf(2 * r, order)
                .compose(&neg_log_one_minus(order))
                .unwrap();
            assert_eq!(lhs, r_lah_bell_egf(r, order), "r={r}");
        }
        // Shifted second-kind columns composed with -log(1-t) give the
        // column series; the reverse substitution undoes it.
        for r in 0..=2 {
            for k in 0..=3 {
                let fwd = stirling2_shifted_egf(k, &rat_int(2 * r as i64), order)
                    .compose(&neg_log_one_minus(order))
                    .unwrap();
                assert_eq!(fwd, r_lah_column_egf(k, r, order), "k={k} r={r}");
                let back = r_lah_column_egf(k, r, order)
                    .compose(&one_minus_exp_neg(order))
                    .unwrap();
                assert_eq!(
                    back,
                    stirling2_shifted_egf(k, &rat_int(2 * r as i64), order),
                    "k={k} r={r}"
                );
            }
        }
    }

    #[test]
    fn column_product_rule() {
        // column(m, r)·column(k, r) = C(m+k, m)·column(m+k, 2r).
        let order = 20;
        for r in 0..=2 {
            for m in 1..=3usize {
                for k in 1..=3usize {
                    let lhs = r_lah_column_egf(m, r, order).mul(&r_lah_column_egf(k, r, order));
                    let weight = BigRational::from_integer(crate::scalar::binomial(
                        (m + k) as i64,
                        m as i64,
                    ));
                    let rhs = r_lah_column_egf(m + k, 2 * r, order).scale(&weight);
                    assert_eq!(lhs, rhs, "m={m} k={k} r={r}");
                }
            }
        }
    }

    #[test]
    fn json_views() {
        let s = ordered_block_kernel(2);
        assert_eq!(s.to_json(false), r#"["0/1","1/1","1/1"]"#);
        assert_eq!(s.to_json(true), r#"["0/1","1/1","2/1"]"#);
    }
}
