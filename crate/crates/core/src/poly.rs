//! Exact univariate polynomials in the monomial basis.
//!
//! The monomial basis is the single canonical form; factorial bases are
//! expanded on demand, which keeps equality checks plain coefficient
//! comparisons.

use crate::scalar::{rat_int, rational_string, BigRational};
use crate::tables::{r_lah_triangle, stirling2_triangle};
use num_traits::{One, Zero};
use std::fmt;

/// Polynomial with exact rational coefficients; index i holds the
/// coefficient of x^i. No trailing zeros are stored and the zero polynomial
/// is the empty list.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExactPoly {
    coeffs: Vec<BigRational>,
}

impl ExactPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of x^i; zero beyond the stored degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficients as canonical "p/q" strings, low to high.
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_string).collect()
    }

    /// JSON array of exact coefficient strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.coefficient_strings()).expect("string array serializes")
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.coefficient_strings().join(", "))
    }
}

/// x + c.
fn linear(c: i64) -> ExactPoly {
    ExactPoly::from_coeffs(vec![rat_int(c), BigRational::one()])
}

/// The falling-factorial basis element (x)_n expanded into monomials.
pub fn falling_basis(n: usize) -> ExactPoly {
    let mut acc = ExactPoly::one();
    for i in 0..n as i64 {
        acc = acc.mul(&linear(-i));
    }
    acc
}

/// The shifted rising factorial x(x+shift)... expanded into monomials:
/// the product (x+shift)(x+shift+1)...(x+shift+n-1).
pub fn rising_shifted(n: usize, shift: usize) -> ExactPoly {
    let mut acc = ExactPoly::one();
    for i in 0..n {
        acc = acc.mul(&linear((shift + i) as i64));
    }
    acc
}

/// Both sides of the ordered-block change of basis
/// rising(x + 2r)_n = sum_k L_r(n, k)·(x)_k, as expanded polynomials.
///
/// The left side comes from the plain product expansion, the right side from
/// the recurrence triangle, so comparing them exercises two independent
/// routes.
pub fn ordered_block_basis_identity(n: usize, r: usize) -> (ExactPoly, ExactPoly) {
    let lhs = rising_shifted(n, 2 * r);
    let tri = r_lah_triangle(n, r);
    let mut rhs = ExactPoly::zero();
    for k in 0..=n {
        let weight = BigRational::from_integer(tri.entry(n, k));
        rhs = rhs.add(&falling_basis(k).scale(&weight));
    }
    (lhs, rhs)
}

/// sum_k L_r(n, k)·x^k; evaluates to the row sum at x = 1.
pub fn r_lah_bell_poly(n: usize, r: usize) -> ExactPoly {
    let tri = r_lah_triangle(n, r);
    ExactPoly::from_coeffs(
        (0..=n)
            .map(|k| BigRational::from_integer(tri.entry(n, k)))
            .collect(),
    )
}

/// Bell polynomial sum_k S2(n, k)·x^k.
pub fn bell_poly(n: usize) -> ExactPoly {
    let tri = stirling2_triangle(n);
    ExactPoly::from_coeffs(
        (0..=n)
            .map(|k| BigRational::from_integer(tri.entry(n, k)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::tables::r_lah_bell_numbers;

    fn poly(coeffs: &[i64]) -> ExactPoly {
        ExactPoly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn ring_operations() {
        let p = poly(&[1, 1]); // x + 1
        let q = poly(&[-1, 1]); // x - 1
        assert_eq!(p.mul(&q), poly(&[-1, 0, 1]));
        assert_eq!(poly(&[-1, 0, 1]).eval(&rat_int(3)), rat_int(8));
        assert_eq!(ExactPoly::zero().add(&p), p);
        assert_eq!(p.sub(&p), ExactPoly::zero());
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.mul(&q).degree(), Some(2));
    }

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        let p = ExactPoly::from_coeffs(vec![rat_int(2), rat_int(0), rat_int(0)]);
        assert_eq!(p.coeffs().len(), 1);
        assert_eq!(p.coeff(5), rat_int(0));
    }

    #[test]
    fn factorial_bases() {
        assert_eq!(falling_basis(3), poly(&[0, 2, -3, 1]));
        assert_eq!(rising_shifted(1, 2), poly(&[2, 1]));
        assert_eq!(rising_shifted(0, 5), ExactPoly::one());
    }

    #[test]
    fn basis_identity_small_cases() {
        let (lhs, rhs) = ordered_block_basis_identity(1, 1);
        assert_eq!(lhs, poly(&[2, 1]));
        assert_eq!(rhs, poly(&[2, 1]));
        let (lhs, rhs) = ordered_block_basis_identity(0, 3);
        assert_eq!(lhs, ExactPoly::one());
        assert_eq!(rhs, ExactPoly::one());
        let (lhs, rhs) = ordered_block_basis_identity(2, 0);
        assert_eq!(lhs, poly(&[0, 1, 1]));
        assert_eq!(rhs, poly(&[0, 1, 1]));
    }

    #[test]
    fn basis_identity_grid() {
        for n in 0..=12 {
            for r in 0..=3 {
                let (lhs, rhs) = ordered_block_basis_identity(n, r);
                assert_eq!(lhs, rhs, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn second_kind_expansion_recovers_monomials() {
        let s2 = stirling2_triangle(20);
        for n in 0..=20 {
            let mut acc = ExactPoly::zero();
            for k in 0..=n {
                let w = BigRational::from_integer(s2.entry(n, k));
                acc = acc.add(&falling_basis(k).scale(&w));
            }
            let mut monomial = vec![BigRational::zero(); n + 1];
            monomial[n] = BigRational::one();
            assert_eq!(acc, ExactPoly::from_coeffs(monomial), "n={n}");
        }
    }

    #[test]
    fn row_polynomials() {
        assert_eq!(r_lah_bell_poly(2, 1), poly(&[6, 6, 1]));
        assert_eq!(r_lah_bell_poly(2, 1).eval(&rat_int(1)), rat_int(13));
        assert_eq!(r_lah_bell_poly(0, 4), ExactPoly::one());
        assert_eq!(bell_poly(3), poly(&[0, 1, 3, 1]));
        assert_eq!(bell_poly(3).eval(&rat_int(1)), rat_int(5));
        assert_eq!(bell_poly(0), ExactPoly::one());
    }

    #[test]
    fn evaluation_at_one_matches_row_sums() {
        for r in 0..=5 {
            let numbers = r_lah_bell_numbers(30, r);
            for n in 0..=30 {
                let value = r_lah_bell_poly(n, r).eval(&rat_int(1));
                assert_eq!(value, BigRational::from_integer(numbers.value(n).clone()));
            }
        }
    }

    #[test]
    fn json_coefficients_are_exact_strings() {
        let p = ExactPoly::from_coeffs(vec![rat(1, 2), rat_int(3)]);
        assert_eq!(p.to_json(), r#"["1/2","3/1"]"#);
        assert_eq!(format!("{p}"), "[1/2, 3/1]");
    }
}
