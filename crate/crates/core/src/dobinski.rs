//! Factorial-weighted series evaluation with certified rational enclosures.
//!
//! The target value is e^{-x}·sum_k rising(k+2r)_n·x^k/k!. The partial sum
//! and the tail bound stay exactly rational; the irrational factor e^{-x}
//! enters only through a rational enclosure of e^x obtained from its Taylor
//! polynomial with an explicit remainder bound, so the final containment
//! check is an exact comparison.
//!
//! Tail control: the term ratio t_{j+1}/t_j = x·(j+2r+n)/((j+2r)(j+1)) drops
//! to 1/2 or below once j >= 2x + n + 2r, and stays there; past that index
//! the tail is dominated by a geometric series with ratio 1/2, giving
//! tail <= t_k after the last included term t_k.

use crate::poly::r_lah_bell_poly;
use crate::scalar::{decimal_string, rat_int, rational_string, rising_int, BigInt, BigRational};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DobinskiError {
    #[error("nonterminating: tolerance must be positive")]
    Nonterminating,
    #[error("x must be positive")]
    NonpositiveX,
    #[error("ratio not yet contractive at k = {k}; contraction starts at {threshold}")]
    NotContractive { k: usize, threshold: usize },
}

/// Interval with exact rational endpoints proven to contain a target value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn contains(&self, value: &BigRational) -> bool {
        self.lo <= *value && *value <= self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Outcome of a certified series evaluation.
#[derive(Clone, Debug)]
pub struct DobinskiResult {
    pub n: usize,
    pub r: usize,
    pub x: BigRational,
    /// Exact sum of the included terms (without the e^{-x} factor).
    pub partial_sum: BigRational,
    pub terms_used: usize,
    /// Upper bound on the omitted tail (without the e^{-x} factor).
    pub tail_bound: BigRational,
    /// Exact target from the row polynomial evaluated at x.
    pub exact_reference: BigRational,
    /// Certified interval for e^{-x}·(series sum).
    pub enclosure: Enclosure,
}

impl DobinskiResult {
    pub fn contains_exact(&self) -> bool {
        self.enclosure.contains(&self.exact_reference)
    }

    pub fn to_json(&self, decimal_digits: usize) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "r": self.r,
            "x": rational_string(&self.x),
            "terms_used": self.terms_used,
            "partial_sum": rational_string(&self.partial_sum),
            "tail_bound": rational_string(&self.tail_bound),
            "enclosure_lo": rational_string(&self.enclosure.lo),
            "enclosure_hi": rational_string(&self.enclosure.hi),
            "exact": rational_string(&self.exact_reference),
            "contains_exact": self.contains_exact(),
            "decimals": {
                "enclosure_lo": decimal_string(&self.enclosure.lo, decimal_digits),
                "enclosure_hi": decimal_string(&self.enclosure.hi, decimal_digits),
                "exact": decimal_string(&self.exact_reference, decimal_digits),
            },
        })
    }
}

/// First index from which the term ratio is guaranteed <= 1/2:
/// ceil(2x + n + 2r).
pub fn contraction_index(n: usize, r: usize, x: &BigRational) -> usize {
    let bound = rat_int(2) * x + rat_int((n + 2 * r) as i64);
    bound
        .ceil()
        .to_integer()
        .to_usize()
        .expect("desk-scale index")
}

/// Term t_k = rising(k+2r)_n·x^k/k!.
pub fn term(k: usize, n: usize, r: usize, x: &BigRational) -> BigRational {
    let numerator = BigRational::from_integer(rising_int((k + 2 * r) as u64, n));
    numerator * x.pow(k as i32) / BigRational::from_integer(crate::scalar::factorial(k))
}

/// Valid upper bound on the tail sum_{j>k} t_j, namely t_k itself once the
/// term ratio is contractive (<= 1/2 from index k on).
pub fn tail_bound(
    k: usize,
    n: usize,
    r: usize,
    x: &BigRational,
) -> Result<BigRational, DobinskiError> {
    if x <= &BigRational::zero() {
        return Err(DobinskiError::NonpositiveX);
    }
    let threshold = contraction_index(n, r, x);
    if k < threshold {
        return Err(DobinskiError::NotContractive { k, threshold });
    }
    Ok(term(k, n, r, x))
}

/// Rational enclosure of e^x for x > 0 with relative width below `rel_tol`,
/// from the Taylor polynomial plus a geometric bound on the remainder.
pub fn exp_enclosure(x: &BigRational, rel_tol: &BigRational) -> Enclosure {
    let mut partial = BigRational::one();
    let mut term = BigRational::one();
    let mut m = 0usize;
    loop {
        m += 1;
        term = term * x / rat_int(m as i64);
        partial += &term;
        // Remainder after the x^m/m! term: bounded by the next term times
        // the geometric series with ratio x/(m+2), once that ratio < 1.
        let ratio = x / rat_int((m + 2) as i64);
        if ratio >= BigRational::one() {
            continue;
        }
        let next = &term * x / rat_int((m + 1) as i64);
        let remainder = &next / (BigRational::one() - ratio);
        if &remainder / &partial < *rel_tol {
            return Enclosure {
                lo: partial.clone(),
                hi: partial + remainder,
            };
        }
    }
}

/// Sum the series exactly until the certified tail drops below
/// tol·partial_sum, then report the enclosure for e^{-x}·sum together with
/// the exact reference value.
pub fn dobinski_sum(
    n: usize,
    r: usize,
    x: &BigRational,
    tol: &BigRational,
) -> Result<DobinskiResult, DobinskiError> {
    if tol <= &BigRational::zero() {
        return Err(DobinskiError::Nonterminating);
    }
    if x <= &BigRational::zero() {
        return Err(DobinskiError::NonpositiveX);
    }
    let threshold = contraction_index(n, r, x);
    let mut partial_sum = BigRational::zero();
    let mut x_pow = BigRational::one();
    let mut k_factorial = BigInt::one();
    let mut k = 0usize;
    let tail = loop {
        let term = BigRational::from_integer(rising_int((k + 2 * r) as u64, n)) * &x_pow
            / BigRational::from_integer(k_factorial.clone());
        partial_sum += &term;
        if k >= threshold && term < tol * &partial_sum {
            break term;
        }
        k += 1;
        x_pow *= x;
        k_factorial *= BigInt::from(k);
    };
    let exact_reference = r_lah_bell_poly(n, r).eval(x);
    let exp_range = exp_enclosure(x, tol);
    // sum ∈ [partial, partial + tail] and e^x ∈ [lo, hi], all positive, so
    // e^{-x}·sum ∈ [partial/hi, (partial + tail)/lo].
    let enclosure = Enclosure {
        lo: &partial_sum / &exp_range.hi,
        hi: (&partial_sum + &tail) / &exp_range.lo,
    };
    Ok(DobinskiResult {
        n,
        r,
        x: x.clone(),
        partial_sum,
        terms_used: k + 1,
        tail_bound: tail,
        exact_reference,
        enclosure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn tol(p: u32) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(10u32).pow(p))
    }

    #[test]
    fn encloses_small_row_sums() {
        let res = dobinski_sum(2, 0, &rat_int(1), &tol(12)).unwrap();
        assert_eq!(res.exact_reference, rat_int(3));
        assert!(res.contains_exact());

        let res = dobinski_sum(0, 5, &rat_int(1), &tol(6)).unwrap();
        assert_eq!(res.exact_reference, rat_int(1));
        assert!(res.contains_exact());

        let res = dobinski_sum(1, 1, &rat_int(1), &tol(12)).unwrap();
        assert_eq!(res.exact_reference, rat_int(3));
        assert!(res.contains_exact());
    }

    #[test]
    fn zero_tolerance_is_rejected() {
        assert!(matches!(
            dobinski_sum(2, 0, &rat_int(1), &BigRational::zero()),
            Err(DobinskiError::Nonterminating)
        ));
    }

    #[test]
    fn nonpositive_x_is_rejected() {
        assert!(matches!(
            dobinski_sum(2, 0, &rat_int(0), &tol(6)),
            Err(DobinskiError::NonpositiveX)
        ));
        assert!(matches!(
            tail_bound(50, 1, 0, &rat_int(-2)),
            Err(DobinskiError::NonpositiveX)
        ));
    }

    #[test]
    fn tail_bound_needs_contraction() {
        let x = rat_int(1);
        let threshold = contraction_index(3, 1, &x);
        assert_eq!(threshold, 7);
        assert!(matches!(
            tail_bound(threshold - 1, 3, 1, &x),
            Err(DobinskiError::NotContractive { .. })
        ));
        assert!(tail_bound(threshold, 3, 1, &x).is_ok());
    }

    #[test]
    fn tail_bound_dominates_long_sum() {
        let x = rat_int(1);
        let (n, r) = (3, 1);
        for k in contraction_index(n, r, &x)..contraction_index(n, r, &x) + 4 {
            let bound = tail_bound(k, n, r, &x).unwrap();
            let mut exact_tail = BigRational::zero();
            for j in k + 1..=200 {
                exact_tail += term(j, n, r, &x);
            }
            assert!(exact_tail <= bound, "k={k}");
        }
    }

    #[test]
    fn tail_bound_decreases_past_threshold() {
        let x = rat(3, 2);
        let start = contraction_index(4, 2, &x);
        for k in start..start + 6 {
            let here = tail_bound(k, 4, 2, &x).unwrap();
            let next = tail_bound(k + 1, 4, 2, &x).unwrap();
            assert!(next <= here, "k={k}");
        }
    }

    #[test]
    fn terms_are_nonnegative_and_sums_monotone() {
        let x = rat(1, 2);
        let mut partial = BigRational::zero();
        for k in 0..60 {
            let t = term(k, 5, 2, &x);
            assert!(t >= BigRational::zero());
            let next = &partial + &t;
            assert!(next >= partial);
            partial = next;
        }
    }

    #[test]
    fn exp_enclosure_brackets_known_values() {
        // e = 2.71828182845904..., so any enclosure of e sits strictly
        // between the two 11-digit rationals below.
        let enc = exp_enclosure(&rat_int(1), &tol(12));
        assert!(enc.lo < enc.hi);
        assert!(enc.lo < rat(271828182846, 100000000000));
        assert!(enc.hi > rat(271828182845, 100000000000));
        assert!(enc.lo > rat(271828, 100000));
        assert!(enc.hi < rat(271829, 100000));
        let width_ratio = enc.width() / enc.lo;
        assert!(width_ratio < tol(12));
    }

    #[test]
    fn rational_x_grid_is_contained() {
        for n in 0..=8 {
            for r in 0..=2 {
                for x in [rat(1, 2), rat_int(1), rat_int(2)] {
                    let res = dobinski_sum(n, r, &x, &tol(12)).unwrap();
                    assert!(res.contains_exact(), "n={n} r={r} x={x}");
                }
            }
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat(1, 2), 4), "0.5000");
        assert_eq!(decimal_string(&rat(-7, 3), 6), "-2.333333");
        assert_eq!(decimal_string(&rat_int(22), 2), "22.00");
        assert_eq!(decimal_string(&rat_int(5), 0), "5");
    }
}
