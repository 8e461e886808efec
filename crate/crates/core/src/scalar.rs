//! Exact scalars: arbitrary-precision integers and rationals plus the
//! factorial, binomial and factorial-power primitives every other module
//! consumes. Nothing in this module touches floating point.

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_traits::{One, Zero};

/// n! as an exact integer.
pub fn factorial(n: usize) -> BigInt {
    (2..=n as u64).map(BigInt::from).product()
}

/// Binomial coefficient extended down to upper index -1.
///
/// Conventions: `binomial(-1, -1) = 1`, `binomial(-1, k) = 0` otherwise, and
/// zero outside `0 <= k <= n` for `n >= 0`. These are exactly the edge cases
/// the ordered-block closed form needs so that the empty partition counts
/// once and a nonempty set has no partition into zero blocks.
///
/// Panics for `n < -1`; smaller upper indices never arise here and have no
/// single natural convention.
pub fn binomial(n: i64, k: i64) -> BigInt {
    assert!(
        n >= -1,
        "binomial: upper index {n} out of domain (need n >= -1)"
    );
    if n == -1 {
        return if k == -1 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    // acc stays integral: after step i it equals C(n-k+i, i).
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

/// Falling factorial x(x-1)...(x-n+1); the empty product 1 at n = 0.
pub fn falling(x: &BigRational, n: usize) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..n as i64 {
        acc *= x - rat_int(i);
    }
    acc
}

/// Rising factorial x(x+1)...(x+n-1); the empty product 1 at n = 0.
pub fn rising(x: &BigRational, n: usize) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..n as i64 {
        acc *= x + rat_int(i);
    }
    acc
}

/// Rising factorial of a nonnegative integer base, kept in integers.
pub fn rising_int(base: u64, n: usize) -> BigInt {
    (0..n as u64).map(|i| BigInt::from(base + i)).product()
}

/// An integer as an exact rational.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The exact rational p/q.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical "p/q" rendering, kept exact even for integral values.
pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Decimal rendering with exactly `digits` places, truncated toward zero.
pub fn decimal_string(value: &BigRational, digits: usize) -> String {
    use num_traits::Signed;
    let negative = value.is_negative();
    let magnitude = value.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = magnitude.numer() * &scale / magnitude.denom();
    let all = scaled.to_string();
    let (int_part, frac_part) = if all.len() > digits {
        let split = all.len() - digits;
        (all[..split].to_string(), all[split..].to_string())
    } else {
        ("0".to_string(), format!("{all:0>digits$}"))
    };
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(
            factorial(20),
            "2432902008176640000".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn factorial_matches_repeated_multiplication() {
        let mut acc = BigInt::one();
        for n in 1u64..=30 {
            acc *= BigInt::from(n);
            assert_eq!(factorial(n as usize), acc);
        }
    }

    #[test]
    fn binomial_values_and_edges() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(-1, -1), BigInt::one());
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(40, 20), "137846528820".parse::<BigInt>().unwrap());
    }

    #[test]
    #[should_panic(expected = "out of domain")]
    fn binomial_rejects_small_upper_index() {
        binomial(-2, 0);
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        // Independent construction by the addition rule.
        let mut row = vec![BigInt::one()];
        for n in 1..=40usize {
            let mut next = vec![BigInt::one(); n + 1];
            for k in 1..n {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            for (k, v) in row.iter().enumerate() {
                assert_eq!(binomial(n as i64, k as i64), *v, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn falling_and_rising_products() {
        assert_eq!(falling(&rat_int(5), 3), rat_int(60));
        assert_eq!(rising(&rat_int(3), 0), rat_int(1));
        assert_eq!(rising(&rat_int(2), 3), rat_int(24));
        assert_eq!(rising_int(2, 3), BigInt::from(24));
        assert_eq!(rising_int(0, 4), BigInt::zero());
        assert_eq!(rising_int(0, 0), BigInt::one());
    }

    #[test]
    fn falling_equals_factorial_times_binomial() {
        for x in 0..=40i64 {
            for n in 0..=x as usize {
                let lhs = falling(&rat_int(x), n);
                let rhs = BigRational::from_integer(factorial(n) * binomial(x, n as i64));
                assert_eq!(lhs, rhs, "x={x} n={n}");
            }
        }
    }

    #[test]
    fn rational_string_is_canonical() {
        assert_eq!(rational_string(&rat(6, 4)), "3/2");
        assert_eq!(rational_string(&rat(-1, 2)), "-1/2");
        assert_eq!(rational_string(&rat_int(7)), "7/1");
    }

    proptest! {
        #[test]
        fn rising_is_reflected_falling(p in -50i64..50, q in 1i64..20, n in 0usize..=30) {
            let x = rat(p, q);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(rising(&x, n), rat_int(sign) * falling(&-x, n));
        }
    }
}
