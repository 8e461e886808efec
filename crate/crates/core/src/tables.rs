//! Number triangles and their row-sum sequences.
//!
//! The additive recurrences are the authoritative construction path; closed
//! forms, series extraction and brute-force enumeration act as cross-checks
//! wired up in [`crate::verify`].

use crate::scalar::{binomial, factorial, BigInt};
use num_traits::{One, Zero};

/// Which triangle an instance holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleFamily {
    /// Ordered-block counts L(n, k).
    Lah,
    /// Ordered-block counts with r separated distinguished elements, L_r(n, k).
    RLah,
    /// Signed Stirling numbers of the first kind.
    Stirling1Signed,
    /// Stirling numbers of the second kind.
    Stirling2,
    /// Second-kind numbers shifted by an integer x, S2(n, k | x).
    Stirling2Shifted,
}

/// Dense lower-triangular table of exact integers; entries outside
/// `0 <= k <= n <= n_max` are implied zeros and not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberTriangle {
    family: TriangleFamily,
    param_r: usize,
    shift_x: i64,
    rows: Vec<Vec<BigInt>>,
}

impl NumberTriangle {
    pub fn family(&self) -> TriangleFamily {
        self.family
    }

    pub fn param_r(&self) -> usize {
        self.param_r
    }

    pub fn shift_x(&self) -> i64 {
        self.shift_x
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Entry at (n, k); zero outside the stored triangle.
    pub fn entry(&self, n: usize, k: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Row n as a slice of its n + 1 entries.
    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        self.rows.iter().map(|row| row.iter().sum()).collect()
    }
}

/// L_r(n, k) by the closed form (n!/k!)·C(n+2r-1, k+2r-1); zero for k > n.
///
/// Relies on the `binomial(-1, -1) = 1` convention so the empty partition is
/// counted once at n = k = r = 0.
pub fn r_lah_closed(n: usize, k: usize, r: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let ratio = factorial(n) / factorial(k);
    ratio * binomial((n + 2 * r) as i64 - 1, (k + 2 * r) as i64 - 1)
}

fn r_lah_rows(n_max: usize, r: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for n in 0..n_max {
        let prev = &rows[n];
        let mut row = Vec::with_capacity(n + 2);
        for k in 0..=n + 1 {
            let mut v = BigInt::zero();
            if k >= 1 {
                v += &prev[k - 1];
            }
            if k <= n {
                v += &prev[k] * BigInt::from(n + 2 * r + k);
            }
            row.push(v);
        }
        rows.push(row);
    }
    rows
}

/// Triangle of L_r(n, k) built by the recurrence
/// L_r(n+1, k) = L_r(n, k-1) + (n + 2r + k)·L_r(n, k) from L_r(0, 0) = 1.
pub fn r_lah_triangle(n_max: usize, r: usize) -> NumberTriangle {
    NumberTriangle {
        family: TriangleFamily::RLah,
        param_r: r,
        shift_x: 0,
        rows: r_lah_rows(n_max, r),
    }
}

/// Plain ordered-block triangle L(n, k), the r = 0 case under its own tag.
pub fn lah_triangle(n_max: usize) -> NumberTriangle {
    NumberTriangle {
        family: TriangleFamily::Lah,
        param_r: 0,
        shift_x: 0,
        rows: r_lah_rows(n_max, 0),
    }
}

/// Signed first-kind Stirling triangle: S1(n+1, k) = S1(n, k-1) - n·S1(n, k),
/// the coefficients expanding falling factorials into monomials.
pub fn stirling1_triangle(n_max: usize) -> NumberTriangle {
    let mut rows = vec![vec![BigInt::one()]];
    for n in 0..n_max {
        let prev = &rows[n];
        let mut row = Vec::with_capacity(n + 2);
        for k in 0..=n + 1 {
            let mut v = BigInt::zero();
            if k >= 1 {
                v += &prev[k - 1];
            }
            if k <= n {
                v -= &prev[k] * BigInt::from(n);
            }
            row.push(v);
        }
        rows.push(row);
    }
    NumberTriangle {
        family: TriangleFamily::Stirling1Signed,
        param_r: 0,
        shift_x: 0,
        rows,
    }
}

/// Second-kind Stirling triangle: S2(n+1, k) = S2(n, k-1) + k·S2(n, k).
pub fn stirling2_triangle(n_max: usize) -> NumberTriangle {
    let mut rows = vec![vec![BigInt::one()]];
    for n in 0..n_max {
        let prev = &rows[n];
        let mut row = Vec::with_capacity(n + 2);
        for k in 0..=n + 1 {
            let mut v = BigInt::zero();
            if k >= 1 {
                v += &prev[k - 1];
            }
            if k <= n {
                v += &prev[k] * BigInt::from(k);
            }
            row.push(v);
        }
        rows.push(row);
    }
    NumberTriangle {
        family: TriangleFamily::Stirling2,
        param_r: 0,
        shift_x: 0,
        rows,
    }
}

/// Shifted second-kind triangle S2(n, k | x) = sum_{m=k..n} C(n, m)·x^(n-m)·S2(m, k),
/// the coefficient table of e^{xt}(e^t - 1)^k / k!. Reduces to S2(n, k) at x = 0.
pub fn stirling2_shifted_triangle(n_max: usize, x: i64) -> NumberTriangle {
    let s2 = stirling2_triangle(n_max);
    let xb = BigInt::from(x);
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut v = BigInt::zero();
            for m in k..=n {
                v += binomial(n as i64, m as i64) * xb.pow((n - m) as u32) * s2.entry(m, k);
            }
            row.push(v);
        }
        rows.push(row);
    }
    NumberTriangle {
        family: TriangleFamily::Stirling2Shifted,
        param_r: 0,
        shift_x: x,
        rows,
    }
}

/// Which sequence an instance holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceFamily {
    Bell,
    RBell,
    LahBell,
    RLahBell,
}

/// Exact integer sequence indexed from n = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberSequence {
    family: SequenceFamily,
    param_r: usize,
    values: Vec<BigInt>,
}

impl NumberSequence {
    pub fn family(&self) -> SequenceFamily {
        self.family
    }

    pub fn param_r(&self) -> usize {
        self.param_r
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn value(&self, n: usize) -> &BigInt {
        &self.values[n]
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }
}

/// Bell numbers B_n as second-kind row sums.
pub fn bell_numbers(n_max: usize) -> NumberSequence {
    NumberSequence {
        family: SequenceFamily::Bell,
        param_r: 0,
        values: stirling2_triangle(n_max).row_sums(),
    }
}

/// Shifted Bell numbers B_{n,r} = sum_m C(n, m)·r^(n-m)·B_m, the exact
/// expansion of the product of e^{rt} with the Bell exponential.
pub fn r_bell_numbers(n_max: usize, r: usize) -> NumberSequence {
    let bell = bell_numbers(n_max);
    let rb = BigInt::from(r);
    let values = (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|m| binomial(n as i64, m as i64) * rb.pow((n - m) as u32) * bell.value(m))
                .sum()
        })
        .collect();
    NumberSequence {
        family: SequenceFamily::RBell,
        param_r: r,
        values,
    }
}

/// Ordered-block Bell numbers (row sums of the plain triangle).
pub fn lah_bell_numbers(n_max: usize) -> NumberSequence {
    NumberSequence {
        family: SequenceFamily::LahBell,
        param_r: 0,
        values: r_lah_triangle(n_max, 0).row_sums(),
    }
}

/// Row sums of the r-distinguished ordered-block triangle.
pub fn r_lah_bell_numbers(n_max: usize, r: usize) -> NumberSequence {
    NumberSequence {
        family: SequenceFamily::RLahBell,
        param_r: r,
        values: r_lah_triangle(n_max, r).row_sums(),
    }
}
