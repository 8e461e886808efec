//! Brute-force combinatorial ground truth.
//!
//! Enumerates set partitions of an (n+r)-set through restricted growth
//! strings, keeps only those placing the r distinguished elements in
//! distinct blocks, and weights each surviving partition by the product of
//! the block-size factorials — the number of ways to linearly order every
//! block. This counts partitions into ordered blocks at Bell-number cost
//! instead of factorial cost.

use std::collections::BTreeMap;

use crate::scalar::{factorial, BigInt};
use num_traits::Zero;
use thiserror::Error;

/// Largest n + r the enumeration accepts; beyond this the state space is
/// intractable by design.
pub const ORACLE_CAP: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle cap exceeded: n + r = {0} > {ORACLE_CAP}")]
    CapExceeded(usize),
}

/// Counts of ordered-block partitions of an (n+r)-set with the r
/// distinguished elements separated, bucketed by k = blocks - r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedPartitionCount {
    n: usize,
    r: usize,
    counts_by_k: BTreeMap<usize, BigInt>,
    total: BigInt,
}

impl OrderedPartitionCount {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Count for a given k; zero when the bucket is empty.
    pub fn count_for_k(&self, k: usize) -> BigInt {
        self.counts_by_k
            .get(&k)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn counts_by_k(&self) -> &BTreeMap<usize, BigInt> {
        &self.counts_by_k
    }

    pub fn total(&self) -> &BigInt {
        &self.total
    }
}

/// Visit every set partition of {0, .., m-1} as a restricted growth string
/// together with its block count.
fn for_each_partition(m: usize, f: &mut impl FnMut(&[usize], usize)) {
    fn rec(a: &mut Vec<usize>, m: usize, next: usize, f: &mut impl FnMut(&[usize], usize)) {
        if a.len() == m {
            f(a, next);
            return;
        }
        for v in 0..=next {
            a.push(v);
            rec(a, m, next.max(v + 1), f);
            a.pop();
        }
    }
    if m == 0 {
        f(&[], 0);
    } else {
        rec(&mut Vec::with_capacity(m), m, 0, f);
    }
}

/// Enumerate partitions of an (n+r)-set into ordered blocks with elements
/// 0..r distinguished and required to land in distinct blocks.
pub fn enumerate(n: usize, r: usize) -> Result<OrderedPartitionCount, OracleError> {
    let m = n + r;
    if m > ORACLE_CAP {
        return Err(OracleError::CapExceeded(m));
    }
    let mut counts_by_k: BTreeMap<usize, BigInt> = BTreeMap::new();
    let mut total = BigInt::zero();
    for_each_partition(m, &mut |rgs, blocks| {
        // Distinguished elements pairwise separated: in a restricted growth
        // string that forces the prefix 0, 1, .., r-1.
        if (0..r).any(|i| rgs[i] != i) {
            return;
        }
        let mut sizes = vec![0usize; blocks];
        for &b in rgs {
            sizes[b] += 1;
        }
        let orderings: BigInt = sizes.iter().map(|&s| factorial(s)).product();
        let k = blocks - r;
        *counts_by_k.entry(k).or_insert_with(BigInt::zero) += &orderings;
        total += orderings;
    });
    if counts_by_k.is_empty() {
        counts_by_k.insert(0, BigInt::zero());
    }
    Ok(OrderedPartitionCount {
        n,
        r,
        counts_by_k,
        total,
    })
}
