//! Poisson sampling lab: the rising-factorial moments of a Poisson variable
//! shifted by 2r, evaluated three ways — exactly by the row polynomial,
//! analytically by the certified series enclosure, and statistically by a
//! seeded Monte-Carlo run.
//!
//! Sampling uses inversion by sequential search on the cumulative pmf in
//! double precision, restarted from zero for every draw; the per-sample
//! statistic rising(X + 2r)_n is computed in exact integers (u128 with a
//! big-integer fallback) before entering the floating-point accumulators.

use crate::dobinski::{dobinski_sum, DobinskiError, Enclosure};
use crate::poly::{bell_poly, r_lah_bell_poly};
use crate::scalar::{decimal_string, rational_string, rising_int, BigInt, BigRational};
use crate::tables::{r_lah_triangle, stirling1_triangle};
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

/// Largest parameter the sequential-search sampler accepts; the cumulative
/// search stays fast and numerically sane up to here, which covers every
/// desk-scale grid.
pub const SAMPLER_ALPHA_CAP: f64 = 30.0;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PoissonError {
    #[error("alpha must be positive")]
    NonpositiveAlpha,
    #[error("samples must be at least 1")]
    ZeroSamples,
    #[error("alpha exceeds the sequential-search sampler cap of 30")]
    AlphaAboveSamplerCap,
    #[error(transparent)]
    Series(#[from] DobinskiError),
}

/// Parameters of a seeded Monte-Carlo experiment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonSpec {
    alpha: BigRational,
    seed: u64,
    samples: u64,
}

impl PoissonSpec {
    pub fn new(alpha: BigRational, seed: u64, samples: u64) -> Result<Self, PoissonError> {
        if alpha <= BigRational::zero() {
            return Err(PoissonError::NonpositiveAlpha);
        }
        if samples == 0 {
            return Err(PoissonError::ZeroSamples);
        }
        Ok(PoissonSpec {
            alpha,
            seed,
            samples,
        })
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }
}

/// Exact value of the shifted rising-factorial moment: the row polynomial
/// evaluated at alpha.
pub fn exact_moment(n: usize, r: usize, alpha: &BigRational) -> BigRational {
    r_lah_bell_poly(n, r).eval(alpha)
}

/// Certified enclosure of the same moment from the factorial-weighted
/// series at x = alpha.
pub fn series_moment(
    n: usize,
    r: usize,
    alpha: &BigRational,
    tol: &BigRational,
) -> Result<Enclosure, DobinskiError> {
    dobinski_sum(n, r, alpha, tol).map(|res| res.enclosure)
}

/// The same moment routed through monomial moments: expand the shifted
/// rising factorial over falling factorials and then monomials, so the
/// moment becomes sum_l (sum_{k=l..n} L_r(n,k)·S1(k,l))·B_l(alpha).
pub fn moment_via_monomial_moments(n: usize, r: usize, alpha: &BigRational) -> BigRational {
    let tri = r_lah_triangle(n, r);
    let s1 = stirling1_triangle(n);
    let mut acc = BigRational::zero();
    for l in 0..=n {
        let weight: BigInt = (l..=n).map(|k| tri.entry(n, k) * s1.entry(k, l)).sum();
        acc += BigRational::from_integer(weight) * bell_poly(l).eval(alpha);
    }
    acc
}

/// Sequential-search Poisson sampler over a deterministic seeded stream.
/// The exact stream is implementation-defined but fixed for a given build.
pub struct PoissonSampler {
    alpha: f64,
    p0: f64,
    rng: StdRng,
}

impl PoissonSampler {
    pub fn new(alpha: f64, seed: u64) -> Result<Self, PoissonError> {
        if alpha.is_nan() || alpha <= 0.0 {
            return Err(PoissonError::NonpositiveAlpha);
        }
        if alpha > SAMPLER_ALPHA_CAP {
            return Err(PoissonError::AlphaAboveSamplerCap);
        }
        Ok(PoissonSampler {
            alpha,
            p0: (-alpha).exp(),
            rng: StdRng::seed_from_u64(seed),
        })
    }

    pub fn draw(&mut self) -> u64 {
        let u: f64 = self.rng.gen();
        let mut i = 0u64;
        let mut p = self.p0;
        let mut cum = p;
        while u >= cum && p > 0.0 {
            i += 1;
            p *= self.alpha / i as f64;
            cum += p;
        }
        i
    }
}

/// rising(base + 2r)_n as an exactly computed integer, rounded once on the
/// way into f64. The u128 fast path covers every realistic draw; overflow
/// falls back to big integers.
fn rising_statistic(base: u64, n: usize) -> f64 {
    let mut acc: u128 = 1;
    for i in 0..n as u64 {
        match acc.checked_mul(base as u128 + i as u128) {
            Some(v) => acc = v,
            None => {
                return rising_int(base, n).to_f64().unwrap_or(f64::INFINITY);
            }
        }
    }
    acc as f64
}

/// Pairing of the exact moment, its certified series enclosure, and a
/// seeded Monte-Carlo estimate.
#[derive(Clone, Debug)]
pub struct MomentReport {
    pub n: usize,
    pub r: usize,
    pub alpha: BigRational,
    pub exact_value: BigRational,
    pub series: Enclosure,
    pub mc_estimate: f64,
    pub mc_stderr: f64,
    /// (mc_estimate - midpoint of the series enclosure)/mc_stderr; zero for
    /// a constant statistic that matches the exact value.
    pub z_score: f64,
    pub samples: u64,
    pub seed: u64,
}

impl MomentReport {
    pub fn to_json(&self, decimal_digits: usize) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "r": self.r,
            "alpha": rational_string(&self.alpha),
            "samples": self.samples,
            "seed": self.seed,
            "exact": rational_string(&self.exact_value),
            "series_lo": rational_string(&self.series.lo),
            "series_hi": rational_string(&self.series.hi),
            "mc_estimate": self.mc_estimate,
            "mc_stderr": self.mc_stderr,
            "z_score": self.z_score,
            "decimals": {
                "exact": decimal_string(&self.exact_value, decimal_digits),
            },
        })
    }
}

/// Default relative tolerance for the series side of a moment report.
fn default_series_tol() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

/// Run the seeded Monte-Carlo estimate of the shifted rising-factorial
/// moment and package it with the exact and series values.
pub fn mc_moment(n: usize, r: usize, spec: &PoissonSpec) -> Result<MomentReport, PoissonError> {
    let alpha_f = spec
        .alpha
        .to_f64()
        .ok_or(PoissonError::AlphaAboveSamplerCap)?;
    let mut sampler = PoissonSampler::new(alpha_f, spec.seed)?;
    // Welford accumulation keeps the variance numerically stable.
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for count in 1..=spec.samples {
        let x = sampler.draw();
        let value = rising_statistic(x + 2 * r as u64, n);
        let delta = value - mean;
        mean += delta / count as f64;
        m2 += delta * (value - mean);
    }
    let samples = spec.samples as f64;
    let variance = if spec.samples > 1 {
        m2 / (samples - 1.0)
    } else {
        0.0
    };
    let mc_stderr = (variance / samples).sqrt();
    let exact_value = exact_moment(n, r, &spec.alpha);
    let series = series_moment(n, r, &spec.alpha, &default_series_tol())?;
    let midpoint = series.midpoint().to_f64().unwrap_or(f64::NAN);
    let z_score = if mc_stderr > 0.0 {
        (mean - midpoint) / mc_stderr
    } else if mean == exact_value.to_f64().unwrap_or(f64::NAN) {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(MomentReport {
        n,
        r,
        alpha: spec.alpha.clone(),
        exact_value,
        series,
        mc_estimate: mean,
        mc_stderr,
        z_score,
        samples: spec.samples,
        seed: spec.seed,
    })
}

/// Counts of drawn values 0..=i_max over a full seeded run, for pmf checks.
pub fn empirical_pmf(spec: &PoissonSpec, i_max: usize) -> Result<Vec<u64>, PoissonError> {
    let alpha_f = spec
        .alpha
        .to_f64()
        .ok_or(PoissonError::AlphaAboveSamplerCap)?;
    let mut sampler = PoissonSampler::new(alpha_f, spec.seed)?;
    let mut counts = vec![0u64; i_max + 1];
    for _ in 0..spec.samples {
        let x = sampler.draw() as usize;
        if x <= i_max {
            counts[x] += 1;
        }
    }
    Ok(counts)
}
