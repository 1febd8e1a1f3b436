//! Power-law degree-sequence construction for synthetic inputs.

use crate::error::Error;
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check_bounds(dmin: u32, dmax: u32) -> Result<()> {
    if dmin == 0 || dmax < dmin {
        return Err(Error::InvalidParameter(format!(
            "degree bounds must satisfy 1 <= dmin <= dmax, got [{dmin}, {dmax}]"
        )));
    }
    Ok(())
}

/// Draws `n` degrees from a truncated discrete power law on `dmin..=dmax`
/// with `P(d = k) proportional to k^-exponent`. Deterministic in `seed`.
pub fn powerlaw_sequence(
    n: usize,
    exponent: f64,
    dmin: u32,
    dmax: u32,
    seed: u64,
) -> Result<Vec<u32>> {
    check_bounds(dmin, dmax)?;
    if !exponent.is_finite() {
        return Err(Error::InvalidParameter("exponent must be finite".into()));
    }
    let mut cum = Vec::with_capacity((dmax - dmin + 1) as usize);
    let mut total = 0.0f64;
    for k in dmin..=dmax {
        total += (k as f64).powf(-exponent);
        cum.push(total);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let r = rng.random_range(0.0..total);
        let idx = cum.partition_point(|&c| c <= r);
        out.push(dmin + idx.min(cum.len() - 1) as u32);
    }
    Ok(out)
}

/// Expected degree of the truncated power law with the given exponent.
pub fn expected_mean(exponent: f64, dmin: u32, dmax: u32) -> Result<f64> {
    check_bounds(dmin, dmax)?;
    let mut weight = 0.0f64;
    let mut mass = 0.0f64;
    for k in dmin..=dmax {
        let w = (k as f64).powf(-exponent);
        weight += w;
        mass += k as f64 * w;
    }
    Ok(mass / weight)
}

/// Finds the exponent whose truncated power law has the requested expected
/// degree, by bisection. The mean is strictly decreasing in the exponent.
pub fn exponent_for_mean(target_mean: f64, dmin: u32, dmax: u32) -> Result<f64> {
    check_bounds(dmin, dmax)?;
    let (mut lo, mut hi) = (-2.0f64, 12.0f64);
    let mean_lo = expected_mean(lo, dmin, dmax)?;
    let mean_hi = expected_mean(hi, dmin, dmax)?;
    if !(mean_hi..=mean_lo).contains(&target_mean) {
        return Err(Error::InvalidParameter(format!(
            "target mean {target_mean} outside attainable range [{mean_hi:.3}, {mean_lo:.3}]"
        )));
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if expected_mean(mid, dmin, dmax)? > target_mean {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
