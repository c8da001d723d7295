//! Seeded randomized sweeps: group-law verification and the closed-form
//! versus oracle benchmark.

use std::collections::BTreeMap;
use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{so4_from_coeffs, Mat4r, So4Coeffs};
use crate::error::{Error, Result};
use crate::oracle::{bch_reference, OracleConfig};
use crate::so4::{bch_so4, so4_exp};
use crate::su2::BranchMode;

/// Identifier of the sampling generator, reported with every sweep.
pub const RNG_ALGORITHM: &str = "chacha8";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub trials: u64,
    pub seed: u64,
    pub bound: f64,
    pub mode: BranchMode,
    pub tolerance: f64,
    pub parallel: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if !(self.bound.is_finite() && self.bound >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "bound must be a finite non-negative number, got {}",
                self.bound
            )));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be a finite positive number, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Timings are kept apart from the deterministic part of the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub wall_time_ns_per_op: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub speedup: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub command: &'static str,
    pub rng: &'static str,
    pub trials: u64,
    pub seed: u64,
    pub bound: f64,
    pub mode: &'static str,
    /// Trials that were actually compared (`trials − branch_cut_skips`).
    pub evaluated: u64,
    pub branch_cut_skips: u64,
    pub max_error: f64,
    pub mean_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub timing: Timing,
}

/// Draws `trials` antisymmetric pairs with entries uniform in
/// `[−bound, bound]`.
pub fn sample_pairs(trials: u64, seed: u64, bound: f64) -> Vec<(Mat4r, Mat4r)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let a: [f64; 6] = std::array::from_fn(|_| rng.random_range(-bound..=bound));
        so4_from_coeffs(So4Coeffs::from_array(a))
    };
    (0..trials)
        .map(|_| {
            let a = draw(&mut rng);
            let b = draw(&mut rng);
            (a, b)
        })
        .collect()
}

/// `None` marks a branch-cut skip.
fn group_law_error(a: &Mat4r, b: &Mat4r, mode: BranchMode) -> Result<Option<f64>> {
    let r = match bch_so4(a, b, mode) {
        Ok(r) => r,
        Err(Error::AntipodalSingularity { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if !r.within_branch() {
        return Ok(None);
    }
    let lhs = so4_exp(&r.result)?;
    let rhs = so4_exp(a)? * so4_exp(b)?;
    Ok(Some(lhs.distance(&rhs)))
}

fn map_trials<T: Send>(
    pairs: &[(Mat4r, Mat4r)],
    parallel: bool,
    f: impl Fn(&Mat4r, &Mat4r) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    if parallel {
        pairs.par_iter().map(|(a, b)| f(a, b)).collect()
    } else {
        pairs.iter().map(|(a, b)| f(a, b)).collect()
    }
}

struct Aggregate {
    evaluated: u64,
    skips: u64,
    max: f64,
    mean: f64,
}

/// Sequential, index-ordered reduction so the result does not depend on
/// how the trials were scheduled.
fn aggregate(errors: &[Option<f64>]) -> Aggregate {
    let mut agg = Aggregate { evaluated: 0, skips: 0, max: 0.0, mean: 0.0 };
    let mut sum = 0.0;
    for e in errors {
        match e {
            Some(e) => {
                agg.evaluated += 1;
                agg.max = agg.max.max(*e);
                sum += e;
            }
            None => agg.skips += 1,
        }
    }
    if agg.evaluated > 0 {
        agg.mean = sum / agg.evaluated as f64;
    }
    agg
}

/// Checks `‖exp(A)exp(B) − exp(BCH(A, B))‖_F` over a seeded sample.
pub fn verify(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let pairs = sample_pairs(cfg.trials, cfg.seed, cfg.bound);
    let start = Instant::now();
    let errors = map_trials(&pairs, cfg.parallel, |a, b| group_law_error(a, b, cfg.mode))?;
    let elapsed = start.elapsed().as_nanos();
    let agg = aggregate(&errors);

    let mut per_op = BTreeMap::new();
    per_op.insert("verify_trial".to_string(), (elapsed / cfg.trials as u128) as u64);
    Ok(SweepReport {
        command: "verify",
        rng: RNG_ALGORITHM,
        trials: cfg.trials,
        seed: cfg.seed,
        bound: cfg.bound,
        mode: cfg.mode.as_str(),
        evaluated: agg.evaluated,
        branch_cut_skips: agg.skips,
        max_error: agg.max,
        mean_error: agg.mean,
        tolerance: cfg.tolerance,
        passed: agg.max < cfg.tolerance,
        timing: Timing { wall_time_ns_per_op: per_op, speedup: None },
    })
}

/// Times closed-form BCH against `log(exp·exp)` on the same inputs and
/// reports the largest disagreement between the two.
pub fn bench(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let pairs = sample_pairs(cfg.trials, cfg.seed, cfg.bound);
    let oracle_cfg = OracleConfig::default();

    let start = Instant::now();
    let closed: Vec<Option<Mat4r>> = pairs
        .iter()
        .map(|(a, b)| match bch_so4(black_box(a), black_box(b), cfg.mode) {
            Ok(r) if r.within_branch() => Ok(Some(r.result)),
            Ok(_) | Err(Error::AntipodalSingularity { .. }) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let closed_ns = start.elapsed().as_nanos();

    let start = Instant::now();
    let oracle: Vec<Option<Mat4r>> = pairs
        .iter()
        .map(|(a, b)| bch_reference(black_box(a), black_box(b), &oracle_cfg).ok())
        .collect();
    let oracle_ns = start.elapsed().as_nanos();

    let deltas: Vec<Option<f64>> = closed
        .iter()
        .zip(&oracle)
        .map(|(c, o)| match (c, o) {
            (Some(c), Some(o)) => Some(c.distance(o)),
            _ => None,
        })
        .collect();
    let agg = aggregate(&deltas);

    let n = cfg.trials as u128;
    let closed_per = (closed_ns / n) as u64;
    let oracle_per = (oracle_ns / n) as u64;
    let mut per_op = BTreeMap::new();
    per_op.insert("closed_form_bch".to_string(), closed_per);
    per_op.insert("oracle_bch".to_string(), oracle_per);
    Ok(SweepReport {
        command: "bench",
        rng: RNG_ALGORITHM,
        trials: cfg.trials,
        seed: cfg.seed,
        bound: cfg.bound,
        mode: cfg.mode.as_str(),
        evaluated: agg.evaluated,
        branch_cut_skips: agg.skips,
        max_error: agg.max,
        mean_error: agg.mean,
        tolerance: cfg.tolerance,
        passed: agg.max < cfg.tolerance,
        timing: Timing {
            wall_time_ns_per_op: per_op,
            speedup: Some(oracle_ns as f64 / (closed_ns.max(1)) as f64),
        },
    })
}
