//! Deterministic parallel trial execution.
//!
//! Trial `k` of an experiment with master seed `s` uses the `k`-th output of
//! a SplitMix64 generator seeded with `s` as the seed of its own ChaCha8
//! stream. Trials share nothing else, so the records do not depend on the
//! number of workers or on scheduling.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{Algorithm, Engine, ExperimentPlan};
use crate::bits::TargetString;
use crate::error::{Error, Result};
use crate::learners::{
    classical_baseline, learn_majority_perturbed, learn_unknown_distribution, majority_vote, or_aggregate,
    sample_classical_examples, EstimationReport, LearnerOutput,
};
use crate::sampler::{CleanSampler, DenseSampler, NoisyDenseSampler, NoisySampler};
use crate::statevector::circuit_distribution;

/// Environment variable holding the worker count; unset means all cores.
pub const WORKERS_ENV: &str = "BIASEDBV_WORKERS";

/// Two-sided normal quantile for 99% confidence.
pub const Z_99: f64 = 2.5758293035489;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// The SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index`: output number `index` of SplitMix64 started at `master`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add(GOLDEN_GAMMA.wrapping_mul(index.wrapping_add(1))))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub n: usize,
    pub c: f64,
    pub m_used: usize,
    pub algorithm: String,
    pub success: u8,
    /// Successful subroutine runs; for the classical baseline, the rank of
    /// the example system.
    pub subroutine_successes: usize,
    pub wall_time_ms: u64,
    pub seed: u64,
}

/// Everything one trial produced, beyond its CSV row.
#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub record: TrialRecord,
    pub target: TargetString,
    pub result: Option<TargetString>,
    pub warnings: Vec<String>,
    pub estimation: Option<EstimationReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub target_rate: f64,
    pub meets_target: bool,
}

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

impl Summary {
    /// Aggregates records after sorting them by trial index.
    pub fn from_records(records: &[TrialRecord], delta: f64) -> Self {
        let mut sorted: Vec<&TrialRecord> = records.iter().collect();
        sorted.sort_by_key(|r| r.trial_index);
        let trials = sorted.len();
        let successes = sorted.iter().filter(|r| r.success == 1).count();
        let (ci_low, ci_high) = wilson_interval(successes, trials, Z_99);
        let target_rate = 1.0 - delta;
        Summary {
            trials,
            successes,
            success_rate: if trials == 0 { 0.0 } else { successes as f64 / trials as f64 },
            ci_low,
            ci_high,
            target_rate,
            meets_target: ci_low >= target_rate,
        }
    }
}

/// Runs trial `index` of `plan` on its own stream.
pub fn run_trial(plan: &ExperimentPlan, index: u64) -> Result<TrialOutcome> {
    let seed = trial_seed(plan.seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let started = Instant::now();
    let a = plan.target.resolve(plan.n, &mut rng);
    let mu = plan.draw_mu(&mut rng)?;
    let m = plan.m;

    let (success, subroutine_successes, m_used, result, out) = match plan.algorithm {
        Algorithm::ClassicalBaseline => {
            let examples = sample_classical_examples(&a, &mu, m, plan.eta.as_ref(), &mut rng)?;
            let sol = classical_baseline(plan.n, &examples)?;
            (sol.solution.as_ref() == Some(&a), sol.rank, m, sol.solution, None)
        }
        algorithm => {
            let out = run_learner(plan, algorithm, &a, &mu, &mut rng)?;
            (out.is_correct(&a), out.successes(), out.copies_used, out.result.clone(), Some(out))
        }
    };
    let wall_time_ms = if plan.record_timing { started.elapsed().as_millis() as u64 } else { 0 };
    let (warnings, estimation) = match out {
        Some(o) => (o.warnings, o.estimation),
        None => (Vec::new(), None),
    };
    Ok(TrialOutcome {
        record: TrialRecord {
            trial_index: index,
            n: plan.n,
            c: plan.c,
            m_used,
            algorithm: plan.algorithm.name().to_string(),
            success: success as u8,
            subroutine_successes,
            wall_time_ms,
            seed,
        },
        target: a,
        result,
        warnings,
        estimation,
    })
}

fn run_learner(
    plan: &ExperimentPlan,
    algorithm: Algorithm,
    a: &TargetString,
    mu: &crate::fourier::BiasVector,
    rng: &mut ChaCha8Rng,
) -> Result<LearnerOutput> {
    let m = plan.m;
    match (algorithm, plan.engine) {
        (Algorithm::Majority, _) if plan.mu_tilde.is_some() => {
            learn_majority_perturbed(m, a, mu, plan.mu_tilde.as_ref().expect("checked"), rng)
        }
        (Algorithm::OrAggregate, Engine::Analytic) => or_aggregate(&mut CleanSampler::new(a, mu)?, m, rng),
        (Algorithm::OrAggregate, Engine::Statevector) => {
            or_aggregate(&mut DenseSampler::new(&circuit_distribution(a, mu)?), m, rng)
        }
        (Algorithm::Majority, Engine::Analytic) => majority_vote(&mut CleanSampler::new(a, mu)?, m, rng),
        (Algorithm::Majority, Engine::Statevector) => {
            majority_vote(&mut DenseSampler::new(&circuit_distribution(a, mu)?), m, rng)
        }
        (Algorithm::MajorityNoisy, engine) => {
            let eta = plan.eta.as_ref().expect("checked when resolving");
            match engine {
                Engine::Analytic => majority_vote(&mut NoisySampler::new(a, mu, eta)?, m, rng),
                Engine::Statevector => majority_vote(&mut NoisyDenseSampler::new(a, mu, eta)?, m, rng),
            }
        }
        (Algorithm::UnknownDistribution, _) => learn_unknown_distribution(m, a, mu, plan.delta, rng),
        (Algorithm::ClassicalBaseline, _) => unreachable!("handled by run_trial"),
    }
}

/// Worker count from [`WORKERS_ENV`], if set and valid.
pub fn workers_from_env() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(Error::Config(format!("{WORKERS_ENV} must be a positive integer, got {v:?}"))),
            Ok(k) => Ok(Some(k)),
        },
    }
}

/// All trial records, in trial order, using `workers` threads (or rayon's
/// default when `None`).
pub fn run_trials(plan: &ExperimentPlan, workers: Option<usize>) -> Result<Vec<TrialRecord>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = workers {
        builder = builder.num_threads(k);
    }
    let pool = builder.build().map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<TrialRecord>> = pool.install(|| {
        (0..plan.trials as u64).into_par_iter().map(|k| run_trial(plan, k).map(|o| o.record)).collect()
    });
    results.into_iter().collect()
}
