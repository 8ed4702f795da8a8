//! Amplified learners built on the sampling subroutine, the classical GF(2)
//! baseline, and the estimate-then-learn pipeline for unknown biases.

use rand::Rng;

use crate::bits::{BitString, PmOneVector, TargetString};
use crate::bounds::gate_perturbation_bound;
use crate::error::{Error, Result};
use crate::fourier::{linear_fn, BiasVector};
use crate::gf2::{Gf2Solution, Gf2System};
use crate::sampler::{CleanSampler, DenseSampler, DrawSource, NoiseParams, NoisySampler, SubroutineOutcome};
use crate::statevector::perturbed_qft;

/// Largest magnitude an estimated bias is clamped to, keeping the transform
/// built from the estimate nonsingular.
pub const ESTIMATE_CLAMP: f64 = 1.0 - 1e-6;

/// Diagnostics of the bias-estimation stage of [`learn_unknown_distribution`].
#[derive(Clone, Debug, PartialEq)]
pub struct EstimationReport {
    pub mu_hat: BiasVector,
    pub estimation_copies: usize,
    pub l1_error: f64,
    /// Summed per-qubit operator-norm error of the transform built from `mu_hat`.
    pub epsilon: f64,
    /// `2 sqrt(2) n gamma ||mu - mu_hat||_1` for the hidden `mu`.
    pub gate_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LearnerOutput {
    /// `None` when every subroutine run failed.
    pub result: Option<TargetString>,
    pub subroutine_log: Vec<SubroutineOutcome>,
    pub copies_used: usize,
    pub warnings: Vec<String>,
    pub estimation: Option<EstimationReport>,
}

impl LearnerOutput {
    fn from_log(result: Option<TargetString>, log: Vec<SubroutineOutcome>) -> Self {
        let copies_used = log.len();
        LearnerOutput { result, subroutine_log: log, copies_used, warnings: Vec::new(), estimation: None }
    }

    pub fn successes(&self) -> usize {
        self.subroutine_log.iter().filter(|o| o.is_success()).count()
    }

    pub fn is_correct(&self, a: &TargetString) -> bool {
        self.result.as_ref() == Some(a)
    }
}

fn require_copies(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::Config("number of copies must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn run_source<S: DrawSource, R: Rng + ?Sized>(source: &mut S, m: usize, rng: &mut R) -> Vec<SubroutineOutcome> {
    (0..m).map(|_| source.draw(rng)).collect()
}

/// Coordinate-wise OR of all successful runs.
pub fn or_aggregate<S: DrawSource, R: Rng + ?Sized>(source: &mut S, m: usize, rng: &mut R) -> Result<LearnerOutput> {
    require_copies(m)?;
    let log = run_source(source, m, rng);
    let mut acc: Option<Vec<u64>> = None;
    for bits in log.iter().filter_map(|o| o.bits()) {
        match acc.as_mut() {
            None => acc = Some(bits.words().to_vec()),
            Some(words) => words.iter_mut().zip(bits.words()).for_each(|(w, b)| *w |= b),
        }
    }
    let result = acc.map(|w| BitString::from_words(w, source.n()).expect("word count matches n"));
    Ok(LearnerOutput::from_log(result, log))
}

/// Coordinate-wise majority over successful runs, ties going to 0.
pub fn majority_vote<S: DrawSource, R: Rng + ?Sized>(source: &mut S, m: usize, rng: &mut R) -> Result<LearnerOutput> {
    require_copies(m)?;
    let n = source.n();
    let log = run_source(source, m, rng);
    let mut ones = vec![0usize; n];
    let mut successes = 0usize;
    for bits in log.iter().filter_map(|o| o.bits()) {
        successes += 1;
        for (i, count) in ones.iter_mut().enumerate() {
            *count += bits.get(i) as usize;
        }
    }
    let result = (successes > 0).then(|| {
        let votes: Vec<bool> = ones.iter().map(|&k| 2 * k > successes).collect();
        BitString::from_bools(&votes)
    });
    Ok(LearnerOutput::from_log(result, log))
}

fn majority_regime_warnings(n: usize, c: f64) -> Vec<String> {
    if 2.0 * n as f64 * (1.0 - c).powi(2) >= 1.0 {
        vec![format!("2n(1-c)^2 = {:.4} is not below 1; majority vote is not guaranteed", 2.0 * n as f64 * (1.0 - c).powi(2))]
    } else {
        Vec::new()
    }
}

fn noisy_regime_warnings(n: usize, c: f64, rho: f64) -> Vec<String> {
    let mut w = Vec::new();
    let bias = 4.0 * n as f64 * (1.0 - c).powi(2);
    if bias >= 1.0 {
        w.push(format!("4n(1-c)^2 = {bias:.4} is not below 1"));
    }
    if 5.0 * n as f64 * rho >= 1.0 {
        w.push(format!("5n*rho = {:.4} is not below 1", 5.0 * n as f64 * rho));
    }
    w
}

pub fn learn_or_aggregate<R: Rng + ?Sized>(
    m: usize,
    a: &TargetString,
    mu: &BiasVector,
    rng: &mut R,
) -> Result<LearnerOutput> {
    or_aggregate(&mut CleanSampler::new(a, mu)?, m, rng)
}

/// Majority vote on clean copies; flags a warning outside `2n(1-c)^2 < 1`.
pub fn learn_majority<R: Rng + ?Sized>(
    m: usize,
    a: &TargetString,
    mu: &BiasVector,
    rng: &mut R,
) -> Result<LearnerOutput> {
    let mut out = majority_vote(&mut CleanSampler::new(a, mu)?, m, rng)?;
    out.warnings = majority_regime_warnings(a.len(), mu.c_bound());
    Ok(out)
}

/// Majority vote on noisy copies; regime violations become warnings.
pub fn learn_majority_noisy<R: Rng + ?Sized>(
    m: usize,
    a: &TargetString,
    mu: &BiasVector,
    eta: &NoiseParams,
    rng: &mut R,
) -> Result<LearnerOutput> {
    let mut out = majority_vote(&mut NoisySampler::new(a, mu, eta)?, m, rng)?;
    out.warnings = noisy_regime_warnings(a.len(), mu.c_bound(), eta.rho());
    Ok(out)
}

/// A labelled classical example `(x, f(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalExample {
    pub x: PmOneVector,
    pub label: bool,
}

/// Draws `x` from the product distribution `D_mu`.
pub fn sample_point<R: Rng + ?Sized>(mu: &BiasVector, rng: &mut R) -> PmOneVector {
    let minus: Vec<bool> = mu.as_slice().iter().map(|&m| rng.gen::<f64>() >= (1.0 + m) / 2.0).collect();
    PmOneVector::from_bit_description(BitString::from_bools(&minus))
}

/// Random examples of the parity `a`. With `eta`, each coordinate adds its
/// noise bit `xi^i_{x_i}` to the label.
pub fn sample_classical_examples<R: Rng + ?Sized>(
    a: &TargetString,
    mu: &BiasVector,
    m: usize,
    eta: Option<&NoiseParams>,
    rng: &mut R,
) -> Result<Vec<ClassicalExample>> {
    mu.check_len(a.len())?;
    if let Some(eta) = eta {
        if eta.len() != a.len() {
            return Err(Error::Dimension { expected: a.len(), found: eta.len() });
        }
    }
    (0..m)
        .map(|_| {
            let x = sample_point(mu, rng);
            let mut label = linear_fn(a, &x)?;
            if let Some(eta) = eta {
                for &e in eta.eta() {
                    label ^= rng.gen::<f64>() < e;
                }
            }
            Ok(ClassicalExample { x, label })
        })
        .collect()
}

/// Solves `<a, x~> = label` over GF(2), `x~` the bit description of `x`.
pub fn classical_baseline(n: usize, examples: &[ClassicalExample]) -> Result<Gf2Solution> {
    let mut sys = Gf2System::new(n);
    for ex in examples {
        sys.push(ex.x.bits(), ex.label)?;
    }
    Ok(sys.solve())
}

/// Copies for estimating every coordinate to within `1/n^2`:
/// Hoeffding on `[-1, 1]` variables plus a union bound over `n` coordinates
/// gives `ceil(2 n^4 ln(2n/delta))`, hence `||mu - mu_hat||_1 <= 1/n`.
pub fn estimation_copies(n: usize, delta: f64) -> usize {
    let n_f = n as f64;
    (2.0 * n_f.powi(4) * (2.0 * n_f / delta).ln()).ceil() as usize
}

/// Empirical means clamped to `[-ESTIMATE_CLAMP, ESTIMATE_CLAMP]`; also
/// returns the coordinates that needed clamping.
pub fn estimate_bias(samples: &[PmOneVector]) -> Result<(BiasVector, Vec<usize>)> {
    let first = samples.first().ok_or(Error::EmptySample)?;
    let n = first.len();
    let mut sums = vec![0i64; n];
    for x in samples {
        x.bits().check_len(n)?;
        for (i, s) in sums.iter_mut().enumerate() {
            *s += x.entry(i) as i64;
        }
    }
    let mut clamped = Vec::new();
    let mu: Vec<f64> = sums
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let mean = s as f64 / samples.len() as f64;
            if mean.abs() > ESTIMATE_CLAMP {
                clamped.push(i);
            }
            mean.clamp(-ESTIMATE_CLAMP, ESTIMATE_CLAMP)
        })
        .collect();
    Ok((BiasVector::new(mu)?, clamped))
}

/// Majority vote with the transform built from `mu_tilde` while copies
/// follow `mu`. Uses the dense engine.
pub fn learn_majority_perturbed<R: Rng + ?Sized>(
    m: usize,
    a: &TargetString,
    mu: &BiasVector,
    mu_tilde: &BiasVector,
    rng: &mut R,
) -> Result<LearnerOutput> {
    majority_vote(&mut DenseSampler::perturbed(a, mu, mu_tilde)?, m, rng)
}

/// Spends the first copies measuring data registers to estimate the bias,
/// then runs majority vote with the transform built from the estimate.
/// The estimation batch is [`estimation_copies`], capped to leave at least
/// one copy for learning.
pub fn learn_unknown_distribution<R: Rng + ?Sized>(
    m_total: usize,
    a: &TargetString,
    mu: &BiasVector,
    delta: f64,
    rng: &mut R,
) -> Result<LearnerOutput> {
    if m_total < 2 {
        return Err(Error::Config("unknown-distribution learning needs at least 2 copies".into()));
    }
    mu.check_len(a.len())?;
    mu.require_c_bounded()?;
    let n = a.len();
    let est_m = estimation_copies(n, delta).min(m_total - 1);
    // measuring the data register of |psi_a> yields x ~ D_mu
    let samples: Vec<PmOneVector> = (0..est_m).map(|_| sample_point(mu, rng)).collect();
    let (mu_hat, clamped) = estimate_bias(&samples)?;
    let qft = perturbed_qft(mu, &mu_hat)?;
    let l1_error = mu.l1_distance(&mu_hat)?;
    let report = EstimationReport {
        gate_bound: gate_perturbation_bound(n, mu.c_bound(), l1_error),
        mu_hat: mu_hat.clone(),
        estimation_copies: est_m,
        l1_error,
        epsilon: qft.epsilon,
    };
    let mut out = learn_majority_perturbed(m_total - est_m, a, mu, &mu_hat, rng)?;
    out.copies_used += est_m;
    if !clamped.is_empty() {
        out.warnings.push(format!("estimated bias clamped at coordinates {clamped:?}"));
    }
    out.warnings.extend(majority_regime_warnings(n, mu.c_bound()));
    out.estimation = Some(report);
    Ok(out)
}
