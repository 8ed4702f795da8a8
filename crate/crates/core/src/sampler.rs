//! Exact sampling of the biased Bernstein-Vazirani subroutine.
//!
//! The output law factorizes over coordinates: the label qubit reads 1 with
//! probability 1/2, and given that, bit `j_i` is 0 whenever `a_i = 0` and is 1
//! with probability `1 - mu_i^2` whenever `a_i = 1`. The analytic samplers draw
//! from this law in O(n) per copy. Label noise with the per-coordinate sum
//! structure reduces to the same law for an effective string `a XOR y`, where
//! `y_i` marks coordinates whose two noise bits disagree.
//!
//! Sources that need the dense engine (mismatched transforms, per-copy noisy
//! states) precompute or rebuild the exact outcome distribution instead.

use rand::Rng;

use crate::bits::{BitString, IndexString, TargetString};
use crate::error::{Error, Result};
use crate::fourier::BiasVector;
use crate::statevector::{
    apply_gates, biased_qft_gates, build_noisy_example_state, measurement_distribution,
    perturbed_circuit_distribution, OneQubitGate, OutcomeDistribution, OutcomeSampler,
};

/// One realization of the label-noise bits `xi^i_{+1}`, `xi^i_{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoiseRealization {
    xi_plus: BitString,
    xi_minus: BitString,
}

impl NoiseRealization {
    pub fn new(xi_plus: BitString, xi_minus: BitString) -> Result<Self> {
        xi_minus.check_len(xi_plus.len())?;
        Ok(NoiseRealization { xi_plus, xi_minus })
    }

    pub fn zeros(n: usize) -> Self {
        NoiseRealization { xi_plus: BitString::zeros(n), xi_minus: BitString::zeros(n) }
    }

    /// Draws all `2n` bits independently, bit pair `i` with rate `eta^i`.
    pub fn sample<R: Rng + ?Sized>(eta: &NoiseParams, rng: &mut R) -> Self {
        let n = eta.len();
        let mut plus = BitString::zeros(n);
        let mut minus = BitString::zeros(n);
        for (i, &e) in eta.eta().iter().enumerate() {
            plus.set(i, rng.gen::<f64>() < e);
            minus.set(i, rng.gen::<f64>() < e);
        }
        NoiseRealization { xi_plus: plus, xi_minus: minus }
    }

    pub fn len(&self) -> usize {
        self.xi_plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi_plus.is_empty()
    }

    pub fn check_len(&self, expected: usize) -> Result<()> {
        self.xi_plus.check_len(expected)
    }

    pub fn xi_plus(&self) -> &BitString {
        &self.xi_plus
    }

    pub fn xi_minus(&self) -> &BitString {
        &self.xi_minus
    }

    /// `b_i = xi^i_{+1}`; only contributes a global sign to the amplitudes.
    pub fn agree_sign(&self) -> &BitString {
        &self.xi_plus
    }

    /// `y_i = 1` when the two noise bits of coordinate `i` differ.
    pub fn disagree(&self) -> BitString {
        self.xi_plus.xor(&self.xi_minus).expect("lengths checked at construction")
    }

    pub fn effective_string(&self, a: &TargetString) -> Result<TargetString> {
        a.xor(&self.disagree())
    }
}

/// Per-coordinate noise rates `eta^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseParams {
    eta: Vec<f64>,
}

impl NoiseParams {
    pub fn new(eta: Vec<f64>) -> Result<Self> {
        if let Some((i, e)) = eta.iter().enumerate().find(|(_, e)| !(0.0..=1.0).contains(*e)) {
            return Err(Error::InvalidNoise(format!("eta[{i}] = {e} lies outside [0, 1]")));
        }
        Ok(NoiseParams { eta })
    }

    pub fn uniform(n: usize, eta: f64) -> Result<Self> {
        Self::new(vec![eta; n])
    }

    pub fn zero(n: usize) -> Self {
        NoiseParams { eta: vec![0.0; n] }
    }

    pub fn len(&self) -> usize {
        self.eta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eta.is_empty()
    }

    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    /// Probability `2 eta^i (1 - eta^i)` that coordinate `i` of the effective
    /// string is flipped.
    pub fn flip_probability(&self, i: usize) -> f64 {
        2.0 * self.eta[i] * (1.0 - self.eta[i])
    }

    /// `rho = max_i 2 eta^i (1 - eta^i)`.
    pub fn rho(&self) -> f64 {
        (0..self.len()).map(|i| self.flip_probability(i)).fold(0.0, f64::max)
    }
}

/// Result of one subroutine run: the data bits on success, nothing on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubroutineOutcome {
    bits: Option<IndexString>,
}

impl SubroutineOutcome {
    pub fn failure() -> Self {
        SubroutineOutcome { bits: None }
    }

    pub fn success(bits: IndexString) -> Self {
        SubroutineOutcome { bits: Some(bits) }
    }

    pub fn is_success(&self) -> bool {
        self.bits.is_some()
    }

    pub fn bits(&self) -> Option<&IndexString> {
        self.bits.as_ref()
    }

    /// Decodes a dense measurement index (label qubit in bit 0).
    pub fn from_outcome_index(index: usize, n: usize) -> Self {
        if index & 1 == 1 {
            Self::success(BitString::from_u64((index >> 1) as u64, n))
        } else {
            Self::failure()
        }
    }
}

/// Anything that can run the subroutine on one fresh copy of an example state.
pub trait DrawSource {
    fn n(&self) -> usize;
    fn draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> SubroutineOutcome;
}

fn keep_probabilities(mu: &BiasVector) -> Vec<f64> {
    mu.as_slice().iter().map(|m| 1.0 - m * m).collect()
}

fn draw_factorized<R: Rng + ?Sized>(a: &TargetString, keep: &[f64], rng: &mut R) -> SubroutineOutcome {
    if !rng.gen::<bool>() {
        return SubroutineOutcome::failure();
    }
    let mut j = BitString::zeros(a.len());
    for (i, &k) in keep.iter().enumerate() {
        if a.get(i) && rng.gen::<f64>() < k {
            j.set(i, true);
        }
    }
    SubroutineOutcome::success(j)
}

/// Factorized sampler for clean example states.
#[derive(Clone, Debug)]
pub struct CleanSampler {
    a: TargetString,
    keep: Vec<f64>,
}

impl CleanSampler {
    pub fn new(a: &TargetString, mu: &BiasVector) -> Result<Self> {
        mu.check_len(a.len())?;
        mu.require_c_bounded()?;
        Ok(CleanSampler { a: a.clone(), keep: keep_probabilities(mu) })
    }
}

impl DrawSource for CleanSampler {
    fn n(&self) -> usize {
        self.a.len()
    }

    fn draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> SubroutineOutcome {
        draw_factorized(&self.a, &self.keep, rng)
    }
}

/// Factorized sampler for noisy example states; every copy carries a fresh
/// noise realization.
#[derive(Clone, Debug)]
pub struct NoisySampler {
    a: TargetString,
    keep: Vec<f64>,
    eta: NoiseParams,
}

impl NoisySampler {
    pub fn new(a: &TargetString, mu: &BiasVector, eta: &NoiseParams) -> Result<Self> {
        mu.check_len(a.len())?;
        if eta.len() != a.len() {
            return Err(Error::Dimension { expected: a.len(), found: eta.len() });
        }
        mu.require_c_bounded()?;
        Ok(NoisySampler { a: a.clone(), keep: keep_probabilities(mu), eta: eta.clone() })
    }

    pub fn draw_with_realization<R: Rng + ?Sized>(&self, rng: &mut R) -> (SubroutineOutcome, NoiseRealization) {
        let xi = NoiseRealization::sample(&self.eta, rng);
        let effective = xi.effective_string(&self.a).expect("lengths checked at construction");
        (draw_factorized(&effective, &self.keep, rng), xi)
    }
}

impl DrawSource for NoisySampler {
    fn n(&self) -> usize {
        self.a.len()
    }

    fn draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> SubroutineOutcome {
        self.draw_with_realization(rng).0
    }
}

/// Samples a precomputed dense outcome distribution.
#[derive(Clone, Debug)]
pub struct DenseSampler {
    n: usize,
    sampler: OutcomeSampler,
}

impl DenseSampler {
    pub fn new(dist: &OutcomeDistribution) -> Self {
        DenseSampler { n: dist.n(), sampler: dist.sampler() }
    }

    /// Exact circuit for `|psi_a>` with the transform built from `mu_tilde`.
    pub fn perturbed(a: &TargetString, mu: &BiasVector, mu_tilde: &BiasVector) -> Result<Self> {
        Ok(Self::new(&perturbed_circuit_distribution(a, mu, mu_tilde)?))
    }
}

impl DrawSource for DenseSampler {
    fn n(&self) -> usize {
        self.n
    }

    fn draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> SubroutineOutcome {
        SubroutineOutcome::from_outcome_index(self.sampler.sample(rng), self.n)
    }
}

/// Dense sampler for noisy states: each draw builds the noisy state for a
/// fresh realization and runs the full circuit.
#[derive(Clone, Debug)]
pub struct NoisyDenseSampler {
    a: TargetString,
    mu: BiasVector,
    eta: NoiseParams,
    gates: Vec<OneQubitGate>,
}

impl NoisyDenseSampler {
    pub fn new(a: &TargetString, mu: &BiasVector, eta: &NoiseParams) -> Result<Self> {
        mu.check_len(a.len())?;
        if eta.len() != a.len() {
            return Err(Error::Dimension { expected: a.len(), found: eta.len() });
        }
        mu.require_c_bounded()?;
        // fail early on capacity rather than inside draw()
        build_noisy_example_state(a, mu, &NoiseRealization::zeros(a.len()))?;
        Ok(NoisyDenseSampler { a: a.clone(), mu: mu.clone(), eta: eta.clone(), gates: biased_qft_gates(mu)? })
    }

    pub fn realization_distribution(&self, xi: &NoiseRealization) -> Result<OutcomeDistribution> {
        let state = build_noisy_example_state(&self.a, &self.mu, xi)?;
        measurement_distribution(&apply_gates(&state, &self.gates, &OneQubitGate::hadamard())?)
    }
}

impl DrawSource for NoisyDenseSampler {
    fn n(&self) -> usize {
        self.a.len()
    }

    fn draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> SubroutineOutcome {
        let xi = NoiseRealization::sample(&self.eta, rng);
        let dist = self.realization_distribution(&xi).expect("validated at construction");
        SubroutineOutcome::from_outcome_index(dist.sampler().sample(rng), self.a.len())
    }
}

pub fn draw_clean<R: Rng + ?Sized>(a: &TargetString, mu: &BiasVector, rng: &mut R) -> Result<SubroutineOutcome> {
    Ok(CleanSampler::new(a, mu)?.draw(rng))
}

pub fn draw_noisy<R: Rng + ?Sized>(
    a: &TargetString,
    mu: &BiasVector,
    eta: &NoiseParams,
    rng: &mut R,
) -> Result<SubroutineOutcome> {
    Ok(NoisySampler::new(a, mu, eta)?.draw(rng))
}

/// One draw from the dense perturbed circuit. Rebuilds the distribution on
/// every call; use [`DenseSampler::perturbed`] for repeated draws.
pub fn draw_perturbed<R: Rng + ?Sized>(
    a: &TargetString,
    mu: &BiasVector,
    mu_tilde: &BiasVector,
    rng: &mut R,
) -> Result<SubroutineOutcome> {
    Ok(DenseSampler::perturbed(a, mu, mu_tilde)?.draw(rng))
}

fn expand_product_law(n: usize, one_prob: &[f64]) -> Result<OutcomeDistribution> {
    if n > crate::fourier::BRUTE_FORCE_LIMIT {
        return Err(Error::Capacity { n, max: crate::fourier::BRUTE_FORCE_LIMIT });
    }
    let mut probs = vec![0.0; 1usize << (n + 1)];
    probs[0] = 0.5;
    for j in 0..(1u64 << n) {
        let p: f64 = one_prob
            .iter()
            .enumerate()
            .map(|(i, &q)| if (j >> i) & 1 == 1 { q } else { 1.0 - q })
            .product();
        probs[((j << 1) | 1) as usize] = 0.5 * p;
    }
    OutcomeDistribution::from_probs(n, probs)
}

/// Full outcome law of the factorized clean sampler, expanded over all
/// `2^(n+1)` outcomes. A failed run leaves the data register at all zeros.
pub fn analytic_distribution(a: &TargetString, mu: &BiasVector) -> Result<OutcomeDistribution> {
    mu.check_len(a.len())?;
    let one: Vec<f64> =
        (0..a.len()).map(|i| if a.get(i) { 1.0 - mu.get(i) * mu.get(i) } else { 0.0 }).collect();
    expand_product_law(a.len(), &one)
}

/// Noise-averaged outcome law of the factorized noisy sampler.
pub fn noisy_analytic_distribution(
    a: &TargetString,
    mu: &BiasVector,
    eta: &NoiseParams,
) -> Result<OutcomeDistribution> {
    mu.check_len(a.len())?;
    if eta.len() != a.len() {
        return Err(Error::Dimension { expected: a.len(), found: eta.len() });
    }
    let one: Vec<f64> = (0..a.len())
        .map(|i| {
            let rho = eta.flip_probability(i);
            let p_one = if a.get(i) { 1.0 - rho } else { rho };
            p_one * (1.0 - mu.get(i) * mu.get(i))
        })
        .collect();
    expand_product_law(a.len(), &one)
}

/// `P[exists i : a_i = 1 != j_i | success] = 1 - prod_{a_i = 1} (1 - mu_i^2)`.
pub fn false_zero_probability(a: &TargetString, mu: &BiasVector) -> Result<f64> {
    mu.check_len(a.len())?;
    Ok(1.0 - (0..a.len()).filter(|&i| a.get(i)).map(|i| 1.0 - mu.get(i) * mu.get(i)).product::<f64>())
}
