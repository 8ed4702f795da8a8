//! Dense reference simulator for quantum example states and the biased
//! Fourier-sampling circuit.
//!
//! Basis convention: the label qubit is bit 0 of an amplitude index and data
//! coordinate `i` (0-based) is bit `i + 1`. A data bit of 0 encodes `x_i = +1`.
//! After measurement the same index reads as the outcome `j_1 .. j_n j_{n+1}`
//! with `j_{n+1}` in bit 0.

use std::io::Write;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::bits::{IndexString, TargetString};
use crate::error::{Error, Result};
use crate::fourier::{weight_of_mask, BiasVector};
use crate::sampler::NoiseRealization;

/// Default number of data qubits the dense engine accepts (16 MiB of amplitudes).
pub const DEFAULT_CAPACITY: usize = 20;

const HARD_CAPACITY: usize = 30;
const PARALLEL_THRESHOLD: usize = 1 << 14;
const NORM_TOLERANCE: f64 = 1e-10;
const UNITARY_TOLERANCE: f64 = 1e-10;
const CLAMP_TOLERANCE: f64 = 1e-12;
const INTEGRITY_TOLERANCE: f64 = 1e-6;

pub fn amplitude_index(x_mask: u64, label: bool) -> usize {
    ((x_mask << 1) | u64::from(label)) as usize
}

fn check_capacity(n: usize, capacity: usize) -> Result<()> {
    let max = capacity.min(HARD_CAPACITY);
    if n > max {
        Err(Error::Capacity { n, max })
    } else {
        Ok(())
    }
}

/// Pure state on `n` data qubits plus one label qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_capacity(n, HARD_CAPACITY)?;
        let expected = 1usize << (n + 1);
        if amps.len() != expected {
            return Err(Error::Dimension { expected, found: amps.len() });
        }
        let state = StateVector { n, amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Integrity { norm });
        }
        Ok(state)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << (n + 1)];
        let len = amps.len();
        *amps.get_mut(index).ok_or(Error::Dimension { expected: len, found: index })? = Complex64::new(1.0, 0.0);
        Self::from_amplitudes(n, amps)
    }

    /// Number of data qubits.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Debug dump as `index,re,im` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["index", "re", "im"])?;
        for (i, a) in self.amps.iter().enumerate() {
            w.write_record([i.to_string(), a.re.to_string(), a.im.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn build_labelled_state<F>(mu: &BiasVector, capacity: usize, label: F) -> Result<StateVector>
where
    F: Fn(u64) -> bool,
{
    let n = mu.len();
    check_capacity(n, capacity)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << (n + 1)];
    for x in 0..(1u64 << n) {
        let w = weight_of_mask(mu.as_slice(), x);
        amps[amplitude_index(x, label(x))] = Complex64::new(w.sqrt(), 0.0);
    }
    StateVector::from_amplitudes(n, amps)
}

fn single_word(bits: &crate::bits::BitString) -> u64 {
    bits.to_u64().expect("dense engine strings fit in one word")
}

/// `|psi_a> = sum_x sqrt(D_mu(x)) |x, f^(a)(x)>` with the default capacity.
pub fn build_example_state(a: &TargetString, mu: &BiasVector) -> Result<StateVector> {
    build_example_state_with_capacity(a, mu, DEFAULT_CAPACITY)
}

pub fn build_example_state_with_capacity(
    a: &TargetString,
    mu: &BiasVector,
    capacity: usize,
) -> Result<StateVector> {
    mu.check_len(a.len())?;
    check_capacity(a.len(), capacity)?;
    let a_mask = single_word(a);
    build_labelled_state(mu, capacity, |x| (a_mask & x).count_ones() % 2 == 1)
}

/// Example state whose label at `x` is `f^(a)(x) + sum_i xi^i_{x_i} mod 2`.
pub fn build_noisy_example_state(
    a: &TargetString,
    mu: &BiasVector,
    xi: &NoiseRealization,
) -> Result<StateVector> {
    mu.check_len(a.len())?;
    xi.check_len(a.len())?;
    check_capacity(a.len(), DEFAULT_CAPACITY)?;
    let a_mask = single_word(a);
    let plus = single_word(xi.xi_plus());
    let minus = single_word(xi.xi_minus());
    let full = if a.len() == 64 { u64::MAX } else { (1u64 << a.len()) - 1 };
    build_labelled_state(mu, DEFAULT_CAPACITY, |x| {
        let clean = (a_mask & x).count_ones();
        let noise = (minus & x).count_ones() + (plus & !x & full).count_ones();
        (clean + noise) % 2 == 1
    })
}

/// A 2x2 complex matrix acting on one qubit; `m[row][col]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneQubitGate {
    m: [[Complex64; 2]; 2],
}

impl OneQubitGate {
    /// Wraps a matrix without checking unitarity; circuit application checks.
    pub fn from_matrix(m: [[Complex64; 2]; 2]) -> Self {
        OneQubitGate { m }
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        let c = |v: f64| Complex64::new(v, 0.0);
        OneQubitGate { m: [[c(m[0][0]), c(m[0][1])], [c(m[1][0]), c(m[1][1])]] }
    }

    pub fn identity() -> Self {
        Self::from_real([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real([[h, h], [h, -h]])
    }

    /// One-qubit biased Fourier transform: entry `(j, x)` is
    /// `sqrt(D_mu(x)) phi_{mu,j}(x)` with column 0 for `x = +1`.
    pub fn biased_hadamard(mu: f64) -> Result<Self> {
        if !mu.is_finite() || mu.abs() >= 1.0 {
            return Err(Error::SingularGate { mu });
        }
        let p = ((1.0 + mu) / 2.0).sqrt();
        let q = ((1.0 - mu) / 2.0).sqrt();
        Ok(Self::from_real([[p, q], [q, -p]]))
    }

    pub fn matrix(&self) -> &[[Complex64; 2]; 2] {
        &self.m
    }

    /// Largest entry of `|G^dagger G - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    s += self.m[k][r].conj() * self.m[k][c];
                }
                if r == c {
                    s -= 1.0;
                }
                worst = worst.max(s.norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// Operator 2-norm of `self - other`, the largest singular value of the
    /// difference.
    pub fn op_norm_distance(&self, other: &OneQubitGate) -> f64 {
        let d = [
            [self.m[0][0] - other.m[0][0], self.m[0][1] - other.m[0][1]],
            [self.m[1][0] - other.m[1][0], self.m[1][1] - other.m[1][1]],
        ];
        let frob: f64 = d.iter().flatten().map(|z| z.norm_sqr()).sum();
        let det = (d[0][0] * d[1][1] - d[0][1] * d[1][0]).norm_sqr();
        let disc = (frob * frob - 4.0 * det).max(0.0);
        ((frob + disc.sqrt()) / 2.0).max(0.0).sqrt()
    }
}

fn apply_gate_in_place(amps: &mut [Complex64], bit: usize, gate: &OneQubitGate) {
    let stride = 1usize << bit;
    let [[g00, g01], [g10, g11]] = gate.m;
    let update = move |lo: &mut Complex64, hi: &mut Complex64| {
        let (u, v) = (*lo, *hi);
        *lo = g00 * u + g01 * v;
        *hi = g10 * u + g11 * v;
    };
    if amps.len() < PARALLEL_THRESHOLD {
        for chunk in amps.chunks_mut(2 * stride) {
            let (lo, hi) = chunk.split_at_mut(stride);
            lo.iter_mut().zip(hi.iter_mut()).for_each(|(l, h)| update(l, h));
        }
    } else {
        amps.par_chunks_mut(2 * stride).for_each(|chunk| {
            let (lo, hi) = chunk.split_at_mut(stride);
            lo.par_iter_mut()
                .zip(hi.par_iter_mut())
                .with_min_len(4096)
                .for_each(|(l, h)| update(l, h));
        });
    }
}

/// Applies `data_gates[i]` to data qubit `i` and `label_gate` to the label
/// qubit, returning a fresh state.
pub fn apply_gates(
    state: &StateVector,
    data_gates: &[OneQubitGate],
    label_gate: &OneQubitGate,
) -> Result<StateVector> {
    if data_gates.len() != state.n {
        return Err(Error::Dimension { expected: state.n, found: data_gates.len() });
    }
    for g in data_gates.iter().chain(std::iter::once(label_gate)) {
        let deviation = g.unitarity_deviation();
        if deviation > UNITARY_TOLERANCE {
            return Err(Error::NotUnitary { deviation });
        }
    }
    let mut amps = state.amps.clone();
    apply_gate_in_place(&mut amps, 0, label_gate);
    for (i, g) in data_gates.iter().enumerate() {
        apply_gate_in_place(&mut amps, i + 1, g);
    }
    let out = StateVector { n: state.n, amps };
    let norm = out.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::Integrity { norm });
    }
    Ok(out)
}

pub fn biased_qft_gates(mu: &BiasVector) -> Result<Vec<OneQubitGate>> {
    mu.as_slice().iter().map(|&m| OneQubitGate::biased_hadamard(m)).collect()
}

/// `(H_{mu_1} x ... x H_{mu_n} x label_gate) |state>`.
pub fn apply_circuit(state: &StateVector, mu: &BiasVector, label_gate: &OneQubitGate) -> Result<StateVector> {
    mu.check_len(state.n)?;
    apply_gates(state, &biased_qft_gates(mu)?, label_gate)
}

/// Probabilities of the computational-basis outcomes, indexed like amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution {
    n: usize,
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    /// Validates and clamps raw probabilities: tiny negatives become 0,
    /// larger violations or a total away from 1 are integrity errors.
    pub fn from_probs(n: usize, mut probs: Vec<f64>) -> Result<Self> {
        let expected = 1usize << (n + 1);
        if probs.len() != expected {
            return Err(Error::Dimension { expected, found: probs.len() });
        }
        for p in probs.iter_mut() {
            if !p.is_finite() || *p < -CLAMP_TOLERANCE {
                return Err(Error::Integrity { norm: *p });
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Integrity { norm: total });
        }
        Ok(OutcomeDistribution { n, probs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, index: usize) -> f64 {
        self.probs[index]
    }

    /// Joint probability of data outcome `j` together with label outcome `label`.
    pub fn joint(&self, j: &IndexString, label: bool) -> f64 {
        self.probs[amplitude_index(single_word(j), label)]
    }

    /// `P[j_{n+1} = 1]`.
    pub fn label_one_probability(&self) -> f64 {
        self.probs.iter().skip(1).step_by(2).sum()
    }

    /// `P[j_1..j_n = j | j_{n+1} = 1]`, indexed by the data mask of `j`.
    pub fn success_conditional(&self) -> Vec<f64> {
        let p1 = self.label_one_probability();
        self.probs.iter().skip(1).step_by(2).map(|p| p / p1).collect()
    }

    pub fn total_variation(&self, other: &OutcomeDistribution) -> Result<f64> {
        if other.probs.len() != self.probs.len() {
            return Err(Error::Dimension { expected: self.probs.len(), found: other.probs.len() });
        }
        Ok(0.5 * self.probs.iter().zip(&other.probs).map(|(a, b)| (a - b).abs()).sum::<f64>())
    }

    pub fn max_abs_deviation(&self, other: &OutcomeDistribution) -> Result<f64> {
        if other.probs.len() != self.probs.len() {
            return Err(Error::Dimension { expected: self.probs.len(), found: other.probs.len() });
        }
        Ok(self.probs.iter().zip(&other.probs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    pub fn sampler(&self) -> OutcomeSampler {
        let mut acc = 0.0;
        let cdf = self
            .probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        OutcomeSampler { cdf }
    }
}

/// Inverse-CDF sampler over outcome indices.
#[derive(Clone, Debug)]
pub struct OutcomeSampler {
    cdf: Vec<f64>,
}

impl OutcomeSampler {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cdf.last().expect("non-empty distribution");
        let u = rng.gen::<f64>() * total;
        let idx = self.cdf.partition_point(|&c| c <= u);
        // Roundoff can leave u at the very top; fall back to the last outcome
        // with positive mass.
        if idx < self.cdf.len() {
            idx
        } else {
            let last = self.cdf.len() - 1;
            (0..=last).rev().find(|&i| i == 0 || self.cdf[i] > self.cdf[i - 1]).unwrap_or(last)
        }
    }
}

/// Computational-basis measurement statistics of `state`. Roundoff drift in
/// the total is renormalized away; drift beyond `1e-6` is an integrity error.
pub fn measurement_distribution(state: &StateVector) -> Result<OutcomeDistribution> {
    let mut probs: Vec<f64> = state.amps.iter().map(|a| a.norm_sqr()).collect();
    let total: f64 = probs.iter().sum();
    if !total.is_finite() || (total - 1.0).abs() > INTEGRITY_TOLERANCE {
        return Err(Error::Integrity { norm: total });
    }
    for p in probs.iter_mut() {
        *p /= total;
    }
    OutcomeDistribution::from_probs(state.n, probs)
}

/// `<s1|s2>`.
pub fn state_inner_product(s1: &StateVector, s2: &StateVector) -> Result<Complex64> {
    if s1.amps.len() != s2.amps.len() {
        return Err(Error::Dimension { expected: s1.amps.len(), found: s2.amps.len() });
    }
    Ok(s1.amps.iter().zip(&s2.amps).map(|(a, b)| a.conj() * b).sum())
}

/// Output distribution of the biased sampling circuit on `|psi_a>`.
pub fn circuit_distribution(a: &TargetString, mu: &BiasVector) -> Result<OutcomeDistribution> {
    mu.require_c_bounded()?;
    let state = build_example_state(a, mu)?;
    measurement_distribution(&apply_circuit(&state, mu, &OneQubitGate::hadamard())?)
}

/// Gates of a biased transform built from `mu_tilde`, with the summed
/// per-qubit operator-norm error against the exact transform for `mu`.
#[derive(Clone, Debug)]
pub struct PerturbedQft {
    pub gates: Vec<OneQubitGate>,
    pub per_qubit: Vec<f64>,
    pub epsilon: f64,
}

pub fn perturbed_qft(mu: &BiasVector, mu_tilde: &BiasVector) -> Result<PerturbedQft> {
    mu_tilde.check_len(mu.len())?;
    mu.require_c_bounded()?;
    mu_tilde.require_c_bounded()?;
    let exact = biased_qft_gates(mu)?;
    let gates = biased_qft_gates(mu_tilde)?;
    let per_qubit: Vec<f64> = exact.iter().zip(&gates).map(|(e, g)| e.op_norm_distance(g)).collect();
    let epsilon = per_qubit.iter().sum();
    Ok(PerturbedQft { gates, per_qubit, epsilon })
}

/// Output distribution when the transform is built from `mu_tilde` while the
/// example state follows `mu`.
pub fn perturbed_circuit_distribution(
    a: &TargetString,
    mu: &BiasVector,
    mu_tilde: &BiasVector,
) -> Result<OutcomeDistribution> {
    let qft = perturbed_qft(mu, mu_tilde)?;
    let state = build_example_state(a, mu)?;
    measurement_distribution(&apply_gates(&state, &qft.gates, &OneQubitGate::hadamard())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitString;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn single_qubit_example_state() {
        let s = build_example_state(&bits("0"), &BiasVector::zero(1)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let re: Vec<f64> = s.amplitudes().iter().map(|a| a.re).collect();
        assert_eq!(re, vec![h, 0.0, h, 0.0]);
        let one = build_example_state(&bits("1"), &BiasVector::zero(1)).unwrap();
        let re: Vec<f64> = one.amplitudes().iter().map(|a| a.re).collect();
        assert_eq!(re, vec![h, 0.0, 0.0, h]);
    }

    #[test]
    fn capacity_is_enforced() {
        let n = 5;
        let err = build_example_state_with_capacity(&BitString::zeros(n), &BiasVector::zero(n), 4).unwrap_err();
        assert!(matches!(err, Error::Capacity { n: 5, max: 4 }));
    }

    #[test]
    fn biased_hadamard_entries() {
        let g = OneQubitGate::biased_hadamard(0.0).unwrap();
        let h = OneQubitGate::hadamard();
        for r in 0..2 {
            for c in 0..2 {
                assert!((g.matrix()[r][c] - h.matrix()[r][c]).norm() < 1e-15);
            }
        }
        let g = OneQubitGate::biased_hadamard(0.6).unwrap();
        let m = g.matrix();
        assert!((m[0][0].re - 0.8f64.sqrt()).abs() < 1e-15);
        assert!((m[0][1].re - 0.2f64.sqrt()).abs() < 1e-15);
        assert!((m[1][0].re - 0.2f64.sqrt()).abs() < 1e-15);
        assert!((m[1][1].re + 0.8f64.sqrt()).abs() < 1e-15);
        assert!(g.is_unitary(1e-12));
        assert!(matches!(OneQubitGate::biased_hadamard(1.0), Err(Error::SingularGate { .. })));
        assert!(OneQubitGate::biased_hadamard(-1.2).is_err());
    }

    #[test]
    fn gate_matches_definition() {
        // Entry (j, x) equals sqrt(D(x)) phi_j(x).
        for &mu in &[-0.9, -0.3, 0.0, 0.45, 0.99] {
            let g = OneQubitGate::biased_hadamard(mu).unwrap();
            let v = BiasVector::new(vec![mu]).unwrap();
            for (col, sign) in [(0usize, 1i8), (1, -1)] {
                let x = crate::bits::PmOneVector::from_signs(&[sign]).unwrap();
                let w = crate::fourier::product_weight(&v, &x).unwrap().sqrt();
                for row in 0..2 {
                    let j = BitString::from_bools(&[row == 1]);
                    let phi = crate::fourier::basis_phi(&v, &j, &x).unwrap();
                    assert!((g.matrix()[row][col].re - w * phi).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn identity_circuit_is_noop() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mu = BiasVector::random(3, 0.2, &mut rng).unwrap();
        let s = build_example_state(&bits("101"), &mu).unwrap();
        let id = OneQubitGate::identity();
        let out = apply_gates(&s, &[id; 3], &id).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn non_unitary_gate_is_rejected() {
        let s = build_example_state(&bits("1"), &BiasVector::zero(1)).unwrap();
        let bad = OneQubitGate::from_real([[1.0, 1.0], [0.0, 1.0]]);
        let err = apply_circuit(&s, &BiasVector::zero(1), &bad).unwrap_err();
        assert!(matches!(err, Error::NotUnitary { .. }));
        let err = apply_gates(&s, &[], &OneQubitGate::hadamard()).unwrap_err();
        assert!(matches!(err, Error::Dimension { .. }));
    }

    #[test]
    fn basis_state_is_point_mass() {
        let s = StateVector::basis(2, 5).unwrap();
        let d = measurement_distribution(&s).unwrap();
        for (i, &p) in d.probs().iter().enumerate() {
            assert_eq!(p, if i == 5 { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn biased_spot_distribution() {
        let mu = BiasVector::new(vec![0.6, 0.0]).unwrap();
        let d = circuit_distribution(&bits("11"), &mu).unwrap();
        assert!((d.label_one_probability() - 0.5).abs() < 1e-12);
        let cond = d.success_conditional();
        // indexed by data mask: bit 0 is j_1, bit 1 is j_2
        assert!((cond[0b11] - 0.64).abs() < 1e-12);
        assert!((cond[0b10] - 0.36).abs() < 1e-12);
        assert!(cond[0b01].abs() < 1e-12);
        assert!(cond[0b00].abs() < 1e-12);
    }

    #[test]
    fn integrity_errors() {
        let amps = vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(matches!(StateVector::from_amplitudes(0, amps), Err(Error::Integrity { .. })));
        assert!(OutcomeDistribution::from_probs(0, vec![1.1, -0.1]).is_err());
        let d = OutcomeDistribution::from_probs(0, vec![1.0 + 5e-13, -5e-13]).unwrap();
        assert_eq!(d.prob(1), 0.0);
    }

    #[test]
    fn op_norm_distance_known_values() {
        let h = OneQubitGate::hadamard();
        let id = OneQubitGate::identity();
        assert!(h.op_norm_distance(&h).abs() < 1e-15);
        // H - I is real symmetric, so maximising over real unit vectors suffices.
        let best = (0..20000)
            .map(|k| {
                let t = k as f64 / 20000.0 * std::f64::consts::PI;
                let (c, s) = (t.cos(), t.sin());
                let m = h.matrix();
                let a = (m[0][0].re - 1.0) * c + m[0][1].re * s;
                let b = m[1][0].re * c + (m[1][1].re - 1.0) * s;
                (a * a + b * b).sqrt()
            })
            .fold(0.0, f64::max);
        assert!((h.op_norm_distance(&id) - best).abs() < 1e-6);
    }

    #[test]
    fn perturbed_equal_is_exact() {
        let mu = BiasVector::new(vec![0.2, -0.3]).unwrap();
        let p = perturbed_qft(&mu, &mu).unwrap();
        assert_eq!(p.epsilon, 0.0);
    }

    #[test]
    fn csv_dump() {
        let s = build_example_state(&bits("0"), &BiasVector::zero(1)).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("index,re,im\n0,0.7071067811865476,0\n1,0,0\n"));
    }

    #[test]
    fn sampler_draws_only_supported_outcomes() {
        let d = OutcomeDistribution::from_probs(1, vec![0.0, 0.5, 0.0, 0.5]).unwrap();
        let s = d.sampler();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let k = s.sample(&mut rng);
            assert!(k == 1 || k == 3);
        }
    }
}
