//! Biased Fourier analysis on the cube `{-1,1}^n`.
//!
//! Everything here is exact classical arithmetic: the product distribution
//! `D_mu`, the orthonormal basis `phi_{mu,j}`, the parity targets `f^(a)`, and
//! the Fourier coefficients of `g^(a) = (-1)^{f^(a)}` both in closed form and
//! by brute-force summation over the cube.

use rand::Rng;

use crate::bits::{BitString, IndexString, PmOneVector, TargetString};
use crate::error::{Error, Result};

/// Largest dimension accepted by the `2^n` brute-force routines.
pub const BRUTE_FORCE_LIMIT: usize = 20;

const BOUND_TOLERANCE: f64 = 1e-12;

/// Bias vector `mu` together with a boundedness witness `c`, meaning every
/// entry lies in `[-1 + c, 1 - c]`.
///
/// A witness of `0` is allowed for fully biased coordinates (`|mu_i| = 1`);
/// such vectors describe a valid distribution but have no biased Fourier
/// transform.
#[derive(Clone, Debug, PartialEq)]
pub struct BiasVector {
    mu: Vec<f64>,
    c_bound: f64,
}

impl BiasVector {
    /// Wraps `mu`, using the tightest witness `1 - max |mu_i|`.
    pub fn new(mu: Vec<f64>) -> Result<Self> {
        if mu.is_empty() {
            return Err(Error::InvalidBias("bias vector must have at least one entry".into()));
        }
        for (i, &m) in mu.iter().enumerate() {
            if !m.is_finite() || m.abs() > 1.0 {
                return Err(Error::InvalidBias(format!("mu[{i}] = {m} lies outside [-1, 1]")));
            }
        }
        let max_abs = mu.iter().fold(0.0f64, |acc, m| acc.max(m.abs()));
        Ok(BiasVector { mu, c_bound: 1.0 - max_abs })
    }

    /// Wraps `mu` with an explicit witness `c in (0, 1]`.
    pub fn with_bound(mu: Vec<f64>, c: f64) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::InvalidBias(format!("boundedness constant c = {c} must lie in (0, 1]")));
        }
        let v = Self::new(mu)?;
        if let Some((i, m)) = v.mu.iter().enumerate().find(|(_, m)| m.abs() > 1.0 - c + BOUND_TOLERANCE) {
            return Err(Error::InvalidBias(format!("mu[{i}] = {m} is not {c}-bounded")));
        }
        Ok(BiasVector { mu: v.mu, c_bound: c })
    }

    pub fn zero(n: usize) -> Self {
        BiasVector { mu: vec![0.0; n], c_bound: 1.0 }
    }

    /// Uniform draw from `[-1 + c, 1 - c]^n`.
    pub fn random<R: Rng + ?Sized>(n: usize, c: f64, rng: &mut R) -> Result<Self> {
        let half = 1.0 - c;
        let mu = (0..n)
            .map(|_| if half > 0.0 { rng.gen_range(-half..=half) } else { 0.0 })
            .collect();
        Self::with_bound(mu, c)
    }

    /// Every coordinate at the edge of the allowed range, `mu_i = +-(1 - c)`
    /// with random signs.
    pub fn boundary<R: Rng + ?Sized>(n: usize, c: f64, rng: &mut R) -> Result<Self> {
        let mu = (0..n).map(|_| if rng.gen::<bool>() { 1.0 - c } else { c - 1.0 }).collect();
        Self::with_bound(mu, c)
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.mu
    }

    pub fn get(&self, i: usize) -> f64 {
        self.mu[i]
    }

    pub fn c_bound(&self) -> f64 {
        self.c_bound
    }

    pub fn is_c_bounded(&self) -> bool {
        self.c_bound > 0.0
    }

    pub fn require_c_bounded(&self) -> Result<()> {
        if self.is_c_bounded() {
            Ok(())
        } else {
            Err(Error::InvalidBias("bias vector has a fully biased coordinate".into()))
        }
    }

    pub fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(Error::Dimension { expected, found: self.len() })
        }
    }

    pub fn l1_distance(&self, other: &BiasVector) -> Result<f64> {
        other.check_len(self.len())?;
        Ok(self.mu.iter().zip(&other.mu).map(|(a, b)| (a - b).abs()).sum())
    }
}

/// `D_mu(x) = prod_i (1 + x_i mu_i) / 2`.
pub fn product_weight(mu: &BiasVector, x: &PmOneVector) -> Result<f64> {
    mu.check_len(x.len())?;
    Ok(mu
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &m)| (1.0 + f64::from(x.entry(i)) * m) / 2.0)
        .product())
}

/// `D_mu` at the point whose `-1` entries are the set bits of `mask`.
pub(crate) fn weight_of_mask(mu: &[f64], mask: u64) -> f64 {
    mu.iter()
        .enumerate()
        .map(|(i, &m)| if (mask >> i) & 1 == 1 { (1.0 - m) / 2.0 } else { (1.0 + m) / 2.0 })
        .product()
}

/// `phi_{mu,j}(x) = prod_{i : j_i = 1} (x_i - mu_i) / sqrt(1 - mu_i^2)`.
pub fn basis_phi(mu: &BiasVector, j: &IndexString, x: &PmOneVector) -> Result<f64> {
    mu.check_len(j.len())?;
    mu.check_len(x.len())?;
    let mut value = 1.0;
    for i in (0..j.len()).filter(|&i| j.get(i)) {
        let m = mu.get(i);
        if m.abs() >= 1.0 {
            return Err(Error::SingularBasis { index: i });
        }
        value *= (f64::from(x.entry(i)) - m) / (1.0 - m * m).sqrt();
    }
    Ok(value)
}

/// `f^(a)(x) = sum_i a_i (1 - x_i) / 2 mod 2`.
pub fn linear_fn(a: &TargetString, x: &PmOneVector) -> Result<bool> {
    a.dot(x.bits())
}

/// One-coordinate factor of the closed-form coefficient:
/// `1 - j` when `a = 0`, and `(1 - j) mu + j sqrt(1 - mu^2)` when `a = 1`.
pub fn coordinate_coefficient(a_i: bool, mu_i: f64, j_i: bool) -> f64 {
    match (a_i, j_i) {
        (false, false) => 1.0,
        (false, true) => 0.0,
        (true, false) => mu_i,
        (true, true) => (1.0 - mu_i * mu_i).sqrt(),
    }
}

/// Closed-form biased Fourier coefficient of `g^(a)` at `j`, a product of
/// per-coordinate factors.
pub fn fourier_coeff_closed(a: &TargetString, mu: &BiasVector, j: &IndexString) -> Result<f64> {
    mu.check_len(a.len())?;
    j.check_len(a.len())?;
    Ok((0..a.len()).map(|i| coordinate_coefficient(a.get(i), mu.get(i), j.get(i))).product())
}

/// `E_{D_mu}[(-1)^{f^(a)(x)} phi_{mu,j}(x)]` by summing over all `2^n` points.
pub fn fourier_coeff_bruteforce(a: &TargetString, mu: &BiasVector, j: &IndexString) -> Result<f64> {
    let n = a.len();
    mu.check_len(n)?;
    j.check_len(n)?;
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::Capacity { n, max: BRUTE_FORCE_LIMIT });
    }
    let mut total = 0.0;
    for mask in 0..(1u64 << n) {
        let x = PmOneVector::from_mask(mask, n);
        let g = if linear_fn(a, &x)? { -1.0 } else { 1.0 };
        total += product_weight(mu, &x)? * g * basis_phi(mu, j, &x)?;
    }
    Ok(total)
}

/// Probability that the data register reads `j` given that the label qubit
/// reads 1: `prod_{a_l=0} (1 - j_l) * prod_{a_l=1} ((1 - j_l) mu_l^2 + j_l (1 - mu_l^2))`.
pub fn conditional_outcome_prob(a: &TargetString, mu: &BiasVector, j: &IndexString) -> Result<f64> {
    mu.check_len(a.len())?;
    j.check_len(a.len())?;
    let mut p = 1.0;
    for l in 0..a.len() {
        let jl = if j.get(l) { 1.0 } else { 0.0 };
        let m2 = mu.get(l) * mu.get(l);
        p *= if a.get(l) { (1.0 - jl) * m2 + jl * (1.0 - m2) } else { 1.0 - jl };
    }
    Ok(p)
}

/// Convenience: all `2^n` index strings for small `n`.
pub fn all_strings(n: usize) -> impl Iterator<Item = BitString> {
    assert!(n <= BRUTE_FORCE_LIMIT, "enumeration limited to {BRUTE_FORCE_LIMIT} bits");
    (0..(1u64 << n)).map(move |m| BitString::from_u64(m, n))
}
