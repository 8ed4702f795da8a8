//! Closed-form sample-complexity calculators.
//!
//! Upper bounds return integer copy counts (as `f64`), lower bounds return
//! reals. A bound whose regime condition fails reports `regime_ok = false`
//! and an infinite value; a value is finite exactly when its regime holds.
//! Malformed parameters (n = 0, delta outside (0, 1), negative rho) are
//! errors rather than regime failures.

use std::f64::consts::{LN_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundQuery {
    pub n: usize,
    pub c: f64,
    pub delta: f64,
    /// Noise magnitude `max_i 2 eta_i (1 - eta_i)`; absent means 0.
    pub rho: Option<f64>,
    /// Summed gate error; absent means 0.
    pub epsilon: Option<f64>,
    /// Smallest coordinate bias, used only by the n-dependent quantum lower
    /// bound. When absent that bound's bias condition is not checked.
    pub mu_min: Option<f64>,
}

impl BoundQuery {
    pub fn new(n: usize, c: f64, delta: f64) -> Self {
        BoundQuery { n, c, delta, rho: None, epsilon: None, mu_min: None }
    }

    pub fn with_rho(mut self, rho: f64) -> Self {
        self.rho = Some(rho);
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = Some(epsilon);
        self
    }

    pub fn with_mu_min(mut self, mu_min: f64) -> Self {
        self.mu_min = Some(mu_min);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Config(format!("delta = {} must lie in (0, 1)", self.delta)));
        }
        if !(0.0..=1.0).contains(&self.c) {
            return Err(Error::Config(format!("c = {} must lie in [0, 1]", self.c)));
        }
        if let Some(rho) = self.rho {
            if !(0.0..=0.5).contains(&rho) {
                return Err(Error::Config(format!("rho = {rho} must lie in [0, 1/2]")));
            }
        }
        if let Some(eps) = self.epsilon {
            if !(eps >= 0.0 && eps.is_finite()) {
                return Err(Error::Config(format!("epsilon = {eps} must be a nonnegative number")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundResult {
    pub name: &'static str,
    pub value: f64,
    pub regime_ok: bool,
    pub formula_text: &'static str,
}

impl BoundResult {
    fn ok(kind: BoundKind, value: f64) -> Self {
        BoundResult { name: kind.name(), value, regime_ok: true, formula_text: kind.formula() }
    }

    fn violated(kind: BoundKind) -> Self {
        BoundResult { name: kind.name(), value: f64::INFINITY, regime_ok: false, formula_text: kind.formula() }
    }

    /// The copy count for an upper bound, or a regime error.
    pub fn copies(&self) -> Result<usize> {
        if self.regime_ok {
            Ok(self.value as usize)
        } else {
            Err(Error::Regime(format!("{} is outside its valid parameter regime", self.name)))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    OrAggregate,
    Majority,
    NoisyMajority,
    FaultyGateMajority,
    ClassicalLower,
    QuantumDeltaLower,
    QuantumNLower,
}

impl BoundKind {
    pub const ALL: [BoundKind; 7] = [
        BoundKind::OrAggregate,
        BoundKind::Majority,
        BoundKind::NoisyMajority,
        BoundKind::FaultyGateMajority,
        BoundKind::ClassicalLower,
        BoundKind::QuantumDeltaLower,
        BoundKind::QuantumNLower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::OrAggregate => "or_aggregate",
            BoundKind::Majority => "majority",
            BoundKind::NoisyMajority => "majority_noisy",
            BoundKind::FaultyGateMajority => "majority_faulty_gates",
            BoundKind::ClassicalLower => "lower_classical",
            BoundKind::QuantumDeltaLower => "lower_quantum_delta",
            BoundKind::QuantumNLower => "lower_quantum_n",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            BoundKind::OrAggregate => "ceil(max(log2(2/delta), (ln n + ln(2/delta)) / ln(1/(1-c+c^2/2))))",
            BoundKind::Majority => "ceil(4/(1-2n(1-c)^2)^2 * ln(2/delta))",
            BoundKind::NoisyMajority => "ceil(25*max((1-5n*rho)^-2, (1-4n(1-c)^2)^-2) * ln(4/delta))",
            BoundKind::FaultyGateMajority => "ceil(4*max((1-2eps)^-2, (1-2(n(1-c)^2+eps))^-2) * ln(2/delta))",
            BoundKind::ClassicalLower => "(1-delta)n - H2(delta)",
            BoundKind::QuantumDeltaLower => "(ln((2-c)/2))^-1 * ln(delta(1-delta))/2",
            BoundKind::QuantumNLower => "((1-delta)n - H2(delta)) / (H2(1/ln n) + (n+1)/ln n)",
        }
    }

    pub fn is_upper(self) -> bool {
        matches!(
            self,
            BoundKind::OrAggregate | BoundKind::Majority | BoundKind::NoisyMajority | BoundKind::FaultyGateMajority
        )
    }

    pub fn evaluate(self, q: &BoundQuery) -> Result<BoundResult> {
        match self {
            BoundKind::OrAggregate => m_upper_or_aggregate(q),
            BoundKind::Majority => m_upper_majority(q),
            BoundKind::NoisyMajority => m_upper_majority_noisy(q),
            BoundKind::FaultyGateMajority => m_upper_majority_faulty_gates(q),
            BoundKind::ClassicalLower => m_lower_classical(q),
            BoundKind::QuantumDeltaLower => m_lower_quantum_delta(q),
            BoundKind::QuantumNLower => m_lower_quantum_n(q),
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Accepts the canonical names plus the short aliases `thm51`, `thm53`,
/// `thm63`, `thm65`, `thm71`, `lemma73` and `thm74`.
impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.trim().to_ascii_lowercase().as_str() {
            "or_aggregate" | "thm51" => BoundKind::OrAggregate,
            "majority" | "thm53" => BoundKind::Majority,
            "majority_noisy" | "thm63" => BoundKind::NoisyMajority,
            "majority_faulty_gates" | "thm65" => BoundKind::FaultyGateMajority,
            "lower_classical" | "thm71" => BoundKind::ClassicalLower,
            "lower_quantum_delta" | "lemma73" => BoundKind::QuantumDeltaLower,
            "lower_quantum_n" | "thm74" => BoundKind::QuantumNLower,
            other => return Err(Error::Config(format!("unknown bound {other:?}"))),
        };
        Ok(kind)
    }
}

/// Binary entropy in bits, `H2(0) = H2(1) = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
}

/// `ln(1 / (1 - c + c^2/2))`, the per-copy decay rate of a missed coordinate
/// in the OR-aggregation argument.
pub fn or_aggregate_rate(c: f64) -> f64 {
    -(1.0 - c + c * c / 2.0).ln()
}

/// `gamma = (1/c^2) ((2 - c) * 3 / (2 sqrt(2) c) + 1)`.
pub fn gamma(c: f64) -> f64 {
    ((2.0 - c) * 3.0 / (2.0 * SQRT_2 * c) + 1.0) / (c * c)
}

/// Upper bound `2 sqrt(2) n gamma ||mu - mu_tilde||_1` on the operator-norm
/// distance between two biased transforms with c-bounded parameters.
pub fn gate_perturbation_bound(n: usize, c: f64, l1_distance: f64) -> f64 {
    2.0 * SQRT_2 * n as f64 * gamma(c) * l1_distance
}

fn ceil_copies(x: f64) -> f64 {
    x.ceil().max(1.0)
}

/// Two failure modes each held to `delta/2`: every run failing, and some
/// coordinate with `a_i = 1` never observed as 1.
pub fn m_upper_or_aggregate(q: &BoundQuery) -> Result<BoundResult> {
    q.validate()?;
    let kind = BoundKind::OrAggregate;
    if q.c <= 0.0 {
        return Ok(BoundResult::violated(kind));
    }
    let ln2d = (2.0 / q.delta).ln();
    let all_fail = ln2d / LN_2;
    let missed = ((q.n as f64).ln() + ln2d) / or_aggregate_rate(q.c);
    Ok(BoundResult::ok(kind, ceil_copies(all_fail.max(missed))))
}

/// Valid while `2n(1-c)^2 < 1`.
pub fn m_upper_majority(q: &BoundQuery) -> Result<BoundResult> {
    q.validate()?;
    let kind = BoundKind::Majority;
    let gap = 1.0 - 2.0 * q.n as f64 * (1.0 - q.c).powi(2);
    if gap <= 0.0 {
        return Ok(BoundResult::violated(kind));
    }
    Ok(BoundResult::ok(kind, ceil_copies(4.0 / (gap * gap) * (2.0 / q.delta).ln())))
}

/// Valid while `4n(1-c)^2 < 1` and `5n rho < 1`.
pub fn m_upper_majority_noisy(q: &BoundQuery) -> Result<BoundResult> {
    q.validate()?;
    let kind = BoundKind::NoisyMajority;
    let n = q.n as f64;
    let noise_gap = 1.0 - 5.0 * n * q.rho.unwrap_or(0.0);
    let bias_gap = 1.0 - 4.0 * n * (1.0 - q.c).powi(2);
    if noise_gap <= 0.0 || bias_gap <= 0.0 {
        return Ok(BoundResult::violated(kind));
    }
    let worst = (noise_gap * noise_gap).recip().max((bias_gap * bias_gap).recip());
    Ok(BoundResult::ok(kind, ceil_copies(25.0 * worst * (4.0 / q.delta).ln())))
}

/// Valid while `eps < 1/2` and `1 - 2(n(1-c)^2 + eps) > 0`. At `eps = 0`
/// this coincides with [`m_upper_majority`].
pub fn m_upper_majority_faulty_gates(q: &BoundQuery) -> Result<BoundResult> {
    q.validate()?;
    let kind = BoundKind::FaultyGateMajority;
    let eps = q.epsilon.unwrap_or(0.0);
    let gate_gap = 1.0 - 2.0 * eps;
    let gap = 1.0 - 2.0 * (q.n as f64 * (1.0 - q.c).powi(2) + eps);
    if gate_gap <= 0.0 || gap <= 0.0 {
        return Ok(BoundResult::violated(kind));
    }
    let worst = (gate_gap * gate_gap).recip().max((gap * gap).recip());
    Ok(BoundResult::ok(kind, ceil_copies(4.0 * worst * (2.0 / q.delta).ln())))
}

/// Information-theoretic floor for classical random examples.
pub fn m_lower_classical(q: &BoundQuery) -> Result<BoundResult> {
    q.validate()?;
    Ok(BoundResult::ok(
        BoundKind::ClassicalLower,
        (1.0 - q.delta) * q.n as f64 - binary_entropy(q.delta),
    ))
}

/// Distinguishing two strings that differ in one maximally biased
/// coordinate (`mu_i = 1 - c`). Needs `c > 0` and `delta < 1/2`.
pub fn m_lower_quantum_delta(q: &BoundQuery) -> Result<BoundResult> {
    q.validate()?;
    let kind = BoundKind::QuantumDeltaLower;
    if q.c <= 0.0 || q.delta >= 0.5 {
        return Ok(BoundResult::violated(kind));
    }
    let overlap_ln = ((2.0 - q.c) / 2.0).ln();
    Ok(BoundResult::ok(kind, 0.5 * (q.delta * (1.0 - q.delta)).ln() / overlap_ln))
}

/// Smallest bias `2(1 - 1/ln n)^(1/n) - 1` under which the n-dependent
/// quantum lower bound holds.
pub fn min_bias_for_lower_bound(n: usize) -> f64 {
    let n_f = n as f64;
    2.0 * (1.0 - 1.0 / n_f.ln()).powf(1.0 / n_f) - 1.0
}

/// Largest bias `1/sqrt(2n)` admitted by the majority-vote regime.
pub fn max_bias_for_majority(n: usize) -> f64 {
    1.0 / (2.0 * n as f64).sqrt()
}

/// Needs `n >= 3`; when `mu_min` is given, also `mu_min >= 2(1-1/ln n)^(1/n) - 1`.
pub fn m_lower_quantum_n(q: &BoundQuery) -> Result<BoundResult> {
    q.validate()?;
    let kind = BoundKind::QuantumNLower;
    if q.n < 3 {
        return Ok(BoundResult::violated(kind));
    }
    if let Some(mu_min) = q.mu_min {
        if mu_min < min_bias_for_lower_bound(q.n) {
            return Ok(BoundResult::violated(kind));
        }
    }
    let n = q.n as f64;
    let ln_n = n.ln();
    let numerator = (1.0 - q.delta) * n - binary_entropy(q.delta);
    let denominator = binary_entropy(1.0 / ln_n) + (n + 1.0) / ln_n;
    Ok(BoundResult::ok(kind, numerator / denominator))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Figure1Row {
    pub n: usize,
    pub max_bias_thm53: f64,
    pub min_bias_thm74: f64,
}

fn figure1_row(n: usize) -> Figure1Row {
    Figure1Row { n, max_bias_thm53: max_bias_for_majority(n), min_bias_thm74: min_bias_for_lower_bound(n) }
}

fn check_figure1_range(n_min: usize, n_max: usize) -> Result<()> {
    if n_min < 3 {
        return Err(Error::Config(format!("n_min = {n_min} must be at least 3")));
    }
    if n_max < n_min {
        return Err(Error::Config(format!("n_max = {n_max} is smaller than n_min = {n_min}")));
    }
    Ok(())
}

/// Both bias thresholds for every integer `n` in `[n_min, n_max]`.
pub fn figure1_curves(n_min: usize, n_max: usize) -> Result<Vec<Figure1Row>> {
    check_figure1_range(n_min, n_max)?;
    Ok((n_min..=n_max).map(figure1_row).collect())
}

/// Roughly `points` log-spaced integers in `[n_min, n_max]`, endpoints
/// included and duplicates removed.
pub fn figure1_curves_log(n_min: usize, n_max: usize, points: usize) -> Result<Vec<Figure1Row>> {
    check_figure1_range(n_min, n_max)?;
    if points < 2 || n_min == n_max {
        return Ok(vec![figure1_row(n_min)].into_iter().chain((n_max > n_min).then(|| figure1_row(n_max))).collect());
    }
    let (lo, hi) = ((n_min as f64).ln(), (n_max as f64).ln());
    let mut ns: Vec<usize> = (0..points)
        .map(|k| (lo + (hi - lo) * k as f64 / (points - 1) as f64).exp().round() as usize)
        .map(|n| n.clamp(n_min, n_max))
        .collect();
    ns.dedup();
    Ok(ns.into_iter().map(figure1_row).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, c: f64, delta: f64) -> BoundQuery {
        BoundQuery::new(n, c, delta)
    }

    #[test]
    fn or_aggregate_values() {
        assert_eq!(m_upper_or_aggregate(&q(8, 1.0, 0.05)).unwrap().value, 9.0);
        assert_eq!(m_upper_or_aggregate(&q(8, 0.5, 0.05)).unwrap().value, 13.0);
        assert!(!m_upper_or_aggregate(&q(8, 0.0, 0.05)).unwrap().regime_ok);
    }

    #[test]
    fn majority_values_and_boundary() {
        assert_eq!(m_upper_majority(&q(8, 0.95, 0.05)).unwrap().value, 17.0);
        let boundary = m_upper_majority(&q(8, 0.75, 0.05)).unwrap();
        assert!(!boundary.regime_ok && boundary.value.is_infinite());
        let unbiased = m_upper_majority(&q(50, 1.0, 0.05)).unwrap().value;
        assert_eq!(unbiased, (4.0 * 40f64.ln()).ceil());
    }

    #[test]
    fn noisy_majority_values() {
        let r = m_upper_majority_noisy(&q(6, 0.95, 0.05).with_rho(0.02)).unwrap();
        assert_eq!(r.value, 685.0);
        assert!(!m_upper_majority_noisy(&q(6, 0.95, 0.05).with_rho(1.0 / 30.0)).unwrap().regime_ok);
        // rho = 0 leaves only the bias branch
        let clean = m_upper_majority_noisy(&q(6, 0.95, 0.05)).unwrap().value;
        let gap: f64 = 1.0 - 24.0 * 0.05f64.powi(2);
        assert_eq!(clean, (25.0 / (gap * gap) * 80f64.ln()).ceil());
    }

    #[test]
    fn faulty_gate_majority() {
        let r = m_upper_majority_faulty_gates(&q(8, 0.97, 0.05).with_epsilon(0.1)).unwrap();
        assert!(r.regime_ok && r.value.is_finite());
        assert!(!m_upper_majority_faulty_gates(&q(8, 0.97, 0.05).with_epsilon(0.5)).unwrap().regime_ok);
        for c in [0.8, 0.9, 0.95, 1.0] {
            let faulty = m_upper_majority_faulty_gates(&q(8, c, 0.05).with_epsilon(0.0)).unwrap();
            let clean = m_upper_majority(&q(8, c, 0.05)).unwrap();
            assert_eq!((faulty.value, faulty.regime_ok), (clean.value, clean.regime_ok));
        }
    }

    #[test]
    fn lower_bound_values() {
        assert!((m_lower_classical(&q(100, 1.0, 0.05)).unwrap().value - 94.7136).abs() < 1e-3);
        assert!((m_lower_quantum_delta(&q(8, 1.0, 0.05)).unwrap().value - 2.1979).abs() < 1e-3);
        assert!((m_lower_quantum_n(&q(100, 1.0, 0.05)).unwrap().value - 4.174).abs() < 1e-3);
        assert!(!m_lower_quantum_n(&q(2, 1.0, 0.05)).unwrap().regime_ok);
        assert!(!m_lower_quantum_n(&q(100, 1.0, 0.05).with_mu_min(0.5)).unwrap().regime_ok);
        assert!(m_lower_quantum_n(&q(100, 1.0, 0.05).with_mu_min(0.999)).unwrap().regime_ok);
    }

    #[test]
    fn entropy_edges() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert!((binary_entropy(0.5) - 1.0).abs() < 1e-15);
        assert!((binary_entropy(0.05) - 0.286397).abs() < 1e-6);
    }

    #[test]
    fn invalid_queries_are_errors() {
        assert!(m_upper_majority(&q(0, 1.0, 0.05)).is_err());
        assert!(m_upper_majority(&q(4, 1.0, 1.0)).is_err());
        assert!(m_upper_majority(&q(4, 1.5, 0.1)).is_err());
        assert!(m_upper_majority_noisy(&q(4, 1.0, 0.1).with_rho(-0.1)).is_err());
    }

    #[test]
    fn names_and_aliases_parse() {
        for kind in BoundKind::ALL {
            assert_eq!(kind.name().parse::<BoundKind>().unwrap(), kind);
        }
        assert_eq!("thm53".parse::<BoundKind>().unwrap(), BoundKind::Majority);
        assert!("nope".parse::<BoundKind>().is_err());
    }

    #[test]
    fn figure1_rows() {
        let rows = figure1_curves(3, 10).unwrap();
        assert_eq!(rows.len(), 8);
        let eight = rows.iter().find(|r| r.n == 8).unwrap();
        assert!((eight.max_bias_thm53 - 0.25).abs() < 1e-15);
        assert!((eight.min_bias_thm74 - 0.8426232517).abs() < 1e-9);
        assert!(figure1_curves(2, 10).is_err());
        assert!(figure1_curves(10, 9).is_err());
        let log = figure1_curves_log(3, 10_000, 40).unwrap();
        assert_eq!(log.first().unwrap().n, 3);
        assert_eq!(log.last().unwrap().n, 10_000);
        assert!(log.windows(2).all(|w| w[0].n < w[1].n));
    }

    #[test]
    fn gamma_and_gate_bound() {
        // c = 1: gamma = 3/(2 sqrt 2) + 1
        assert!((gamma(1.0) - (3.0 / (2.0 * SQRT_2) + 1.0)).abs() < 1e-15);
        assert_eq!(gate_perturbation_bound(4, 0.5, 0.0), 0.0);
        assert!(gamma(0.1) > gamma(0.5));
    }
}
