//! Experiment configuration: a flat TOML document.
//!
//! ```toml
//! n = 8
//! target = "ones"          # bit string, "ones", "zeros" or "random"
//! mu = "boundary"          # "zero", "random", "boundary" or [0.1, -0.2, ...]
//! c = 0.5
//! algorithm = "or_aggregate"
//! m_from = "or_aggregate"  # or m = 13
//! trials = 2000
//! delta = 0.05
//! seed = 7
//! ```
//!
//! Random targets and random or boundary biases are drawn per trial from the
//! trial's own stream.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::{BitString, TargetString};
use crate::bounds::{BoundKind, BoundQuery};
use crate::error::{Error, Result};
use crate::fourier::BiasVector;
use crate::sampler::NoiseParams;
use crate::statevector::{perturbed_qft, DEFAULT_CAPACITY};

pub const DEFAULT_TRIALS: usize = 2000;
pub const DEFAULT_DELTA: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Analytic,
    Statevector,
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Engine::Analytic),
            "statevector" => Ok(Engine::Statevector),
            other => Err(Error::Config(format!("unknown engine {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    OrAggregate,
    Majority,
    MajorityNoisy,
    ClassicalBaseline,
    UnknownDistribution,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::OrAggregate => "or_aggregate",
            Algorithm::Majority => "majority",
            Algorithm::MajorityNoisy => "majority_noisy",
            Algorithm::ClassicalBaseline => "classical_baseline",
            Algorithm::UnknownDistribution => "unknown_distribution",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "or_aggregate" => Ok(Algorithm::OrAggregate),
            "majority" => Ok(Algorithm::Majority),
            "majority_noisy" => Ok(Algorithm::MajorityNoisy),
            "classical_baseline" => Ok(Algorithm::ClassicalBaseline),
            "unknown_distribution" => Ok(Algorithm::UnknownDistribution),
            other => Err(Error::Config(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TargetSpec {
    Fixed(TargetString),
    Ones,
    Zeros,
    Random,
}

impl TargetSpec {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(TargetSpec::Random),
            "ones" => Ok(TargetSpec::Ones),
            "zeros" => Ok(TargetSpec::Zeros),
            bits => Ok(TargetSpec::Fixed(bits.parse()?)),
        }
    }

    pub fn resolve<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> TargetString {
        match self {
            TargetSpec::Fixed(a) => a.clone(),
            TargetSpec::Ones => BitString::ones(n),
            TargetSpec::Zeros => BitString::zeros(n),
            TargetSpec::Random => BitString::random(n, rng),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MuValue {
    Named(String),
    List(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum MuSpec {
    Zero,
    Random,
    Boundary,
    Fixed(Vec<f64>),
}

impl MuSpec {
    pub fn from_value(v: &MuValue) -> Result<Self> {
        match v {
            MuValue::List(list) => Ok(MuSpec::Fixed(list.clone())),
            MuValue::Named(s) => Self::parse(s),
        }
    }

    /// A concrete vector of length `n`. Random and boundary draws need `c`;
    /// a fixed list uses `c` as its witness when given.
    pub fn draw<R: Rng + ?Sized>(&self, n: usize, c: Option<f64>, rng: &mut R) -> Result<BiasVector> {
        let need_c = || c.ok_or_else(|| Error::Config("random or boundary mu requires c".into()));
        let mu = match self {
            MuSpec::Zero => BiasVector::zero(n),
            MuSpec::Random => BiasVector::random(n, need_c()?, rng)?,
            MuSpec::Boundary => BiasVector::boundary(n, need_c()?, rng)?,
            MuSpec::Fixed(list) => match c {
                Some(c) => BiasVector::with_bound(list.clone(), c)?,
                None => BiasVector::new(list.clone())?,
            },
        };
        mu.check_len(n)?;
        Ok(mu)
    }

    /// `zero`, `random`, `boundary` or a comma-separated list.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "zero" => Ok(MuSpec::Zero),
            "random" => Ok(MuSpec::Random),
            "boundary" => Ok(MuSpec::Boundary),
            list => Ok(MuSpec::Fixed(parse_f64_list(list)?)),
        }
    }
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Config(format!("cannot parse {t:?} as a number"))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EtaValue {
    Scalar(f64),
    List(Vec<f64>),
}

/// The flat document as written by the user.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    #[serde(default = "default_target")]
    pub target: String,
    #[serde(default = "default_mu")]
    pub mu: MuValue,
    pub c: Option<f64>,
    #[serde(default = "default_engine")]
    pub engine: Engine,
    pub algorithm: Algorithm,
    pub m: Option<usize>,
    pub m_from: Option<String>,
    pub eta: Option<EtaValue>,
    pub mu_tilde: Option<Vec<f64>>,
    pub epsilon: Option<f64>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default)]
    pub seed: u64,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub force: bool,
    #[serde(default)]
    pub record_timing: bool,
}

fn default_target() -> String {
    "random".into()
}

fn default_mu() -> MuValue {
    MuValue::Named("zero".into())
}

fn default_engine() -> Engine {
    Engine::Analytic
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

fn default_delta() -> f64 {
    DEFAULT_DELTA
}

impl ExperimentConfig {
    pub fn new(n: usize, algorithm: Algorithm) -> Self {
        ExperimentConfig {
            n,
            target: default_target(),
            mu: default_mu(),
            c: None,
            engine: default_engine(),
            algorithm,
            m: None,
            m_from: None,
            eta: None,
            mu_tilde: None,
            epsilon: None,
            trials: DEFAULT_TRIALS,
            delta: DEFAULT_DELTA,
            seed: 0,
            out: None,
            force: false,
            record_timing: false,
        }
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Checks every parameter and regime, producing a runnable plan.
    pub fn resolve(&self) -> Result<ExperimentPlan> {
        ExperimentPlan::from_config(self)
    }
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct ExperimentPlan {
    pub n: usize,
    pub target: TargetSpec,
    pub mu: MuSpec,
    /// Boundedness constant used for per-trial draws and regime checks.
    pub c: f64,
    pub engine: Engine,
    pub algorithm: Algorithm,
    pub m: usize,
    pub eta: Option<NoiseParams>,
    pub mu_tilde: Option<BiasVector>,
    pub epsilon: Option<f64>,
    pub trials: usize,
    pub delta: f64,
    pub seed: u64,
    pub record_timing: bool,
    pub warnings: Vec<String>,
}

impl ExperimentPlan {
    fn from_config(cfg: &ExperimentConfig) -> Result<Self> {
        let n = cfg.n;
        if n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if cfg.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if !(cfg.delta > 0.0 && cfg.delta < 1.0) {
            return Err(Error::Config(format!("delta = {} must lie in (0, 1)", cfg.delta)));
        }
        let target = TargetSpec::parse(&cfg.target)?;
        if let TargetSpec::Fixed(a) = &target {
            a.check_len(n)?;
        }
        let mu = MuSpec::from_value(&cfg.mu)?;
        let c = match &mu {
            MuSpec::Zero => cfg.c.unwrap_or(1.0),
            MuSpec::Random | MuSpec::Boundary => {
                cfg.c.ok_or_else(|| Error::Config("random or boundary mu requires c".into()))?
            }
            MuSpec::Fixed(list) => {
                if list.len() != n {
                    return Err(Error::Dimension { expected: n, found: list.len() });
                }
                match cfg.c {
                    Some(c) => BiasVector::with_bound(list.clone(), c)?.c_bound(),
                    None => BiasVector::new(list.clone())?.c_bound(),
                }
            }
        };
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::InvalidBias(format!("boundedness constant c = {c} must lie in (0, 1]")));
        }
        let eta = match &cfg.eta {
            None => None,
            Some(EtaValue::Scalar(e)) => Some(NoiseParams::uniform(n, *e)?),
            Some(EtaValue::List(list)) => {
                if list.len() != n {
                    return Err(Error::Dimension { expected: n, found: list.len() });
                }
                Some(NoiseParams::new(list.clone())?)
            }
        };
        if cfg.algorithm == Algorithm::MajorityNoisy && eta.is_none() {
            return Err(Error::Config("majority_noisy requires eta".into()));
        }
        let mu_tilde = match &cfg.mu_tilde {
            None => None,
            Some(list) => {
                if cfg.algorithm != Algorithm::Majority {
                    return Err(Error::Config("mu_tilde is only used with algorithm = majority".into()));
                }
                if list.len() != n {
                    return Err(Error::Dimension { expected: n, found: list.len() });
                }
                Some(BiasVector::new(list.clone())?)
            }
        };
        let epsilon = match (cfg.epsilon, &mu_tilde, &mu) {
            (Some(e), _, _) => Some(e),
            (None, Some(t), MuSpec::Zero) => Some(perturbed_qft(&BiasVector::zero(n), t)?.epsilon),
            (None, Some(t), MuSpec::Fixed(list)) => Some(perturbed_qft(&BiasVector::new(list.clone())?, t)?.epsilon),
            (None, Some(_), _) => {
                return Err(Error::Config("mu_tilde needs a fixed mu or an explicit epsilon".into()));
            }
            (None, None, _) => None,
        };
        let dense = cfg.engine == Engine::Statevector
            || mu_tilde.is_some()
            || cfg.algorithm == Algorithm::UnknownDistribution;
        if dense && cfg.algorithm != Algorithm::ClassicalBaseline && n > DEFAULT_CAPACITY {
            return Err(Error::Capacity { n, max: DEFAULT_CAPACITY });
        }

        let mut query = BoundQuery::new(n, c, cfg.delta);
        query.rho = eta.as_ref().map(NoiseParams::rho);
        query.epsilon = epsilon;

        let mut warnings = Vec::new();
        let m = match (cfg.m, &cfg.m_from) {
            (Some(_), Some(_)) => return Err(Error::Config("give either m or m_from, not both".into())),
            (None, None) => return Err(Error::Config("one of m or m_from is required".into())),
            (Some(m), None) => m,
            (None, Some(name)) => {
                let kind: BoundKind = name.parse()?;
                if !kind.is_upper() {
                    return Err(Error::Config(format!("{kind} is a lower bound and cannot size an experiment")));
                }
                kind.evaluate(&query)?.copies()?
            }
        };
        if m == 0 {
            return Err(Error::Config("m must be at least 1".into()));
        }

        if let Some(kind) = regime_bound(cfg.algorithm, mu_tilde.is_some()) {
            let result = kind.evaluate(&query)?;
            if !result.regime_ok {
                let msg = format!(
                    "{} at n = {n}, c = {c} is outside the regime of {} ({})",
                    cfg.algorithm,
                    kind.name(),
                    kind.formula()
                );
                if cfg.force {
                    warnings.push(msg);
                } else {
                    return Err(Error::Regime(msg + "; pass force to run anyway"));
                }
            }
        }

        Ok(ExperimentPlan {
            n,
            target,
            mu,
            c,
            engine: cfg.engine,
            algorithm: cfg.algorithm,
            m,
            eta,
            mu_tilde,
            epsilon,
            trials: cfg.trials,
            delta: cfg.delta,
            seed: cfg.seed,
            record_timing: cfg.record_timing,
            warnings,
        })
    }

    /// The bias vector of one trial.
    pub fn draw_mu<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<BiasVector> {
        self.mu.draw(self.n, Some(self.c), rng)
    }
}

/// The bound whose regime an algorithm relies on.
fn regime_bound(algorithm: Algorithm, perturbed: bool) -> Option<BoundKind> {
    match algorithm {
        Algorithm::OrAggregate => Some(BoundKind::OrAggregate),
        Algorithm::Majority if perturbed => Some(BoundKind::FaultyGateMajority),
        Algorithm::Majority | Algorithm::UnknownDistribution => Some(BoundKind::Majority),
        Algorithm::MajorityNoisy => Some(BoundKind::NoisyMajority),
        Algorithm::ClassicalBaseline => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_document() {
        let cfg = ExperimentConfig::from_toml_str(
            r#"
            n = 8
            target = "ones"
            mu = "boundary"
            c = 0.5
            algorithm = "or_aggregate"
            m_from = "thm51"
            trials = 100
            seed = 3
            "#,
        )
        .unwrap();
        let plan = cfg.resolve().unwrap();
        assert_eq!(plan.m, 13);
        assert_eq!(plan.target, TargetSpec::Ones);
        assert_eq!(plan.trials, 100);
    }

    #[test]
    fn explicit_lists() {
        let cfg = ExperimentConfig::from_toml_str(
            "n = 2\nmu = [0.6, 0.0]\neta = [0.01, 0.02]\nalgorithm = \"majority_noisy\"\nm = 50\nforce = true\n",
        )
        .unwrap();
        let plan = cfg.resolve().unwrap();
        assert!((plan.c - 0.4).abs() < 1e-12);
        assert_eq!(plan.eta.unwrap().eta(), &[0.01, 0.02]);
        assert_eq!(plan.warnings.len(), 1);
    }

    #[test]
    fn rejects_bad_documents() {
        let base = ExperimentConfig::new(8, Algorithm::Majority);
        let mut cfg = base.clone();
        cfg.m = Some(10);
        cfg.trials = 0;
        assert!(matches!(cfg.resolve(), Err(Error::Config(_))));

        let mut cfg = base.clone();
        cfg.m_from = Some("majority".into());
        cfg.mu = MuValue::Named("random".into());
        cfg.c = Some(0.75);
        assert!(matches!(cfg.resolve(), Err(Error::Regime(_))));

        let mut cfg = base.clone();
        cfg.m = Some(10);
        cfg.mu = MuValue::Named("random".into());
        cfg.c = Some(0.75);
        assert!(matches!(cfg.resolve(), Err(Error::Regime(_))));
        cfg.force = true;
        assert!(cfg.resolve().is_ok());

        let mut cfg = base.clone();
        cfg.n = 25;
        cfg.m = Some(10);
        cfg.engine = Engine::Statevector;
        assert!(matches!(cfg.resolve(), Err(Error::Capacity { .. })));

        assert!(ExperimentConfig::from_toml_str("n = 3\nalgorithm = \"majority\"\nbogus = 1\n").is_err());
    }

    #[test]
    fn toml_round_trip() {
        let mut cfg = ExperimentConfig::new(4, Algorithm::MajorityNoisy);
        cfg.eta = Some(EtaValue::Scalar(0.01));
        cfg.m = Some(7);
        cfg.mu = MuValue::List(vec![0.1, 0.2, 0.0, -0.1]);
        let text = cfg.to_toml_string().unwrap();
        assert_eq!(ExperimentConfig::from_toml_str(&text).unwrap(), cfg);
    }
}
