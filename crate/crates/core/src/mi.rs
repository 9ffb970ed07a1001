//! Mutual information of discrete inputs in complex Gaussian noise.
//!
//! All estimators share one structure: the outer sums over transmitted
//! symbols are evaluated exactly and only the expectation over the noise
//! `Z ~ CN(0, 1)` is approximated, either by Monte Carlo or by a tensor
//! Gauss–Hermite rule. Likelihood ratios are evaluated in the log domain
//! with the maximum exponent subtracted first.
//!
//! Monte Carlo noise is drawn from a stream keyed by `(seed, k, l)` where
//! `k` and `l` are the transmitted symbol indices. Draws therefore do not
//! depend on the gains, so evaluations at different channel or rotation
//! parameters share their random numbers.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constellation::Constellation;
use crate::quadrature::ComplexGaussianRule;
use crate::{Error, Result, C64};

/// Largest joint alphabet accepted by [`mi_joint_direct`].
pub const MAX_DIRECT_HYPOTHESES: usize = 4096;

const SINGLE_STREAM_TAG: u64 = 0x5349_4e47_4c45; // "SINGLE"

/// Expectation backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[serde(alias = "mc")]
    MonteCarlo,
    #[serde(alias = "quad")]
    GaussHermite,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::MonteCarlo => "monte-carlo",
            Method::GaussHermite => "gauss-hermite",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Numerical realization of the noise expectation.
///
/// For Monte Carlo, `samples` is the noise-draw budget of one expectation.
/// It is spread evenly over the transmitted symbol tuples (stratified
/// sampling), with at least two draws per tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EstimatorConfig {
    pub method: Method,
    pub samples: usize,
    pub quadrature_order: usize,
    pub seed: u64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            method: Method::GaussHermite,
            samples: 20_000,
            quadrature_order: 24,
            seed: 1,
        }
    }
}

impl EstimatorConfig {
    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        Self {
            method: Method::MonteCarlo,
            samples,
            seed,
            ..Self::default()
        }
    }

    pub fn quadrature(order: usize) -> Self {
        Self {
            method: Method::GaussHermite,
            quadrature_order: order,
            ..Self::default()
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        match self.method {
            Method::MonteCarlo if self.samples < 1000 => Err(Error::InvalidConfig(format!(
                "Monte Carlo needs at least 1000 samples, got {}",
                self.samples
            ))),
            Method::GaussHermite if !(8..=64).contains(&self.quadrature_order) => Err(Error::InvalidConfig(format!(
                "quadrature order must lie in [8, 64], got {}",
                self.quadrature_order
            ))),
            _ => Ok(()),
        }
    }

    /// Nominal resolution: the sample budget for Monte Carlo, the order per
    /// real dimension for quadrature.
    pub fn resolution(&self) -> usize {
        match self.method {
            Method::MonteCarlo => self.samples,
            Method::GaussHermite => self.quadrature_order,
        }
    }
}

/// A mutual-information value in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MIEstimate {
    pub bits: f64,
    /// Standard error of `bits`; zero for quadrature.
    pub std_error: f64,
    pub method: Method,
    /// Noise evaluations per symbol tuple times the number of tuples.
    pub samples_used: usize,
}

/// One receiver: `Y = gain_a·X_A + gain_b·X_B + Z`, `Z ~ CN(0, 1)`.
///
/// Gains include `sqrt(P)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReceiverModel {
    pub gain_a: C64,
    pub alphabet_a: Constellation,
    pub gain_b: C64,
    pub alphabet_b: Option<Constellation>,
}

impl ReceiverModel {
    /// Interference-free receiver.
    pub fn single(alphabet: Constellation, gain: C64) -> Self {
        Self {
            gain_a: gain,
            alphabet_a: alphabet,
            gain_b: C64::new(0.0, 0.0),
            alphabet_b: None,
        }
    }

    pub fn with_interferer(alphabet_a: Constellation, gain_a: C64, alphabet_b: Constellation, gain_b: C64) -> Self {
        Self {
            gain_a,
            alphabet_a,
            gain_b,
            alphabet_b: Some(alphabet_b),
        }
    }

    /// Symmetric receiver in normalized form: desired gain `sqrt(P)`,
    /// interferer gain `sqrt(P)·|h|·e^{iρ}`, same alphabet for both users.
    pub fn symmetric(alphabet: &Constellation, power: f64, h_abs: f64, rho: f64) -> Self {
        let g = power.sqrt();
        Self::with_interferer(
            alphabet.clone(),
            C64::new(g, 0.0),
            alphabet.clone(),
            C64::from_polar(g * h_abs, rho),
        )
    }

    fn interferer(&self) -> Result<&Constellation> {
        self.alphabet_b
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("receiver model has no interfering alphabet".into()))
    }

    fn check_gains(&self) -> Result<()> {
        check_gain(self.gain_a)?;
        if self.alphabet_b.is_some() {
            check_gain(self.gain_b)?;
        }
        Ok(())
    }
}

fn check_gain(g: C64) -> Result<()> {
    if g.re.is_finite() && g.im.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("non-finite gain {g}")))
    }
}

/// `I(Y; X)` for `Y = gain·X + Z` with `X` uniform on `alphabet`.
///
/// This is also the conditional term `I(Y; X_A | X_B)`: knowing the
/// interferer removes it from the observation.
pub fn mi_single(alphabet: &Constellation, gain: C64, cfg: &EstimatorConfig) -> Result<MIEstimate> {
    cfg.validate()?;
    check_gain(gain)?;
    let m = alphabet.size();
    let diffs: Vec<Vec<C64>> = alphabet
        .points()
        .iter()
        .map(|&xk| alphabet.points().iter().map(|&xj| gain * (xk - xj)).collect())
        .collect();
    let noise = NoiseSource::new(cfg)?;
    let stats = per_stream(m, |k| {
        let d = &diffs[k];
        let mut buf = vec![0.0; m];
        noise.expect(k as u64, SINGLE_STREAM_TAG, m, |z| {
            let zz = z.norm_sqr();
            for (e, dj) in buf.iter_mut().zip(d) {
                *e = zz - (dj + z).norm_sqr();
            }
            log_sum_exp(&buf)
        })
    });
    Ok(finish((m as f64).log2(), &stats, cfg.method))
}

/// `I(Y; X_B)` with `X_A` unknown at the decoder.
pub fn mi_cross(model: &ReceiverModel, cfg: &EstimatorConfig) -> Result<MIEstimate> {
    cfg.validate()?;
    model.check_gains()?;
    let alpha_a = &model.alphabet_a;
    let alpha_b = model.interferer()?;
    let (ma, mb) = (alpha_a.size(), alpha_b.size());
    let da = scaled_differences(alpha_a, model.gain_a);
    let db = scaled_differences(alpha_b, model.gain_b);
    let noise = NoiseSource::new(cfg)?;
    let streams = ma * mb;
    let stats = per_stream(streams, |s| {
        let (k, l) = (s / mb, s % mb);
        let (dak, dbl) = (&da[k], &db[l]);
        let mut num = vec![0.0; ma * mb];
        let mut den = vec![0.0; ma];
        noise.expect(k as u64, l as u64, streams, |z| {
            for (j, &d) in dak.iter().enumerate() {
                let u = d + z;
                den[j] = -u.norm_sqr();
                for (i, &e) in dbl.iter().enumerate() {
                    num[j * mb + i] = -(u + e).norm_sqr();
                }
            }
            log_sum_exp(&num) - log_sum_exp(&den)
        })
    });
    Ok(finish((mb as f64).log2(), &stats, cfg.method))
}

/// `I(Y; X_A, X_B)` via the chain rule: `I(Y; X_B) + I(Y; X_A | X_B)`.
pub fn mi_joint(model: &ReceiverModel, cfg: &EstimatorConfig) -> Result<MIEstimate> {
    let cross = mi_cross(model, cfg)?;
    let cond = mi_single(&model.alphabet_a, model.gain_a, cfg)?;
    Ok(MIEstimate {
        bits: cross.bits + cond.bits,
        std_error: cross.std_error.hypot(cond.std_error),
        method: cfg.method,
        samples_used: cross.samples_used + cond.samples_used,
    })
}

/// `I(Y; X_A, X_B)` by brute force over the `M_A·M_B` joint hypotheses.
///
/// Coinciding superposition points are kept as separate hypotheses, so a
/// collision shows up as lost information. Refuses more than
/// [`MAX_DIRECT_HYPOTHESES`] hypotheses.
pub fn mi_joint_direct(model: &ReceiverModel, cfg: &EstimatorConfig) -> Result<MIEstimate> {
    cfg.validate()?;
    model.check_gains()?;
    let alpha_b = model.interferer()?;
    let mb = alpha_b.size();
    let hyp = model.alphabet_a.size() * mb;
    if hyp > MAX_DIRECT_HYPOTHESES {
        return Err(Error::InvalidInput(format!(
            "{hyp} joint hypotheses exceed the brute-force limit of {MAX_DIRECT_HYPOTHESES}"
        )));
    }
    let joint: Vec<C64> = model
        .alphabet_a
        .points()
        .iter()
        .flat_map(|&xa| {
            alpha_b
                .points()
                .iter()
                .map(move |&xb| model.gain_a * xa + model.gain_b * xb)
        })
        .collect();
    let noise = NoiseSource::new(cfg)?;
    let stats = per_stream(hyp, |s| {
        let (k, l) = (s / mb, s % mb);
        let sj = joint[s];
        let mut buf = vec![0.0; hyp];
        noise.expect(k as u64, l as u64, hyp, |z| {
            let zz = z.norm_sqr();
            for (e, &t) in buf.iter_mut().zip(&joint) {
                *e = zz - (sj - t + z).norm_sqr();
            }
            log_sum_exp(&buf)
        })
    });
    Ok(finish((hyp as f64).log2(), &stats, cfg.method))
}

/// Mixes a base seed with indices into an independent 64-bit seed.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut h = splitmix64(base ^ 0x6a09_e667_f3bc_c908);
    for &p in parts {
        h = splitmix64(h ^ splitmix64(p.wrapping_add(0x9e37_79b9_7f4a_7c15)));
    }
    h
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Natural-log sum of exponentials, in bits.
fn log_sum_exp(exponents: &[f64]) -> f64 {
    let max = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = exponents.iter().map(|&e| (e - max).exp()).sum();
    (max + sum.ln()) / std::f64::consts::LN_2
}

fn scaled_differences(c: &Constellation, gain: C64) -> Vec<Vec<C64>> {
    c.points()
        .iter()
        .map(|&x| c.points().iter().map(|&y| gain * (x - y)).collect())
        .collect()
}

/// Mean of the log term for one symbol tuple and the variance of that mean.
#[derive(Debug, Clone, Copy)]
struct StreamStat {
    mean: f64,
    var_of_mean: f64,
    evaluations: usize,
}

fn per_stream<F>(streams: usize, f: F) -> Vec<StreamStat>
where
    F: Fn(usize) -> StreamStat + Sync + Send,
{
    // Collected in index order, so the final reduction does not depend on
    // scheduling.
    (0..streams).into_par_iter().map(f).collect()
}

fn finish(log2_size: f64, stats: &[StreamStat], method: Method) -> MIEstimate {
    let n = stats.len() as f64;
    let mean: f64 = stats.iter().map(|s| s.mean).sum::<f64>() / n;
    let var: f64 = stats.iter().map(|s| s.var_of_mean).sum::<f64>() / (n * n);
    MIEstimate {
        bits: (log2_size - mean).max(0.0),
        std_error: var.sqrt(),
        method,
        samples_used: stats.iter().map(|s| s.evaluations).sum(),
    }
}

enum NoiseSource {
    Quadrature(Arc<ComplexGaussianRule>),
    MonteCarlo { seed: u64, budget: usize },
}

impl NoiseSource {
    fn new(cfg: &EstimatorConfig) -> Result<Self> {
        Ok(match cfg.method {
            Method::GaussHermite => NoiseSource::Quadrature(cached_rule(cfg.quadrature_order)?),
            Method::MonteCarlo => NoiseSource::MonteCarlo {
                seed: cfg.seed,
                budget: cfg.samples,
            },
        })
    }

    /// Expectation of `f(Z)` for the stream of symbol tuple `(k, l)`.
    fn expect(&self, k: u64, l: u64, streams: usize, mut f: impl FnMut(C64) -> f64) -> StreamStat {
        match self {
            NoiseSource::Quadrature(rule) => {
                let mean = rule.nodes().iter().zip(rule.weights()).map(|(&z, &w)| w * f(z)).sum();
                StreamStat {
                    mean,
                    var_of_mean: 0.0,
                    evaluations: rule.len(),
                }
            }
            NoiseSource::MonteCarlo { seed, budget } => {
                let draws = budget.div_ceil(streams).max(2);
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(*seed, &[k, l]));
                let scale = std::f64::consts::FRAC_1_SQRT_2;
                // Welford accumulation.
                let (mut mean, mut m2) = (0.0, 0.0);
                for i in 0..draws {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    let v = f(C64::new(re * scale, im * scale));
                    let delta = v - mean;
                    mean += delta / (i + 1) as f64;
                    m2 += delta * (v - mean);
                }
                let var = m2 / (draws - 1) as f64;
                StreamStat {
                    mean,
                    var_of_mean: var / draws as f64,
                    evaluations: draws,
                }
            }
        }
    }
}

fn cached_rule(order: usize) -> Result<Arc<ComplexGaussianRule>> {
    static RULES: OnceLock<Mutex<HashMap<usize, Arc<ComplexGaussianRule>>>> = OnceLock::new();
    let rules = RULES.get_or_init(Default::default);
    let mut guard = rules.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(rule) = guard.get(&order) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(ComplexGaussianRule::new(order)?);
    guard.insert(order, rule.clone());
    Ok(rule)
}
