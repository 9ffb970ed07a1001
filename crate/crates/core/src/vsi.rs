//! Very-strong-interference threshold.
//!
//! The sum-rate constraints stop mattering once each receiver can decode the
//! interferer at least as well as its own signal, i.e. once the cross terms
//! reach the single-user rate. `h_VSI` is the smallest `|h|` where this
//! happens; for Gaussian inputs it is `sqrt(1+P)`.

use serde::{Deserialize, Serialize};

use crate::constellation::{Constellation, InputAlphabet};
use crate::mi::{mi_single, EstimatorConfig};
use crate::region::{gaussian_cross, ChannelConfig, Topology};
use crate::rotation::{objective_at, optimize_rotation, ObjectiveKind, RotationSearch};
use crate::{Error, Result, C64};

/// Number of probe points used to check that the condition is monotone.
const VERIFY_POINTS: usize = 8;
/// Bracket doublings attempted when the condition fails at the initial upper end.
const MAX_EXPANSIONS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdQuery {
    pub topology: Topology,
    /// Linear power.
    pub power: f64,
    pub alphabet: InputAlphabet,
    pub psi: f64,
    pub rotation_enabled: bool,
    pub tolerance_h: f64,
    pub mi_tolerance: f64,
    pub search: RotationSearch,
}

impl ThresholdQuery {
    /// 2-IC query with default tolerances (`1e-2` in `|h|`, `0.01` bits).
    pub fn new(power: f64, alphabet: InputAlphabet, psi: f64, rotation_enabled: bool) -> Self {
        Self {
            topology: Topology::TwoIc,
            power,
            alphabet,
            psi,
            rotation_enabled,
            tolerance_h: 1e-2,
            mi_tolerance: 0.01,
            search: RotationSearch::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.power.is_finite() && self.power > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "power must be positive, got {}",
                self.power
            )));
        }
        if !(self.tolerance_h.is_finite() && self.tolerance_h > 0.0) {
            return Err(Error::InvalidConfig("tolerance_h must be positive".into()));
        }
        if !(self.mi_tolerance.is_finite() && self.mi_tolerance >= 0.0) {
            return Err(Error::InvalidConfig("mi_tolerance must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdMethod {
    ClosedForm,
    Bisection,
    /// Bisection disagreed with the monotonicity probes; linear scan used.
    Scan,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub h_vsi: f64,
    /// The condition is false at `bracket.0` (unless it equals 1) and true at `bracket.1`.
    pub bracket: (f64, f64),
    pub evaluations: usize,
    pub gaussian_reference: f64,
    pub method: ThresholdMethod,
}

/// `sqrt(1 + P)`.
pub fn gaussian_vsi(power: f64) -> f64 {
    (1.0 + power).sqrt()
}

/// Whether the channel is in the very-strong-interference regime.
///
/// True iff the (optionally rotation-optimized) cross objective reaches the
/// single-user rate minus `mi_tolerance`. With `rotation`, `ch.phi` is
/// ignored and the objective is maximized over the rotation grid. Gaussian
/// inputs use the closed forms without tolerance.
pub fn vsi_condition(
    ch: &ChannelConfig,
    alphabet: &InputAlphabet,
    cfg: &EstimatorConfig,
    rotation: Option<&RotationSearch>,
    mi_tolerance: f64,
) -> Result<bool> {
    ch.validate()?;
    match alphabet {
        InputAlphabet::Gaussian => {
            let single = (1.0 + ch.power).log2();
            Ok(gaussian_cross(ch.h_abs, ch.power) >= single - 1e-12)
        }
        InputAlphabet::Finite(c) => finite_condition(ch, c, cfg, rotation, mi_tolerance),
    }
}

fn finite_condition(
    ch: &ChannelConfig,
    alphabet: &Constellation,
    cfg: &EstimatorConfig,
    rotation: Option<&RotationSearch>,
    mi_tolerance: f64,
) -> Result<bool> {
    let kind = ObjectiveKind::for_topology(ch.topology);
    let cross = match rotation {
        Some(search) => optimize_rotation(ch, alphabet, kind, search, cfg)?.objective_bits,
        None => objective_at(ch, alphabet, kind, cfg)?.bits(),
    };
    let single = mi_single(alphabet, C64::new(ch.power.sqrt(), 0.0), cfg)?.bits;
    Ok(cross >= single - mi_tolerance)
}

/// Locates `h_VSI` by bisection over `[1, sqrt(1+P) + 0.5]`.
///
/// Gaussian inputs return the closed form directly.
pub fn find_threshold(q: &ThresholdQuery, cfg: &EstimatorConfig) -> Result<ThresholdResult> {
    q.validate()?;
    let reference = gaussian_vsi(q.power);
    if q.alphabet == InputAlphabet::Gaussian {
        return Ok(ThresholdResult {
            h_vsi: reference,
            bracket: (reference, reference),
            evaluations: 0,
            gaussian_reference: reference,
            method: ThresholdMethod::ClosedForm,
        });
    }
    let base = ChannelConfig::new(q.topology, 1.0, q.psi, 0.0, q.power)?;
    let rotation = q.rotation_enabled.then_some(&q.search);
    let mut result = locate_threshold(reference + 0.5, q.tolerance_h, |h| {
        vsi_condition(&base.with_h_abs(h), &q.alphabet, cfg, rotation, q.mi_tolerance)
    })?;
    result.gaussian_reference = reference;
    Ok(result)
}

/// Bisection for the smallest `h >= 1` where `condition` holds.
///
/// The upper end is doubled up to three times if the condition fails there.
/// After bisecting, the condition is probed at 8 points spread over the
/// searched range; any probe contradicting a monotone step triggers a linear
/// scan with step `tolerance`.
pub fn locate_threshold<F>(upper: f64, tolerance: f64, mut condition: F) -> Result<ThresholdResult>
where
    F: FnMut(f64) -> Result<bool>,
{
    let mut evaluations = 0;
    let mut eval = |h: f64| {
        evaluations += 1;
        condition(h)
    };
    let done = |h, bracket, evaluations, method| ThresholdResult {
        h_vsi: h,
        bracket,
        evaluations,
        gaussian_reference: f64::NAN,
        method,
    };

    if eval(1.0)? {
        return Ok(done(1.0, (1.0, 1.0), evaluations, ThresholdMethod::Bisection));
    }
    let mut hi = upper.max(1.0 + tolerance);
    let mut expansions = 0;
    while !eval(hi)? {
        if expansions == MAX_EXPANSIONS {
            return Err(Error::NoThresholdFound { upper: hi });
        }
        hi *= 2.0;
        expansions += 1;
    }
    let range_end = hi;

    let mut lo = 1.0;
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if eval(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let mut monotone = true;
    for i in 0..VERIFY_POINTS {
        let h = 1.0 + (i as f64 + 0.5) / VERIFY_POINTS as f64 * (range_end - 1.0);
        let expected = if h < lo {
            false
        } else if h > hi {
            true
        } else {
            continue;
        };
        if eval(h)? != expected {
            monotone = false;
            break;
        }
    }
    if monotone {
        return Ok(done(hi, (lo, hi), evaluations, ThresholdMethod::Bisection));
    }

    let steps = ((range_end - 1.0) / tolerance).ceil() as usize;
    for i in 1..=steps {
        let h = (1.0 + i as f64 * tolerance).min(range_end);
        if eval(h)? {
            let low = (h - tolerance).max(1.0);
            return Ok(done(h, (low, h), evaluations, ThresholdMethod::Scan));
        }
    }
    Ok(done(
        range_end,
        (range_end - tolerance, range_end),
        evaluations,
        ThresholdMethod::Scan,
    ))
}
