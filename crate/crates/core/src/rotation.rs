//! Transmitter rotation: effective interference angles, grid optimization
//! of the rotation `φ`, and folding of the channel phase `ψ` into its
//! fundamental domain.
//!
//! Only the cross terms `I(Y1; X2)` and `I(Y2; X1)` depend on `φ`; the
//! conditional terms do not. The Z channel therefore maximizes `I(Y1; X2)`
//! alone while the 2-IC maximizes `min{I(Y1; X2), I(Y2; X1)}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::constellation::Constellation;
use crate::mi::{mi_cross, EstimatorConfig, MIEstimate, ReceiverModel};
use crate::region::{ChannelConfig, Topology};
use crate::{Error, Result};

/// Effective interference phases `(ρ1, ρ2) = (ψ+φ, ψ-φ)`, both reduced into
/// `[0, phi_per)`.
pub fn effective_angles(psi: f64, phi: f64, phi_per: f64) -> (f64, f64) {
    (wrap(psi + phi, phi_per), wrap(psi - phi, phi_per))
}

fn wrap(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    // rem_euclid can round up to `period` itself for tiny negative inputs.
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Folds `ψ` into `[0, φ_per/2]` (no rotation) or `[0, φ_per/4]` (rotation
/// enabled). Channel phases related by these reflections give the same
/// rates, so sweeps may evaluate the folded value instead.
pub fn canonical_psi(psi: f64, phi_per: f64, rotation_enabled: bool) -> f64 {
    let mut p = wrap(psi, phi_per);
    if p > phi_per / 2.0 {
        p = phi_per - p;
    }
    if rotation_enabled && p > phi_per / 4.0 {
        p = phi_per / 2.0 - p;
    }
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveKind {
    /// Maximize `I(Y1; X2)` (Z channel).
    ZicCross,
    /// Maximize `min{I(Y1; X2), I(Y2; X1)}` (2-IC).
    TwoIcMaxmin,
}

impl ObjectiveKind {
    pub fn for_topology(t: Topology) -> Self {
        match t {
            Topology::TwoIc => ObjectiveKind::TwoIcMaxmin,
            Topology::ZIc => ObjectiveKind::ZicCross,
        }
    }
}

/// Grid-search settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSearch {
    /// Number of grid points over `[0, φ_per)`; at least 16.
    pub grid_points: usize,
    /// One extra pass at 1/8 of the grid step around the best grid point.
    pub refine: bool,
}

impl Default for RotationSearch {
    fn default() -> Self {
        Self {
            grid_points: 64,
            refine: true,
        }
    }
}

impl RotationSearch {
    pub fn grid(grid_points: usize) -> Self {
        Self {
            grid_points,
            refine: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridValue {
    pub phi: f64,
    pub cross_rx1: f64,
    pub cross_rx2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationResult {
    /// Best rotation in `[0, φ_per)`; the smallest angle among ties.
    pub phi_star: f64,
    pub objective_bits: f64,
    pub objective_std_error: f64,
    pub objective_kind: ObjectiveKind,
    pub grid_step: f64,
    pub per_grid_values: Vec<GridValue>,
}

/// Objective value at the rotation `ch.phi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveValue {
    pub phi: f64,
    pub cross_rx1: MIEstimate,
    pub cross_rx2: Option<MIEstimate>,
}

impl ObjectiveValue {
    pub fn bits(&self) -> f64 {
        self.cross_rx2
            .map_or(self.cross_rx1.bits, |c| c.bits.min(self.cross_rx1.bits))
    }

    pub fn std_error(&self) -> f64 {
        self.cross_rx2
            .map_or(self.cross_rx1.std_error, |c| c.std_error.max(self.cross_rx1.std_error))
    }
}

/// Evaluates cross terms with a per-call memo keyed by the reduced phase.
struct CrossEvaluator<'a> {
    ch: ChannelConfig,
    alphabet: &'a Constellation,
    cfg: &'a EstimatorConfig,
    memo: HashMap<u64, MIEstimate>,
}

impl<'a> CrossEvaluator<'a> {
    fn cross(&mut self, rho: f64) -> Result<MIEstimate> {
        if let Some(v) = self.memo.get(&rho.to_bits()) {
            return Ok(*v);
        }
        let model = ReceiverModel::symmetric(self.alphabet, self.ch.power, self.ch.h_abs, rho);
        let v = mi_cross(&model, self.cfg)?;
        self.memo.insert(rho.to_bits(), v);
        Ok(v)
    }

    fn objective(&mut self, kind: ObjectiveKind, phi: f64) -> Result<ObjectiveValue> {
        let (rho1, rho2) = effective_angles(self.ch.psi, phi, self.alphabet.period());
        let cross_rx1 = self.cross(rho1)?;
        let cross_rx2 = match kind {
            ObjectiveKind::ZicCross => None,
            ObjectiveKind::TwoIcMaxmin => Some(self.cross(rho2)?),
        };
        Ok(ObjectiveValue {
            phi,
            cross_rx1,
            cross_rx2,
        })
    }
}

/// Objective at the fixed rotation `ch.phi`.
pub fn objective_at(
    ch: &ChannelConfig,
    alphabet: &Constellation,
    kind: ObjectiveKind,
    cfg: &EstimatorConfig,
) -> Result<ObjectiveValue> {
    ch.validate()?;
    CrossEvaluator {
        ch: *ch,
        alphabet,
        cfg,
        memo: HashMap::new(),
    }
    .objective(kind, ch.phi)
}

/// Grid search for the rotation maximizing `kind`. `ch.phi` is ignored.
///
/// Monte Carlo runs reuse the same noise draws at every grid point, so the
/// estimator noise is largely common to all candidates.
pub fn optimize_rotation(
    ch: &ChannelConfig,
    alphabet: &Constellation,
    kind: ObjectiveKind,
    search: &RotationSearch,
    cfg: &EstimatorConfig,
) -> Result<RotationResult> {
    ch.validate()?;
    if search.grid_points < 16 {
        return Err(Error::InvalidConfig(format!(
            "rotation grid needs at least 16 points, got {}",
            search.grid_points
        )));
    }
    let period = alphabet.period();
    let step = period / search.grid_points as f64;
    let mut eval = CrossEvaluator {
        ch: *ch,
        alphabet,
        cfg,
        memo: HashMap::new(),
    };

    let mut trace = Vec::with_capacity(search.grid_points);
    let mut best: Option<ObjectiveValue> = None;
    for j in 0..search.grid_points {
        let v = eval.objective(kind, j as f64 * step)?;
        trace.push(GridValue {
            phi: v.phi,
            cross_rx1: v.cross_rx1.bits,
            cross_rx2: v.cross_rx2.map(|c| c.bits),
        });
        if best.is_none_or(|b| v.bits() > b.bits()) {
            best = Some(v);
        }
    }
    let mut best = best.expect("grid has at least 16 points");

    if search.refine {
        let center = best.phi;
        for j in (-7i32..=7).filter(|&j| j != 0) {
            let phi = wrap(center + j as f64 * step / 8.0, period);
            let v = eval.objective(kind, phi)?;
            if v.bits() > best.bits() || (v.bits() == best.bits() && v.phi < best.phi) {
                best = v;
            }
        }
    }

    Ok(RotationResult {
        phi_star: best.phi,
        objective_bits: best.bits(),
        objective_std_error: best.std_error(),
        objective_kind: kind,
        grid_step: step,
        per_grid_values: trace,
    })
}
