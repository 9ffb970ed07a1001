//! Strong-interference rate regions for the symmetric 2-IC and 2-Z-IC.
//!
//! Receiver one sees `Y1 = X1 + |h|e^{i(ψ+φ)} X2 + Z1`, receiver two sees
//! `Y2 = |h|e^{iψ} X1 + e^{iφ} X2 + Z2` (the cross link to receiver two is
//! absent in the Z channel). Both are evaluated in a normalized form: a
//! common phase rotation of an observation does not change any mutual
//! information, so each receiver is modelled with a real desired gain
//! `sqrt(P)` and an interferer phase of `ρ1 = ψ+φ` or `ρ2 = ψ-φ`, reduced
//! modulo the alphabet's rotation period.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constellation::Constellation;
use crate::mi::{mi_cross, mi_single, EstimatorConfig, MIEstimate, ReceiverModel};
use crate::rotation::effective_angles;
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Topology {
    /// Two-user interference channel.
    #[serde(rename = "two_ic")]
    TwoIc,
    /// Z-interference channel: receiver two is interference-free.
    #[serde(rename = "z_ic")]
    ZIc,
}

impl Topology {
    pub fn as_str(self) -> &'static str {
        match self {
            Topology::TwoIc => "two_ic",
            Topology::ZIc => "z_ic",
        }
    }
}

impl std::fmt::Display for Topology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "twoic" | "2ic" | "ic" => Ok(Topology::TwoIc),
            "zic" | "2zic" | "z" => Ok(Topology::ZIc),
            _ => Err(Error::InvalidConfig(format!("unknown topology {s:?}"))),
        }
    }
}

/// Symmetric channel: topology, interference magnitude `|h|`, channel phase
/// `ψ`, transmitter-two rotation `φ` and linear power `P`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    pub topology: Topology,
    pub h_abs: f64,
    pub psi: f64,
    pub phi: f64,
    pub power: f64,
}

impl ChannelConfig {
    pub fn new(topology: Topology, h_abs: f64, psi: f64, phi: f64, power: f64) -> Result<Self> {
        let ch = Self {
            topology,
            h_abs,
            psi,
            phi,
            power,
        };
        ch.validate()?;
        Ok(ch)
    }

    /// Only strong or very strong interference (`|h| >= 1`) is accepted.
    pub fn validate(&self) -> Result<()> {
        if !(self.h_abs.is_finite() && self.h_abs >= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "|h| = {} outside the strong-interference regime (|h| >= 1)",
                self.h_abs
            )));
        }
        if !(self.power.is_finite() && self.power > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "power must be positive, got {}",
                self.power
            )));
        }
        if !(self.psi.is_finite() && self.phi.is_finite()) {
            return Err(Error::InvalidConfig("angles must be finite".into()));
        }
        Ok(())
    }

    pub fn with_phi(self, phi: f64) -> Self {
        Self { phi, ..self }
    }

    pub fn with_h_abs(self, h_abs: f64) -> Self {
        Self { h_abs, ..self }
    }

    /// Receiver-one model (interferer X2 at phase `rho1`).
    pub fn receiver_one(&self, alphabet: &Constellation) -> ReceiverModel {
        let (rho1, _) = effective_angles(self.psi, self.phi, alphabet.period());
        ReceiverModel::symmetric(alphabet, self.power, self.h_abs, rho1)
    }

    /// Receiver-two model (interferer X1 at phase `rho2`); `None` for the Z channel.
    pub fn receiver_two(&self, alphabet: &Constellation) -> Option<ReceiverModel> {
        let (_, rho2) = effective_angles(self.psi, self.phi, alphabet.period());
        match self.topology {
            Topology::TwoIc => Some(ReceiverModel::symmetric(alphabet, self.power, self.h_abs, rho2)),
            Topology::ZIc => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionSource {
    Finite,
    Gaussian,
}

/// Constraint values of an achievable region, in bits.
///
/// `sum_rx2` is absent for the Z channel (where it is redundant by
/// structure) and for Gaussian inputs (where it equals `sum_rx1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateRegion {
    pub r1_max: f64,
    pub r2_max: f64,
    pub sum_rx1: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sum_rx2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<Topology>,
    pub source: RegionSource,
    /// Largest standard error among the constraints (zero for closed forms
    /// and quadrature).
    pub std_error: f64,
}

/// The mutual-information terms behind a finite-alphabet region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionTerms {
    pub topology: Topology,
    /// `I(Y1; X1 | X2)`, equal to `I(Y2; X2 | X1)` in the symmetric channel.
    pub cond: MIEstimate,
    /// `I(Y1; X2)`.
    pub cross_rx1: MIEstimate,
    /// `I(Y2; X1)`; absent for the Z channel.
    pub cross_rx2: Option<MIEstimate>,
    pub rho1: f64,
    pub rho2: f64,
}

impl RegionTerms {
    pub fn region(&self) -> RateRegion {
        let c = self.cond;
        let sum_rx2 = self.cross_rx2.map(|x| x.bits + c.bits);
        let se = |x: &MIEstimate| x.std_error.hypot(c.std_error);
        let std_error = self.cross_rx2.iter().map(se).fold(se(&self.cross_rx1), f64::max);
        RateRegion {
            r1_max: c.bits,
            r2_max: c.bits,
            sum_rx1: self.cross_rx1.bits + c.bits,
            sum_rx2,
            topology: Some(self.topology),
            source: RegionSource::Finite,
            std_error,
        }
    }
}

/// Evaluates the conditional and cross terms for one channel.
pub fn region_terms(ch: &ChannelConfig, alphabet: &Constellation, cfg: &EstimatorConfig) -> Result<RegionTerms> {
    ch.validate()?;
    let (rho1, rho2) = effective_angles(ch.psi, ch.phi, alphabet.period());
    let cond = mi_single(alphabet, C64::new(ch.power.sqrt(), 0.0), cfg)?;
    let cross_rx1 = mi_cross(&ch.receiver_one(alphabet), cfg)?;
    let cross_rx2 = ch.receiver_two(alphabet).map(|m| mi_cross(&m, cfg)).transpose()?;
    Ok(RegionTerms {
        topology: ch.topology,
        cond,
        cross_rx1,
        cross_rx2,
        rho1,
        rho2,
    })
}

/// Achievable region with both users on `alphabet`.
pub fn finite_region(ch: &ChannelConfig, alphabet: &Constellation, cfg: &EstimatorConfig) -> Result<RateRegion> {
    region_terms(ch, alphabet, cfg).map(|t| t.region())
}

/// Capacity region with Gaussian inputs.
pub fn gaussian_region(h_abs: f64, power: f64) -> Result<RateRegion> {
    ChannelConfig::new(Topology::TwoIc, h_abs, 0.0, 0.0, power)?;
    let single = (1.0 + power).log2();
    Ok(RateRegion {
        r1_max: single,
        r2_max: single,
        sum_rx1: (1.0 + h_abs * h_abs * power + power).log2(),
        sum_rx2: None,
        topology: None,
        source: RegionSource::Gaussian,
        std_error: 0.0,
    })
}

/// Gaussian-input cross term `I(Y1; X2) = log2(1+|h|²P+P) - log2(1+P)`.
pub fn gaussian_cross(h_abs: f64, power: f64) -> f64 {
    (1.0 + h_abs * h_abs * power + power).log2() - (1.0 + power).log2()
}

/// Effective sum-rate bound: the tightest sum constraint.
pub fn sum_bound(region: &RateRegion) -> f64 {
    region.sum_rx2.map_or(region.sum_rx1, |s| s.min(region.sum_rx1))
}

/// Largest achievable `R1 + R2`.
pub fn max_sum_rate(region: &RateRegion) -> f64 {
    (region.r1_max + region.r2_max).min(sum_bound(region))
}

/// Corner points of the region, counter-clockwise from the origin.
pub fn vertices(region: &RateRegion) -> Vec<(f64, f64)> {
    corner_points(region.r1_max, region.r2_max, sum_bound(region))
}

/// Corners of `{R1 <= a, R2 <= b, R1 + R2 <= s, R >= 0}`.
pub fn corner_points(a: f64, b: f64, s: f64) -> Vec<(f64, f64)> {
    let a = a.min(s).max(0.0);
    let b = b.min(s).max(0.0);
    let s = s.max(0.0);
    let raw = if s >= a + b {
        vec![(0.0, 0.0), (a, 0.0), (a, b), (0.0, b)]
    } else {
        vec![(0.0, 0.0), (a, 0.0), (a, s - a), (s - b, b), (0.0, b)]
    };
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
    for p in raw {
        if out.last() != Some(&p) && (out.len() < 2 || out[0] != p) {
            out.push(p);
        }
    }
    out
}
