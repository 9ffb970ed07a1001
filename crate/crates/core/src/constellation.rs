//! Finite complex input alphabets.
//!
//! Every [`Constellation`] has unit average energy; the transmitted symbol is
//! `sqrt(P) * x` and receiver noise is CN(0, 1).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result, C64};

const ENERGY_TOL: f64 = 1e-12;
const DISTINCT_TOL: f64 = 1e-9;

/// Default tolerance for set comparisons of rotated alphabets.
pub const SET_TOL: f64 = 1e-9;

/// A finite set of complex points with unit average energy.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    points: Vec<C64>,
    label: String,
    period: f64,
}

impl Constellation {
    /// Builds a constellation from already-normalized points.
    ///
    /// Fails when fewer than two points are given, when two points coincide
    /// (distance below 1e-9) or when the mean energy is not 1 within 1e-12.
    pub fn new(points: Vec<C64>, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if points.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "alphabet {label:?} needs at least 2 points, got {}",
                points.len()
            )));
        }
        if points.iter().any(|p| !p.re.is_finite() || !p.im.is_finite()) {
            return Err(Error::InvalidInput(format!("alphabet {label:?} has non-finite points")));
        }
        let energy = mean_energy(&points);
        if (energy - 1.0).abs() > ENERGY_TOL {
            return Err(Error::InvalidInput(format!(
                "alphabet {label:?} has average energy {energy}, expected 1"
            )));
        }
        let d = min_pairwise_distance(&points);
        if d <= DISTINCT_TOL {
            return Err(Error::InvalidInput(format!(
                "alphabet {label:?} has coinciding points (min distance {d:e})"
            )));
        }
        let mut c = Self {
            points,
            label,
            period: 2.0 * PI,
        };
        c.period = periodicity(&c, SET_TOL);
        Ok(c)
    }

    /// Scales `points` to unit average energy, then validates as [`Constellation::new`].
    pub fn normalized(points: Vec<C64>, label: impl Into<String>) -> Result<Self> {
        let energy = mean_energy(&points);
        if !(energy > 0.0 && energy.is_finite()) {
            return Err(Error::InvalidInput("alphabet has zero or non-finite energy".into()));
        }
        let scale = energy.sqrt().recip();
        Self::new(points.into_iter().map(|p| p * scale).collect(), label)
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn mean_energy(&self) -> f64 {
        mean_energy(&self.points)
    }

    /// Rotation periodicity, as computed by [`periodicity`] at construction.
    pub fn period(&self) -> f64 {
        self.period
    }
}

impl fmt::Display for Constellation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// The alphabet of transmitter two after its rotation by `phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotatedAlphabet {
    pub base: Constellation,
    pub phi: f64,
}

impl RotatedAlphabet {
    pub fn new(base: Constellation, phi: f64) -> Self {
        Self { base, phi }
    }

    pub fn to_constellation(&self) -> Constellation {
        rotate(&self.base, self.phi)
    }
}

/// Input alphabet choice: a finite constellation or circularly symmetric
/// Gaussian inputs (closed-form rates).
#[derive(Debug, Clone, PartialEq)]
pub enum InputAlphabet {
    Finite(Constellation),
    Gaussian,
}

impl InputAlphabet {
    /// Canonical short name as accepted by [`FromStr`] (`qam16`, `gaussian`, ...).
    pub fn name(&self) -> String {
        match self {
            InputAlphabet::Finite(c) => format!("qam{}", c.size()),
            InputAlphabet::Gaussian => "gaussian".to_string(),
        }
    }

    pub fn as_finite(&self) -> Option<&Constellation> {
        match self {
            InputAlphabet::Finite(c) => Some(c),
            InputAlphabet::Gaussian => None,
        }
    }
}

impl FromStr for InputAlphabet {
    type Err = Error;

    /// Accepts `gaussian`, `qam<M>`, `<M>qam` and `<M>-QAM` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "gaussian" || lower == "gauss" {
            return Ok(InputAlphabet::Gaussian);
        }
        let digits = lower
            .strip_prefix("qam")
            .or_else(|| lower.strip_suffix("-qam"))
            .or_else(|| lower.strip_suffix("qam"))
            .ok_or_else(|| Error::UnsupportedAlphabet(s.to_string()))?;
        let m: usize = digits
            .trim_matches('-')
            .parse()
            .map_err(|_| Error::UnsupportedAlphabet(s.to_string()))?;
        make_qam(m).map(InputAlphabet::Finite)
    }
}

/// Square M-QAM with unit average energy.
///
/// Points are the grid `{±a, ±3a, ...}²` ordered row-major by real part,
/// then imaginary part.
pub fn make_qam(m: usize) -> Result<Constellation> {
    let side = (m as f64).sqrt().round() as usize;
    if m < 4 || side * side != m || !side.is_multiple_of(2) {
        return Err(Error::UnsupportedAlphabet(format!(
            "{m}-QAM (square QAM with M >= 4 only)"
        )));
    }
    let levels: Vec<f64> = (0..side).map(|i| (2 * i) as f64 - (side - 1) as f64).collect();
    let points = levels
        .iter()
        .flat_map(|&re| levels.iter().map(move |&im| C64::new(re, im)))
        .collect();
    Constellation::normalized(points, format!("{m}-QAM"))
}

/// Multiplies every point by `e^{i phi}`, keeping the ordering.
pub fn rotate(c: &Constellation, phi: f64) -> Constellation {
    let r = C64::from_polar(1.0, phi);
    Constellation {
        points: c.points.iter().map(|&p| p * r).collect(),
        label: c.label.clone(),
        period: c.period,
    }
}

/// Smallest `phi > 0` that maps `c` onto itself as a set.
///
/// Candidates are `2π/n` for `n = 1..=4M`; returns `2π` when nothing smaller
/// matches.
pub fn periodicity(c: &Constellation, tol: f64) -> f64 {
    let cap = 4 * c.size();
    for n in (2..=cap).rev() {
        let phi = 2.0 * PI / n as f64;
        if set_equal(rotate(c, phi).points(), c.points(), tol) {
            return phi;
        }
    }
    2.0 * PI
}

/// Set equality up to `tol`, with a bijective nearest-neighbour matching.
pub fn set_equal(a: &[C64], b: &[C64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a: Vec<C64> = a.to_vec();
    let mut b: Vec<C64> = b.to_vec();
    let key = |p: &C64, q: &C64| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im));
    a.sort_by(key);
    b.sort_by(key);
    let mut used = vec![false; b.len()];
    for p in &a {
        let nearest = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, q)| (j, (p - q).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1));
        match nearest {
            Some((j, d)) if d <= tol => used[j] = true,
            _ => return false,
        }
    }
    true
}

/// The `M_A * M_B` points `x_a^k + gain * x_b^l`, `k` outer and `l` inner.
pub fn superposition(a: &Constellation, b: &Constellation, gain: C64) -> Vec<C64> {
    a.points
        .iter()
        .flat_map(|&xa| b.points.iter().map(move |&xb| xa + gain * xb))
        .collect()
}

/// Minimum pairwise distance of the superposition alphabet. Zero means two
/// symbol pairs produce the same noiseless received point.
pub fn min_superposition_distance(a: &Constellation, b: &Constellation, gain: C64) -> f64 {
    min_pairwise_distance(&superposition(a, b, gain))
}

pub(crate) fn mean_energy(points: &[C64]) -> f64 {
    points.iter().map(|p| p.norm_sqr()).sum::<f64>() / points.len() as f64
}

pub(crate) fn min_pairwise_distance(points: &[C64]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.min((p - q).norm());
        }
    }
    best
}
