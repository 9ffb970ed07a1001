//! Parameter sweeps over power, interference gain and channel phase.
//!
//! A [`SweepSpec`] (usually read from JSON) expands into the Cartesian
//! product of its grids. Each point is evaluated independently, optionally
//! served from an on-disk cache, and emitted as one [`SweepRecord`] CSV row.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constellation::InputAlphabet;
use crate::mi::{derive_seed, EstimatorConfig, Method};
use crate::region::{gaussian_cross, max_sum_rate, region_terms, ChannelConfig, RateRegion, RegionSource, Topology};
use crate::rotation::{effective_angles, optimize_rotation, ObjectiveKind, RotationSearch};
use crate::{db_to_linear, Error, Result};

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "IC_RATES_CACHE";
/// Cache directory used when [`CACHE_ENV`] is unset.
pub const DEFAULT_CACHE_DIR: &str = ".ic-rates-cache";

/// Column order of the sweep CSV.
pub const CSV_HEADER: &str = "topology,M,P_dB,h_abs,psi,phi,rho1,rho2,I_cond_bits,I_cross_rx1_bits,I_cross_rx2_bits,sum_rate_bits,std_error_bits,method,samples,seed";

/// How transmitter two's rotation is chosen at each point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RotationMode {
    #[default]
    Off,
    Optimize,
    Fixed(f64),
}

/// Estimator settings of a sweep; the seed comes from [`SweepSpec::seed`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EstimatorSettings {
    pub method: Method,
    pub samples: usize,
    pub quadrature_order: usize,
}

impl Default for EstimatorSettings {
    fn default() -> Self {
        let d = EstimatorConfig::default();
        Self {
            method: d.method,
            samples: d.samples,
            quadrature_order: d.quadrature_order,
        }
    }
}

impl EstimatorSettings {
    pub fn with_seed(&self, seed: u64) -> EstimatorConfig {
        EstimatorConfig {
            method: self.method,
            samples: self.samples,
            quadrature_order: self.quadrature_order,
            seed,
        }
    }
}

fn default_grid_points() -> usize {
    RotationSearch::default().grid_points
}

fn default_true() -> bool {
    true
}

/// Sweep description; mirrors the JSON config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub topology: Topology,
    /// Alphabet name, e.g. `qam4`, `qam16` or `gaussian`.
    pub alphabet: String,
    pub power_db: Vec<f64>,
    pub h_abs: Vec<f64>,
    pub psi: Vec<f64>,
    #[serde(default)]
    pub rotation: RotationMode,
    #[serde(default)]
    pub estimator: EstimatorSettings,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    #[serde(default = "default_true")]
    pub refine: bool,
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, grid) in [("power_db", &self.power_db), ("h_abs", &self.h_abs), ("psi", &self.psi)] {
            if grid.is_empty() {
                return Err(Error::InvalidConfig(format!("sweep grid {name} is empty")));
            }
            if grid.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidConfig(format!("sweep grid {name} has non-finite values")));
            }
        }
        if let Some(h) = self.h_abs.iter().find(|&&h| h < 1.0) {
            return Err(Error::InvalidConfig(format!("sweep h_abs value {h} < 1")));
        }
        if let RotationMode::Fixed(phi) = self.rotation {
            if !phi.is_finite() {
                return Err(Error::InvalidConfig("fixed rotation must be finite".into()));
            }
        }
        if self.rotation == RotationMode::Optimize && self.grid_points < 16 {
            return Err(Error::InvalidConfig("rotation grid needs at least 16 points".into()));
        }
        self.input_alphabet()?;
        self.estimator.with_seed(self.seed).validate()
    }

    pub fn input_alphabet(&self) -> Result<InputAlphabet> {
        self.alphabet.parse()
    }

    fn search(&self) -> RotationSearch {
        RotationSearch {
            grid_points: self.grid_points,
            refine: self.refine,
        }
    }

    /// Grid points in evaluation order, with their derived seeds.
    pub fn points(&self) -> Vec<SweepPoint> {
        let mut out = Vec::with_capacity(self.power_db.len() * self.h_abs.len() * self.psi.len());
        for (ip, &p_db) in self.power_db.iter().enumerate() {
            // One seed per power value: all ψ, |h| and φ at that power share
            // their noise draws.
            let seed = derive_seed(self.seed, &[ip as u64]);
            for &psi in &self.psi {
                for &h_abs in &self.h_abs {
                    out.push(SweepPoint { p_db, h_abs, psi, seed });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub p_db: f64,
    pub h_abs: f64,
    pub psi: f64,
    pub seed: u64,
}

/// One row of a sweep table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub topology: Topology,
    /// Alphabet size; 0 for Gaussian inputs.
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "P_dB")]
    pub p_db: f64,
    pub h_abs: f64,
    pub psi: f64,
    pub phi: f64,
    pub rho1: f64,
    pub rho2: f64,
    #[serde(rename = "I_cond_bits")]
    pub i_cond_bits: f64,
    #[serde(rename = "I_cross_rx1_bits")]
    pub i_cross_rx1_bits: f64,
    #[serde(rename = "I_cross_rx2_bits")]
    pub i_cross_rx2_bits: Option<f64>,
    pub sum_rate_bits: f64,
    pub std_error_bits: f64,
    pub method: Method,
    /// Monte Carlo sample budget, or quadrature order per dimension.
    pub samples: usize,
    pub seed: u64,
}

impl SweepRecord {
    /// Region rebuilt from the stored MI terms.
    pub fn region(&self) -> RateRegion {
        let c = self.i_cond_bits;
        RateRegion {
            r1_max: c,
            r2_max: c,
            sum_rx1: self.i_cross_rx1_bits + c,
            sum_rx2: self.i_cross_rx2_bits.map(|x| x + c),
            topology: Some(self.topology),
            source: if self.m == 0 {
                RegionSource::Gaussian
            } else {
                RegionSource::Finite
            },
            std_error: self.std_error_bits,
        }
    }

    pub fn recomputed_sum_rate(&self) -> f64 {
        max_sum_rate(&self.region())
    }
}

/// Rounds to 12 significant digits (the precision used for angles).
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Evaluates one grid point.
pub fn evaluate_point(spec: &SweepSpec, point: &SweepPoint) -> Result<SweepRecord> {
    let alphabet = spec.input_alphabet()?;
    let cfg = spec.estimator.with_seed(point.seed);
    let power = db_to_linear(point.p_db);
    let ch = ChannelConfig::new(spec.topology, point.h_abs, point.psi, 0.0, power)?;
    let (m, period) = match &alphabet {
        InputAlphabet::Finite(c) => (c.size(), c.period()),
        InputAlphabet::Gaussian => (0, std::f64::consts::TAU),
    };
    let phi = match (spec.rotation, &alphabet) {
        (RotationMode::Off, _) | (RotationMode::Optimize, InputAlphabet::Gaussian) => 0.0,
        (RotationMode::Fixed(phi), _) => phi,
        (RotationMode::Optimize, InputAlphabet::Finite(c)) => {
            let kind = ObjectiveKind::for_topology(spec.topology);
            optimize_rotation(&ch, c, kind, &spec.search(), &cfg)?.phi_star
        }
    };
    let ch = ch.with_phi(phi);
    let (rho1, rho2) = effective_angles(ch.psi, ch.phi, period);

    let (cond, cross1, cross2, std_error) = match &alphabet {
        InputAlphabet::Finite(c) => {
            let terms = region_terms(&ch, c, &cfg)?;
            let se = terms.region().std_error;
            (
                terms.cond.bits,
                terms.cross_rx1.bits,
                terms.cross_rx2.map(|x| x.bits),
                se,
            )
        }
        InputAlphabet::Gaussian => {
            let cross = gaussian_cross(ch.h_abs, power);
            let cross2 = (spec.topology == Topology::TwoIc).then_some(cross);
            ((1.0 + power).log2(), cross, cross2, 0.0)
        }
    };
    let mut record = SweepRecord {
        topology: spec.topology,
        m,
        p_db: point.p_db,
        h_abs: point.h_abs,
        psi: round_sig12(point.psi),
        phi: round_sig12(phi),
        rho1: round_sig12(rho1),
        rho2: round_sig12(rho2),
        i_cond_bits: cond,
        i_cross_rx1_bits: cross1,
        i_cross_rx2_bits: cross2,
        sum_rate_bits: 0.0,
        std_error_bits: std_error,
        method: cfg.method,
        samples: cfg.resolution(),
        seed: point.seed,
    };
    record.sum_rate_bits = record.recomputed_sum_rate();
    Ok(record)
}

/// On-disk cache: one JSON file per key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Directory from `IC_RATES_CACHE`, else `.ic-rates-cache`.
    pub fn from_env() -> Self {
        Self::new(std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR), PathBuf::from))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Stored record, or `None` when missing or unreadable.
    pub fn load(&self, key: &str) -> Option<SweepRecord> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Writes through a temporary file and renames it into place.
    pub fn store(&self, key: &str, record: &SweepRecord) -> Result<()> {
        static COUNTER: AtomicU64 = AtomicU64::new(0);
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(
            ".{key}.{}.{}.tmp",
            std::process::id(),
            COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, serde_json::to_vec(record)?)?;
        fs::rename(&tmp, self.path(key))?;
        Ok(())
    }
}

#[derive(Serialize)]
struct KeyMaterial<'a> {
    version: u32,
    topology: Topology,
    alphabet: &'a str,
    p_db: f64,
    h_abs: f64,
    psi: f64,
    rotation: RotationMode,
    grid_points: usize,
    refine: bool,
    method: Method,
    samples: usize,
    quadrature_order: usize,
    seed: u64,
}

/// Content hash of everything that affects a point's result.
pub fn cache_key(spec: &SweepSpec, point: &SweepPoint) -> String {
    let alphabet = spec
        .input_alphabet()
        .map_or_else(|_| spec.alphabet.clone(), |a| a.name());
    let material = KeyMaterial {
        version: 1,
        topology: spec.topology,
        alphabet: &alphabet,
        p_db: point.p_db,
        h_abs: point.h_abs,
        psi: point.psi,
        rotation: spec.rotation,
        grid_points: spec.grid_points,
        refine: spec.refine,
        method: spec.estimator.method,
        samples: spec.estimator.samples,
        quadrature_order: spec.estimator.quadrature_order,
        seed: point.seed,
    };
    let bytes = serde_json::to_vec(&material).expect("key material serializes");
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    pub cache: Option<Cache>,
    /// Evaluate points on the rayon pool.
    pub parallel: bool,
}

/// Evaluates every grid point; records are sorted by `(P_dB, psi, h_abs)`.
///
/// When `spec.output` is set the CSV is written there as well.
pub fn run_sweep(spec: &SweepSpec, opts: &SweepOptions) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    if let Some(path) = &spec.output {
        // Fail before the expensive part if the destination is unusable.
        fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|source| Error::Output {
                path: path.clone(),
                source,
            })?;
    }
    let points = spec.points();
    let eval = |point: &SweepPoint| -> Result<SweepRecord> {
        let Some(cache) = &opts.cache else {
            return evaluate_point(spec, point);
        };
        let key = cache_key(spec, point);
        if let Some(hit) = cache.load(&key) {
            return Ok(hit);
        }
        let record = evaluate_point(spec, point)?;
        cache.store(&key, &record)?;
        Ok(record)
    };
    let results: Vec<Result<SweepRecord>> = if opts.parallel {
        points.par_iter().map(eval).collect()
    } else {
        points.iter().map(eval).collect()
    };
    let mut records = results.into_iter().collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| {
        a.p_db
            .total_cmp(&b.p_db)
            .then(a.psi.total_cmp(&b.psi))
            .then(a.h_abs.total_cmp(&b.h_abs))
    });
    if let Some(path) = &spec.output {
        write_csv_file(&records, path)?;
    }
    Ok(records)
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(records: &[SweepRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(Error::InvalidInput(format!("unexpected CSV header {header:?}")));
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

/// Writes `records` to `path` through a temporary file in the same directory.
pub fn write_csv_file(records: &[SweepRecord], path: &Path) -> Result<()> {
    let output_err = |source| Error::Output {
        path: path.to_path_buf(),
        source,
    };
    let text = to_csv_string(records)?;
    let name = path
        .file_name()
        .map_or_else(|| "out".into(), |n| n.to_string_lossy().into_owned());
    let tmp = path.with_file_name(format!(".{name}.{}.tmp", std::process::id()));
    fs::write(&tmp, text).map_err(output_err)?;
    fs::rename(&tmp, path).map_err(output_err)
}

/// Plotting recipe for a sweep CSV (sum rate over `|h|`, one curve per `ψ`).
pub fn gnuplot_hint(csv_path: &str) -> String {
    format!(
        "# gnuplot recipe for {csv_path}\n\
         set datafile separator ','\n\
         set key autotitle columnhead\n\
         set xlabel '|h|'\n\
         set ylabel 'sum rate [bit/channel use]'\n\
         # column 4 = h_abs, 5 = psi, 12 = sum_rate_bits\n\
         plot for [p in system(\"tail -n +2 {csv_path} | cut -d, -f5 | sort -u\")] \\\n\
         \x20    '{csv_path}' using 4:($5 == p ? $12 : 1/0) with linespoints title sprintf('psi=%s', p)\n"
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

    fn spec(topology: Topology, rotation: RotationMode) -> SweepSpec {
        SweepSpec {
            topology,
            alphabet: "qam4".into(),
            power_db: vec![5.0],
            h_abs: vec![1.0, 1.5],
            psi: vec![0.0, FRAC_PI_8],
            rotation,
            estimator: EstimatorSettings::default(),
            seed: 7,
            output: None,
            grid_points: 16,
            refine: false,
        }
    }

    #[test]
    fn parses_json_config() {
        let text = r#"{
            "topology": "z_ic", "alphabet": "qam4",
            "power_db": [5], "h_abs": [1, 2], "psi": [0],
            "rotation": {"fixed": 0.25},
            "estimator": {"method": "monte-carlo", "samples": 5000},
            "seed": 3
        }"#;
        let s = SweepSpec::from_json(text).unwrap();
        assert_eq!(s.rotation, RotationMode::Fixed(0.25));
        assert_eq!(s.estimator.method, Method::MonteCarlo);
        assert_eq!(s.estimator.quadrature_order, 24);
        assert_eq!(s.grid_points, 64);
        assert!(s.refine);
        let opt =
            r#"{"topology":"two_ic","alphabet":"qam16","power_db":[0],"h_abs":[1],"psi":[0],"rotation":"optimize"}"#;
        assert_eq!(SweepSpec::from_json(opt).unwrap().rotation, RotationMode::Optimize);
    }

    #[test]
    fn rejects_invalid_specs() {
        let mut s = spec(Topology::ZIc, RotationMode::Off);
        s.h_abs = vec![];
        assert!(s.validate().is_err());
        let mut s = spec(Topology::ZIc, RotationMode::Off);
        s.h_abs = vec![0.5];
        assert!(s.validate().is_err());
        let mut s = spec(Topology::ZIc, RotationMode::Off);
        s.alphabet = "psk8".into();
        assert!(s.validate().is_err());
        let mut s = spec(Topology::ZIc, RotationMode::Off);
        s.estimator.method = Method::MonteCarlo;
        s.estimator.samples = 10;
        assert!(s.validate().is_err());
    }

    #[test]
    fn records_sorted_and_consistent() {
        let mut s = spec(Topology::TwoIc, RotationMode::Optimize);
        s.power_db = vec![5.0, 0.0];
        s.h_abs = vec![1.5, 1.0];
        let recs = run_sweep(&s, &SweepOptions::default()).unwrap();
        assert_eq!(recs.len(), 8);
        for w in recs.windows(2) {
            let ka = (w[0].p_db, w[0].psi, w[0].h_abs);
            let kb = (w[1].p_db, w[1].psi, w[1].h_abs);
            assert!(ka < kb, "{ka:?} {kb:?}");
        }
        for r in &recs {
            assert_eq!(r.sum_rate_bits, r.recomputed_sum_rate());
            let (r1, r2) = effective_angles(r.psi, r.phi, FRAC_PI_2);
            assert!((r1 - r.rho1).abs() < 1e-9 && (r2 - r.rho2).abs() < 1e-9);
            assert!(r.i_cross_rx2_bits.is_some());
            assert_eq!(r.m, 4);
        }
    }

    #[test]
    fn z_channel_rows_leave_rx2_empty() {
        let recs = run_sweep(&spec(Topology::ZIc, RotationMode::Off), &SweepOptions::default()).unwrap();
        let csv = to_csv_string(&recs).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 16);
            assert_eq!(fields[10], "");
            assert_eq!(fields[0], "z_ic");
        }
    }

    #[test]
    fn csv_round_trip_is_byte_identical() {
        let mut s = spec(Topology::TwoIc, RotationMode::Fixed(0.3));
        s.estimator = EstimatorSettings {
            method: Method::MonteCarlo,
            samples: 2000,
            quadrature_order: 24,
        };
        let recs = run_sweep(&s, &SweepOptions::default()).unwrap();
        let text = to_csv_string(&recs).unwrap();
        let parsed = read_csv(text.as_bytes()).unwrap();
        assert_eq!(parsed, recs);
        assert_eq!(to_csv_string(&parsed).unwrap(), text);
        for r in &parsed {
            assert_eq!(r.sum_rate_bits, r.recomputed_sum_rate());
        }
    }

    #[test]
    fn gaussian_rows() {
        let mut s = spec(Topology::TwoIc, RotationMode::Optimize);
        s.alphabet = "gaussian".into();
        let recs = run_sweep(&s, &SweepOptions::default()).unwrap();
        let p = db_to_linear(5.0);
        for r in &recs {
            let g = crate::region::gaussian_region(r.h_abs, p).unwrap();
            assert!((r.sum_rate_bits - max_sum_rate(&g)).abs() < 1e-12);
            assert_eq!(r.m, 0);
        }
    }

    #[test]
    fn cache_keys() {
        let s = spec(Topology::ZIc, RotationMode::Off);
        let p = s.points()[0];
        assert_eq!(cache_key(&s, &p), cache_key(&s, &p));
        let other_seed = SweepPoint { seed: p.seed + 1, ..p };
        assert_ne!(cache_key(&s, &p), cache_key(&s, &other_seed));
        let mut moved = s.clone();
        moved.output = Some(PathBuf::from("/elsewhere/out.csv"));
        assert_eq!(cache_key(&s, &p), cache_key(&moved, &p));
        let mut mc = s.clone();
        mc.estimator.method = Method::MonteCarlo;
        assert_ne!(cache_key(&s, &p), cache_key(&mc, &p));
        let mut zic = s.clone();
        zic.topology = Topology::TwoIc;
        assert_ne!(cache_key(&s, &p), cache_key(&zic, &p));
        assert_eq!(cache_key(&s, &p).len(), 64);
    }

    #[test]
    fn cache_hits_and_recovers_from_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let s = spec(Topology::ZIc, RotationMode::Off);
        let opts = SweepOptions {
            cache: Some(cache.clone()),
            parallel: false,
        };
        let first = run_sweep(&s, &opts).unwrap();
        let entries = fs::read_dir(dir.path()).unwrap().count();
        assert_eq!(entries, s.points().len());

        let key = cache_key(&s, &s.points()[0]);
        let mut doctored = first[0].clone();
        doctored.sum_rate_bits = 123.0;
        cache.store(&key, &doctored).unwrap();
        let second = run_sweep(&s, &opts).unwrap();
        assert!(second.iter().any(|r| r.sum_rate_bits == 123.0), "cache hit expected");

        fs::write(cache.path(&key), b"{not json").unwrap();
        let third = run_sweep(&s, &opts).unwrap();
        assert_eq!(third, first);
        assert!(cache.load(&key).is_some());
    }

    #[test]
    fn parallel_matches_serial() {
        let mut s = spec(Topology::TwoIc, RotationMode::Off);
        s.estimator.method = Method::MonteCarlo;
        s.estimator.samples = 2000;
        let serial = run_sweep(&s, &SweepOptions::default()).unwrap();
        let parallel = run_sweep(
            &s,
            &SweepOptions {
                cache: None,
                parallel: true,
            },
        )
        .unwrap();
        assert_eq!(to_csv_string(&serial).unwrap(), to_csv_string(&parallel).unwrap());
    }

    #[test]
    fn unwritable_output_fails_early() {
        let mut s = spec(Topology::ZIc, RotationMode::Off);
        s.output = Some(PathBuf::from("/nonexistent-dir/sub/out.csv"));
        assert!(matches!(
            run_sweep(&s, &SweepOptions::default()),
            Err(Error::Output { .. })
        ));
    }

    #[test]
    fn sig12_rounding() {
        assert_eq!(round_sig12(FRAC_PI_4).to_string(), "0.785398163397");
        assert_eq!(round_sig12(0.0), 0.0);
        assert_eq!(
            round_sig12(round_sig12(1.234567890123456)),
            round_sig12(1.234567890123456)
        );
    }

    #[test]
    fn hint_mentions_file() {
        assert!(gnuplot_hint("fig4.csv").contains("fig4.csv"));
    }
}
