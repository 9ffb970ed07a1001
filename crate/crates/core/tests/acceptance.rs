//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero if any fails.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use ic_rates::constellation::{make_qam, Constellation};
use ic_rates::mi::{mi_cross, mi_joint, mi_joint_direct, mi_single};
use ic_rates::region::{finite_region, gaussian_region, max_sum_rate};
use ic_rates::rotation::{objective_at, optimize_rotation};
use ic_rates::sweep::{run_sweep, EstimatorSettings, RotationMode, SweepOptions, SweepSpec};
use ic_rates::vsi::{find_threshold, gaussian_vsi, ThresholdQuery};
use ic_rates::{
    db_to_linear, ChannelConfig, EstimatorConfig, InputAlphabet, Method, ObjectiveKind, ReceiverModel, RotationSearch,
    Topology, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn qam4() -> Constellation {
    make_qam(4).unwrap()
}

fn quad() -> EstimatorConfig {
    EstimatorConfig::quadrature(24)
}

fn mc(samples: usize, seed: u64) -> EstimatorConfig {
    EstimatorConfig::monte_carlo(samples, seed)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst = (0.0f64, String::new());
    let mut failures = Vec::new();
    for i in 0..12usize {
        let m = [4, 16][i % 2];
        let p_db = [0.0, 5.0, 12.0][i % 3];
        let h = [1.0, 1.7, 3.0][(i / 2) % 3];
        let rho = [0.0, FRAC_PI_8][(i / 6) % 2];
        let alphabet = make_qam(m).unwrap();
        let model = ReceiverModel::symmetric(&alphabet, db_to_linear(p_db), h, rho);
        let gain = model.gain_a;
        let pairs = [
            (
                "single",
                mi_single(&alphabet, gain, &mc(20_000, 100 + i as u64)),
                mi_single(&alphabet, gain, &quad()),
            ),
            (
                "cross",
                mi_cross(&model, &mc(20_000, 100 + i as u64)),
                mi_cross(&model, &quad()),
            ),
        ];
        for (term, a, b) in pairs {
            let (a, b) = (a.map_err(|e| e.to_string())?, b.map_err(|e| e.to_string())?);
            let diff = (a.bits - b.bits).abs();
            let tol = f64::max(0.01, 3.0 * a.std_error);
            let label = format!("{m}-QAM P={p_db}dB |h|={h} rho={rho:.4} {term}");
            if diff / tol > worst.0 {
                worst = (diff / tol, format!("{label}: |diff|={diff:.5} tol={tol:.5}"));
            }
            if diff > tol {
                failures.push(format!("{label}: mc={:.5} quad={:.5} tol={tol:.5}", a.bits, b.bits));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 120.0 {
        failures.push(format!("runtime {secs:.1}s > 120s"));
    }
    check(
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "24 terms on 12 models agree; worst ratio {:.2} ({}); {secs:.1}s",
                worst.0, worst.1
            )
        } else {
            failures.join("; ")
        },
    )
}

fn criterion_2() -> Outcome {
    let p = 3.1623;
    let g = gaussian_region(1.0, p).map_err(|e| e.to_string())?;
    let sum = max_sum_rate(&g);
    let vsi = gaussian_vsi(p);
    let ok = (g.r1_max - 2.0574).abs() <= 1e-4 && (sum - 2.8729).abs() <= 1e-4 && (vsi - 2.0403).abs() <= 1e-4;
    check(
        ok,
        format!(
            "r1_max={:.6} (want 2.0574), sum={sum:.6} (want 2.8729), h_vsi={vsi:.6} (want 2.0403), all ±1e-4",
            g.r1_max
        ),
    )
}

fn criterion_3() -> Outcome {
    let alphabet = qam4();
    let p = db_to_linear(5.0);
    let mut worst = 0.0f64;
    for h in [1.2, 2.0] {
        for alpha in [0.05, 0.2] {
            let eval = |psi: f64| {
                let ch = ChannelConfig::new(Topology::TwoIc, h, psi, 0.0, p).unwrap();
                mi_cross(&ch.receiver_one(&alphabet), &quad()).unwrap().bits
            };
            worst = worst.max((eval(FRAC_PI_4 + alpha) - eval(FRAC_PI_4 - alpha)).abs());
        }
    }
    check(
        worst <= 1e-6,
        format!("max |I(pi/4+a) - I(pi/4-a)| = {worst:.2e} (tol 1e-6)"),
    )
}

fn criterion_4() -> Outcome {
    let alphabet = qam4();
    let period = alphabet.period();
    let p = db_to_linear(5.0);
    let kind = ObjectiveKind::TwoIcMaxmin;
    let search = RotationSearch::default();
    let mut worst = 0.0f64;
    let mut lines = Vec::new();
    for h in [1.2, 2.0] {
        for (center, offset, mirror) in [
            (period / 2.0, 0.05, false),
            (period / 2.0, 0.2, false),
            (period / 4.0, 0.05, true),
            (period / 4.0, 0.2, true),
        ] {
            let plus = ChannelConfig::new(Topology::TwoIc, h, center + offset, 0.0, p).unwrap();
            let best = optimize_rotation(&plus, &alphabet, kind, &search, &quad()).map_err(|e| e.to_string())?;
            let phi = if mirror {
                period / 2.0 - best.phi_star
            } else {
                -best.phi_star
            };
            let minus = ChannelConfig::new(Topology::TwoIc, h, center - offset, phi, p).unwrap();
            let constructed = objective_at(&minus, &alphabet, kind, &quad())
                .map_err(|e| e.to_string())?
                .bits();
            let searched = optimize_rotation(&minus, &alphabet, kind, &search, &quad())
                .map_err(|e| e.to_string())?
                .objective_bits;
            let d = (best.objective_bits - constructed)
                .abs()
                .max((best.objective_bits - searched).abs());
            worst = worst.max(d);
            if d > 0.01 {
                lines.push(format!("|h|={h} center={center:.4} off={offset}: {d:.4}"));
            }
        }
    }
    check(
        lines.is_empty(),
        format!("max mismatch {worst:.2e} bits (tol 0.01) {}", lines.join("; ")),
    )
}

fn optimized_sum_rate(topology: Topology, h: f64, psi: f64) -> (f64, f64) {
    let alphabet = qam4();
    let ch = ChannelConfig::new(topology, h, psi, 0.0, db_to_linear(5.0)).unwrap();
    let best = optimize_rotation(
        &ch,
        &alphabet,
        ObjectiveKind::for_topology(topology),
        &RotationSearch::default(),
        &quad(),
    )
    .unwrap();
    let rotated = max_sum_rate(&finite_region(&ch.with_phi(best.phi_star), &alphabet, &quad()).unwrap());
    let plain = max_sum_rate(&finite_region(&ch, &alphabet, &quad()).unwrap());
    (rotated, plain)
}

fn criterion_5() -> Outcome {
    let mut worst = 0.0f64;
    for h in [1.0, 1.5, 2.0] {
        let rates: Vec<f64> = [0.0, FRAC_PI_8, FRAC_PI_4]
            .iter()
            .map(|&psi| optimized_sum_rate(Topology::ZIc, h, psi).0)
            .collect();
        let spread = rates.iter().cloned().fold(f64::MIN, f64::max) - rates.iter().cloned().fold(f64::MAX, f64::min);
        worst = worst.max(spread);
    }
    check(
        worst <= 0.01,
        format!("max spread across psi = {worst:.2e} bits (tol 0.01)"),
    )
}

fn criterion_6() -> Outcome {
    let spec = |topology| SweepSpec {
        topology,
        alphabet: "qam4".into(),
        power_db: vec![5.0],
        h_abs: (0..=8).map(|i| 1.0 + 0.25 * i as f64).collect(),
        psi: vec![0.0, FRAC_PI_8],
        rotation: RotationMode::Off,
        estimator: EstimatorSettings {
            method: Method::GaussHermite,
            samples: 20_000,
            quadrature_order: 24,
        },
        seed: 1,
        output: None,
        grid_points: 64,
        refine: true,
    };
    let two = run_sweep(&spec(Topology::TwoIc), &SweepOptions::default()).map_err(|e| e.to_string())?;
    let z = run_sweep(&spec(Topology::ZIc), &SweepOptions::default()).map_err(|e| e.to_string())?;
    let worst = two
        .iter()
        .zip(&z)
        .map(|(a, b)| (a.sum_rate_bits - b.sum_rate_bits).abs())
        .fold(0.0, f64::max);
    check(
        worst <= 0.01 && two.len() == 18,
        format!(
            "{} points, max |two_ic - z_ic| = {worst:.2e} bits (tol 0.01)",
            two.len()
        ),
    )
}

fn criterion_7() -> Outcome {
    let (rot0, plain0) = optimized_sum_rate(Topology::TwoIc, 1.05, 0.0);
    let (rot8, plain8) = optimized_sum_rate(Topology::TwoIc, 1.05, FRAC_PI_8);
    let (g0, g8) = (rot0 - plain0, rot8 - plain8);
    check(
        g0 >= 0.05 && g8 <= 0.02,
        format!("gain at psi=0: {g0:.4} (>= 0.05); gain at psi=pi/8: {g8:.4} (<= 0.02)"),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let p = db_to_linear(5.0);
    let alphabet = InputAlphabet::Finite(qam4());
    let on = find_threshold(&ThresholdQuery::new(p, alphabet.clone(), FRAC_PI_4, true), &quad())
        .map_err(|e| e.to_string())?
        .h_vsi;
    let off = find_threshold(&ThresholdQuery::new(p, alphabet.clone(), FRAC_PI_4, false), &quad())
        .map_err(|e| e.to_string())?
        .h_vsi;
    let low = find_threshold(&ThresholdQuery::new(db_to_linear(-10.0), alphabet, 0.0, false), &quad())
        .map_err(|e| e.to_string())?
        .h_vsi;
    let secs = start.elapsed().as_secs_f64();
    check(
        on <= off && off <= 2.0403 && low <= 1.1 && secs <= 300.0,
        format!("on={on:.4} <= off={off:.4} <= 2.0403; P=-10dB: {low:.4} <= 1.1; {secs:.1}s"),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for i in 0..10u64 {
        let a = make_qam([4, 16][rng.gen_range(0..2)]).unwrap();
        let b = make_qam([4, 16][rng.gen_range(0..2)]).unwrap();
        let ga = C64::new(db_to_linear(rng.gen_range(0.0..12.0)).sqrt(), 0.0);
        let gb = C64::from_polar(
            ga.re * rng.gen_range(0.5..2.5),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let model = ReceiverModel::with_interferer(a.clone(), ga, b.clone(), gb);
        let cfg = mc(20_000, 1000 + i);
        let chain = mi_joint(&model, &cfg).map_err(|e| e.to_string())?;
        let direct = mi_joint_direct(&model, &cfg.with_seed(2000 + i)).map_err(|e| e.to_string())?;
        let se = chain.std_error.hypot(direct.std_error);
        let ratio = (chain.bits - direct.bits).abs() / se;
        worst = worst.max(ratio);
        if ratio > 4.0 {
            failures.push(format!(
                "model {i} ({}x{}): chain={:.4} direct={:.4} se={se:.4}",
                a.size(),
                b.size(),
                chain.bits,
                direct.bits
            ));
        }
    }
    check(
        failures.is_empty(),
        format!(
            "10 models, worst |diff|/se = {worst:.2} (tol 4) {}",
            failures.join("; ")
        ),
    )
}

fn criterion_10() -> Outcome {
    let alphabet = qam4();
    let g = db_to_linear(40.0).sqrt();
    let model = ReceiverModel::with_interferer(
        alphabet.clone(),
        C64::new(g, 0.0),
        alphabet,
        C64::from_polar(1.5 * g, FRAC_PI_8),
    );
    let joint = mi_joint(&model, &quad()).map_err(|e| e.to_string())?.bits;
    let bpsk = Constellation::new(vec![C64::new(1.0, 0.0), C64::new(-1.0, 0.0)], "BPSK").unwrap();
    let gc = C64::new(db_to_linear(40.0).sqrt(), 0.0);
    let collide = ReceiverModel::with_interferer(bpsk.clone(), gc, bpsk, gc);
    let col = mi_joint(&collide, &quad()).map_err(|e| e.to_string())?.bits;
    check(
        (joint - 4.0).abs() <= 0.05 && (col - 1.5).abs() <= 0.05,
        format!("4-QAM joint={joint:.4} (4.0±0.05); collision={col:.4} (1.5±0.05)"),
    )
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = ic_rates::cli::run(
        std::iter::once("ic-rates").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, out)
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = dir.path().join("sweep.json");
    std::fs::write(
        &config,
        r#"{"topology":"two_ic","alphabet":"qam4","power_db":[0,5],"h_abs":[1.0,1.5],"psi":[0,0.3],
            "rotation":"optimize","estimator":{"method":"monte-carlo","samples":2000},"seed":11,"grid_points":16}"#,
    )
    .map_err(|e| e.to_string())?;
    let config = config.to_str().unwrap().to_owned();
    let invocations: Vec<Vec<&str>> = vec![
        vec![
            "--method",
            "mc",
            "--samples",
            "5000",
            "--seed",
            "3",
            "mi",
            "--term",
            "cross",
            "--power-db",
            "5",
            "--h-abs",
            "1.3",
            "--rho",
            "0.2",
        ],
        vec![
            "--method",
            "mc",
            "--seed",
            "3",
            "region",
            "--topology",
            "zic",
            "--power-db",
            "5",
            "--h-abs",
            "1.5",
        ],
        vec![
            "--method",
            "quad",
            "region",
            "--power-db",
            "5",
            "--h-abs",
            "1.5",
            "--psi",
            "pi/8",
            "--phi",
            "0.1",
        ],
        vec![
            "--method",
            "mc",
            "--samples",
            "2000",
            "--seed",
            "5",
            "optimize-rotation",
            "--power-db",
            "5",
            "--h-abs",
            "1.2",
            "--grid-points",
            "16",
        ],
        vec![
            "--method",
            "mc",
            "--samples",
            "2000",
            "--seed",
            "5",
            "vsi",
            "--power-db",
            "0",
            "--json",
        ],
        vec!["--seed", "7", "--no-cache", "sweep", "--config", &config],
    ];
    for args in &invocations {
        let (c1, o1) = cli(args);
        let (c2, o2) = cli(args);
        if c1 != 0 || c2 != 0 {
            return Err(format!("{args:?} exited {c1}/{c2}"));
        }
        if o1 != o2 || o1.is_empty() {
            return Err(format!("{args:?} output differs between runs"));
        }
    }
    Ok(format!(
        "{} invocations byte-identical across repeats",
        invocations.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("oracle equivalence (MC vs quadrature)", criterion_1),
        ("Gaussian anchors", criterion_2),
        ("cross-term symmetry without rotation", criterion_3),
        ("rotated objective symmetry", criterion_4),
        ("Z-IC phase invariance with rotation", criterion_5),
        ("2-IC / Z-IC coincidence at phi=0", criterion_6),
        ("rotation gain existence", criterion_7),
        ("VSI ordering", criterion_8),
        ("chain rule vs brute force", criterion_9),
        ("high-SNR saturation", criterion_10),
        ("CLI determinism", criterion_11),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = format!("criterion {}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|x| id.ends_with(&format!(" {x}"))) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {id}: {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id}: {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
