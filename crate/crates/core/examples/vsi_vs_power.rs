//! Threshold gain as a function of transmit power, with and without
//! rotation, next to the Gaussian reference. Prints CSV.
//!
//! Usage: `cargo run --release --example vsi_vs_power -- [P_dB ...]`.

use std::f64::consts::FRAC_PI_4;

use ic_rates::constellation::make_qam;
use ic_rates::vsi::{find_threshold, gaussian_vsi, ThresholdQuery};
use ic_rates::{db_to_linear, EstimatorConfig, InputAlphabet, Result};

pub fn run_example(powers_db: &[f64]) -> Result<()> {
    let cfg = EstimatorConfig::quadrature(24);
    let qam4 = InputAlphabet::Finite(make_qam(4)?);
    println!("P_dB,psi,rotation,h_vsi,gaussian");
    for &p_db in powers_db {
        let power = db_to_linear(p_db);
        for psi in [0.0, FRAC_PI_4] {
            for rotation in [false, true] {
                let r = find_threshold(&ThresholdQuery::new(power, qam4.clone(), psi, rotation), &cfg)?;
                println!("{p_db},{psi},{rotation},{},{}", r.h_vsi, gaussian_vsi(power));
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let powers = if args.is_empty() {
        (0..13).map(|i| -10.0 + 5.0 * i as f64).collect()
    } else {
        args
    };
    run_example(&powers)
}
