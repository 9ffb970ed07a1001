//! Locates the gain above which interference no longer limits the rates.

use std::f64::consts::FRAC_PI_4;

use ic_rates::constellation::make_qam;
use ic_rates::vsi::{find_threshold, ThresholdQuery};
use ic_rates::{db_to_linear, EstimatorConfig, InputAlphabet, Result};

pub fn run_example() -> Result<()> {
    let cfg = EstimatorConfig::quadrature(24);
    let power = db_to_linear(5.0);
    let gaussian = find_threshold(&ThresholdQuery::new(power, InputAlphabet::Gaussian, 0.0, false), &cfg)?;
    println!("Gaussian inputs, P = 5 dB: h_vsi = {:.5}", gaussian.h_vsi);

    let qam4 = InputAlphabet::Finite(make_qam(4)?);
    for rotation in [false, true] {
        let q = ThresholdQuery::new(power, qam4.clone(), FRAC_PI_4, rotation);
        let r = find_threshold(&q, &cfg)?;
        println!(
            "4-QAM, psi = pi/4, rotation {}: h_vsi = {:.4} in [{:.4}, {:.4}] after {} evaluations ({:?})",
            if rotation { "on " } else { "off" },
            r.h_vsi,
            r.bracket.0,
            r.bracket.1,
            r.evaluations,
            r.method
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
