//! Evaluates the three mutual-information terms of one receiver with both
//! expectation backends.

use std::f64::consts::FRAC_PI_8;

use ic_rates::constellation::make_qam;
use ic_rates::mi::{mi_cross, mi_joint, mi_joint_direct, mi_single};
use ic_rates::{db_to_linear, EstimatorConfig, ReceiverModel, Result};

pub fn run_example() -> Result<()> {
    let qam4 = make_qam(4)?;
    let power = db_to_linear(5.0);
    let model = ReceiverModel::symmetric(&qam4, power, 1.5, FRAC_PI_8);

    let backends = [
        ("quadrature, order 24", EstimatorConfig::quadrature(24)),
        ("monte carlo, 20000 draws", EstimatorConfig::monte_carlo(20_000, 1)),
    ];
    println!("4-QAM, P = 5 dB, |h| = 1.5, rho = pi/8");
    for (name, cfg) in backends {
        let single = mi_single(&qam4, model.gain_a, &cfg)?;
        let cross = mi_cross(&model, &cfg)?;
        let joint = mi_joint(&model, &cfg)?;
        let direct = mi_joint_direct(&model, &cfg)?;
        println!("{name}:");
        println!("  I(Y;X1|X2) = {:.5} ± {:.5}", single.bits, single.std_error);
        println!("  I(Y;X2)    = {:.5} ± {:.5}", cross.bits, cross.std_error);
        println!(
            "  I(Y;X1,X2) = {:.5} (chain rule), {:.5} (direct)",
            joint.bits, direct.bits
        );
    }

    println!("SNR sweep of I(Y;X1|X2):");
    for p_db in [-10.0, 0.0, 10.0, 20.0] {
        let gain = ic_rates::C64::new(db_to_linear(p_db).sqrt(), 0.0);
        let bits = |m| -> Result<f64> { Ok(mi_single(&make_qam(m)?, gain, &EstimatorConfig::quadrature(24))?.bits) };
        println!("  {p_db:>5} dB: 4-QAM {:.4}, 16-QAM {:.4}", bits(4)?, bits(16)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
