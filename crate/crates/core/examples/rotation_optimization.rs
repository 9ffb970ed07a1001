//! Searches the rotation of transmitter two that maximizes the sum-rate
//! objective, for several channel phases.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use ic_rates::constellation::make_qam;
use ic_rates::region::{finite_region, max_sum_rate};
use ic_rates::rotation::{canonical_psi, optimize_rotation};
use ic_rates::{db_to_linear, ChannelConfig, EstimatorConfig, ObjectiveKind, Result, RotationSearch, Topology};

pub fn run_example() -> Result<()> {
    let qam4 = make_qam(4)?;
    let cfg = EstimatorConfig::quadrature(24);
    let search = RotationSearch::default();
    for topology in [Topology::ZIc, Topology::TwoIc] {
        println!("{topology}, 4-QAM, P = 5 dB, |h| = 1.05");
        for psi in [0.0, FRAC_PI_8, FRAC_PI_4] {
            let ch = ChannelConfig::new(topology, 1.05, psi, 0.0, db_to_linear(5.0))?;
            let best = optimize_rotation(&ch, &qam4, ObjectiveKind::for_topology(topology), &search, &cfg)?;
            let plain = max_sum_rate(&finite_region(&ch, &qam4, &cfg)?);
            let rotated = max_sum_rate(&finite_region(&ch.with_phi(best.phi_star), &qam4, &cfg)?);
            println!(
                "  psi {psi:.4} (canonical {:.4}): phi* = {:.4}, sum rate {plain:.4} -> {rotated:.4}",
                canonical_psi(psi, qam4.period(), true),
                best.phi_star
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
