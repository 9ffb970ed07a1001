//! Rate regions of the Z channel and the full interference channel,
//! compared with the Gaussian-input capacity region.

use ic_rates::constellation::make_qam;
use ic_rates::region::{finite_region, gaussian_region, max_sum_rate, vertices};
use ic_rates::{db_to_linear, ChannelConfig, EstimatorConfig, RateRegion, Result, Topology};

fn show(name: &str, r: &RateRegion) {
    println!("{name}:");
    println!("  R1 <= {:.4}, R2 <= {:.4}", r.r1_max, r.r2_max);
    print!("  R1 + R2 <= {:.4}", r.sum_rx1);
    if let Some(s) = r.sum_rx2 {
        print!(", R1 + R2 <= {s:.4}");
    }
    println!("  -> max sum rate {:.4}", max_sum_rate(r));
    let corners: Vec<String> = vertices(r).iter().map(|(a, b)| format!("({a:.3}, {b:.3})")).collect();
    println!("  vertices {}", corners.join(" "));
}

pub fn run_example() -> Result<()> {
    let qam4 = make_qam(4)?;
    let power = db_to_linear(5.0);
    let cfg = EstimatorConfig::quadrature(24);
    for h in [1.0, 1.5, 2.5] {
        println!("--- |h| = {h}, psi = 0.3, P = 5 dB");
        let z = ChannelConfig::new(Topology::ZIc, h, 0.3, 0.0, power)?;
        show("Z channel, 4-QAM", &finite_region(&z, &qam4, &cfg)?);
        let two = ChannelConfig::new(Topology::TwoIc, h, 0.3, 0.2, power)?;
        show(
            "interference channel, 4-QAM, phi = 0.2",
            &finite_region(&two, &qam4, &cfg)?,
        );
        show("Gaussian inputs", &gaussian_region(h, power)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
