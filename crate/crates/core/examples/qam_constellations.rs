//! Builds the square QAM alphabets and inspects their geometry: rotation
//! period, rotated copies and the superposition seen by a receiver.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use ic_rates::constellation::{make_qam, min_superposition_distance, rotate, set_equal, superposition, SET_TOL};
use ic_rates::{Constellation, Result, C64};

pub fn run_example() -> Result<()> {
    for m in [4, 16, 64] {
        let c = make_qam(m)?;
        println!(
            "{:>7}: {} points, mean energy {:.12}, period {:.6} rad",
            c.label(),
            c.size(),
            c.mean_energy(),
            c.period()
        );
    }

    let qam4 = make_qam(4)?;
    let turned = rotate(&qam4, FRAC_PI_4);
    println!("4-QAM rotated by pi/4:");
    for p in turned.points() {
        println!("  {:+.6} {:+.6}i", p.re, p.im);
    }
    println!(
        "rotation by pi/2 maps 4-QAM onto itself: {}",
        set_equal(rotate(&qam4, qam4.period()).points(), qam4.points(), SET_TOL)
    );

    let gain = C64::from_polar(2.0, FRAC_PI_8);
    println!(
        "superposition with gain 2e^(i pi/8): {} points, min distance {:.4}",
        superposition(&qam4, &qam4, gain).len(),
        min_superposition_distance(&qam4, &qam4, gain)
    );

    let bpsk = Constellation::new(vec![C64::new(1.0, 0.0), C64::new(-1.0, 0.0)], "BPSK")?;
    println!(
        "BPSK + BPSK with equal gains collides: min distance {}",
        min_superposition_distance(&bpsk, &bpsk, C64::new(1.0, 0.0))
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
