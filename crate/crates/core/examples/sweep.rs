//! Runs a sweep config and writes the CSV table.
//!
//! Usage: `cargo run --release --example sweep -- [config.json] [out.csv]`.
//! Without arguments a reduced version of `configs/fig3.json` is printed.

use std::path::PathBuf;

use ic_rates::sweep::{gnuplot_hint, run_sweep, to_csv_string, SweepOptions, SweepSpec};
use ic_rates::Result;

pub fn run_example(config: Option<PathBuf>, out: Option<PathBuf>) -> Result<()> {
    let mut spec = match config {
        Some(path) => SweepSpec::from_file(&path)?,
        None => {
            let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs/fig3.json");
            let mut spec = SweepSpec::from_file(&path)?;
            spec.h_abs = vec![1.0, 1.5, 2.0, 2.5, 3.0];
            spec
        }
    };
    if out.is_some() {
        spec.output = out;
    }
    let records = run_sweep(
        &spec,
        &SweepOptions {
            cache: None,
            parallel: true,
        },
    )?;
    match &spec.output {
        Some(path) => {
            println!("wrote {} rows to {}", records.len(), path.display());
            print!("{}", gnuplot_hint(&path.display().to_string()));
        }
        None => print!("{}", to_csv_string(&records)?),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let mut args = std::env::args_os().skip(1).map(PathBuf::from);
    run_example(args.next(), args.next())
}
