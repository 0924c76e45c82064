//! A small benchmark sweep written as CSV to stdout.
//!
//! `cargo run --release --example sweep`

use crossbar_mapper::frontend::ArchConfig;
use crossbar_mapper::sweep::{run_sweep, write_csv, SweepSpec};

fn main() {
    let spec = SweepSpec {
        qubits: vec![4, 9, 16],
        gates: vec![100, 300],
        twoq_pct: vec![0.0, 50.0, 100.0],
        seeds: 2,
        base_seed: 7,
    };
    let rows = run_sweep(&spec, &ArchConfig::default(), true);
    write_csv(&rows, std::io::stdout().lock()).expect("stdout");
}
