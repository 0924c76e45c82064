//! ESP of compiled Bernstein–Vazirani instances as the register grows.
//!
//! `cargo run --release --example bv_esp -- [max_qubits]`

use crossbar_mapper::benchgen::{sparse_secret, gen_bernstein_vazirani};
use crossbar_mapper::frontend::ArchConfig;
use crossbar_mapper::pipeline::compile_circuit;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(40);
    let cfg = ArchConfig::default();
    println!("{:>6} {:>8} {:>8} {:>10}", "qubits", "gates", "depth", "esp");
    for n in 2..=max {
        let c = gen_bernstein_vazirani(n, &sparse_secret(n - 1)).expect("valid secret");
        let out = compile_circuit(&c, &cfg).expect("compiles");
        let m = out.metrics(&cfg).expect("non-empty");
        println!("{n:>6} {:>8} {:>8} {:>10.6}", m.n_final, m.d_final, m.esp);
    }
}
