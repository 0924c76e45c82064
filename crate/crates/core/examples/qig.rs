//! Qubit interaction graph of a random circuit, in Graphviz dot.
//!
//! `cargo run --example qig | dot -Tsvg > qig.svg`

use crossbar_mapper::benchgen::{gen_random_uniform, BenchSpec};
use crossbar_mapper::ir::interaction_graph;

fn main() {
    let spec = BenchSpec { n_qubits: 6, n_gates: 60, twoq_pct: 50.0, seed: 1 };
    let c = gen_random_uniform(&spec).expect("valid spec");
    let g = interaction_graph(&c);
    eprintln!("{} edges, total weight {}", g.edges.len(), g.total_weight());
    print!("{}", g.to_dot(&spec.name()));
}
