//! Overriding fidelities and a decomposition rule through a JSON config.
//!
//! `cargo run --example custom_config`

use crossbar_mapper::benchgen::gen_bernstein_vazirani;
use crossbar_mapper::frontend::{load_config, ArchConfig};
use crossbar_mapper::pipeline::compile_circuit;

const CONFIG: &str = r#"{
  "seed": 11,
  "fidelities": { "shuttle": { "mean": 0.9999, "std": 0.0 } },
  "decompositions": {
    "h": [
      { "kind": "ry", "angle": "pi/2", "operand_roles": [0] },
      { "kind": "rx", "angle": "pi", "operand_roles": [0] }
    ]
  }
}"#;

fn main() {
    let c = gen_bernstein_vazirani(6, "10110").expect("valid secret");
    for (label, cfg) in [("default", ArchConfig::default()), ("custom", load_config(CONFIG).expect("valid config"))] {
        let out = compile_circuit(&c, &cfg).expect("compiles");
        let m = out.metrics(&cfg).expect("non-empty");
        let v = out.verify(&cfg);
        println!(
            "{label:<8} decomposed={:<4} final={:<4} depth={:<4} esp={:.5} equivalent={:?}",
            m.n_decomposed, m.n_final, m.d_final, m.esp, v.equivalence_fidelity.and_then(|e| e.fidelity())
        );
    }
}
