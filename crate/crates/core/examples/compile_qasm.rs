//! Parse OpenQASM, compile onto the crossbar, verify, and print the
//! cycle-annotated instruction listing.
//!
//! `cargo run --example compile_qasm -- [file.qasm]`

use crossbar_mapper::frontend::{parse_qasm, schedule_qasm, ArchConfig};
use crossbar_mapper::pipeline::compile_circuit;

const GHZ: &str = r#"OPENQASM 2.0;
include "qelib1.inc";
qreg q[4];
h q[0];
cx q[0],q[1];
cx q[1],q[2];
cx q[2],q[3];
rz(pi/4) q[3];
"#;

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).expect("readable input"),
        None => GHZ.to_string(),
    };
    let parsed = parse_qasm(&text).unwrap_or_else(|e| panic!("{e}"));
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    let cfg = ArchConfig::default();
    let out = compile_circuit(&parsed.circuit, &cfg).expect("compiles");
    let report = out.verify(&cfg);
    println!("{}", schedule_qasm(&out.schedule));
    println!("// replay ok: {}, equivalence: {:?}", report.replay_ok, report.equivalence_fidelity);
}
