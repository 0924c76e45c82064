//! Compiler from hardware-agnostic quantum circuits to the shared-control
//! spin-qubit crossbar: decomposition, checkerboard placement, shuttle-based
//! routing, conflict-aware scheduling, verification and metrics.
//!
//! ```
//! use crossbar_mapper::{circuit::{Circuit, Gate}, frontend::ArchConfig, pipeline::compile_circuit};
//!
//! let c = Circuit::with_gates("bell", 2, vec![Gate::new(crossbar_mapper::circuit::GateKind::H, &[0]), Gate::cnot(0, 1)]);
//! let out = compile_circuit(&c, &ArchConfig::default()).unwrap();
//! assert!(out.verify(&ArchConfig::default()).replay_ok);
//! ```

pub mod benchgen;
pub mod circuit;
pub mod cli;
pub mod crossbar;
pub mod frontend;
pub mod instruction;
pub mod ir;
pub mod mapper;
pub mod metrics;
pub mod pipeline;
pub mod scheduler;
pub mod sim;
pub mod sweep;
pub mod verifier;
