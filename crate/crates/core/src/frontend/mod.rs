//! Input parsing (QASM subset, architecture config) and output emission.

pub mod config;
mod expr;
pub mod emit;
pub mod qasm;

pub use config::{load_config, ArchConfig, ConfigError, Fidelities, FidelityParams, TemplateGate, DEFAULT_SEED};
pub use expr::eval_angle;
pub use qasm::{parse_qasm, parse_qasm_named, ParseError, ParsedCircuit, MEASUREMENT_DROPPED};
pub use emit::{circuit_qasm, emit_output, parse_schedule_doc, schedule_qasm};
