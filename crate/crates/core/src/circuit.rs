//! Logical circuits over virtual qubits, before and after decomposition.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Gate kinds understood by the front end. The first four are native to the
/// crossbar; everything else must be decomposed before mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    #[serde(rename = "sqswap")]
    SqSwap,
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    #[serde(rename = "cx")]
    Cnot,
    Cz,
}

impl GateKind {
    pub const ALL: [GateKind; 14] = [
        GateKind::Rx,
        GateKind::Ry,
        GateKind::Rz,
        GateKind::SqSwap,
        GateKind::H,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Cnot,
        GateKind::Cz,
    ];

    pub fn is_native(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::SqSwap)
    }

    pub fn is_rotation(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz)
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::SqSwap | GateKind::Cnot | GateKind::Cz => 2,
            _ => 1,
        }
    }

    /// Lower-case QASM mnemonic.
    pub fn name(self) -> &'static str {
        match self {
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::SqSwap => "sqswap",
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Cnot => "cx",
            GateKind::Cz => "cz",
        }
    }

    pub fn from_name(name: &str) -> Option<GateKind> {
        GateKind::ALL.iter().copied().find(|k| k.name() == name)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
    pub qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: &[usize]) -> Gate {
        Gate { kind, angle: None, qubits: qubits.to_vec() }
    }

    pub fn rotation(kind: GateKind, angle: f64, qubit: usize) -> Gate {
        Gate { kind, angle: Some(angle), qubits: vec![qubit] }
    }

    pub fn rx(angle: f64, q: usize) -> Gate {
        Gate::rotation(GateKind::Rx, angle, q)
    }

    pub fn ry(angle: f64, q: usize) -> Gate {
        Gate::rotation(GateKind::Ry, angle, q)
    }

    pub fn rz(angle: f64, q: usize) -> Gate {
        Gate::rotation(GateKind::Rz, angle, q)
    }

    pub fn sqswap(a: usize, b: usize) -> Gate {
        Gate::new(GateKind::SqSwap, &[a, b])
    }

    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::new(GateKind::Cnot, &[control, target])
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(a) = self.angle {
            write!(f, "({a})")?;
        }
        let ops: Vec<String> = self.qubits.iter().map(|q| format!("q[{q}]")).collect();
        write!(f, " {}", ops.join(","))
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CircuitError {
    #[error("gate {index} ({kind}): operand {qubit} outside register of {n_qubits}")]
    OperandOutOfRange { index: usize, kind: GateKind, qubit: usize, n_qubits: usize },
    #[error("gate {index} ({kind}): expected {expected} operands, got {got}")]
    Arity { index: usize, kind: GateKind, expected: usize, got: usize },
    #[error("gate {index} ({kind}): repeated operand {qubit}")]
    RepeatedOperand { index: usize, kind: GateKind, qubit: usize },
    #[error("gate {index} ({kind}): angle must be present exactly for rotations")]
    Angle { index: usize, kind: GateKind },
    #[error("circuit needs at least one qubit")]
    NoQubits,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub name: String,
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(name: impl Into<String>, n_qubits: usize) -> Circuit {
        Circuit { name: name.into(), n_qubits, gates: Vec::new() }
    }

    pub fn with_gates(name: impl Into<String>, n_qubits: usize, gates: Vec<Gate>) -> Circuit {
        Circuit { name: name.into(), n_qubits, gates }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn is_native(&self) -> bool {
        self.gates.iter().all(|g| g.kind.is_native())
    }

    /// Checks operand bounds, arity, distinct operands and angle presence.
    pub fn validate(&self) -> Result<(), CircuitError> {
        if self.n_qubits == 0 {
            return Err(CircuitError::NoQubits);
        }
        for (index, g) in self.gates.iter().enumerate() {
            let expected = g.kind.arity();
            if g.qubits.len() != expected {
                return Err(CircuitError::Arity { index, kind: g.kind, expected, got: g.qubits.len() });
            }
            if g.angle.is_some() != g.kind.is_rotation() {
                return Err(CircuitError::Angle { index, kind: g.kind });
            }
            for &q in &g.qubits {
                if q >= self.n_qubits {
                    return Err(CircuitError::OperandOutOfRange {
                        index,
                        kind: g.kind,
                        qubit: q,
                        n_qubits: self.n_qubits,
                    });
                }
            }
            if expected == 2 && g.qubits[0] == g.qubits[1] {
                return Err(CircuitError::RepeatedOperand { index, kind: g.kind, qubit: g.qubits[0] });
            }
        }
        Ok(())
    }
}
