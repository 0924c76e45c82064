//! Crossbar-native instructions as emitted by the mapper and replayed by
//! the verifier.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::crossbar::Dir;

/// Column parity addressed by a semi-global rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_column(x: usize) -> Parity {
        if x % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

/// Each cycle holds instructions of exactly one of these types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleType {
    XyRot,
    XyRotInv,
    Z,
    Shuttle,
    Twoq,
}

impl CycleType {
    pub fn name(self) -> &'static str {
        match self {
            CycleType::XyRot => "xy_rot",
            CycleType::XyRotInv => "xy_rot_inv",
            CycleType::Z => "z",
            CycleType::Shuttle => "shuttle",
            CycleType::Twoq => "twoq",
        }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Instruction {
    /// Plain one-site move.
    #[serde(rename = "sh")]
    Shuttle { q: usize, dir: Dir },
    /// Timed move to the neighbouring column; carries the Z phase.
    Zsh { q: usize, dir: Dir, angle: f64 },
    /// Return move closing a [`Instruction::Zsh`].
    ZshRet { q: usize, dir: Dir },
    /// Rotation of every qubit in the addressed column parity.
    SgRot { parity: Parity, axis: Axis, angle: f64 },
    /// Compensating rotation; `angle` is the negation of the paired `SgRot`.
    SgRotInv { parity: Parity, axis: Axis, angle: f64 },
    Sqswap { a: usize, b: usize },
}

impl Instruction {
    pub fn cycle_type(&self) -> CycleType {
        match self {
            Instruction::Shuttle { .. } | Instruction::ZshRet { .. } => CycleType::Shuttle,
            Instruction::Zsh { .. } => CycleType::Z,
            Instruction::SgRot { .. } => CycleType::XyRot,
            Instruction::SgRotInv { .. } => CycleType::XyRotInv,
            Instruction::Sqswap { .. } => CycleType::Twoq,
        }
    }

    /// The qubit moved by this instruction and the direction, for all
    /// shuttle-like kinds.
    pub fn movement(&self) -> Option<(usize, Dir)> {
        match *self {
            Instruction::Shuttle { q, dir } | Instruction::Zsh { q, dir, .. } | Instruction::ZshRet { q, dir } => {
                Some((q, dir))
            }
            _ => None,
        }
    }

    /// Qubits named as operands (not spectators of semi-global pulses).
    pub fn operands(&self) -> Vec<usize> {
        match *self {
            Instruction::Shuttle { q, .. } | Instruction::Zsh { q, .. } | Instruction::ZshRet { q, .. } => vec![q],
            Instruction::Sqswap { a, b } => vec![a, b],
            Instruction::SgRot { .. } | Instruction::SgRotInv { .. } => Vec::new(),
        }
    }

    /// Extended-QASM text for one instruction.
    pub fn to_qasm(&self) -> String {
        match *self {
            Instruction::Shuttle { q, dir } => format!("sh_{} q[{q}];", dir.letter()),
            Instruction::Zsh { q, angle, .. } => format!("zsh({angle}) q[{q}];"),
            Instruction::ZshRet { q, .. } => format!("zsh_ret q[{q}];"),
            Instruction::SgRot { parity, axis, angle } => {
                format!("sg_r{}({angle}) {};", axis_letter(axis), parity.name())
            }
            Instruction::SgRotInv { parity, axis, angle } => {
                format!("sg_r{}_inv({angle}) {};", axis_letter(axis), parity.name())
            }
            Instruction::Sqswap { a, b } => format!("sqswap q[{a}],q[{b}];"),
        }
    }
}

fn axis_letter(a: Axis) -> char {
    match a {
        Axis::X => 'x',
        Axis::Y => 'y',
    }
}

/// An instruction together with the indices of the decomposed-circuit
/// gates it was generated for.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Op {
    #[serde(flatten)]
    pub instr: Instruction,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub src: Vec<usize>,
}

impl Op {
    pub fn new(instr: Instruction, src: Vec<usize>) -> Op {
        Op { instr, src }
    }
}
