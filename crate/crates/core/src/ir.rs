//! Decomposition to the native gate set, dependency depth, gate counts and
//! the qubit interaction graph.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::frontend::ArchConfig;

#[derive(Debug, Error, PartialEq)]
pub enum IrError {
    #[error("no decomposition rule for {0}")]
    MissingRule(GateKind),
    #[error("rule for {kind} uses operand role {role} but the gate has {arity} operands")]
    BadRole { kind: GateKind, role: usize, arity: usize },
    #[error("empty circuit")]
    EmptyCircuit,
}

/// Rewrites every non-native gate with its template from `config`.
pub fn decompose(circuit: &Circuit, config: &ArchConfig) -> Result<Circuit, IrError> {
    let mut out = Circuit::new(circuit.name.clone(), circuit.n_qubits);
    for g in &circuit.gates {
        if g.kind.is_native() {
            out.push(g.clone());
            continue;
        }
        let rule = config.decompositions.get(&g.kind).ok_or(IrError::MissingRule(g.kind))?;
        for t in rule {
            let mut qubits = Vec::with_capacity(t.operand_roles.len());
            for &role in &t.operand_roles {
                let q = g.qubits.get(role).ok_or(IrError::BadRole { kind: g.kind, role, arity: g.qubits.len() })?;
                qubits.push(*q);
            }
            out.push(Gate { kind: t.kind, angle: t.angle, qubits });
        }
    }
    Ok(out)
}

/// ASAP layer of every gate when only shared operands order gates.
pub fn asap_layers(circuit: &Circuit) -> Vec<usize> {
    let mut ready = vec![0usize; circuit.n_qubits];
    circuit
        .gates
        .iter()
        .map(|g| {
            let layer = g.qubits.iter().map(|&q| ready[q]).max().unwrap_or(0);
            for &q in &g.qubits {
                ready[q] = layer + 1;
            }
            layer
        })
        .collect()
}

/// Length of the ASAP schedule that respects only gate dependencies.
pub fn dependency_depth(circuit: &Circuit) -> Result<usize, IrError> {
    if circuit.is_empty() {
        return Err(IrError::EmptyCircuit);
    }
    Ok(asap_layers(circuit).into_iter().max().unwrap() + 1)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsByType {
    pub n_xy: usize,
    pub n_z: usize,
    pub n_twoq: usize,
    pub n_total: usize,
}

impl CountsByType {
    /// Counts a decomposed circuit. Non-native gates are counted only in
    /// `n_total`.
    pub fn of(circuit: &Circuit) -> CountsByType {
        let mut c = CountsByType { n_total: circuit.len(), ..Default::default() };
        for g in &circuit.gates {
            match g.kind {
                GateKind::Rx | GateKind::Ry => c.n_xy += 1,
                GateKind::Rz => c.n_z += 1,
                GateKind::SqSwap => c.n_twoq += 1,
                _ => {}
            }
        }
        c
    }

    /// Two-qubit gates per 100 single-qubit gates; `None` when there are
    /// two-qubit gates but no single-qubit ones.
    pub fn twoq_ratio_pct(&self) -> Option<f64> {
        let single = self.n_xy + self.n_z;
        match (single, self.n_twoq) {
            (0, 0) => Some(0.0),
            (0, _) => None,
            _ => Some(100.0 * self.n_twoq as f64 / single as f64),
        }
    }

    /// Two-qubit gates per 100 gates.
    pub fn twoq_share_pct(&self) -> f64 {
        pct(self.n_twoq, self.n_total)
    }

    pub fn xy_share_pct(&self) -> f64 {
        pct(self.n_xy, self.n_total)
    }
}

fn pct(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        100.0 * a as f64 / b as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QigEdge {
    pub a: usize,
    pub b: usize,
    pub w: usize,
}

/// Qubit interaction graph: one weighted edge per interacting pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Qig {
    pub nodes: Vec<usize>,
    pub edges: Vec<QigEdge>,
}

impl Qig {
    pub fn total_weight(&self) -> usize {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn weight(&self, a: usize, b: usize) -> usize {
        let (a, b) = (a.min(b), a.max(b));
        self.edges.iter().find(|e| e.a == a && e.b == b).map_or(0, |e| e.w)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let id: String = name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
        let _ = writeln!(s, "graph {} {{", if id.is_empty() { "qig".into() } else { id });
        for n in &self.nodes {
            let _ = writeln!(s, "  q{n};");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  q{} -- q{} [weight={}, label=\"{}\"];", e.a, e.b, e.w, e.w);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.edges).expect("edge list serializes")
    }
}

pub fn interaction_graph(circuit: &Circuit) -> Qig {
    let mut w: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for g in &circuit.gates {
        if g.qubits.len() == 2 {
            let (a, b) = (g.qubits[0].min(g.qubits[1]), g.qubits[0].max(g.qubits[1]));
            *w.entry((a, b)).or_insert(0) += 1;
        }
    }
    Qig {
        nodes: (0..circuit.n_qubits).collect(),
        edges: w.into_iter().map(|((a, b), w)| QigEdge { a, b, w }).collect(),
    }
}
