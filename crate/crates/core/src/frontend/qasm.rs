//! OPENQASM 2.0 subset reader.
//!
//! Accepted statements: `OPENQASM 2.x;`, `include "...";` (ignored),
//! one `qreg`, any number of `creg` (ignored), calls to the gates in
//! [`GateKind`], and `measure`. Measurements are dropped with a warning;
//! the mapped program ends with an implicit measure-all.

use thiserror::Error;

use super::expr::eval_angle;
use crate::circuit::{Circuit, Gate, GateKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown gate `{name}`")]
    UnknownGate { line: usize, name: String },
    #[error("line {line}: operand {register}[{index}] outside register of size {size}")]
    OperandOutOfRange { line: usize, register: String, index: usize, size: usize },
    #[error("line {line}: only one qreg is supported")]
    MultipleQregs { line: usize },
    #[error("line {line}: {msg}")]
    Semantic { line: usize, msg: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::UnknownGate { line, .. }
            | ParseError::OperandOutOfRange { line, .. }
            | ParseError::MultipleQregs { line }
            | ParseError::Semantic { line, .. } => *line,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCircuit {
    pub circuit: Circuit,
    pub warnings: Vec<String>,
}

pub const MEASUREMENT_DROPPED: &str = "measurement dropped";

/// Parses QASM text into a circuit named `circuit`.
pub fn parse_qasm(text: &str) -> Result<ParsedCircuit, ParseError> {
    parse_qasm_named(text, "circuit")
}

pub fn parse_qasm_named(text: &str, name: &str) -> Result<ParsedCircuit, ParseError> {
    let mut st = State::default();
    for (line, stmt) in statements(text)? {
        st.statement(line, &stmt)?;
    }
    let Some((_, n_qubits)) = st.qreg else {
        return Err(ParseError::Semantic { line: 1, msg: "no qreg declared".into() });
    };
    if st.measured {
        st.warnings.push(MEASUREMENT_DROPPED.to_string());
    }
    Ok(ParsedCircuit { circuit: Circuit::with_gates(name, n_qubits, st.gates), warnings: st.warnings })
}

/// Splits the source into `;`-terminated statements tagged with the line
/// on which each one starts. Comments are stripped first.
fn statements(text: &str) -> Result<Vec<(usize, String)>, ParseError> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start_line = 0;
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let code = match raw.find("//") {
            Some(p) => &raw[..p],
            None => raw,
        };
        for ch in code.chars() {
            if ch == ';' {
                let s = current.trim().to_string();
                if s.is_empty() {
                    return Err(ParseError::Syntax { line: line_no, msg: "empty statement".into() });
                }
                out.push((start_line, s));
                current.clear();
                start_line = 0;
            } else {
                if start_line == 0 && !ch.is_whitespace() {
                    start_line = line_no;
                }
                current.push(ch);
            }
        }
        current.push(' ');
    }
    if !current.trim().is_empty() {
        return Err(ParseError::Syntax {
            line: if start_line == 0 { last_line } else { start_line },
            msg: "missing `;` at end of statement".into(),
        });
    }
    Ok(out)
}

#[derive(Default)]
struct State {
    qreg: Option<(String, usize)>,
    cregs: Vec<(String, usize)>,
    gates: Vec<Gate>,
    warnings: Vec<String>,
    measured: bool,
    seen_header: bool,
}

/// Operand reference: a single qubit or a whole register (broadcast).
enum Operand {
    Bit(usize),
    Register,
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl State {
    fn statement(&mut self, line: usize, stmt: &str) -> Result<(), ParseError> {
        let syntax = |msg: &str| ParseError::Syntax { line, msg: msg.to_string() };
        let (head, rest) = match stmt.find(|c: char| c.is_whitespace() || c == '(') {
            Some(p) => (&stmt[..p], stmt[p..].trim_start()),
            None => (stmt, ""),
        };
        match head {
            "OPENQASM" => {
                if self.seen_header || self.qreg.is_some() || !self.gates.is_empty() {
                    return Err(syntax("OPENQASM header must come first"));
                }
                if !rest.starts_with("2.") && rest != "2" {
                    return Err(syntax(&format!("unsupported OPENQASM version `{rest}`")));
                }
                self.seen_header = true;
                Ok(())
            }
            "include" => {
                if rest.len() < 2 || !rest.starts_with('"') || !rest.ends_with('"') {
                    return Err(syntax("include expects a quoted file name"));
                }
                Ok(())
            }
            "qreg" | "creg" => {
                let (id, size) = parse_decl(rest).ok_or_else(|| syntax("expected `<id>[<size>]`"))?;
                if head == "qreg" {
                    if self.qreg.is_some() {
                        return Err(ParseError::MultipleQregs { line });
                    }
                    if size == 0 {
                        return Err(syntax("qreg size must be positive"));
                    }
                    self.qreg = Some((id, size));
                } else {
                    self.cregs.push((id, size));
                }
                Ok(())
            }
            "measure" => {
                let (src, dst) = rest.split_once("->").ok_or_else(|| syntax("measure expects `a -> b`"))?;
                self.operand(line, src.trim())?;
                let dst = dst.trim();
                let (name, idx) = split_ref(dst).ok_or_else(|| syntax("bad measure target"))?;
                let Some(&(_, size)) = self.cregs.iter().find(|(n, _)| *n == name) else {
                    return Err(ParseError::Semantic { line, msg: format!("unknown creg `{name}`") });
                };
                if let Some(i) = idx {
                    if i >= size {
                        return Err(ParseError::OperandOutOfRange { line, register: name, index: i, size });
                    }
                }
                self.measured = true;
                Ok(())
            }
            _ => self.gate_call(line, head, rest),
        }
    }

    fn gate_call(&mut self, line: usize, name: &str, rest: &str) -> Result<(), ParseError> {
        let syntax = |msg: &str| ParseError::Syntax { line, msg: msg.to_string() };
        if !is_ident(name) {
            return Err(syntax(&format!("unexpected `{name}`")));
        }
        let Some(kind) = GateKind::from_name(name) else {
            return Err(ParseError::UnknownGate { line, name: name.to_string() });
        };
        let (angle, args) = if let Some(after) = rest.strip_prefix('(') {
            let close = after.find(')').ok_or_else(|| syntax("missing `)`"))?;
            let a = eval_angle(&after[..close]).map_err(|m| syntax(&m))?;
            (Some(a), after[close + 1..].trim())
        } else {
            (None, rest)
        };
        if angle.is_some() != kind.is_rotation() {
            return Err(if kind.is_rotation() {
                syntax(&format!("`{name}` needs an angle"))
            } else {
                syntax(&format!("`{name}` takes no angle"))
            });
        }
        if args.is_empty() {
            return Err(syntax("missing operands"));
        }
        let operands: Vec<Operand> =
            args.split(',').map(|a| self.operand(line, a.trim())).collect::<Result<_, _>>()?;
        if operands.len() != kind.arity() {
            return Err(syntax(&format!(
                "`{name}` takes {} operand(s), got {}",
                kind.arity(),
                operands.len()
            )));
        }
        match (kind.arity(), operands.as_slice()) {
            (1, [Operand::Bit(q)]) => self.gates.push(Gate { kind, angle, qubits: vec![*q] }),
            (1, [Operand::Register]) => {
                let n = self.qreg.as_ref().map(|r| r.1).unwrap_or(0);
                for q in 0..n {
                    self.gates.push(Gate { kind, angle, qubits: vec![q] });
                }
            }
            (2, [Operand::Bit(a), Operand::Bit(b)]) => {
                if a == b {
                    return Err(ParseError::Semantic { line, msg: format!("`{name}` operands must differ") });
                }
                self.gates.push(Gate { kind, angle, qubits: vec![*a, *b] });
            }
            _ => return Err(syntax("register broadcast is only supported for single-qubit gates")),
        }
        Ok(())
    }

    fn operand(&self, line: usize, text: &str) -> Result<Operand, ParseError> {
        let Some((reg, size)) = self.qreg.clone() else {
            return Err(ParseError::Semantic { line, msg: "operand used before qreg declaration".into() });
        };
        let (name, idx) =
            split_ref(text).ok_or_else(|| ParseError::Syntax { line, msg: format!("bad operand `{text}`") })?;
        if name != reg {
            return Err(ParseError::Semantic { line, msg: format!("unknown qreg `{name}`") });
        }
        match idx {
            None => Ok(Operand::Register),
            Some(i) if i < size => Ok(Operand::Bit(i)),
            Some(i) => Err(ParseError::OperandOutOfRange { line, register: name, index: i, size }),
        }
    }
}

fn parse_decl(rest: &str) -> Option<(String, usize)> {
    let (name, idx) = split_ref(rest)?;
    Some((name, idx?))
}

/// `name` or `name[index]`.
fn split_ref(text: &str) -> Option<(String, Option<usize>)> {
    let text = text.trim();
    match text.find('[') {
        None => is_ident(text).then(|| (text.to_string(), None)),
        Some(p) => {
            let name = text[..p].trim();
            let inner = text[p + 1..].strip_suffix(']')?.trim();
            if !is_ident(name) {
                return None;
            }
            Some((name.to_string(), Some(inner.parse().ok()?)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_cnot() {
        let p = parse_qasm("qreg q[2]; cx q[0],q[1];").unwrap();
        assert_eq!(p.circuit.n_qubits, 2);
        assert_eq!(p.circuit.gates, vec![Gate::cnot(0, 1)]);
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn zero_angle_rotation() {
        let p = parse_qasm("qreg q[1]; rz(0) q[0];").unwrap();
        assert_eq!(p.circuit.gates, vec![Gate::rz(0.0, 0)]);
    }

    #[test]
    fn measurement_is_dropped_with_warning() {
        let p = parse_qasm("qreg q[3]; creg c[3]; h q[0]; cx q[0],q[2]; measure q -> c;").unwrap();
        assert_eq!(p.circuit.n_qubits, 3);
        assert_eq!(p.circuit.gates, vec![Gate::new(GateKind::H, &[0]), Gate::cnot(0, 2)]);
        assert_eq!(p.warnings, vec![MEASUREMENT_DROPPED.to_string()]);
    }

    #[test]
    fn full_header_and_comments() {
        let src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n// comment\nqreg q[2];\nrx(pi/2) q[1]; // trailing\nsqswap q[1],q[0];\n";
        let p = parse_qasm(src).unwrap();
        assert_eq!(p.circuit.gates, vec![Gate::rx(std::f64::consts::FRAC_PI_2, 1), Gate::sqswap(1, 0)]);
    }

    #[test]
    fn broadcast_single_qubit_gate() {
        let p = parse_qasm("qreg q[3]; h q;").unwrap();
        assert_eq!(p.circuit.len(), 3);
        assert_eq!(p.circuit.gates[2].qubits, vec![2]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_qasm("qreg q[2];\nfoo q[0];").unwrap_err();
        assert_eq!(e, ParseError::UnknownGate { line: 2, name: "foo".into() });

        let e = parse_qasm("qreg q[2];\n\ncx q[0],q[2];").unwrap_err();
        assert!(matches!(e, ParseError::OperandOutOfRange { line: 3, index: 2, size: 2, .. }));

        let e = parse_qasm("qreg q[2];\nqreg r[2];").unwrap_err();
        assert_eq!(e, ParseError::MultipleQregs { line: 2 });

        let e = parse_qasm("qreg q[2];\nh q[0]").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 2, .. }));

        let e = parse_qasm("qreg q[2];\nrx q[0];").unwrap_err();
        assert_eq!(e.line(), 2);

        let e = parse_qasm("qreg q[2];\ncx q[1],q[1];").unwrap_err();
        assert_eq!(e.line(), 2);
    }

    #[test]
    fn rejects_unsupported_constructs() {
        assert!(parse_qasm("OPENQASM 3.0; qreg q[1];").is_err());
        assert!(parse_qasm("qreg q[1]; gate foo a { x a; }").is_err());
        assert!(parse_qasm("qreg q[2]; creg c[2]; if(c==1) x q[0];").is_err());
        assert!(parse_qasm("h q[0];").is_err());
        assert!(parse_qasm("").is_err());
    }
}
