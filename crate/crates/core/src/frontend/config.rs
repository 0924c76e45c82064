//! Architecture configuration: fidelity model, RNG seed and decomposition
//! rules for non-native gates.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expr::eval_angle;
use crate::circuit::GateKind;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("config schema violation: {0}")]
    Schema(String),
    #[error("fidelity {class}.{field} = {value} outside the allowed range")]
    FidelityRange { class: &'static str, field: &'static str, value: f64 },
    #[error("decomposition rule references unknown gate kind `{0}`")]
    UnknownKind(String),
    #[error("decomposition rule for `{kind}`: {msg}")]
    BadRule { kind: String, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FidelityParams {
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fidelities {
    pub single_qubit: FidelityParams,
    pub shuttle: FidelityParams,
    pub sqswap: FidelityParams,
}

pub const DEFAULT_FIDELITY_STD: f64 = 0.00005;
pub const DEFAULT_SEED: u64 = 42;

impl Default for Fidelities {
    fn default() -> Self {
        Fidelities {
            single_qubit: FidelityParams { mean: 0.9999, std: DEFAULT_FIDELITY_STD },
            shuttle: FidelityParams { mean: 0.9999, std: DEFAULT_FIDELITY_STD },
            sqswap: FidelityParams { mean: 0.9998, std: DEFAULT_FIDELITY_STD },
        }
    }
}

/// One native gate in a decomposition template. `operand_roles` index into
/// the operands of the gate being decomposed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemplateGate {
    pub kind: GateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
    pub operand_roles: Vec<usize>,
}

impl TemplateGate {
    fn rot(kind: GateKind, angle: f64, role: usize) -> Self {
        TemplateGate { kind, angle: Some(angle), operand_roles: vec![role] }
    }

    fn sqswap(a: usize, b: usize) -> Self {
        TemplateGate { kind: GateKind::SqSwap, angle: None, operand_roles: vec![a, b] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArchConfig {
    pub fidelities: Fidelities,
    pub seed: u64,
    pub decompositions: BTreeMap<GateKind, Vec<TemplateGate>>,
}

impl Default for ArchConfig {
    fn default() -> Self {
        ArchConfig { fidelities: Fidelities::default(), seed: DEFAULT_SEED, decompositions: default_rules() }
    }
}

/// Shipped decomposition rules. Each one is checked against the front-end
/// unitary (up to global phase) in the test suite.
pub fn default_rules() -> BTreeMap<GateKind, Vec<TemplateGate>> {
    use GateKind::*;
    let mut m = BTreeMap::new();
    m.insert(H, vec![TemplateGate::rot(Rz, PI, 0), TemplateGate::rot(Ry, FRAC_PI_2, 0)]);
    m.insert(X, vec![TemplateGate::rot(Rx, PI, 0)]);
    m.insert(Y, vec![TemplateGate::rot(Ry, PI, 0)]);
    m.insert(Z, vec![TemplateGate::rot(Rz, PI, 0)]);
    m.insert(S, vec![TemplateGate::rot(Rz, FRAC_PI_2, 0)]);
    m.insert(Sdg, vec![TemplateGate::rot(Rz, -FRAC_PI_2, 0)]);
    m.insert(T, vec![TemplateGate::rot(Rz, FRAC_PI_4, 0)]);
    m.insert(Tdg, vec![TemplateGate::rot(Rz, -FRAC_PI_4, 0)]);
    // control = role 0, target = role 1
    m.insert(
        Cnot,
        vec![
            TemplateGate::rot(Ry, FRAC_PI_2, 1),
            TemplateGate::sqswap(0, 1),
            TemplateGate::rot(Rz, FRAC_PI_2, 0),
            TemplateGate::rot(Rz, -FRAC_PI_2, 1),
            TemplateGate::sqswap(0, 1),
            TemplateGate::rot(Ry, -FRAC_PI_2, 1),
        ],
    );
    m.insert(
        Cz,
        vec![
            TemplateGate::sqswap(0, 1),
            TemplateGate::rot(Rz, PI, 0),
            TemplateGate::sqswap(0, 1),
            TemplateGate::rot(Rz, FRAC_PI_2, 0),
            TemplateGate::rot(Rz, -FRAC_PI_2, 1),
        ],
    );
    m
}

// Raw, permissive mirror of the file schema. Validation happens in
// `load_config`.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    fidelities: Option<RawFidelities>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    decompositions: Option<BTreeMap<String, Vec<RawTemplateGate>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFidelities {
    single_qubit: Option<RawParams>,
    shuttle: Option<RawParams>,
    sqswap: Option<RawParams>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    mean: Option<f64>,
    std: Option<f64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawAngle {
    Number(f64),
    Expr(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTemplateGate {
    kind: String,
    #[serde(default)]
    angle: Option<RawAngle>,
    operand_roles: Vec<usize>,
}

/// Parses and validates a JSON configuration, filling documented defaults.
/// User decomposition rules replace the default rule for the same kind.
pub fn load_config(text: &str) -> Result<ArchConfig, ConfigError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| ConfigError::Schema(e.to_string()))?;
    let mut cfg = ArchConfig::default();
    if let Some(seed) = raw.seed {
        cfg.seed = seed;
    }
    if let Some(f) = raw.fidelities {
        merge_params(&mut cfg.fidelities.single_qubit, f.single_qubit);
        merge_params(&mut cfg.fidelities.shuttle, f.shuttle);
        merge_params(&mut cfg.fidelities.sqswap, f.sqswap);
    }
    if let Some(rules) = raw.decompositions {
        for (name, template) in rules {
            let kind = GateKind::from_name(&name).ok_or_else(|| ConfigError::UnknownKind(name.clone()))?;
            let gates = template
                .into_iter()
                .map(|t| convert_template_gate(&name, t))
                .collect::<Result<Vec<_>, _>>()?;
            cfg.decompositions.insert(kind, gates);
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn merge_params(dst: &mut FidelityParams, src: Option<RawParams>) {
    if let Some(p) = src {
        if let Some(m) = p.mean {
            dst.mean = m;
        }
        if let Some(s) = p.std {
            dst.std = s;
        }
    }
}

fn convert_template_gate(rule: &str, t: RawTemplateGate) -> Result<TemplateGate, ConfigError> {
    let kind = GateKind::from_name(&t.kind).ok_or_else(|| ConfigError::UnknownKind(t.kind.clone()))?;
    let angle = match t.angle {
        None => None,
        Some(RawAngle::Number(v)) => Some(v),
        Some(RawAngle::Expr(s)) => {
            Some(eval_angle(&s).map_err(|msg| ConfigError::BadRule { kind: rule.to_string(), msg })?)
        }
    };
    Ok(TemplateGate { kind, angle, operand_roles: t.operand_roles })
}

impl ArchConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (class, p) in [
            ("single_qubit", self.fidelities.single_qubit),
            ("shuttle", self.fidelities.shuttle),
            ("sqswap", self.fidelities.sqswap),
        ] {
            if !(p.mean > 0.0 && p.mean <= 1.0) {
                return Err(ConfigError::FidelityRange { class, field: "mean", value: p.mean });
            }
            if !(p.std >= 0.0 && p.std.is_finite()) {
                return Err(ConfigError::FidelityRange { class, field: "std", value: p.std });
            }
        }
        for kind in GateKind::ALL {
            let rule = self.decompositions.get(&kind);
            if kind.is_native() {
                if rule.is_some() {
                    return Err(ConfigError::BadRule {
                        kind: kind.to_string(),
                        msg: "native gates are not decomposed".into(),
                    });
                }
                continue;
            }
            let Some(rule) = rule else {
                return Err(ConfigError::BadRule { kind: kind.to_string(), msg: "missing rule".into() });
            };
            for t in rule {
                let bad = |msg: String| ConfigError::BadRule { kind: kind.to_string(), msg };
                if !t.kind.is_native() {
                    return Err(bad(format!("template gate `{}` is not native", t.kind)));
                }
                if t.angle.is_some() != t.kind.is_rotation() {
                    return Err(bad(format!("template gate `{}` has a misplaced angle", t.kind)));
                }
                if let Some(a) = t.angle {
                    if !a.is_finite() {
                        return Err(bad("angle is not finite".into()));
                    }
                }
                if t.operand_roles.len() != t.kind.arity() {
                    return Err(bad(format!("template gate `{}` has wrong operand count", t.kind)));
                }
                if t.operand_roles.iter().any(|&r| r >= kind.arity()) {
                    return Err(bad("operand role out of range".into()));
                }
                if t.operand_roles.len() == 2 && t.operand_roles[0] == t.operand_roles[1] {
                    return Err(bad("two-qubit template gate repeats an operand".into()));
                }
            }
        }
        Ok(())
    }
}
