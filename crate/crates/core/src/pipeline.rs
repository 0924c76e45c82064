//! End-to-end compilation: decompose, place, schedule (timed), verify and
//! measure, plus the JSON artifact written by the command-line tool.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError};
use crate::crossbar::grid_for;
use crate::frontend::ArchConfig;
use crate::ir::{decompose, IrError};
use crate::mapper::{initial_placement, MapError};
use crate::metrics::{overhead_report, FidelityMap, MetricsReport};
use crate::scheduler::{schedule_integrated, Schedule, ScheduleError};
use crate::verifier::{verify, VerifyReport, DEFAULT_EQUIV_CAP};

/// Fidelity below which the equivalence check counts as failed.
pub const EQUIV_THRESHOLD: f64 = 1.0 - 1e-9;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Ir(#[from] IrError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

impl PipelineError {
    /// Errors that point at a bug in the compiler rather than the input.
    pub fn is_internal(&self) -> bool {
        matches!(self, PipelineError::Schedule(_) | PipelineError::Map(_))
    }
}

#[derive(Debug, Clone)]
pub struct Compiled {
    pub decomposed: Circuit,
    pub schedule: Schedule,
    /// Wall-clock time spent in the scheduler only.
    pub compile_time_ms: f64,
}

pub fn compile_circuit(circuit: &Circuit, config: &ArchConfig) -> Result<Compiled, PipelineError> {
    circuit.validate()?;
    let decomposed = decompose(circuit, config)?;
    let grid = initial_placement(&decomposed, &grid_for(decomposed.n_qubits))?;
    let t = Instant::now();
    let schedule = schedule_integrated(&decomposed, &grid)?;
    let compile_time_ms = t.elapsed().as_secs_f64() * 1e3;
    Ok(Compiled { decomposed, schedule, compile_time_ms })
}

impl Compiled {
    pub fn metrics(&self, config: &ArchConfig) -> Result<MetricsReport, IrError> {
        let fmap = FidelityMap::build(self.schedule.grid, config);
        let mut r = overhead_report(&self.decomposed, &self.schedule, &fmap)?;
        r.compile_time_ms = self.compile_time_ms;
        Ok(r)
    }

    pub fn verify(&self, config: &ArchConfig) -> VerifyReport {
        verify(Some(&self.decomposed), &self.schedule, DEFAULT_EQUIV_CAP, config.seed)
    }
}

/// Compiled artifact: the schedule document's fields at top level, with
/// the decomposed circuit and configuration needed to re-verify and
/// re-measure it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Artifact {
    #[serde(flatten)]
    pub schedule: Schedule,
    pub decomposed: Circuit,
    pub config: ArchConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<MetricsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerifyReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Artifact {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("artifact serializes")
    }

    pub fn from_json(text: &str) -> Result<Artifact, serde_json::Error> {
        serde_json::from_str(text)
    }
}
