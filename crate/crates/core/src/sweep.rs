//! Parameter sweeps: generate, compile, verify and measure every point of
//! a (qubits × gates × two-qubit ratio × seed) grid, one CSV row each.

use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::benchgen::{gen_random_uniform, BenchSpec};
use crate::frontend::ArchConfig;
use crate::metrics::{MetricsReport, CSV_COLUMNS};
use crate::pipeline::{compile_circuit, EQUIV_THRESHOLD};

#[derive(Debug, Error, PartialEq)]
pub enum RangeError {
    #[error("range `{0}` is not start:stop:step")]
    Syntax(String),
    #[error("range `{0}` needs step > 0 and start <= stop")]
    Empty(String),
}

/// Inclusive `start:stop:step` range; a single value `v` means `v:v:1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SweepRange {
    pub fn values(&self) -> Vec<f64> {
        let mut v = Vec::new();
        let mut k = 0.0;
        loop {
            let x = self.start + k * self.step;
            if x > self.stop + 1e-9 {
                break;
            }
            v.push(x);
            k += 1.0;
        }
        v
    }
}

impl FromStr for SweepRange {
    type Err = RangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| RangeError::Syntax(s.into()))?;
        let r = match nums[..] {
            [v] => SweepRange { start: v, stop: v, step: 1.0 },
            [a, b] => SweepRange { start: a, stop: b, step: 1.0 },
            [a, b, c] => SweepRange { start: a, stop: b, step: c },
            _ => return Err(RangeError::Syntax(s.into())),
        };
        if !(r.step > 0.0 && r.start <= r.stop && r.start.is_finite() && r.stop.is_finite()) {
            return Err(RangeError::Empty(s.into()));
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub qubits: Vec<usize>,
    pub gates: Vec<usize>,
    pub twoq_pct: Vec<f64>,
    pub seeds: usize,
    pub base_seed: u64,
}

impl SweepSpec {
    pub fn from_ranges(q: SweepRange, g: SweepRange, p: SweepRange, seeds: usize, base_seed: u64) -> SweepSpec {
        SweepSpec {
            qubits: q.values().into_iter().map(|v| v.round() as usize).collect(),
            gates: g.values().into_iter().map(|v| v.round() as usize).collect(),
            twoq_pct: p.values(),
            seeds,
            base_seed,
        }
    }

    /// Grid points in output order.
    pub fn points(&self) -> Vec<BenchSpec> {
        let mut out = Vec::new();
        for &n_qubits in &self.qubits {
            for &n_gates in &self.gates {
                for &twoq_pct in &self.twoq_pct {
                    for k in 0..self.seeds {
                        out.push(BenchSpec { n_qubits, n_gates, twoq_pct, seed: self.base_seed + k as u64 });
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub spec: BenchSpec,
    pub metrics: Option<MetricsReport>,
    pub replay_ok: Option<bool>,
    pub equivalence: Option<f64>,
    pub error: Option<String>,
}

pub fn run_point(spec: &BenchSpec, config: &ArchConfig) -> SweepRow {
    let mut row = SweepRow { spec: *spec, metrics: None, replay_ok: None, equivalence: None, error: None };
    let circuit = match gen_random_uniform(spec) {
        Ok(c) => c,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    let out = match compile_circuit(&circuit, config) {
        Ok(o) => o,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    let v = out.verify(config);
    row.replay_ok = Some(v.replay_ok);
    row.equivalence = v.equivalence_fidelity.and_then(|e| e.fidelity());
    if !v.ok(EQUIV_THRESHOLD) {
        row.error = Some("verification failed".into());
    }
    match out.metrics(config) {
        Ok(m) => row.metrics = Some(m),
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Runs every point; rows come back in spec order whether or not the
/// points ran concurrently.
pub fn run_sweep(spec: &SweepSpec, config: &ArchConfig, parallel: bool) -> Vec<SweepRow> {
    let points = spec.points();
    if parallel {
        points.par_iter().map(|p| run_point(p, config)).collect()
    } else {
        points.iter().map(|p| run_point(p, config)).collect()
    }
}

pub fn csv_header() -> Vec<String> {
    let mut h: Vec<String> = ["spec_qubits", "spec_gates", "spec_twoq_pct", "seed"].map(String::from).to_vec();
    h.extend(CSV_COLUMNS.iter().map(|s| s.to_string()));
    h.extend(["replay_ok", "equivalence", "error"].map(String::from));
    h
}

pub fn csv_record(row: &SweepRow) -> Vec<String> {
    let s = &row.spec;
    let mut r = vec![s.n_qubits.to_string(), s.n_gates.to_string(), s.twoq_pct.to_string(), s.seed.to_string()];
    match &row.metrics {
        Some(m) => r.extend(m.csv_record()),
        None => r.extend(std::iter::repeat_n(String::new(), CSV_COLUMNS.len())),
    }
    r.push(row.replay_ok.map(|b| b.to_string()).unwrap_or_default());
    r.push(row.equivalence.map(|f| format!("{f:.12}")).unwrap_or_default());
    r.push(row.error.clone().unwrap_or_default());
    r
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header())?;
    for row in rows {
        w.write_record(csv_record(row))?;
    }
    w.flush()?;
    Ok(())
}
