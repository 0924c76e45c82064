//! Gate and depth overhead, and estimated success probability from a
//! per-site, per-class fidelity map.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::crossbar::{Grid, Site};
use crate::frontend::{ArchConfig, FidelityParams};
use crate::instruction::Instruction;
use crate::ir::{dependency_depth, CountsByType, IrError};
use crate::scheduler::Schedule;

/// Operation classes with their own fidelity, in draw order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FidelityClass {
    SingleQubit,
    Shuttle,
    Sqswap,
}

impl FidelityClass {
    pub const ALL: [FidelityClass; 3] = [FidelityClass::SingleQubit, FidelityClass::Shuttle, FidelityClass::Sqswap];
}

/// Fidelity of every operation class at every site of an N×N grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityMap {
    pub side: usize,
    /// `values[(y * side + x) * 3 + class]`
    values: Vec<f64>,
}

fn draw(p: FidelityParams, rng: &mut ChaCha8Rng) -> f64 {
    let v = if p.std > 0.0 { Normal::new(p.mean, p.std).expect("finite std").sample(rng) } else { p.mean };
    v.clamp(f64::MIN_POSITIVE, 1.0)
}

impl FidelityMap {
    /// Draws each (site, class) value from its class's normal
    /// distribution, sites in row-major order from the bottom row, classes
    /// innermost.
    pub fn build(side: usize, config: &ArchConfig) -> FidelityMap {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let f = &config.fidelities;
        let mut values = Vec::with_capacity(side * side * 3);
        for _y in 0..side {
            for _x in 0..side {
                values.push(draw(f.single_qubit, &mut rng));
                values.push(draw(f.shuttle, &mut rng));
                values.push(draw(f.sqswap, &mut rng));
            }
        }
        FidelityMap { side, values }
    }

    pub fn get(&self, class: FidelityClass, s: Site) -> f64 {
        self.values[(s.y * self.side + s.x) * 3 + class as usize]
    }

    pub fn class_mean(&self, class: FidelityClass) -> f64 {
        let vals: Vec<f64> = self.values.iter().skip(class as usize).step_by(3).copied().collect();
        vals.iter().sum::<f64>() / vals.len().max(1) as f64
    }
}

pub fn build_fidelity_map(grid: &Grid, config: &ArchConfig) -> FidelityMap {
    FidelityMap::build(grid.side(), config)
}

/// Product of the fidelities of every scheduled instruction: shuttles at
/// their destination, `√SWAP` at the lower site, and a semi-global pulse
/// once per qubit in the addressed parity.
pub fn esp(schedule: &Schedule, fmap: &FidelityMap) -> f64 {
    let Ok(mut grid) = Grid::from_positions(schedule.grid, schedule.placement.clone()) else {
        return 0.0;
    };
    let mut p = 1.0;
    for cycle in &schedule.cycles {
        for op in &cycle.ops {
            match op.instr {
                Instruction::Shuttle { q, dir } | Instruction::Zsh { q, dir, .. } | Instruction::ZshRet { q, dir } => {
                    if let Some(d) = grid.step(grid.position(q), dir) {
                        p *= fmap.get(FidelityClass::Shuttle, d);
                    }
                }
                Instruction::Sqswap { a, b } => {
                    let (pa, pb) = (grid.position(a), grid.position(b));
                    let low = if pa.y <= pb.y { pa } else { pb };
                    p *= fmap.get(FidelityClass::Sqswap, low);
                }
                Instruction::SgRot { parity, .. } | Instruction::SgRotInv { parity, .. } => {
                    for q in grid.qubits_in_parity(parity) {
                        p *= fmap.get(FidelityClass::SingleQubit, grid.position(q));
                    }
                }
            }
        }
        let instrs: Vec<Instruction> = cycle.ops.iter().map(|o| o.instr.clone()).collect();
        let _ = grid.apply_all(&instrs);
    }
    p
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub name: String,
    pub n_qubits: usize,
    pub n_decomposed: usize,
    pub n_final: usize,
    pub gate_overhead_pct: f64,
    pub d_dependency: usize,
    pub d_final: usize,
    pub depth_overhead_pct: f64,
    pub esp: f64,
    pub compile_time_ms: f64,
    pub counts: CountsByType,
    /// Two-qubit gates per 100 single-qubit gates after decomposition;
    /// `None` (CSV `inf`) for circuits of two-qubit gates only.
    pub twoq_pct_post_decomp: Option<f64>,
    /// Two-qubit gates per 100 gates after decomposition.
    pub twoq_share_pct_post_decomp: f64,
    pub xy_pct_post_decomp: f64,
}

pub const CSV_COLUMNS: [&str; 12] = [
    "name",
    "n_qubits",
    "n_decomposed",
    "n_final",
    "gate_oh_pct",
    "d_dep",
    "d_final",
    "depth_oh_pct",
    "esp",
    "compile_ms",
    "twoq_pct_post_decomp",
    "xy_pct_post_decomp",
];

impl MetricsReport {
    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.name.clone(),
            self.n_qubits.to_string(),
            self.n_decomposed.to_string(),
            self.n_final.to_string(),
            format!("{:.4}", self.gate_overhead_pct),
            self.d_dependency.to_string(),
            self.d_final.to_string(),
            format!("{:.4}", self.depth_overhead_pct),
            format!("{:.6e}", self.esp),
            format!("{:.3}", self.compile_time_ms),
            self.twoq_pct_post_decomp.map_or_else(|| "inf".into(), |v| format!("{v:.4}")),
            format!("{:.4}", self.xy_pct_post_decomp),
        ]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Overhead percentages are relative to the decomposed gate count and to
/// the dependency-only depth.
pub fn overhead_report(decomposed: &Circuit, schedule: &Schedule, fmap: &FidelityMap) -> Result<MetricsReport, IrError> {
    let d_dep = dependency_depth(decomposed)?;
    let n_dec = decomposed.len();
    let n_final = schedule.n_instructions();
    let d_final = schedule.depth();
    let counts = CountsByType::of(decomposed);
    Ok(MetricsReport {
        name: decomposed.name.clone(),
        n_qubits: decomposed.n_qubits,
        n_decomposed: n_dec,
        n_final,
        gate_overhead_pct: 100.0 * (n_final as f64 - n_dec as f64) / n_dec as f64,
        d_dependency: d_dep,
        d_final,
        depth_overhead_pct: 100.0 * (d_final as f64 - d_dep as f64) / d_dep as f64,
        esp: esp(schedule, fmap),
        compile_time_ms: 0.0,
        counts,
        twoq_pct_post_decomp: counts.twoq_ratio_pct(),
        twoq_share_pct_post_decomp: counts.twoq_share_pct(),
        xy_pct_post_decomp: counts.xy_share_pct(),
    })
}
