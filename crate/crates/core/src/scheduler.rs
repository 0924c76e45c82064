//! Integrated scheduling: walk the dependency layers, group rotations that
//! one semi-global pulse can serve, route every gate, and split any group
//! whose generated shuttles cannot share a cycle.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, GateKind};
use crate::crossbar::{check_parallel_set, Grid, GridError, Site};
use crate::instruction::{Axis, CycleType, Instruction, Op, Parity};
use crate::ir::asap_layers;
use crate::mapper::{expand_semi_global, route_two_qubit, z_direction, MapError, RoutedBlock};

#[derive(Debug, Error)]
pub enum ScheduleError {
    #[error("gate {0} is not native; decompose first")]
    NotNative(usize),
    #[error("grid holds {got} qubits, circuit has {want}")]
    GridSize { got: usize, want: usize },
    #[error("grid is not in idle configuration")]
    NotIdle,
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("internal: generated cycle {cycle} conflicts ({kind})")]
    Conflict { cycle: usize, kind: String },
    #[error("internal: gate {0} cannot be scheduled even on its own")]
    Unschedulable(usize),
}

/// One time step: instructions of a single type executed together.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cycle {
    #[serde(rename = "type")]
    pub ty: CycleType,
    pub ops: Vec<Op>,
}

impl Cycle {
    pub fn instructions(&self) -> Vec<Instruction> {
        self.ops.iter().map(|o| o.instr.clone()).collect()
    }
}

/// Compiled program plus everything needed to replay it: the grid side,
/// the starting positions, and the positions after every cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    /// Number of qubits.
    pub n: usize,
    /// Grid side length.
    pub grid: usize,
    pub placement: Vec<Site>,
    pub cycles: Vec<Cycle>,
    pub positions: Vec<Vec<Site>>,
}

impl Schedule {
    pub fn empty(grid: &Grid) -> Schedule {
        Schedule {
            n: grid.n_qubits(),
            grid: grid.side(),
            placement: grid.positions().to_vec(),
            cycles: Vec::new(),
            positions: Vec::new(),
        }
    }

    pub fn initial_grid(&self) -> Result<Grid, GridError> {
        Grid::from_positions(self.grid, self.placement.clone())
    }

    pub fn depth(&self) -> usize {
        self.cycles.len()
    }

    pub fn n_instructions(&self) -> usize {
        self.cycles.iter().map(|c| c.ops.len()).sum()
    }

    pub fn instructions(&self) -> impl Iterator<Item = &Instruction> {
        self.cycles.iter().flat_map(|c| c.ops.iter().map(|o| &o.instr))
    }

    /// Instruction count per cycle type.
    pub fn counts(&self) -> BTreeMap<&'static str, usize> {
        let mut m = BTreeMap::new();
        for c in &self.cycles {
            *m.entry(c.ty.name()).or_insert(0) += c.ops.len();
        }
        m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("schedule serializes")
    }

    pub fn from_json(text: &str) -> Result<Schedule, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Rotations one pulse could serve: same axis and angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IdealKind {
    Xy { axis: Axis, angle: f64 },
    Z,
}

/// Single-qubit gates (circuit indices) meant for one ideal cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealCycle {
    pub kind: IdealKind,
    pub gates: Vec<usize>,
}

fn target(circuit: &Circuit, i: usize) -> usize {
    circuit.gates[i].qubits[0]
}

/// Routing of a set of single-qubit gates as one unit.
fn route_single(circuit: &Circuit, grid: &Grid, kind: IdealKind, gates: &[usize]) -> Result<RoutedBlock, MapError> {
    let qs: Vec<usize> = gates.iter().map(|&i| target(circuit, i)).collect();
    match kind {
        IdealKind::Xy { axis, angle } => expand_semi_global(grid, &qs, axis, angle),
        IdealKind::Z => {
            let mut out = Vec::new();
            let mut back = Vec::new();
            for (&q, &i) in qs.iter().zip(gates) {
                let dir = z_direction(grid, q)?;
                let angle = circuit.gates[i].angle.unwrap_or(0.0);
                out.push(Instruction::Zsh { q, dir, angle });
                back.push(Instruction::ZshRet { q, dir: dir.opposite() });
            }
            Ok(RoutedBlock { kind: crate::mapper::BlockType::Z, steps: vec![out, back] })
        }
    }
}

fn block_is_legal(grid: &Grid, block: &RoutedBlock) -> bool {
    let mut g = grid.clone();
    for step in &block.steps {
        if !check_parallel_set(&g, step).is_ok() || g.apply_all(step).is_err() {
            return false;
        }
    }
    true
}

/// Splits an ideal cycle whose routing conflicts as a whole. Each round
/// greedily takes gates in program order, keeping a gate only if the
/// routed subset stays conflict-free; the rest is deferred to the next
/// round.
pub fn split_cycle(cycle: &IdealCycle, circuit: &Circuit, grid: &Grid) -> Result<Vec<IdealCycle>, ScheduleError> {
    let mut rest = cycle.gates.clone();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let mut taken: Vec<usize> = Vec::new();
        let mut deferred = Vec::new();
        for &i in &rest {
            taken.push(i);
            let ok = match route_single(circuit, grid, cycle.kind, &taken) {
                Ok(b) => block_is_legal(grid, &b),
                Err(_) => false,
            };
            if !ok {
                taken.pop();
                deferred.push(i);
            }
        }
        if taken.is_empty() {
            return Err(ScheduleError::Unschedulable(rest[0]));
        }
        out.push(IdealCycle { kind: cycle.kind, gates: taken });
        rest = deferred;
    }
    Ok(out)
}

struct Emitter {
    grid: Grid,
    schedule: Schedule,
}

impl Emitter {
    fn emit(&mut self, step: &[Instruction], src: impl Fn(&Instruction) -> Vec<usize>) -> Result<(), ScheduleError> {
        let report = check_parallel_set(&self.grid, step);
        if let Some(kind) = report.kind {
            return Err(ScheduleError::Conflict { cycle: self.schedule.cycles.len(), kind: kind.to_string() });
        }
        self.grid.apply_all(step)?;
        let ty = step[0].cycle_type();
        let ops = step.iter().map(|i| Op::new(i.clone(), src(i))).collect();
        self.schedule.cycles.push(Cycle { ty, ops });
        self.schedule.positions.push(self.grid.positions().to_vec());
        Ok(())
    }

    fn emit_block(&mut self, block: &RoutedBlock, src: &dyn Fn(&Instruction) -> Vec<usize>) -> Result<(), ScheduleError> {
        for step in &block.steps {
            self.emit(step, src)?;
        }
        Ok(())
    }
}

enum Unit {
    Twoq(usize),
    Z(usize),
    Xy { axis: Axis, angle: f64, gates: Vec<usize> },
}

fn axis_of(kind: GateKind) -> Option<Axis> {
    match kind {
        GateKind::Rx => Some(Axis::X),
        GateKind::Ry => Some(Axis::Y),
        _ => None,
    }
}

/// Compiles a native circuit on an idle grid.
///
/// Gates are taken layer by layer in dependency order. Within a layer,
/// rotations sharing axis and angle form one unit, every Z rotation and
/// every `√SWAP` is a unit of its own, and units run in the program order
/// of their first gate. Rotation units are split by the column parity of
/// their targets at the moment they run, then by [`split_cycle`].
pub fn schedule_integrated(circuit: &Circuit, grid: &Grid) -> Result<Schedule, ScheduleError> {
    if grid.n_qubits() != circuit.n_qubits {
        return Err(ScheduleError::GridSize { got: grid.n_qubits(), want: circuit.n_qubits });
    }
    if !grid.is_idle() {
        return Err(ScheduleError::NotIdle);
    }
    if let Some(i) = circuit.gates.iter().position(|g| !g.kind.is_native()) {
        return Err(ScheduleError::NotNative(i));
    }
    let layer_of = asap_layers(circuit);
    let depth = layer_of.iter().max().map_or(0, |d| d + 1);
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); depth];
    for (i, &l) in layer_of.iter().enumerate() {
        layers[l].push(i);
    }

    let mut em = Emitter { grid: grid.clone(), schedule: Schedule::empty(grid) };
    for layer in layers {
        let mut units: Vec<Unit> = Vec::new();
        let mut xy_slot: BTreeMap<(Axis, u64), usize> = BTreeMap::new();
        for i in layer {
            let g = &circuit.gates[i];
            match g.kind {
                GateKind::SqSwap => units.push(Unit::Twoq(i)),
                GateKind::Rz => units.push(Unit::Z(i)),
                k => {
                    let axis = axis_of(k).expect("native rotation");
                    let angle = g.angle.unwrap_or(0.0);
                    match xy_slot.get(&(axis, angle.to_bits())) {
                        Some(&u) => match &mut units[u] {
                            Unit::Xy { gates, .. } => gates.push(i),
                            _ => unreachable!(),
                        },
                        None => {
                            xy_slot.insert((axis, angle.to_bits()), units.len());
                            units.push(Unit::Xy { axis, angle, gates: vec![i] });
                        }
                    }
                }
            }
        }
        for unit in units {
            match unit {
                Unit::Twoq(i) => {
                    let (a, b) = (circuit.gates[i].qubits[0], circuit.gates[i].qubits[1]);
                    let block = route_two_qubit(&em.grid, a, b)?;
                    em.emit_block(&block, &|_| vec![i])?;
                }
                Unit::Z(i) => {
                    let ideal = IdealCycle { kind: IdealKind::Z, gates: vec![i] };
                    let block = route_single(circuit, &em.grid, ideal.kind, &ideal.gates)?;
                    em.emit_block(&block, &|_| vec![i])?;
                }
                Unit::Xy { axis, angle, gates } => {
                    let mut by_parity: Vec<(Parity, Vec<usize>)> = Vec::new();
                    for i in gates {
                        let p = em.grid.position(target(circuit, i)).parity();
                        match by_parity.iter_mut().find(|(q, _)| *q == p) {
                            Some((_, v)) => v.push(i),
                            None => by_parity.push((p, vec![i])),
                        }
                    }
                    for (_, members) in by_parity {
                        let ideal = IdealCycle { kind: IdealKind::Xy { axis, angle }, gates: members };
                        for part in split_cycle(&ideal, circuit, &em.grid)? {
                            let block = route_single(circuit, &em.grid, part.kind, &part.gates)?;
                            let owner: BTreeMap<usize, usize> =
                                part.gates.iter().map(|&i| (target(circuit, i), i)).collect();
                            let all = part.gates.clone();
                            em.emit_block(&block, &|ins: &Instruction| match ins.movement() {
                                Some((q, _)) => vec![owner[&q]],
                                None => all.clone(),
                            })?;
                        }
                    }
                }
            }
        }
    }
    Ok(em.schedule)
}
