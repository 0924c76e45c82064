//! Placement and routing: shuttle-based SWAP chains for two-qubit gates,
//! Z rotations by shuttling to a neighbouring column, and the compensation
//! scheme that narrows a semi-global pulse down to chosen targets.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::Circuit;
use crate::crossbar::{grid_for, Dir, Grid, GridError, Site};
use crate::instruction::{Axis, Instruction, Parity};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("qubit {0} has no free horizontal neighbour")]
    NoHorizontalMove(usize),
    #[error("semi-global targets span both column parities")]
    MixedParity,
    #[error("qubit {a} cannot reach a diagonal neighbour of qubit {b}")]
    Unreachable { a: usize, b: usize },
    #[error("two-qubit gate on a single qubit {0}")]
    SameQubit(usize),
    #[error("placement covers {got} qubits, circuit needs {want}")]
    PlacementSize { got: usize, want: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockType {
    Twoq,
    Z,
    Xy,
}

/// Instructions generated for one gate (or one group of rotations),
/// already split into the cycles they must occupy.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutedBlock {
    pub kind: BlockType,
    pub steps: Vec<Vec<Instruction>>,
}

impl RoutedBlock {
    pub fn n_instructions(&self) -> usize {
        self.steps.iter().map(Vec::len).sum()
    }

    pub fn instructions(&self) -> impl Iterator<Item = &Instruction> {
        self.steps.iter().flatten()
    }
}

/// Trivial placement: virtual qubit `i` on the `i`-th checkerboard site.
pub fn initial_placement(circuit: &Circuit, grid: &Grid) -> Result<Grid, MapError> {
    if grid.n_qubits() != circuit.n_qubits {
        return Err(MapError::PlacementSize { got: grid.n_qubits(), want: circuit.n_qubits });
    }
    Ok(grid_for(circuit.n_qubits))
}

const DIAGONALS: [(i64, i64); 4] = [(-1, -1), (1, -1), (-1, 1), (1, 1)];

fn diagonal_sites(grid: &Grid, s: Site) -> impl Iterator<Item = Site> + '_ {
    DIAGONALS.iter().filter_map(move |&(dx, dy)| grid.offset(s, dx, dy))
}

/// Number of diagonal steps from every checkerboard site to the nearest
/// diagonal neighbour of `b`, never passing through `b` itself.
fn distances_to(grid: &Grid, b: Site) -> Vec<Option<usize>> {
    let n = grid.side();
    let mut dist = vec![None; n * n];
    let mut queue = VecDeque::new();
    for t in diagonal_sites(grid, b) {
        dist[t.y * n + t.x] = Some(0);
        queue.push_back(t);
    }
    while let Some(s) = queue.pop_front() {
        let d = dist[s.y * n + s.x].unwrap();
        for t in diagonal_sites(grid, s) {
            if t != b && dist[t.y * n + t.x].is_none() {
                dist[t.y * n + t.x] = Some(d + 1);
                queue.push_back(t);
            }
        }
    }
    dist
}

/// Sites visited by the moving operand, one diagonal step at a time, until
/// it is diagonally adjacent to `b`.
pub fn swap_path(grid: &Grid, a: usize, b: usize) -> Result<Vec<Site>, MapError> {
    let (pa, pb) = (grid.try_position(a)?, grid.try_position(b)?);
    let n = grid.side();
    let dist = distances_to(grid, pb);
    let targets: Vec<Site> = diagonal_sites(grid, pb).collect();
    let near = |s: Site| targets.iter().map(|t| t.manhattan(s)).min().unwrap_or(usize::MAX);
    let mut cur = pa;
    let mut d = dist[cur.y * n + cur.x].ok_or(MapError::Unreachable { a, b })?;
    let mut path = Vec::with_capacity(d);
    while d > 0 {
        cur = diagonal_sites(grid, cur)
            .filter(|&s| s != pb && dist[s.y * n + s.x] == Some(d - 1))
            .min_by_key(|&s| (near(s), s.x.abs_diff(pb.x), s.x, s.y))
            .expect("BFS predecessor exists");
        path.push(cur);
        d -= 1;
    }
    Ok(path)
}

/// Minimal number of shuttle-based SWAPs before `a` and `b` are diagonal.
pub fn swap_count(grid: &Grid, a: usize, b: usize) -> Result<usize, MapError> {
    let (pa, pb) = (grid.try_position(a)?, grid.try_position(b)?);
    distances_to(grid, pb)[pa.y * grid.side() + pa.x].ok_or(MapError::Unreachable { a, b })
}

/// Routes `a` next to `b` and applies the `√SWAP` between them.
///
/// Each diagonal step exchanges `a` with the qubit on the target site: a
/// horizontal pair of opposite shuttles, then a vertical pair. When the
/// target site is empty only `a` moves. Once diagonal, `a` shuttles into
/// `b`'s column, the gate runs, and `a` shuttles back.
pub fn route_two_qubit(grid: &Grid, a: usize, b: usize) -> Result<RoutedBlock, MapError> {
    if a == b {
        return Err(MapError::SameQubit(a));
    }
    let mut g = grid.clone();
    let mut steps = Vec::new();
    for next in swap_path(grid, a, b)? {
        let cur = g.position(a);
        let hx = Dir::horizontal(next.x as i64 - cur.x as i64);
        let vy = Dir::vertical(next.y as i64 - cur.y as i64);
        let mut horiz = vec![Instruction::Shuttle { q: a, dir: hx }];
        let mut vert = vec![Instruction::Shuttle { q: a, dir: vy }];
        if let Some(c) = g.occupant(next) {
            horiz.push(Instruction::Shuttle { q: c, dir: hx.opposite() });
            vert.push(Instruction::Shuttle { q: c, dir: vy.opposite() });
        }
        g.apply_all(&horiz)?;
        g.apply_all(&vert)?;
        steps.push(horiz);
        steps.push(vert);
    }
    let (pa, pb) = (g.position(a), g.position(b));
    let into = Dir::horizontal(pb.x as i64 - pa.x as i64);
    steps.push(vec![Instruction::Shuttle { q: a, dir: into }]);
    steps.push(vec![Instruction::Sqswap { a, b }]);
    steps.push(vec![Instruction::Shuttle { q: a, dir: into.opposite() }]);
    Ok(RoutedBlock { kind: BlockType::Twoq, steps })
}

/// Horizontal direction a qubit can shuttle to, left first.
pub fn z_direction(grid: &Grid, q: usize) -> Result<Dir, MapError> {
    [Dir::Left, Dir::Right]
        .into_iter()
        .find(|&d| grid.destination(q, d).is_ok())
        .ok_or(MapError::NoHorizontalMove(q))
}

/// Z rotation realised as a timed shuttle to a neighbouring column and back.
pub fn z_route(grid: &Grid, q: usize, angle: f64) -> Result<RoutedBlock, MapError> {
    let dir = z_direction(grid, q)?;
    Ok(RoutedBlock {
        kind: BlockType::Z,
        steps: vec![vec![Instruction::Zsh { q, dir, angle }], vec![Instruction::ZshRet { q, dir: dir.opposite() }]],
    })
}

/// Common direction that moves every target into the other column parity:
/// right when all can, else left when all can, else each target's own
/// free side (right first).
pub fn scheme_directions(grid: &Grid, targets: &[usize]) -> Result<Vec<Dir>, MapError> {
    for d in [Dir::Right, Dir::Left] {
        if targets.iter().all(|&q| grid.destination(q, d).is_ok()) {
            return Ok(vec![d; targets.len()]);
        }
    }
    targets
        .iter()
        .map(|&q| {
            [Dir::Right, Dir::Left]
                .into_iter()
                .find(|&d| grid.destination(q, d).is_ok())
                .ok_or(MapError::NoHorizontalMove(q))
        })
        .collect()
}

/// Rotates exactly `targets` (all in one column parity) with semi-global
/// pulses. When the targets are the whole parity one pulse suffices;
/// otherwise the parity is rotated, the targets step out, the remaining
/// qubits are rotated back, and the targets return.
pub fn expand_semi_global(grid: &Grid, targets: &[usize], axis: Axis, angle: f64) -> Result<RoutedBlock, MapError> {
    let parity = match targets.first() {
        Some(&q) => grid.try_position(q)?.parity(),
        None => return Ok(RoutedBlock { kind: BlockType::Xy, steps: Vec::new() }),
    };
    for &q in targets {
        if grid.try_position(q)?.parity() != parity {
            return Err(MapError::MixedParity);
        }
    }
    let rot = Instruction::SgRot { parity, axis, angle };
    if targets.len() == grid.count_in_parity(parity) {
        return Ok(RoutedBlock { kind: BlockType::Xy, steps: vec![vec![rot]] });
    }
    let dirs = scheme_directions(grid, targets)?;
    let out: Vec<Instruction> = targets.iter().zip(&dirs).map(|(&q, &dir)| Instruction::Shuttle { q, dir }).collect();
    let back: Vec<Instruction> =
        targets.iter().zip(&dirs).map(|(&q, &dir)| Instruction::Shuttle { q, dir: dir.opposite() }).collect();
    let inv = Instruction::SgRotInv { parity, axis, angle: -angle };
    Ok(RoutedBlock { kind: BlockType::Xy, steps: vec![vec![rot], out, vec![inv], back] })
}

/// Parity addressed by a rotation of `q` in its current column.
pub fn parity_of(grid: &Grid, q: usize) -> Parity {
    grid.position(q).parity()
}
