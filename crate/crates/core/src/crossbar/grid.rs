use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instruction::{Instruction, Parity};

/// Dot coordinates: `x` is the column counted from the left, `y` the row
/// counted from the bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Site {
    pub x: usize,
    pub y: usize,
}

impl Site {
    pub const fn new(x: usize, y: usize) -> Site {
        Site { x, y }
    }

    /// Index of the diagonal qubit line through this site.
    pub fn ql(self) -> i64 {
        self.x as i64 - self.y as i64
    }

    pub fn parity(self) -> Parity {
        Parity::of_column(self.x)
    }

    pub fn manhattan(self, other: Site) -> usize {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y)
    }

    pub fn is_checkerboard(self) -> bool {
        (self.x + self.y) % 2 == 0
    }
}

impl From<(usize, usize)> for Site {
    fn from((x, y): (usize, usize)) -> Site {
        Site { x, y }
    }
}

impl From<Site> for (usize, usize) {
    fn from(s: Site) -> (usize, usize) {
        (s.x, s.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Left,
    Right,
    Up,
    Down,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::Left, Dir::Right, Dir::Up, Dir::Down];

    pub fn delta(self) -> (i64, i64) {
        match self {
            Dir::Left => (-1, 0),
            Dir::Right => (1, 0),
            Dir::Up => (0, 1),
            Dir::Down => (0, -1),
        }
    }

    pub fn opposite(self) -> Dir {
        match self {
            Dir::Left => Dir::Right,
            Dir::Right => Dir::Left,
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, Dir::Left | Dir::Right)
    }

    pub fn letter(self) -> char {
        match self {
            Dir::Left => 'l',
            Dir::Right => 'r',
            Dir::Up => 'u',
            Dir::Down => 'd',
        }
    }

    pub fn horizontal(dx: i64) -> Dir {
        if dx < 0 {
            Dir::Left
        } else {
            Dir::Right
        }
    }

    pub fn vertical(dy: i64) -> Dir {
        if dy < 0 {
            Dir::Down
        } else {
            Dir::Up
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("qubit {0} does not exist")]
    UnknownQubit(usize),
    #[error("qubit {q} cannot move {dir:?}: outside the grid")]
    OutOfGrid { q: usize, dir: Dir },
    #[error("qubit {q} cannot move {dir:?}: site ({x},{y}) occupied")]
    Occupied { q: usize, dir: Dir, x: usize, y: usize },
    #[error("sqswap operands {a} and {b} are not vertically adjacent")]
    NotAdjacent { a: usize, b: usize },
    #[error("invalid placement: {0}")]
    Placement(String),
}

/// N×N dot array with a bijection between virtual qubits and occupied
/// sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    n: usize,
    pos: Vec<Site>,
    occ: Vec<Option<usize>>,
}

/// Smallest side length whose checkerboard holds `n_qubits`.
pub fn side_for(n_qubits: usize) -> usize {
    let mut n: usize = 1;
    while (n * n).div_ceil(2) < n_qubits {
        n += 1;
    }
    n
}

/// Checkerboard sites of an N×N grid, left to right then bottom to top.
pub fn checkerboard_sites(n: usize) -> impl Iterator<Item = Site> {
    (0..n).flat_map(move |y| (0..n).map(move |x| Site::new(x, y))).filter(|s| s.is_checkerboard())
}

/// Idle-configuration grid with qubit `i` on the i-th checkerboard site.
pub fn grid_for(n_qubits: usize) -> Grid {
    assert!(n_qubits >= 1, "grid needs at least one qubit");
    let n = side_for(n_qubits);
    let pos: Vec<Site> = checkerboard_sites(n).take(n_qubits).collect();
    Grid::from_positions(n, pos).expect("checkerboard placement is valid")
}

impl Grid {
    pub fn from_positions(n: usize, pos: Vec<Site>) -> Result<Grid, GridError> {
        if n == 0 {
            return Err(GridError::Placement("grid side must be positive".into()));
        }
        let mut occ = vec![None; n * n];
        for (q, s) in pos.iter().enumerate() {
            if s.x >= n || s.y >= n {
                return Err(GridError::Placement(format!("qubit {q} at ({},{}) outside {n}x{n}", s.x, s.y)));
            }
            let slot = &mut occ[s.y * n + s.x];
            if let Some(other) = *slot {
                return Err(GridError::Placement(format!("qubits {other} and {q} share ({},{})", s.x, s.y)));
            }
            *slot = Some(q);
        }
        Ok(Grid { n, pos, occ })
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn n_qubits(&self) -> usize {
        self.pos.len()
    }

    pub fn positions(&self) -> &[Site] {
        &self.pos
    }

    pub fn position(&self, q: usize) -> Site {
        self.pos[q]
    }

    pub fn try_position(&self, q: usize) -> Result<Site, GridError> {
        self.pos.get(q).copied().ok_or(GridError::UnknownQubit(q))
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && (x as usize) < self.n && (y as usize) < self.n
    }

    pub fn occupant(&self, s: Site) -> Option<usize> {
        self.occ[s.y * self.n + s.x]
    }

    pub fn is_occupied(&self, s: Site) -> bool {
        self.occupant(s).is_some()
    }

    pub fn offset(&self, s: Site, dx: i64, dy: i64) -> Option<Site> {
        let (x, y) = (s.x as i64 + dx, s.y as i64 + dy);
        self.contains(x, y).then(|| Site::new(x as usize, y as usize))
    }

    pub fn step(&self, s: Site, dir: Dir) -> Option<Site> {
        let (dx, dy) = dir.delta();
        self.offset(s, dx, dy)
    }

    /// Whether every occupied site is a checkerboard site.
    pub fn is_idle(&self) -> bool {
        self.pos.iter().all(|s| s.is_checkerboard())
    }

    /// Qubits currently sitting in columns of the given parity, ascending.
    pub fn qubits_in_parity(&self, p: Parity) -> Vec<usize> {
        (0..self.pos.len()).filter(|&q| self.pos[q].parity() == p).collect()
    }

    pub fn count_in_parity(&self, p: Parity) -> usize {
        self.pos.iter().filter(|s| s.parity() == p).count()
    }

    /// Destination of a one-site move, checked against bounds and occupancy.
    pub fn destination(&self, q: usize, dir: Dir) -> Result<Site, GridError> {
        let from = self.try_position(q)?;
        let to = self.step(from, dir).ok_or(GridError::OutOfGrid { q, dir })?;
        if self.is_occupied(to) {
            return Err(GridError::Occupied { q, dir, x: to.x, y: to.y });
        }
        Ok(to)
    }

    pub fn move_qubit(&mut self, q: usize, dir: Dir) -> Result<(), GridError> {
        let to = self.destination(q, dir)?;
        let from = self.pos[q];
        self.occ[from.y * self.n + from.x] = None;
        self.occ[to.y * self.n + to.x] = Some(q);
        self.pos[q] = to;
        Ok(())
    }

    /// Applies one instruction. Shuttle kinds move their qubit one site;
    /// rotations leave positions alone; `Sqswap` is checked for vertical
    /// adjacency.
    pub fn apply(&mut self, instr: &Instruction) -> Result<(), GridError> {
        match *instr {
            Instruction::Shuttle { q, dir } | Instruction::Zsh { q, dir, .. } | Instruction::ZshRet { q, dir } => {
                self.move_qubit(q, dir)
            }
            Instruction::Sqswap { a, b } => {
                let (pa, pb) = (self.try_position(a)?, self.try_position(b)?);
                if pa.x != pb.x || pa.y.abs_diff(pb.y) != 1 {
                    return Err(GridError::NotAdjacent { a, b });
                }
                Ok(())
            }
            Instruction::SgRot { .. } | Instruction::SgRotInv { .. } => Ok(()),
        }
    }

    /// Applies all moves of one cycle simultaneously. Destinations are
    /// checked against the pre-cycle occupancy.
    pub fn apply_all<'a>(&mut self, instrs: impl IntoIterator<Item = &'a Instruction>) -> Result<(), GridError> {
        let instrs: Vec<&Instruction> = instrs.into_iter().collect();
        let mut moves = Vec::new();
        for i in &instrs {
            match i.movement() {
                Some((q, dir)) => moves.push((q, self.destination(q, dir)?)),
                // non-moving kinds never mutate the grid
                None => self.apply(i)?,
            }
        }
        for &(q, _) in &moves {
            let from = self.pos[q];
            self.occ[from.y * self.n + from.x] = None;
        }
        for &(q, to) in &moves {
            let slot = &mut self.occ[to.y * self.n + to.x];
            if slot.is_some() {
                return Err(GridError::Placement(format!("two qubits land on ({},{})", to.x, to.y)));
            }
            *slot = Some(q);
            self.pos[q] = to;
        }
        Ok(())
    }
}

/// Standalone form of [`Grid::apply`] returning the updated grid.
pub fn apply_op(grid: &Grid, instr: &Instruction) -> Result<Grid, GridError> {
    let mut g = grid.clone();
    g.apply(instr)?;
    Ok(g)
}
