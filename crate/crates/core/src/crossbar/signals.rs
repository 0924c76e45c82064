use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::grid::{Dir, Grid, GridError, Site};

/// A shared control line. `Cl(i)` is the vertical barrier between columns
/// `i` and `i+1`, `Rl(j)` the horizontal barrier between rows `j` and
/// `j+1`, and `Ql(k)` the diagonal plunger line through all sites with
/// `x - y = k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LineId {
    Cl(usize),
    Rl(usize),
    Ql(i64),
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineId::Cl(i) => write!(f, "CL_{i}"),
            LineId::Rl(j) => write!(f, "RL_{j}"),
            LineId::Ql(k) => write!(f, "QL_{k}"),
        }
    }
}

/// Barrier states and strict QL voltage orderings one operation needs.
/// `(a, b)` in `ql_gt` reads "QL_a above QL_b".
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignalRequirements {
    pub lowered: BTreeSet<LineId>,
    pub raised: BTreeSet<LineId>,
    pub ql_gt: BTreeSet<(i64, i64)>,
}

/// Barrier separating two orthogonally adjacent sites.
pub fn barrier_between(a: Site, b: Site) -> LineId {
    debug_assert_eq!(a.manhattan(b), 1);
    if a.y == b.y {
        LineId::Cl(a.x.min(b.x))
    } else {
        LineId::Rl(a.y.min(b.y))
    }
}

/// Barriers bordering a site. The outer edge of the array is not a line;
/// it behaves as a permanently raised barrier.
pub fn barriers_around(grid: &Grid, s: Site) -> impl Iterator<Item = LineId> {
    let n = grid.side();
    let mut v = Vec::with_capacity(4);
    if s.x > 0 {
        v.push(LineId::Cl(s.x - 1));
    }
    if s.x + 1 < n {
        v.push(LineId::Cl(s.x));
    }
    if s.y > 0 {
        v.push(LineId::Rl(s.y - 1));
    }
    if s.y + 1 < n {
        v.push(LineId::Rl(s.y));
    }
    v.into_iter()
}

/// Pairs of sites facing each other across a barrier line, in ascending
/// order along the line.
pub fn pairs_across(grid: &Grid, line: LineId) -> impl Iterator<Item = (Site, Site)> {
    let n = grid.side();
    let (vertical, idx) = match line {
        LineId::Cl(i) => (true, i),
        LineId::Rl(j) => (false, j),
        LineId::Ql(_) => panic!("QL lines are not barriers"),
    };
    (0..n).map(move |t| {
        if vertical {
            (Site::new(idx, t), Site::new(idx + 1, t))
        } else {
            (Site::new(t, idx), Site::new(t, idx + 1))
        }
    })
}

/// Stay-put orderings for occupied sites beside a lowered barrier: every
/// such qubit not in `skip` whose opposite site is empty must sit on the
/// higher QL.
fn stay_put(grid: &Grid, line: LineId, skip: &dyn Fn(usize) -> bool, out: &mut BTreeSet<(i64, i64)>) {
    for (a, b) in pairs_across(grid, line) {
        match (grid.occupant(a), grid.occupant(b)) {
            (Some(q), None) if !skip(q) => {
                out.insert((a.ql(), b.ql()));
            }
            (None, Some(q)) if !skip(q) => {
                out.insert((b.ql(), a.ql()));
            }
            _ => {}
        }
    }
}

/// Requirements for moving qubit `q` one site in `dir`, with stay-put
/// constraints for every other qubit not matched by `skip`.
pub(crate) fn move_requirements(
    grid: &Grid,
    q: usize,
    dir: Dir,
    skip: &dyn Fn(usize) -> bool,
) -> Result<SignalRequirements, GridError> {
    let origin = grid.try_position(q)?;
    let dest = grid.destination(q, dir)?;
    let line = barrier_between(origin, dest);
    let mut req = SignalRequirements::default();
    req.lowered.insert(line);
    req.raised.extend(barriers_around(grid, origin).chain(barriers_around(grid, dest)).filter(|l| *l != line));
    req.ql_gt.insert((dest.ql(), origin.ql()));
    stay_put(grid, line, &|o| o == q || skip(o), &mut req.ql_gt);
    Ok(req)
}

/// Requirements for a `√SWAP` between vertically adjacent qubits.
pub(crate) fn sqswap_requirements_with(
    grid: &Grid,
    a: usize,
    b: usize,
    skip: &dyn Fn(usize) -> bool,
) -> Result<SignalRequirements, GridError> {
    let (pa, pb) = (grid.try_position(a)?, grid.try_position(b)?);
    if pa.x != pb.x || pa.y.abs_diff(pb.y) != 1 {
        return Err(GridError::NotAdjacent { a, b });
    }
    let line = barrier_between(pa, pb);
    let mut req = SignalRequirements::default();
    req.lowered.insert(line);
    req.raised.extend(barriers_around(grid, pa).chain(barriers_around(grid, pb)).filter(|l| *l != line));
    stay_put(grid, line, &|o| o == a || o == b || skip(o), &mut req.ql_gt);
    Ok(req)
}

/// Signal requirements of a single shuttle of `q` towards `dir`:
/// the barrier between origin and destination lowered, all other barriers
/// around both sites raised, the destination QL above the origin QL, and
/// every other qubit beside the lowered barrier held on a higher QL than
/// the empty site facing it. An occupied destination is an error.
pub fn shuttle_requirements(grid: &Grid, q: usize, dir: Dir) -> Result<SignalRequirements, GridError> {
    move_requirements(grid, q, dir, &|_| false)
}

pub fn sqswap_requirements(grid: &Grid, a: usize, b: usize) -> Result<SignalRequirements, GridError> {
    sqswap_requirements_with(grid, a, b, &|_| false)
}
