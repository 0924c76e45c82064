//! Dot-array geometry, control-line requirements and parallel-set
//! conflict detection.

mod conflict;
mod grid;
mod signals;

pub use conflict::{check_parallel_set, ql_order, Conflict, ConflictKind, ConflictReport, Verdict};
pub use grid::{apply_op, checkerboard_sites, grid_for, side_for, Dir, Grid, GridError, Site};
pub use signals::{
    barrier_between, barriers_around, pairs_across, shuttle_requirements, sqswap_requirements, LineId,
    SignalRequirements,
};
