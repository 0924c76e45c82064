//! Parallel-set conflict detection on a hand-placed 4x4 crossbar.
//!
//! `cargo run --example conflict_check`

use crossbar_mapper::crossbar::{check_parallel_set, Dir, Grid, Site};
use crossbar_mapper::instruction::{Axis, Instruction, Parity};

fn show(grid: &Grid, label: &str, set: &[Instruction]) {
    let r = check_parallel_set(grid, set);
    match r.kind {
        None => println!("{label:<28} ok"),
        Some(k) => println!("{label:<28} {k} culprits={:?}", r.culprits),
    }
    for c in &r.conflicts {
        println!("    {}: {}", c.kind, c.detail);
    }
}

fn main() {
    let sites = [(0, 0), (2, 0), (1, 1), (0, 2), (3, 1)].map(|(x, y)| Site::new(x, y));
    let grid = Grid::from_positions(4, sites.to_vec()).expect("checkerboard placement");

    show(&grid, "single shuttle", &[Instruction::Shuttle { q: 0, dir: Dir::Right }]);
    show(
        &grid,
        "shuttle + rotation",
        &[Instruction::Shuttle { q: 0, dir: Dir::Right }, Instruction::SgRot { parity: Parity::Even, axis: Axis::X, angle: 1.0 }],
    );
    show(&grid, "shared barrier", &[Instruction::Shuttle { q: 0, dir: Dir::Right }, Instruction::Shuttle { q: 2, dir: Dir::Up }]);
    show(&grid, "two onto one site", &[Instruction::Shuttle { q: 0, dir: Dir::Right }, Instruction::Shuttle { q: 1, dir: Dir::Left }]);
    show(&grid, "parallel row shuttles", &[Instruction::Shuttle { q: 0, dir: Dir::Up }, Instruction::Shuttle { q: 1, dir: Dir::Up }]);
}
