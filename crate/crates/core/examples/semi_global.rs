//! Addressing single qubits with column-global rotations: targets step out
//! of their parity class, the class is rotated forward and back, and only
//! the targets keep the net rotation.
//!
//! `cargo run --example semi_global`

use crossbar_mapper::crossbar::grid_for;
use crossbar_mapper::instruction::Axis;
use crossbar_mapper::mapper::{expand_semi_global, parity_of};

fn main() {
    let grid = grid_for(8);
    let class = grid.qubits_in_parity(parity_of(&grid, 0));
    let targets = [class[0], class[class.len() - 1]];
    println!("targets {targets:?} in {:?} columns", parity_of(&grid, targets[0]));
    let block = expand_semi_global(&grid, &targets, Axis::X, std::f64::consts::FRAC_PI_2).expect("valid targets");
    for (i, step) in block.steps.iter().enumerate() {
        println!("{i}: {step:?}");
    }
}
