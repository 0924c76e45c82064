//! Shuttle routing of a two-qubit gate between distant qubits: each step of
//! the block is one legal cycle, and the block leaves the array idle.
//!
//! `cargo run --example routing -- [n_qubits] [a] [b]`

use crossbar_mapper::crossbar::{check_parallel_set, grid_for};
use crossbar_mapper::mapper::{route_two_qubit, swap_count};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, a, b) = match args[..] {
        [n, a, b, ..] => (n, a, b),
        _ => (18, 0, 17),
    };
    let mut grid = grid_for(n);
    let side = grid.side();
    println!("{n} qubits on a {side}x{side} array; q{a} at {:?}, q{b} at {:?}", grid.position(a), grid.position(b));
    let k = swap_count(&grid, a, b).expect("valid pair");
    let block = route_two_qubit(&grid, a, b).expect("routable");
    println!("{k} vacancy swaps -> {} steps, {} instructions", block.steps.len(), block.n_instructions());
    for (i, step) in block.steps.iter().enumerate() {
        let r = check_parallel_set(&grid, step);
        println!("{i:>3} {:<6} {:?}", if r.is_ok() { "ok" } else { "CLASH" }, step);
        grid.apply_all(step).expect("applies");
    }
    println!("idle at end: {}; q{a} at {:?}, q{b} at {:?}", grid.is_idle(), grid.position(a), grid.position(b));
}
