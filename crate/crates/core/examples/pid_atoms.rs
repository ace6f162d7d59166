//! Decompose the output of a few two-input logic gates into PID atoms.
//!
//! `cargo run --example pid_atoms`

use infomorphic::pid::{pid_decompose, BinIndex, BinnedJointModel, BinningSpec, Cell};

fn gate(theta: [[f64; 2]; 2]) -> BinnedJointModel {
    let spec = BinningSpec::new(0.0, 2.0, 2).unwrap();
    let mut cells = Vec::new();
    for (r, row) in theta.iter().enumerate() {
        for (c, &t) in row.iter().enumerate() {
            cells.push(Cell {
                r: BinIndex(r + 1),
                c: BinIndex(c + 1),
                mass: 0.25,
                theta: t,
            });
        }
    }
    BinnedJointModel::from_cells(spec, spec, cells).unwrap()
}

fn main() {
    let gates = [
        ("XOR", [[0.0, 1.0], [1.0, 0.0]]),
        ("AND", [[0.0, 0.0], [0.0, 1.0]]),
        ("COPY R", [[0.0, 0.0], [1.0, 1.0]]),
        ("noisy COPY R", [[0.1, 0.1], [0.9, 0.9]]),
        ("independent", [[0.4, 0.4], [0.4, 0.4]]),
    ];
    println!("{:<14} {:>8} {:>8} {:>8} {:>8} {:>8}", "gate", "unq_R", "unq_C", "red", "syn", "H(Y)");
    for (name, theta) in gates {
        let a = pid_decompose(&gate(theta));
        println!(
            "{name:<14} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            a.i_unq_r, a.i_unq_c, a.i_red, a.i_syn, a.h_y
        );
    }
}
