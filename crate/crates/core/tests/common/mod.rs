//! Test-side oracles, written from first principles and sharing no code
//! with the library: dense textbook matrices, a small state-vector
//! simulator, a literal schedule executor with its own position tracking,
//! and the statistics used by the acceptance suite.

#![allow(dead_code)]

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use crossbar_mapper::circuit::{Gate, GateKind};
use crossbar_mapper::instruction::{Axis, Instruction, Parity};
use crossbar_mapper::scheduler::Schedule;
use num_complex::Complex64 as C;

pub type M = Vec<Vec<C>>;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn mat(rows: &[&[C]]) -> M {
    rows.iter().map(|r| r.to_vec()).collect()
}

pub fn matmul(a: &M, b: &M) -> M {
    let n = a.len();
    let mut out = vec![vec![C::default(); n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn kron(a: &M, b: &M) -> M {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![C::default(); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn eye(n: usize) -> M {
    (0..n).map(|i| (0..n).map(|j| if i == j { c(1.0, 0.0) } else { C::default() }).collect()).collect()
}

/// exp(-iθσ/2) for the Pauli matrix σ.
pub fn pauli_rotation(sigma: &M, theta: f64) -> M {
    let (co, si) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let mut out = eye(2);
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = out[i][j] * co - c(0.0, si) * sigma[i][j];
        }
    }
    out
}

pub fn pauli_x() -> M {
    mat(&[&[c(0., 0.), c(1., 0.)], &[c(1., 0.), c(0., 0.)]])
}
pub fn pauli_y() -> M {
    mat(&[&[c(0., 0.), c(0., -1.)], &[c(0., 1.), c(0., 0.)]])
}
pub fn pauli_z() -> M {
    mat(&[&[c(1., 0.), c(0., 0.)], &[c(0., 0.), c(-1., 0.)]])
}
pub fn hadamard() -> M {
    let h = FRAC_1_SQRT_2;
    mat(&[&[c(h, 0.), c(h, 0.)], &[c(h, 0.), c(-h, 0.)]])
}
pub fn phase(phi: f64) -> M {
    mat(&[&[c(1., 0.), c(0., 0.)], &[c(0., 0.), C::from_polar(1.0, phi)]])
}

/// `√SWAP` in the basis |ab⟩ with the first operand as the high bit.
pub fn sqrt_swap() -> M {
    let (p, m) = (c(0.5, 0.5), c(0.5, -0.5));
    let (o, z) = (c(1., 0.), C::default());
    mat(&[&[o, z, z, z], &[z, p, m, z], &[z, m, p, z], &[z, z, z, o]])
}

/// CNOT with the control as the high bit.
pub fn cnot() -> M {
    let (o, z) = (c(1., 0.), C::default());
    mat(&[&[o, z, z, z], &[z, o, z, z], &[z, z, z, o], &[z, z, o, z]])
}

pub fn cz() -> M {
    let (o, z) = (c(1., 0.), C::default());
    mat(&[&[o, z, z, z], &[z, o, z, z], &[z, z, o, z], &[z, z, z, -o]])
}

/// Textbook matrix of a gate kind (single-qubit kinds take `angle`).
pub fn textbook(kind: GateKind, angle: f64) -> M {
    match kind {
        GateKind::Rx => pauli_rotation(&pauli_x(), angle),
        GateKind::Ry => pauli_rotation(&pauli_y(), angle),
        GateKind::Rz => pauli_rotation(&pauli_z(), angle),
        GateKind::H => hadamard(),
        GateKind::X => pauli_x(),
        GateKind::Y => pauli_y(),
        GateKind::Z => pauli_z(),
        GateKind::S => phase(2.0 * FRAC_PI_4),
        GateKind::Sdg => phase(-2.0 * FRAC_PI_4),
        GateKind::T => phase(FRAC_PI_4),
        GateKind::Tdg => phase(-FRAC_PI_4),
        GateKind::SqSwap => sqrt_swap(),
        GateKind::Cnot => cnot(),
        GateKind::Cz => cz(),
    }
}

/// Largest entrywise deviation after aligning the global phase of `b`
/// to `a` on the largest entry of `a`.
pub fn phase_aligned_distance(a: &M, b: &M) -> f64 {
    let n = a.len();
    let (mut bi, mut bj, mut best) = (0, 0, 0.0);
    for i in 0..n {
        for j in 0..n {
            if a[i][j].norm() > best {
                (bi, bj, best) = (i, j, a[i][j].norm());
            }
        }
    }
    if b[bi][bj].norm() < 1e-12 {
        return f64::INFINITY;
    }
    let ph = a[bi][bj] / b[bi][bj];
    let ph = ph / ph.norm();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((a[i][j] - ph * b[i][j]).norm());
        }
    }
    worst
}

/// Dense state over `n` qubits; qubit `q` is bit `q` of the basis index.
#[derive(Clone, Debug)]
pub struct State {
    pub n: usize,
    pub amps: Vec<C>,
}

impl State {
    pub fn zero(n: usize) -> State {
        let mut amps = vec![C::default(); 1 << n];
        amps[0] = c(1.0, 0.0);
        State { n, amps }
    }

    /// Product of single-qubit states given by Bloch angles.
    pub fn product(angles: &[(f64, f64)]) -> State {
        let mut s = State::zero(angles.len());
        for (q, &(t, p)) in angles.iter().enumerate() {
            let u = matmul(&pauli_rotation(&pauli_z(), p), &pauli_rotation(&pauli_y(), t));
            s.apply1(q, &u);
        }
        s
    }

    pub fn apply1(&mut self, q: usize, m: &M) {
        let bit = 1 << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    /// `m` acts on |ab⟩ with `a` as the high bit.
    pub fn apply2(&mut self, a: usize, b: usize, m: &M) {
        let (ba, bb) = (1 << a, 1 << b);
        for i in 0..self.amps.len() {
            if i & ba == 0 && i & bb == 0 {
                let idx = [i, i | bb, i | ba, i | ba | bb];
                let v: Vec<C> = idx.iter().map(|&k| self.amps[k]).collect();
                for (r, &k) in idx.iter().enumerate() {
                    self.amps[k] = (0..4).map(|s| m[r][s] * v[s]).sum();
                }
            }
        }
    }

    pub fn apply_gate(&mut self, g: &Gate) {
        let m = textbook(g.kind, g.angle.unwrap_or(0.0));
        match g.qubits[..] {
            [q] => self.apply1(q, &m),
            [a, b] => self.apply2(a, b, &m),
            _ => panic!("unsupported arity"),
        }
    }

    pub fn fidelity(&self, other: &State) -> f64 {
        let ip: C = self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum();
        ip.norm_sqr()
    }
}

/// Executes a schedule on `state` with literal semantics, tracking
/// positions independently from the placement: plain shuttles are
/// identity, a Z shuttle applies RZ, a semi-global pulse rotates every
/// qubit whose column has the addressed parity at that moment, `√SWAP`
/// applies its matrix. Returns the final positions.
pub fn execute(schedule: &Schedule, state: &mut State) -> Vec<(i64, i64)> {
    let mut pos: Vec<(i64, i64)> = schedule.placement.iter().map(|s| (s.x as i64, s.y as i64)).collect();
    for cycle in &schedule.cycles {
        let mut moves = Vec::new();
        for op in &cycle.ops {
            match op.instr {
                Instruction::Zsh { q, angle, .. } => state.apply1(q, &pauli_rotation(&pauli_z(), angle)),
                Instruction::SgRot { parity, axis, angle } | Instruction::SgRotInv { parity, axis, angle } => {
                    let sigma = match axis {
                        Axis::X => pauli_x(),
                        Axis::Y => pauli_y(),
                    };
                    let m = pauli_rotation(&sigma, angle);
                    let want = if parity == Parity::Even { 0 } else { 1 };
                    for q in 0..pos.len() {
                        if pos[q].0.rem_euclid(2) == want {
                            state.apply1(q, &m);
                        }
                    }
                }
                Instruction::Sqswap { a, b } => state.apply2(a, b, &sqrt_swap()),
                Instruction::Shuttle { .. } | Instruction::ZshRet { .. } => {}
            }
            if let Some((q, d)) = op.instr.movement() {
                moves.push((q, d.delta()));
            }
        }
        for (q, (dx, dy)) in moves {
            pos[q] = (pos[q].0 + dx, pos[q].1 + dy);
        }
    }
    pos
}

/// Average ranks (ties share the mean rank).
pub fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap());
    let mut r = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            r[k] = avg;
        }
        i = j + 1;
    }
    r
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    sxy / (sxx * syy).sqrt()
}

pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    pearson(&ranks(x), &ranks(y))
}

/// Least-squares line `y = a + b·x`; returns `(a, b, r²)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let ss_res: f64 = x.iter().zip(y).map(|(xi, yi)| (yi - a - b * xi).powi(2)).sum();
    let ss_tot: f64 = y.iter().map(|yi| (yi - my).powi(2)).sum();
    (a, b, 1.0 - ss_res / ss_tot)
}

pub fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Whether the digraph `edges` (a > b) admits a strict total order, by
/// dynamic programming over subsets of placed vertices.
pub fn orderable(edges: &[(i64, i64)]) -> bool {
    let mut verts: Vec<i64> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort();
    verts.dedup();
    let k = verts.len();
    assert!(k <= 20, "too many lines for the subset oracle");
    let id = |v: i64| verts.binary_search(&v).unwrap();
    // must_precede[v]: vertices that have to be placed (higher) before v
    let mut pre = vec![0u32; k];
    for &(a, b) in edges {
        pre[id(b)] |= 1 << id(a);
    }
    let full = (1u32 << k) - 1;
    let mut reach = vec![false; 1 << k];
    reach[0] = true;
    for s in 0..=full {
        if !reach[s as usize] {
            continue;
        }
        for v in 0..k {
            if s & (1 << v) == 0 && pre[v] & !s == 0 {
                reach[(s | (1 << v)) as usize] = true;
            }
        }
    }
    reach[full as usize]
}
