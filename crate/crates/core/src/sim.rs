//! Dense state-vector simulation. Qubit `q` is bit `q` of the amplitude
//! index; two-qubit matrices use the basis `|ab⟩` with `a` the high bit.

use num_complex::Complex64 as C;
use rand::Rng;

use crate::circuit::{Gate, GateKind};
use crate::instruction::Axis;

pub type Mat2 = [[C; 2]; 2];
pub type Mat4 = [[C; 4]; 4];

const fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

const ZERO: C = c(0.0, 0.0);
const ONE: C = c(1.0, 0.0);

pub fn rx(t: f64) -> Mat2 {
    let (co, si) = ((t / 2.0).cos(), (t / 2.0).sin());
    [[c(co, 0.0), c(0.0, -si)], [c(0.0, -si), c(co, 0.0)]]
}

pub fn ry(t: f64) -> Mat2 {
    let (co, si) = ((t / 2.0).cos(), (t / 2.0).sin());
    [[c(co, 0.0), c(-si, 0.0)], [c(si, 0.0), c(co, 0.0)]]
}

pub fn rz(t: f64) -> Mat2 {
    [[C::from_polar(1.0, -t / 2.0), ZERO], [ZERO, C::from_polar(1.0, t / 2.0)]]
}

pub fn rot(axis: Axis, t: f64) -> Mat2 {
    match axis {
        Axis::X => rx(t),
        Axis::Y => ry(t),
    }
}

fn phase(t: f64) -> Mat2 {
    [[ONE, ZERO], [ZERO, C::from_polar(1.0, t)]]
}

pub fn sqswap() -> Mat4 {
    let p = c(0.5, 0.5);
    let m = c(0.5, -0.5);
    [[ONE, ZERO, ZERO, ZERO], [ZERO, p, m, ZERO], [ZERO, m, p, ZERO], [ZERO, ZERO, ZERO, ONE]]
}

pub fn cnot() -> Mat4 {
    [[ONE, ZERO, ZERO, ZERO], [ZERO, ONE, ZERO, ZERO], [ZERO, ZERO, ZERO, ONE], [ZERO, ZERO, ONE, ZERO]]
}

pub fn cz() -> Mat4 {
    let mut m = identity4();
    m[3][3] = c(-1.0, 0.0);
    m
}

pub fn identity4() -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE;
    }
    m
}

/// Matrix of a one-qubit gate kind (`angle` used by rotations).
pub fn single_matrix(kind: GateKind, angle: f64) -> Option<Mat2> {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};
    let h = FRAC_1_SQRT_2;
    Some(match kind {
        GateKind::Rx => rx(angle),
        GateKind::Ry => ry(angle),
        GateKind::Rz => rz(angle),
        GateKind::H => [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]],
        GateKind::X => [[ZERO, ONE], [ONE, ZERO]],
        GateKind::Y => [[ZERO, c(0.0, -1.0)], [c(0.0, 1.0), ZERO]],
        GateKind::Z => phase(std::f64::consts::PI),
        GateKind::S => phase(FRAC_PI_2),
        GateKind::Sdg => phase(-FRAC_PI_2),
        GateKind::T => phase(FRAC_PI_4),
        GateKind::Tdg => phase(-FRAC_PI_4),
        _ => return None,
    })
}

pub fn two_matrix(kind: GateKind) -> Option<Mat4> {
    match kind {
        GateKind::SqSwap => Some(sqswap()),
        GateKind::Cnot => Some(cnot()),
        GateKind::Cz => Some(cz()),
        _ => None,
    }
}

pub fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut m = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

pub fn mul4(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

/// Largest entrywise deviation between `a` and `b` after removing the
/// global phase that best aligns them.
pub fn phase_distance(a: &[C], b: &[C]) -> f64 {
    let (k, _) = a.iter().enumerate().max_by(|x, y| x.1.norm().total_cmp(&y.1.norm())).unwrap();
    if a[k].norm() < 1e-12 || b[k].norm() < 1e-12 {
        return a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    }
    let ph = b[k] / a[k];
    let ph = ph / ph.norm();
    a.iter().zip(b).map(|(x, y)| (x * ph - y).norm()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub n: usize,
    pub amps: Vec<C>,
}

impl StateVector {
    pub fn zero(n: usize) -> StateVector {
        let mut amps = vec![ZERO; 1 << n];
        amps[0] = ONE;
        StateVector { n, amps }
    }

    /// Tensor product of independent random single-qubit states.
    pub fn random_product(n: usize, rng: &mut impl Rng) -> StateVector {
        let mut s = StateVector::zero(n);
        for q in 0..n {
            let theta = rng.random_range(0.0..std::f64::consts::PI);
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            s.apply1(q, &mul2(&rz(phi), &ry(theta)));
        }
        s
    }

    pub fn apply1(&mut self, q: usize, m: &Mat2) {
        let bit = 1usize << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    pub fn apply2(&mut self, a: usize, b: usize, m: &Mat4) {
        let (ba, bb) = (1usize << a, 1usize << b);
        for i in 0..self.amps.len() {
            if i & ba == 0 && i & bb == 0 {
                let idx = [i, i | bb, i | ba, i | ba | bb];
                let v = idx.map(|k| self.amps[k]);
                for (r, &k) in idx.iter().enumerate() {
                    self.amps[k] = (0..4).map(|col| m[r][col] * v[col]).sum();
                }
            }
        }
    }

    /// Applies any supported gate, native or not.
    pub fn apply_gate(&mut self, g: &Gate) {
        if let Some(m) = single_matrix(g.kind, g.angle.unwrap_or(0.0)) {
            self.apply1(g.qubits[0], &m);
        } else if let Some(m) = two_matrix(g.kind) {
            self.apply2(g.qubits[0], g.qubits[1], &m);
        }
    }

    pub fn inner(&self, other: &StateVector) -> C {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// |⟨self|other⟩|²
    pub fn overlap(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Unitary of a gate sequence on `n` qubits, column by column.
pub fn unitary(n: usize, gates: &[Gate]) -> Vec<Vec<C>> {
    (0..1usize << n)
        .map(|col| {
            let mut s = StateVector { n, amps: vec![ZERO; 1 << n] };
            s.amps[col] = ONE;
            for g in gates {
                s.apply_gate(g);
            }
            s.amps
        })
        .collect()
}
