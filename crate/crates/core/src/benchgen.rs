//! Benchmark circuits: seeded random uniform circuits over the native
//! gate set, and Bernstein–Vazirani instances.

use std::f64::consts::TAU;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind};

#[derive(Debug, Error, PartialEq)]
pub enum BenchError {
    #[error("two-qubit gates need at least 2 qubits")]
    TooFewQubits,
    #[error("two-qubit percentage must be a finite non-negative number")]
    BadPercentage,
    #[error("secret has {got} bits, {want} expected")]
    SecretLength { got: usize, want: usize },
    #[error("secret may only contain 0 and 1")]
    SecretDigits,
    #[error("need at least one qubit")]
    NoQubits,
}

/// `twoq_pct` is the number of two-qubit gates per 100 single-qubit gates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchSpec {
    pub n_qubits: usize,
    pub n_gates: usize,
    pub twoq_pct: f64,
    pub seed: u64,
}

impl BenchSpec {
    /// Gate counts `(xy, z, twoq)` the generator will produce.
    pub fn counts(&self) -> (usize, usize, usize) {
        let p = self.twoq_pct;
        let twoq = (self.n_gates as f64 * p / (100.0 + p)).round() as usize;
        let single = self.n_gates - twoq.min(self.n_gates);
        let xy = single.div_ceil(2);
        (xy, single - xy, twoq.min(self.n_gates))
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if !(self.twoq_pct.is_finite() && self.twoq_pct >= 0.0) {
            return Err(BenchError::BadPercentage);
        }
        if self.n_qubits == 0 {
            return Err(BenchError::NoQubits);
        }
        if self.counts().2 > 0 && self.n_qubits < 2 {
            return Err(BenchError::TooFewQubits);
        }
        Ok(())
    }

    pub fn name(&self) -> String {
        format!("rand_q{}_g{}_p{}_s{}", self.n_qubits, self.n_gates, self.twoq_pct, self.seed)
    }
}

fn angle(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let a = rng.random_range(0.0..TAU);
        if a > 0.0 {
            return a;
        }
    }
}

/// Random circuit with the class mix fixed by the spec and everything else
/// (order, operands, angles, X-or-Y choice) drawn from the seed.
pub fn gen_random_uniform(spec: &BenchSpec) -> Result<Circuit, BenchError> {
    spec.validate()?;
    let (xy, z, twoq) = spec.counts();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut kinds: Vec<u8> = [0u8].repeat(xy);
    kinds.extend([1u8].repeat(z));
    kinds.extend([2u8].repeat(twoq));
    kinds.shuffle(&mut rng);
    let n = spec.n_qubits;
    let gates = kinds
        .into_iter()
        .map(|k| match k {
            0 => {
                let kind = if rng.random_bool(0.5) { GateKind::Rx } else { GateKind::Ry };
                let q = rng.random_range(0..n);
                Gate::rotation(kind, angle(&mut rng), q)
            }
            1 => {
                let q = rng.random_range(0..n);
                Gate::rz(angle(&mut rng), q)
            }
            _ => {
                let pair = index::sample(&mut rng, n, 2);
                Gate::sqswap(pair.index(0), pair.index(1))
            }
        })
        .collect();
    Ok(Circuit::with_gates(spec.name(), n, gates))
}

/// Bernstein–Vazirani over `secret.len()` data qubits plus one ancilla
/// (the last qubit). Bit `i` of the secret (leftmost first) belongs to
/// data qubit `i`.
pub fn gen_bernstein_vazirani(n_qubits: usize, secret: &str) -> Result<Circuit, BenchError> {
    if n_qubits < 2 || secret.len() != n_qubits - 1 {
        return Err(BenchError::SecretLength { got: secret.len(), want: n_qubits.saturating_sub(1) });
    }
    let bits: Vec<bool> = secret
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(BenchError::SecretDigits),
        })
        .collect::<Result<_, _>>()?;
    let anc = n_qubits - 1;
    let mut c = Circuit::new(format!("bv_{n_qubits}_{secret}"), n_qubits);
    c.push(Gate::new(GateKind::X, &[anc]));
    for q in 0..n_qubits {
        c.push(Gate::new(GateKind::H, &[q]));
    }
    for (q, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
        c.push(Gate::cnot(q, anc));
    }
    for q in 0..anc {
        c.push(Gate::new(GateKind::H, &[q]));
    }
    Ok(c)
}

/// Secret of alternating bits `1010…`.
pub fn alternating_secret(len: usize) -> String {
    (0..len).map(|i| if i % 2 == 0 { '1' } else { '0' }).collect()
}

/// Secret with only its first and last bits set (a single bit when
/// `len == 1`): one or two CNOTs whatever the register size. This is the
/// default BV instance.
pub fn sparse_secret(len: usize) -> String {
    (0..len).map(|i| if i == 0 || i + 1 == len { '1' } else { '0' }).collect()
}
