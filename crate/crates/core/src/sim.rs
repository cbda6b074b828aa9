//! Dense statevector simulation.
//!
//! Qubits are numbered from 1. Qubit 1 is the most significant bit of a
//! basis-state index, so the printed bitstring of index `i` reads
//! `|q1 q2 ... qN>` left to right.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;

use crate::circuits::Circuit;
use crate::gf2::BitVector;
use crate::par::Execution;
use crate::{Error, Result};

/// Largest register the simulator will allocate.
pub const MAX_QUBITS: usize = 24;

/// Norm drift that is reported as an internal error.
pub const NORM_DRIFT_LIMIT: f64 = 1e-9;

// Below this many amplitudes the thread pool costs more than it saves.
#[cfg(feature = "parallel")]
const PAR_MIN_LEN: usize = 1 << 14;
// Fixed partition for reductions, so sums do not depend on scheduling.
const REDUCE_CHUNK: usize = 1 << 12;

/// The gate set: Pauli-X, Hadamard, Y-rotation, CNOT and controlled-Z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    X(usize),
    H(usize),
    /// `RY(target, angle)`, angle in radians.
    RY(usize, f64),
    /// `CNOT(control, target)`.
    CNOT(usize, usize),
    CZ(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::X(t) | Gate::H(t) | Gate::RY(t, _) => vec![t],
            Gate::CNOT(a, b) | Gate::CZ(a, b) => vec![a, b],
        }
    }

    /// Checks qubit indices against a register of `num_qubits` and that
    /// rotation angles are finite.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        if let Some(q) = qubits.iter().find(|&&q| q == 0 || q > num_qubits) {
            return Err(Error::InvalidInput(format!(
                "gate {self} addresses qubit {q}, valid range is 1..={num_qubits}"
            )));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::InvalidInput(format!(
                "gate {self} uses the same qubit twice"
            )));
        }
        if let Gate::RY(_, angle) = self {
            if !angle.is_finite() {
                return Err(Error::InvalidInput(format!("gate {self} has a non-finite angle")));
            }
        }
        Ok(())
    }
}

/// One gate per line: `X 1`, `H 2`, `RY 2 1.570796`, `CNOT 1 4`, `CZ 2 3`.
impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::X(t) => write!(f, "X {t}"),
            Gate::H(t) => write!(f, "H {t}"),
            Gate::RY(t, a) => write!(f, "RY {t} {a:.6}"),
            Gate::CNOT(c, t) => write!(f, "CNOT {c} {t}"),
            Gate::CZ(a, b) => write!(f, "CZ {a} {b}"),
        }
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("cannot parse gate from {s:?}"));
        let mut parts = s.split_whitespace();
        let name = parts.next().ok_or_else(bad)?;
        let mut qubit = || -> Result<usize> { parts.next().ok_or_else(bad)?.parse().map_err(|_| bad()) };
        let gate = match name {
            "X" => Gate::X(qubit()?),
            "H" => Gate::H(qubit()?),
            "CNOT" => Gate::CNOT(qubit()?, qubit()?),
            "CZ" => Gate::CZ(qubit()?, qubit()?),
            "RY" => {
                let t = qubit()?;
                let angle = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                Gate::RY(t, angle)
            }
            _ => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(gate)
    }
}

/// Amplitudes of a pure state on `num_qubits` qubits.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StateVector")
            .field("num_qubits", &self.num_qubits)
            .field("len", &self.amps.len())
            .finish()
    }
}

fn check_size(num_qubits: usize) -> Result<()> {
    if num_qubits > MAX_QUBITS {
        return Err(Error::Capacity {
            what: "qubit count",
            got: num_qubits,
            limit: MAX_QUBITS,
        });
    }
    Ok(())
}

impl StateVector {
    /// `|0...0>` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        check_size(num_qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    /// The computational basis state `|bits>`.
    pub fn basis_state(bits: &BitVector) -> Result<Self> {
        let mut s = StateVector::zero(bits.len())?;
        let idx = bits.to_index() as usize;
        s.amps.swap(0, idx);
        Ok(s)
    }

    /// Wraps raw amplitudes. The length must be a power of two and the norm
    /// must be 1 within [`NORM_DRIFT_LIMIT`].
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::InvalidInput(format!(
                "amplitude count {} is not a power of two",
                amps.len()
            )));
        }
        let num_qubits = amps.len().trailing_zeros() as usize;
        check_size(num_qubits)?;
        let s = StateVector { num_qubits, amps };
        let drift = (s.norm_sqr() - 1.0).abs();
        if drift > NORM_DRIFT_LIMIT {
            return Err(Error::InvalidInput(format!("state is not normalized (|norm^2 - 1| = {drift:e})")));
        }
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Amplitude of the basis state `|bits>`.
    pub fn amplitude(&self, bits: &BitVector) -> Result<Complex64> {
        if bits.len() != self.num_qubits {
            return Err(Error::DimensionMismatch(format!(
                "bitstring of length {} for a {}-qubit state",
                bits.len(),
                self.num_qubits
            )));
        }
        Ok(self.amps[bits.to_index() as usize])
    }

    pub fn norm_sqr(&self) -> f64 {
        sum_where(&self.amps, |_| true)
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.num_qubits - qubit)
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        self.apply_gate_with(gate, Execution::default())
    }

    /// Applies `gate` in place using the given execution strategy. Both
    /// strategies perform the same floating-point operations per amplitude,
    /// so their results are bitwise identical.
    pub fn apply_gate_with(&mut self, gate: &Gate, exec: Execution) -> Result<()> {
        gate.validate(self.num_qubits)?;
        let nq = self.num_qubits;
        let bit = |q: usize| 1usize << (nq - q);
        match *gate {
            Gate::X(t) => {
                for_each_pair(&mut self.amps, bit(t), exec, |_, a, b| std::mem::swap(a, b));
            }
            Gate::H(t) => {
                for_each_pair(&mut self.amps, bit(t), exec, |_, a, b| {
                    let (x, y) = (*a, *b);
                    *a = (x + y) * FRAC_1_SQRT_2;
                    *b = (x - y) * FRAC_1_SQRT_2;
                });
            }
            Gate::RY(t, angle) => {
                let (s, c) = (angle / 2.0).sin_cos();
                for_each_pair(&mut self.amps, bit(t), exec, |_, a, b| {
                    let (x, y) = (*a, *b);
                    *a = x * c - y * s;
                    *b = x * s + y * c;
                });
            }
            Gate::CNOT(ctrl, t) => {
                let cmask = bit(ctrl);
                for_each_pair(&mut self.amps, bit(t), exec, |idx, a, b| {
                    if idx & cmask != 0 {
                        std::mem::swap(a, b);
                    }
                });
            }
            Gate::CZ(p, q) => {
                let both = bit(p) | bit(q);
                for_each_amp(&mut self.amps, exec, |idx, a| {
                    if idx & both == both {
                        *a = -*a;
                    }
                });
            }
        }
        Ok(())
    }

    /// Applies the gates of `circuit` in order, then checks that the norm has
    /// not drifted.
    pub fn run_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        self.run_circuit_with(circuit, Execution::default())
    }

    pub fn run_circuit_with(&mut self, circuit: &Circuit, exec: Execution) -> Result<()> {
        if circuit.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch(format!(
                "circuit on {} qubits applied to a {}-qubit state",
                circuit.num_qubits(),
                self.num_qubits
            )));
        }
        for gate in circuit.gates() {
            self.apply_gate_with(gate, exec)?;
        }
        let drift = (self.norm_sqr() - 1.0).abs();
        if drift > NORM_DRIFT_LIMIT {
            return Err(Error::Internal(format!("norm drifted by {drift:e} during simulation")));
        }
        Ok(())
    }

    /// Probability that measuring the qubits in `register` yields `bits`.
    pub fn marginal_probability(&self, register: &[usize], bits: &BitVector) -> Result<f64> {
        if register.len() != bits.len() {
            return Err(Error::DimensionMismatch(format!(
                "register of {} qubits compared with {} bits",
                register.len(),
                bits.len()
            )));
        }
        let mut select = 0usize;
        let mut want = 0usize;
        for (k, &q) in register.iter().enumerate() {
            if q == 0 || q > self.num_qubits {
                return Err(Error::InvalidInput(format!(
                    "register qubit {q} outside 1..={}",
                    self.num_qubits
                )));
            }
            let m = self.mask(q);
            if select & m != 0 {
                return Err(Error::InvalidInput(format!("register repeats qubit {q}")));
            }
            select |= m;
            if bits.get(k + 1) {
                want |= m;
            }
        }
        Ok(sum_where(&self.amps, |idx| idx & select == want))
    }

    /// Basis states with probability at least `cutoff`.
    pub fn support(&self, cutoff: f64) -> Result<BTreeSet<BitVector>> {
        if !(cutoff > 0.0 && cutoff < 1.0) {
            return Err(Error::InvalidInput(format!("support cutoff {cutoff} outside (0, 1)")));
        }
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() >= cutoff)
            .map(|(idx, _)| BitVector::from_index(idx as u64, self.num_qubits))
            .collect())
    }

    /// Draws `shots` measurements of every qubit.
    pub fn sample<R: Rng + ?Sized>(&self, shots: usize, rng: &mut R) -> Result<BTreeMap<BitVector, usize>> {
        if shots == 0 {
            return Err(Error::InvalidInput("shot count must be at least 1".into()));
        }
        let mut cumulative = Vec::with_capacity(self.amps.len());
        let mut acc = 0.0;
        for a in &self.amps {
            acc += a.norm_sqr();
            cumulative.push(acc);
        }
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for _ in 0..shots {
            let u = rng.gen::<f64>() * acc;
            let idx = cumulative
                .partition_point(|&c| c <= u)
                .min(self.amps.len() - 1);
            *counts.entry(idx).or_default() += 1;
        }
        Ok(counts
            .into_iter()
            .map(|(idx, c)| (BitVector::from_index(idx as u64, self.num_qubits), c))
            .collect())
    }
}

/// Visits every amplitude pair that differs only in the bit `stride`. The
/// callback gets the index of the member with that bit clear.
fn for_each_pair<F>(amps: &mut [Complex64], stride: usize, exec: Execution, f: F)
where
    F: Fn(usize, &mut Complex64, &mut Complex64) + Sync + Send,
{
    let block = 2 * stride;
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && amps.len() >= PAR_MIN_LEN {
        use rayon::prelude::*;
        if amps.len() / block >= 64 {
            amps.par_chunks_mut(block)
                .enumerate()
                .for_each(|(ci, chunk)| pair_block(ci * block, chunk, stride, &f));
        } else {
            for (ci, chunk) in amps.chunks_mut(block).enumerate() {
                let base = ci * block;
                let (lo, hi) = chunk.split_at_mut(stride);
                lo.par_iter_mut()
                    .zip(hi.par_iter_mut())
                    .enumerate()
                    .with_min_len(1024)
                    .for_each(|(k, (a, b))| f(base + k, a, b));
            }
        }
        return;
    }
    let _ = exec;
    for (ci, chunk) in amps.chunks_mut(block).enumerate() {
        pair_block(ci * block, chunk, stride, &f);
    }
}

#[inline]
fn pair_block<F>(base: usize, chunk: &mut [Complex64], stride: usize, f: &F)
where
    F: Fn(usize, &mut Complex64, &mut Complex64),
{
    let (lo, hi) = chunk.split_at_mut(stride);
    for (k, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
        f(base + k, a, b);
    }
}

fn for_each_amp<F>(amps: &mut [Complex64], exec: Execution, f: F)
where
    F: Fn(usize, &mut Complex64) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && amps.len() >= PAR_MIN_LEN {
        use rayon::prelude::*;
        amps.par_iter_mut()
            .enumerate()
            .with_min_len(1024)
            .for_each(|(idx, a)| f(idx, a));
        return;
    }
    let _ = exec;
    for (idx, a) in amps.iter_mut().enumerate() {
        f(idx, a);
    }
}

/// Sum of `|a_i|^2` over indices accepted by `keep`, reduced over a fixed
/// chunking so the result is the same however the chunks are scheduled.
fn sum_where<P>(amps: &[Complex64], keep: P) -> f64
where
    P: Fn(usize) -> bool + Sync,
{
    let partial = |(ci, chunk): (usize, &[Complex64])| -> f64 {
        let base = ci * REDUCE_CHUNK;
        chunk
            .iter()
            .enumerate()
            .filter(|(k, _)| keep(base + k))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    };
    #[cfg(feature = "parallel")]
    let partials: Vec<f64> = if amps.len() >= PAR_MIN_LEN {
        use rayon::prelude::*;
        amps.par_chunks(REDUCE_CHUNK).enumerate().map(partial).collect()
    } else {
        amps.chunks(REDUCE_CHUNK).enumerate().map(partial).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<f64> = amps.chunks(REDUCE_CHUNK).enumerate().map(partial).collect();
    partials.into_iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn random_state(q: usize, rng: &mut ChaCha8Rng) -> StateVector {
        let mut amps: Vec<Complex64> = (0..1 << q)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        StateVector::from_amplitudes(amps).unwrap()
    }

    fn max_diff(a: &StateVector, b: &StateVector) -> f64 {
        a.amps
            .iter()
            .zip(&b.amps)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    fn all_gates(q: usize, rng: &mut ChaCha8Rng) -> Vec<Gate> {
        let t = rng.gen_range(1..=q);
        let mut u = rng.gen_range(1..=q);
        while u == t {
            u = rng.gen_range(1..=q);
        }
        vec![
            Gate::X(t),
            Gate::H(t),
            Gate::RY(t, rng.gen_range(-10.0..10.0)),
            Gate::CNOT(t, u),
            Gate::CZ(t, u),
        ]
    }

    #[test]
    fn basis_state_examples() {
        let s = StateVector::basis_state(&bv("00")).unwrap();
        assert_eq!(s.amplitudes()[0], Complex64::new(1.0, 0.0));
        let s = StateVector::basis_state(&bv("101")).unwrap();
        assert_eq!(s.amplitude(&bv("101")).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(s.amplitudes()[0b101], Complex64::new(1.0, 0.0));
        assert_eq!(s.norm_sqr(), 1.0);
    }

    #[test]
    fn gate_actions_on_basis_states() {
        let mut s = StateVector::basis_state(&bv("0")).unwrap();
        s.apply_gate(&Gate::X(1)).unwrap();
        assert_eq!(s, StateVector::basis_state(&bv("1")).unwrap());

        let theta = 0.83;
        let mut s = StateVector::zero(1).unwrap();
        s.apply_gate(&Gate::RY(1, theta)).unwrap();
        assert!((s.amplitudes()[0].re - (theta / 2.0).cos()).abs() < 1e-15);
        assert!((s.amplitudes()[1].re - (theta / 2.0).sin()).abs() < 1e-15);

        let mut s = StateVector::basis_state(&bv("11")).unwrap();
        s.apply_gate(&Gate::CNOT(1, 2)).unwrap();
        assert_eq!(s, StateVector::basis_state(&bv("10")).unwrap());

        // control on the lower qubit
        let mut s = StateVector::basis_state(&bv("011")).unwrap();
        s.apply_gate(&Gate::CNOT(3, 1)).unwrap();
        assert_eq!(s, StateVector::basis_state(&bv("111")).unwrap());

        let mut s = StateVector::basis_state(&bv("11")).unwrap();
        s.apply_gate(&Gate::CZ(2, 1)).unwrap();
        assert_eq!(s.amplitudes()[3], Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn invalid_gates_are_rejected() {
        let mut s = StateVector::zero(2).unwrap();
        assert!(s.apply_gate(&Gate::X(0)).is_err());
        assert!(s.apply_gate(&Gate::X(3)).is_err());
        assert!(s.apply_gate(&Gate::CNOT(1, 1)).is_err());
        assert!(s.apply_gate(&Gate::RY(1, f64::NAN)).is_err());
        assert!(StateVector::zero(MAX_QUBITS + 1).is_err());
    }

    #[test]
    fn empty_circuit_and_double_x() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s0 = random_state(3, &mut rng);
        let mut s = s0.clone();
        s.run_circuit(&Circuit::new(3)).unwrap();
        assert_eq!(s, s0);
        let mut c = Circuit::new(3);
        c.push(Gate::X(1)).unwrap();
        c.push(Gate::X(1)).unwrap();
        s.run_circuit(&c).unwrap();
        assert_eq!(s, s0);
        assert!(s.run_circuit(&Circuit::new(2)).is_err());
    }

    #[test]
    fn unitarity_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let q = rng.gen_range(2..=6);
            let s0 = random_state(q, &mut rng);
            for g in all_gates(q, &mut rng) {
                let mut s = s0.clone();
                s.apply_gate(&g).unwrap();
                assert!((s.norm_sqr() - 1.0).abs() < 1e-12, "{g}");
            }
        }
    }

    #[test]
    fn self_inverse_gates() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let q = rng.gen_range(2..=6);
            let s0 = random_state(q, &mut rng);
            for g in all_gates(q, &mut rng)
                .into_iter()
                .filter(|g| !matches!(g, Gate::RY(..)))
            {
                let mut s = s0.clone();
                s.apply_gate(&g).unwrap();
                s.apply_gate(&g).unwrap();
                assert!(max_diff(&s, &s0) < 1e-12, "{g}");
            }
        }
    }

    #[test]
    fn ry_has_period_four_pi() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let q = rng.gen_range(1..=5);
            let t = rng.gen_range(1..=q);
            let theta = rng.gen_range(-2.0 * PI..2.0 * PI);
            let s0 = random_state(q, &mut rng);
            let mut a = s0.clone();
            a.apply_gate(&Gate::RY(t, theta)).unwrap();
            let mut b = s0.clone();
            b.apply_gate(&Gate::RY(t, theta + 4.0 * PI)).unwrap();
            assert!(max_diff(&a, &b) < 1e-12);
        }
    }

    #[test]
    fn marginals() {
        let s = StateVector::basis_state(&bv("0110")).unwrap();
        assert_eq!(s.marginal_probability(&[1, 2, 3, 4], &bv("0110")).unwrap(), 1.0);
        assert_eq!(s.marginal_probability(&[3, 2], &bv("11")).unwrap(), 1.0);
        assert_eq!(s.marginal_probability(&[4], &bv("1")).unwrap(), 0.0);

        let mut h = StateVector::zero(1).unwrap();
        h.apply_gate(&Gate::H(1)).unwrap();
        assert!((h.marginal_probability(&[1], &bv("1")).unwrap() - 0.5).abs() < 1e-15);

        assert!(s.marginal_probability(&[1, 1], &bv("00")).is_err());
        assert!(s.marginal_probability(&[5], &bv("0")).is_err());
        assert!(s.marginal_probability(&[1], &bv("00")).is_err());
    }

    #[test]
    fn marginal_partition_sums_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..20 {
            let s = random_state(5, &mut rng);
            let register = [4, 1, 3];
            let total: f64 = (0..8)
                .map(|k| s.marginal_probability(&register, &BitVector::from_index(k, 3)).unwrap())
                .sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn support_examples() {
        let s = StateVector::basis_state(&bv("10")).unwrap();
        assert_eq!(s.support(1e-4).unwrap().len(), 1);
        let mut hh = StateVector::zero(2).unwrap();
        hh.apply_gate(&Gate::H(1)).unwrap();
        hh.apply_gate(&Gate::H(2)).unwrap();
        assert_eq!(hh.support(0.2).unwrap().len(), 4);
        assert!(hh.support(0.0).is_err());
    }

    #[test]
    fn sampling() {
        let s = StateVector::basis_state(&bv("101")).unwrap();
        let hist = s.sample(500, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(hist.len(), 1);
        assert_eq!(hist[&bv("101")], 500);

        let mut h = StateVector::zero(1).unwrap();
        h.apply_gate(&Gate::H(1)).unwrap();
        let hist = h.sample(10_000, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert_eq!(hist.values().sum::<usize>(), 10_000);
        for c in hist.values() {
            assert!((4500..=5500).contains(c), "{c}");
        }
        let again = h.sample(10_000, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert_eq!(hist, again);
        assert!(h.sample(0, &mut ChaCha8Rng::seed_from_u64(2)).is_err());
    }

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let q = 16;
        let s0 = random_state(q, &mut rng);
        for t in [1, 2, 8, 15, 16] {
            for g in [
                Gate::X(t),
                Gate::H(t),
                Gate::RY(t, 1.234),
                Gate::CNOT(t, if t == 1 { 16 } else { 1 }),
                Gate::CZ(t, if t == 3 { 4 } else { 3 }),
            ] {
                let mut a = s0.clone();
                let mut b = s0.clone();
                a.apply_gate_with(&g, Execution::Sequential).unwrap();
                b.apply_gate_with(&g, Execution::Parallel).unwrap();
                assert!(a == b, "{g}");
            }
        }
    }

    #[test]
    fn gate_text_round_trip() {
        for g in [Gate::X(1), Gate::H(3), Gate::CNOT(1, 4), Gate::CZ(2, 3), Gate::RY(2, 0.25)] {
            let text = g.to_string();
            assert_eq!(text.parse::<Gate>().unwrap().to_string(), text);
        }
        assert_eq!(Gate::RY(2, PI / 2.0).to_string(), "RY 2 1.570796");
        assert!("CNOT 1".parse::<Gate>().is_err());
        assert!("SWAP 1 2".parse::<Gate>().is_err());
    }
}
