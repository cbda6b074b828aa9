//! Closed forms for the rotations ansatz.
//!
//! With `V(theta) = RY(1, theta_1) ... RY(n, theta_n)` the prepared input
//! register is `sum_x alpha_x(theta) |x>` where
//! `alpha_x(theta) = prod_j cos(theta_j / 2)^(1 - x_j) sin(theta_j / 2)^(x_j)`.
//! The cost is then `1 - sum_{Ax = b} alpha_x(theta)^2`, which these functions
//! evaluate without simulating anything.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::circuits::{brickwork_param_count, build_brickwork_ansatz, build_rotations_ansatz, Circuit};
use crate::gf2::{enumerate_solutions, rank_mod2, BitMatrix, BitVector};
use crate::{Error, Result};

/// Which parametrized circuit prepares the input register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnsatzKind {
    Rotations,
    Brickwork,
}

impl AnsatzKind {
    pub fn name(self) -> &'static str {
        match self {
            AnsatzKind::Rotations => "rotations",
            AnsatzKind::Brickwork => "brickwork",
        }
    }
}

impl std::fmt::Display for AnsatzKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for AnsatzKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rotations" => Ok(AnsatzKind::Rotations),
            "brickwork" => Ok(AnsatzKind::Brickwork),
            other => Err(Error::InvalidInput(format!("unknown ansatz {other:?}"))),
        }
    }
}

/// Ansatz parameters together with the ansatz they belong to.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzParams {
    pub kind: AnsatzKind,
    pub theta: Vec<f64>,
    /// Brick layers; ignored for the rotations ansatz.
    pub layers: usize,
}

impl AnsatzParams {
    pub fn rotations(theta: Vec<f64>) -> Self {
        AnsatzParams {
            kind: AnsatzKind::Rotations,
            theta,
            layers: 0,
        }
    }

    pub fn brickwork(layers: usize, theta: Vec<f64>) -> Self {
        AnsatzParams {
            kind: AnsatzKind::Brickwork,
            theta,
            layers,
        }
    }

    /// Number of parameters this ansatz kind takes on `n_qubits` qubits.
    pub fn param_count(kind: AnsatzKind, n_qubits: usize, layers: usize) -> usize {
        match kind {
            AnsatzKind::Rotations => n_qubits,
            AnsatzKind::Brickwork => brickwork_param_count(n_qubits, layers),
        }
    }

    /// The ansatz circuit on an input register of `n_qubits` qubits.
    pub fn circuit(&self, n_qubits: usize) -> Result<Circuit> {
        let expected = Self::param_count(self.kind, n_qubits, self.layers);
        if self.theta.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "{} ansatz on {n_qubits} qubits takes {expected} parameters, got {}",
                self.kind,
                self.theta.len()
            )));
        }
        match self.kind {
            AnsatzKind::Rotations => build_rotations_ansatz(&self.theta),
            AnsatzKind::Brickwork => build_brickwork_ansatz(n_qubits, self.layers, &self.theta),
        }
    }
}

/// Reduces an angle into `[0, 4 pi)`, the period of `RY`.
pub fn canonical_angle(theta: f64) -> f64 {
    theta.rem_euclid(4.0 * PI)
}

fn half_angles(theta: &[f64]) -> Vec<(f64, f64)> {
    theta
        .iter()
        .map(|&t| {
            let (s, c) = (canonical_angle(t) / 2.0).sin_cos();
            (c, s)
        })
        .collect()
}

fn alpha_from(x: &BitVector, half: &[(f64, f64)]) -> f64 {
    x.iter()
        .zip(half)
        .map(|(bit, &(c, s))| if bit { s } else { c })
        .product()
}

/// Amplitude of `|x>` in `V(theta)|0>`.
pub fn alpha(x: &BitVector, theta: &[f64]) -> Result<f64> {
    if x.len() != theta.len() {
        return Err(Error::DimensionMismatch(format!(
            "bitstring of length {} with {} angles",
            x.len(),
            theta.len()
        )));
    }
    Ok(alpha_from(x, &half_angles(theta)))
}

fn check_system(a: &BitMatrix, b: &BitVector, theta: &[f64]) -> Result<()> {
    if theta.len() != a.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "{} angles for a matrix with {} columns",
            theta.len(),
            a.ncols()
        )));
    }
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a matrix with {} rows",
            b.len(),
            a.nrows()
        )));
    }
    Ok(())
}

/// `1 - sum_{Ax = b} alpha_x(theta)^2`.
pub fn analytic_cost(a: &BitMatrix, b: &BitVector, theta: &[f64]) -> Result<f64> {
    check_system(a, b, theta)?;
    let half = half_angles(theta);
    let hit: f64 = enumerate_solutions(a, b)?
        .iter()
        .map(|x| alpha_from(x, &half).powi(2))
        .sum();
    Ok(1.0 - hit)
}

/// Gradient of [`analytic_cost`]:
/// `d/d theta_j = sum_{Ax = b} (-1)^(x_j) alpha_x(theta) alpha_{x xor e_j}(theta)`.
pub fn analytic_gradient(a: &BitMatrix, b: &BitVector, theta: &[f64]) -> Result<Vec<f64>> {
    check_system(a, b, theta)?;
    let half = half_angles(theta);
    let solutions = enumerate_solutions(a, b)?;
    let mut grad = vec![0.0; theta.len()];
    for x in &solutions {
        let ax = alpha_from(x, &half);
        for (j, g) in grad.iter_mut().enumerate() {
            let mut flipped = x.clone();
            flipped.flip(j + 1);
            let term = ax * alpha_from(&flipped, &half);
            *g += if x.get(j + 1) { -term } else { term };
        }
    }
    Ok(grad)
}

/// Cost at `theta_j = k pi / 2` for odd `k`: `1 - 2^(-rank A)`.
pub fn predicted_plateau_cost(a: &BitMatrix) -> f64 {
    1.0 - (-(rank_mod2(a) as f64)).exp2()
}

/// Below this `|q - 1/q|` the ratio form is replaced by the Laurent sum.
const LAURENT_SWITCH: f64 = 1e-8;

/// The q-integer `[k]_q = (q^k - q^-k) / (q - q^-1)`.
pub fn q_integer(k: i64, q: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if q == Complex64::new(0.0, 0.0) || q == one || q == -one {
        return Err(Error::InvalidInput(format!("q-integer undefined at q = {q}")));
    }
    let inv = q.inv();
    let denom = q - inv;
    if denom.norm() >= LAURENT_SWITCH {
        let k = i32::try_from(k).map_err(|_| Error::InvalidInput(format!("exponent {k} too large")))?;
        return Ok((q.powi(k) - inv.powi(k)) / denom);
    }
    // q^(k-1) + q^(k-3) + ... + q^(1-k)
    let terms = k.unsigned_abs();
    let mut power = q.powi(terms as i32 - 1);
    let step = inv * inv;
    let mut sum = Complex64::new(0.0, 0.0);
    for _ in 0..terms {
        sum += power;
        power *= step;
    }
    Ok(if k < 0 { -sum } else { sum })
}

/// `exp(i pi / (4n))`, a primitive `8n`-th root of unity.
pub fn root_of_unity(n: usize) -> Complex64 {
    Complex64::from_polar(1.0, PI / (4.0 * n as f64))
}

/// The factor `cos(theta/2)^(1-x) sin(theta/2)^x` at `theta = p pi / (2n)`,
/// computed as `[2n(1 - x) + p]_xi / [2n]_xi` with `xi = exp(i pi / 4n)`.
pub fn q_integer_amplitude(x: bool, p: usize, n: usize) -> Result<f64> {
    if n == 0 || p >= 4 * n {
        return Err(Error::InvalidInput(format!(
            "grid index {p} outside 0..{} for n = {n}",
            4 * n
        )));
    }
    let xi = root_of_unity(n);
    let shift = if x { 0 } else { 2 * n };
    let ratio = q_integer((shift + p) as i64, xi)? / q_integer(2 * n as i64, xi)?;
    if ratio.im.abs() > 1e-12 {
        return Err(Error::Internal(format!(
            "q-integer ratio has imaginary part {:e}",
            ratio.im
        )));
    }
    Ok(ratio.re)
}
