//! Circuit values and the builders used by the solver.
//!
//! For an `m x n` matrix the full register has `n + m` qubits: qubits `1..=n`
//! hold the input `x` and qubits `n+1..=n+m` receive `Ax`.

use std::fmt;

use crate::gf2::{BitMatrix, BitVector};
use crate::sim::Gate;
use crate::{Error, Result};

/// An ordered gate list over a fixed number of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate after checking it fits this register.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends all gates of `other`, which may act on a smaller register; its
    /// qubit `k` maps to qubit `k` here.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.num_qubits > self.num_qubits {
            return Err(Error::DimensionMismatch(format!(
                "cannot append a {}-qubit circuit to a {}-qubit circuit",
                other.num_qubits, self.num_qubits
            )));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Parses the gate-per-line text produced by `Display`.
    pub fn parse(num_qubits: usize, text: &str) -> Result<Circuit> {
        let mut c = Circuit::new(num_qubits);
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let gate = line.parse().map_err(|e: Error| Error::Parse {
                line: k + 1,
                msg: e.to_string(),
            })?;
            c.push(gate)?;
        }
        Ok(c)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// The CNOT network mapping `|x>|0>` to `|x>|Ax>`: one `CNOT(j, n + i)` per
/// nonzero entry `a_ij`, emitted column by column.
pub fn build_matvec_operator(a: &BitMatrix) -> Circuit {
    let n = a.ncols();
    let mut c = Circuit::new(n + a.nrows());
    for j in 1..=n {
        for i in 1..=a.nrows() {
            if a.get(i, j) {
                c.gates.push(Gate::CNOT(j, n + i));
            }
        }
    }
    c
}

/// X gates preparing `|x>` on the first `x.len()` of `total_qubits` qubits.
pub fn build_state_prep(x: &BitVector, total_qubits: usize) -> Result<Circuit> {
    if x.len() > total_qubits {
        return Err(Error::DimensionMismatch(format!(
            "cannot prepare {} bits on {total_qubits} qubits",
            x.len()
        )));
    }
    let mut c = Circuit::new(total_qubits);
    for j in (1..=x.len()).filter(|&j| x.get(j)) {
        c.gates.push(Gate::X(j));
    }
    Ok(c)
}

/// One Y-rotation per qubit: `RY(1, theta_1) ... RY(n, theta_n)`.
pub fn build_rotations_ansatz(theta: &[f64]) -> Result<Circuit> {
    let mut c = Circuit::new(theta.len());
    for (k, &t) in theta.iter().enumerate() {
        c.push(Gate::RY(k + 1, t))?;
    }
    Ok(c)
}

/// Qubit pairs of each brickwork layer. Odd layers start at qubit 1, even
/// layers at qubit 2.
pub fn brickwork_layout(n_qubits: usize, layers: usize) -> Vec<Vec<(usize, usize)>> {
    (1..=layers)
        .map(|layer| {
            let start = if layer % 2 == 1 { 1 } else { 2 };
            (start..n_qubits)
                .step_by(2)
                .map(|q| (q, q + 1))
                .collect()
        })
        .collect()
}

/// Parameters consumed by [`build_brickwork_ansatz`]: two per brick.
pub fn brickwork_param_count(n_qubits: usize, layers: usize) -> usize {
    2 * brickwork_layout(n_qubits, layers)
        .iter()
        .map(Vec::len)
        .sum::<usize>()
}

/// Layers of two-qubit bricks, each brick being `RY(a), RY(b), CZ(a, b)`.
/// Parameters are read layer by layer, brick by brick, lower qubit first.
pub fn build_brickwork_ansatz(n_qubits: usize, layers: usize, params: &[f64]) -> Result<Circuit> {
    let expected = brickwork_param_count(n_qubits, layers);
    if params.len() != expected {
        return Err(Error::InvalidInput(format!(
            "brickwork on {n_qubits} qubits with {layers} layers takes {expected} parameters, got {}",
            params.len()
        )));
    }
    let mut c = Circuit::new(n_qubits);
    let mut p = params.iter().copied();
    for (a, b) in brickwork_layout(n_qubits, layers).into_iter().flatten() {
        c.push(Gate::RY(a, p.next().unwrap()))?;
        c.push(Gate::RY(b, p.next().unwrap()))?;
        c.push(Gate::CZ(a, b))?;
    }
    Ok(c)
}

/// The ansatz on the input register followed by the matrix-vector operator.
pub fn build_full_variational_circuit(a: &BitMatrix, ansatz: &Circuit) -> Result<Circuit> {
    if ansatz.num_qubits() != a.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "ansatz acts on {} qubits but the matrix has {} columns",
            ansatz.num_qubits(),
            a.ncols()
        )));
    }
    let op = build_matvec_operator(a);
    let mut c = Circuit::new(op.num_qubits());
    c.append(ansatz)?;
    c.append(&op)?;
    Ok(c)
}

/// Three-qubit demo: two rotated inputs XORed into qubit 3. The rotations use
/// `2 theta` and `2 phi`, so qubit 3 reads 1 with probability
/// `sin^2(theta) cos^2(phi) + cos^2(theta) sin^2(phi)`.
pub fn build_adder_demo(theta: f64, phi: f64) -> Circuit {
    Circuit {
        num_qubits: 3,
        gates: vec![
            Gate::RY(1, 2.0 * theta),
            Gate::RY(2, 2.0 * phi),
            Gate::CNOT(1, 3),
            Gate::CNOT(2, 3),
        ],
    }
}
