//! The variational solve loop.
//!
//! A cost evaluation prepares `A V(theta) |0>` on `n + m` qubits and measures
//! how much probability misses `b` on the output register. The parameters are
//! tuned by [`cobyla::minimize`], one simulated circuit per iteration, and the
//! optimized state is read out on the input register. Every candidate is
//! checked against `b` with exact GF(2) arithmetic before it is reported.

pub mod cobyla;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{AnsatzKind, AnsatzParams};
use crate::circuits::build_full_variational_circuit;
use crate::gf2::{mat_vec_mod2, BitMatrix, BitVector};
use crate::par::Execution;
use crate::sim::StateVector;
use crate::{Error, Result};

use self::cobyla::{CobylaOptions, Termination};

/// How candidates are read off the optimized state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Observation {
    /// Every basis state with probability at least `support_cutoff`.
    Exact,
    /// Keys of a histogram of this many measurements.
    Shots(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub ansatz: AnsatzKind,
    /// Brickwork layers; `None` uses one layer per variable.
    pub layers: Option<usize>,
    pub max_iterations: usize,
    pub cost_tolerance: f64,
    pub initial_trust_radius: f64,
    pub final_trust_radius: f64,
    pub observation: Observation,
    pub support_cutoff: f64,
    pub seed: u64,
    /// Extra reseeded attempts when a run finds no valid solution.
    pub restarts: usize,
    /// Strategy for the simulator's inner loops.
    pub execution: Execution,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            ansatz: AnsatzKind::Rotations,
            layers: None,
            max_iterations: 500,
            cost_tolerance: 1e-6,
            initial_trust_radius: 1.0,
            final_trust_radius: 1e-4,
            observation: Observation::Exact,
            support_cutoff: 1e-4,
            seed: 0,
            restarts: 0,
            execution: Execution::default(),
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if !(self.cost_tolerance > 0.0 && self.cost_tolerance < 1.0) {
            return bad(format!("cost tolerance {} outside (0, 1)", self.cost_tolerance));
        }
        if !(self.final_trust_radius > 0.0 && self.final_trust_radius < self.initial_trust_radius) {
            return bad(format!(
                "trust radii must satisfy 0 < final ({}) < initial ({})",
                self.final_trust_radius, self.initial_trust_radius
            ));
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be at least 1".into());
        }
        if !(self.support_cutoff > 0.0 && self.support_cutoff < 1.0) {
            return bad(format!("support cutoff {} outside (0, 1)", self.support_cutoff));
        }
        if self.observation == Observation::Shots(0) {
            return bad("shot count must be at least 1".into());
        }
        Ok(())
    }

    /// Layer count used for an `n`-variable system.
    pub fn layers_for(&self, n: usize) -> usize {
        self.layers.unwrap_or(n)
    }

    fn param_count(&self, n: usize) -> usize {
        AnsatzParams::param_count(self.ansatz, n, self.layers_for(n))
    }

    fn params(&self, n: usize, theta: Vec<f64>) -> AnsatzParams {
        AnsatzParams {
            kind: self.ansatz,
            theta,
            layers: match self.ansatz {
                AnsatzKind::Rotations => 0,
                AnsatzKind::Brickwork => self.layers_for(n),
            },
        }
    }
}

/// Outcome of one optimization run.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimized {
    pub params: AnsatzParams,
    pub iterations: usize,
    pub final_cost: f64,
    pub termination: Termination,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solved: bool,
    pub valid_solutions: BTreeSet<BitVector>,
    pub invalid_candidates: BTreeSet<BitVector>,
    /// Cost evaluations over all attempts.
    pub iterations: usize,
    pub final_cost: f64,
    pub optimal_theta: AnsatzParams,
    pub attempts: usize,
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<BitVector>| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "solved: {}", self.solved)?;
        writeln!(f, "valid: {}", list(&self.valid_solutions))?;
        writeln!(f, "invalid: {}", list(&self.invalid_candidates))?;
        writeln!(f, "iterations: {}", self.iterations)?;
        writeln!(f, "attempts: {}", self.attempts)?;
        writeln!(f, "final_cost: {:e}", self.final_cost)?;
        writeln!(f, "ansatz: {}", self.optimal_theta.kind)?;
        let theta: Vec<String> = self.optimal_theta.theta.iter().map(|t| format!("{t:.6}")).collect();
        write!(f, "theta: {}", theta.join(" "))
    }
}

fn check_rhs(a: &BitMatrix, b: &BitVector) -> Result<()> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a matrix with {} rows",
            b.len(),
            a.nrows()
        )));
    }
    Ok(())
}

fn prepare(a: &BitMatrix, params: &AnsatzParams, exec: Execution) -> Result<StateVector> {
    let circuit = build_full_variational_circuit(a, &params.circuit(a.ncols())?)?;
    let mut state = StateVector::zero(circuit.num_qubits())?;
    state.run_circuit_with(&circuit, exec)?;
    Ok(state)
}

fn output_register(a: &BitMatrix) -> Vec<usize> {
    let n = a.ncols();
    (n + 1..=n + a.nrows()).collect()
}

/// `1 - P(output register = b)` for the state `A V(theta) |0>`.
pub fn simulated_cost(a: &BitMatrix, b: &BitVector, params: &AnsatzParams) -> Result<f64> {
    simulated_cost_with(a, b, params, Execution::default())
}

pub fn simulated_cost_with(a: &BitMatrix, b: &BitVector, params: &AnsatzParams, exec: Execution) -> Result<f64> {
    check_rhs(a, b)?;
    let state = prepare(a, params, exec)?;
    let hit = state.marginal_probability(&output_register(a), b)?;
    Ok((1.0 - hit).clamp(0.0, 1.0))
}

/// Uniform initial angles in `[-2 pi, 2 pi)` for the configured ansatz.
pub fn initial_theta(n: usize, config: &SolveConfig) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.param_count(n))
        .map(|_| rng.gen_range(-2.0 * PI..2.0 * PI))
        .collect()
}

/// Optimizes from a seeded random start.
pub fn optimize(a: &BitMatrix, b: &BitVector, config: &SolveConfig) -> Result<Optimized> {
    optimize_from(a, b, config, initial_theta(a.ncols(), config))
}

/// Optimizes from `theta0`. One cost evaluation is one iteration.
pub fn optimize_from(a: &BitMatrix, b: &BitVector, config: &SolveConfig, theta0: Vec<f64>) -> Result<Optimized> {
    config.validate()?;
    check_rhs(a, b)?;
    let n = a.ncols();
    let expected = config.param_count(n);
    if theta0.len() != expected {
        return Err(Error::DimensionMismatch(format!(
            "{} initial parameters, ansatz takes {expected}",
            theta0.len()
        )));
    }
    // Surface construction errors before entering the optimizer.
    config.params(n, theta0.clone()).circuit(n)?;

    let mut failure = None;
    let result = cobyla::minimize(
        |theta| match simulated_cost_with(a, b, &config.params(n, theta.to_vec()), config.execution) {
            Ok(c) => c,
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        },
        &theta0,
        &CobylaOptions {
            rho_begin: config.initial_trust_radius,
            rho_end: config.final_trust_radius,
            max_evals: config.max_iterations,
            f_target: config.cost_tolerance,
        },
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Optimized {
        params: config.params(n, result.x),
        iterations: result.evals,
        final_cost: result.f,
        termination: result.termination,
    })
}

/// Reads candidates off the state prepared by `params`, keeps their input
/// register, and splits them into solutions and non-solutions of `Ax = b`.
pub fn extract_solutions(
    a: &BitMatrix,
    b: &BitVector,
    params: &AnsatzParams,
    config: &SolveConfig,
) -> Result<(BTreeSet<BitVector>, BTreeSet<BitVector>)> {
    check_rhs(a, b)?;
    let n = a.ncols();
    let state = prepare(a, params, config.execution)?;
    let observed: Vec<BitVector> = match config.observation {
        Observation::Exact => state.support(config.support_cutoff)?.into_iter().collect(),
        Observation::Shots(shots) => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5bd1_e995_9e37_79b9);
            state.sample(shots, &mut rng)?.into_keys().collect()
        }
    };
    let mut valid = BTreeSet::new();
    let mut invalid = BTreeSet::new();
    for full in observed {
        let x = full.slice(1, n);
        if &mat_vec_mod2(a, &x)? == b {
            valid.insert(x);
        } else {
            invalid.insert(x);
        }
    }
    Ok((valid, invalid))
}

/// Seed of restart attempt `attempt`; attempt 0 uses the configured seed.
fn attempt_seed(seed: u64, attempt: usize) -> u64 {
    if attempt == 0 {
        seed
    } else {
        crate::bench::mix_seed(&[seed, attempt as u64, 0x0072_6573_7461_7274])
    }
}

/// Optimize, then extract. With restarts configured, unsolved runs are
/// repeated from new seeds and iterations are summed over attempts.
pub fn solve(a: &BitMatrix, b: &BitVector, config: &SolveConfig) -> Result<SolveReport> {
    config.validate()?;
    check_rhs(a, b)?;
    let mut iterations = 0;
    let mut attempt = 0;
    loop {
        let cfg = SolveConfig {
            seed: attempt_seed(config.seed, attempt),
            ..config.clone()
        };
        let run = optimize(a, b, &cfg)?;
        let (valid, invalid) = extract_solutions(a, b, &run.params, &cfg)?;
        iterations += run.iterations;
        attempt += 1;
        if !valid.is_empty() || attempt > config.restarts {
            return Ok(SolveReport {
                solved: !valid.is_empty(),
                valid_solutions: valid,
                invalid_candidates: invalid,
                iterations,
                final_cost: run.final_cost,
                optimal_theta: run.params,
                attempts: attempt,
            });
        }
    }
}
