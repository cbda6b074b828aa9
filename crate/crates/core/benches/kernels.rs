use std::f64::consts::PI;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mod2vqls::analytic::{AnsatzKind, AnsatzParams};
use mod2vqls::bench::run_benchmark;
use mod2vqls::gf2::random_consistent_system;
use mod2vqls::par::Execution;
use mod2vqls::sim::{Gate, StateVector};
use mod2vqls::solver::{simulated_cost_with, SolveConfig};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn gates(c: &mut Criterion) {
    let mut group = c.benchmark_group("gate_layer");
    for qubits in [14usize, 18, 20] {
        let layer: Vec<Gate> = (1..=qubits)
            .map(|q| Gate::RY(q, 0.3 + q as f64))
            .chain((1..qubits).map(|q| Gate::CNOT(q, q + 1)))
            .collect();
        for (name, exec) in MODES {
            let mut state = StateVector::zero(qubits).unwrap();
            group.bench_with_input(BenchmarkId::new(name, qubits), &layer, |bench, layer| {
                bench.iter(|| {
                    for g in layer {
                        state.apply_gate_with(g, exec).unwrap();
                    }
                })
            });
        }
    }
    group.finish();
}

fn cost(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulated_cost");
    group.sample_size(20);
    for n in [6usize, 8, 10] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let (a, b, _) = random_consistent_system(n, &mut rng).unwrap();
        let params = AnsatzParams::rotations((0..n).map(|j| PI * j as f64 / n as f64).collect());
        for (name, exec) in MODES {
            group.bench_function(BenchmarkId::new(name, n), |bench| {
                bench.iter(|| simulated_cost_with(&a, &b, &params, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn trials(c: &mut Criterion) {
    let mut group = c.benchmark_group("benchmark_trials");
    group.sample_size(10);
    let config = SolveConfig::default();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "rotations_1_6"), |bench| {
            bench.iter(|| run_benchmark(1..=6, 4, AnsatzKind::Rotations, 0, &config, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, gates, cost, trials);
criterion_main!(benches);
