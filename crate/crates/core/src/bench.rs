//! Per-dimension experiment harness.
//!
//! For every dimension, `trials` random square systems with planted solutions
//! are solved and the outcomes are aggregated into one [`BenchmarkRow`]. The
//! system and start point of a trial depend only on
//! `(master seed, dim, trial)`, so extending the dimension range never changes
//! existing trials, and parallel and sequential runs produce identical rows.

use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analytic::AnsatzKind;
use crate::gf2::{random_consistent_system, BitMatrix, BitVector};
use crate::par::{map_ordered, Execution};
use crate::solver::{solve, SolveConfig, SolveReport};
use crate::{Error, Result};

pub const CSV_HEADER: &str = "dim,ansatz,solved,valid,invalid,avg_iterations";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRow {
    pub dim: usize,
    pub ansatz: AnsatzKind,
    pub solved_count: usize,
    /// Distinct valid solutions per trial, summed over the trials.
    pub distinct_valid: usize,
    /// Distinct invalid candidates per trial, summed over the trials.
    pub distinct_invalid: usize,
    pub avg_iterations: f64,
}

/// One solved system of a benchmark run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub dim: usize,
    pub trial: usize,
    pub seed: u64,
    pub a: BitMatrix,
    pub b: BitVector,
    pub planted: BitVector,
    pub report: SolveReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRun {
    pub rows: Vec<BenchmarkRow>,
    pub trials: Vec<TrialRecord>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Order-sensitive mix of several words into one seed.
pub fn mix_seed(parts: &[u64]) -> u64 {
    parts.iter().fold(0x6d6f_6432_7671_6c73, |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

/// Seed of trial `trial` at dimension `dim`.
pub fn trial_seed(master: u64, dim: usize, trial: usize) -> u64 {
    mix_seed(&[master, dim as u64, trial as u64])
}

/// Runs `trials` systems per dimension. `base` supplies every solver setting
/// except the seed, which is derived per trial. Trials run under `exec`.
pub fn run_benchmark(
    dims: RangeInclusive<usize>,
    trials: usize,
    ansatz: AnsatzKind,
    seed: u64,
    base: &SolveConfig,
    exec: Execution,
) -> Result<BenchmarkRun> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    if *dims.start() == 0 {
        return Err(Error::InvalidInput("dimensions start at 1".into()));
    }
    base.validate()?;
    let jobs: Vec<(usize, usize)> = dims
        .clone()
        .flat_map(|dim| (0..trials).map(move |t| (dim, t)))
        .collect();
    let records = map_ordered(jobs, exec, |(dim, trial)| -> Result<TrialRecord> {
        let seed = trial_seed(seed, dim, trial);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, planted) = random_consistent_system(dim, &mut rng)?;
        let config = SolveConfig {
            ansatz,
            seed,
            ..base.clone()
        };
        let report = solve(&a, &b, &config)?;
        Ok(TrialRecord {
            dim,
            trial,
            seed,
            a,
            b,
            planted,
            report,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let rows = dims
        .map(|dim| aggregate(dim, ansatz, records.iter().filter(|r| r.dim == dim)))
        .collect();
    Ok(BenchmarkRun { rows, trials: records })
}

fn aggregate<'a>(dim: usize, ansatz: AnsatzKind, trials: impl Iterator<Item = &'a TrialRecord>) -> BenchmarkRow {
    let mut row = BenchmarkRow {
        dim,
        ansatz,
        solved_count: 0,
        distinct_valid: 0,
        distinct_invalid: 0,
        avg_iterations: 0.0,
    };
    let mut count = 0usize;
    let mut iterations = 0usize;
    for t in trials {
        count += 1;
        row.solved_count += usize::from(t.report.solved);
        row.distinct_valid += t.report.valid_solutions.len();
        row.distinct_invalid += t.report.invalid_candidates.len();
        iterations += t.report.iterations;
    }
    if count > 0 {
        row.avg_iterations = iterations as f64 / count as f64;
    }
    row
}

/// Least-squares line through `(dim, avg_iterations)`; returns `(slope, intercept)`.
pub fn fit_iteration_slope(rows: &[BenchmarkRow]) -> Result<(f64, f64)> {
    if rows.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "a line fit needs at least 2 rows, got {}",
            rows.len()
        )));
    }
    let k = rows.len() as f64;
    let mx = rows.iter().map(|r| r.dim as f64).sum::<f64>() / k;
    let my = rows.iter().map(|r| r.avg_iterations).sum::<f64>() / k;
    let sxx: f64 = rows.iter().map(|r| (r.dim as f64 - mx).powi(2)).sum();
    let sxy: f64 = rows
        .iter()
        .map(|r| (r.dim as f64 - mx) * (r.avg_iterations - my))
        .sum();
    if sxx == 0.0 {
        return Err(Error::InvalidInput("all rows share one dimension".into()));
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// CSV text for `rows`, header included.
pub fn format_csv(rows: &[BenchmarkRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{:?}",
            r.dim, r.ansatz, r.solved_count, r.distinct_valid, r.distinct_invalid, r.avg_iterations
        )
        .unwrap();
    }
    out
}

pub fn emit_csv(rows: &[BenchmarkRow], path: &Path) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(format_csv(rows).as_bytes())?;
    Ok(())
}

/// Parses text written by [`format_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<BenchmarkRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected header {CSV_HEADER:?}"),
            })
        }
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| {
            let err = |msg: String| Error::Parse { line: k + 1, msg };
            let fields: Vec<&str> = l.trim().split(',').collect();
            let [dim, ansatz, solved, valid, invalid, avg] = fields[..] else {
                return Err(err(format!("expected 6 fields, found {}", fields.len())));
            };
            let int = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad integer {s:?}")));
            Ok(BenchmarkRow {
                dim: int(dim)?,
                ansatz: ansatz.parse().map_err(|e: Error| err(e.to_string()))?,
                solved_count: int(solved)?,
                distinct_valid: int(valid)?,
                distinct_invalid: int(invalid)?,
                avg_iterations: avg.parse().map_err(|_| err(format!("bad number {avg:?}")))?,
            })
        })
        .collect()
}
