//! Unconstrained COBYLA-style minimization.
//!
//! Keeps a simplex of `n + 1` evaluated points, fits the linear interpolant
//! through them, and steps to the edge of a trust region of radius `rho`
//! along the model's steepest descent direction. Poor steps first repair the
//! simplex geometry and then halve `rho`, down to `rho_end`.
//!
//! Every objective evaluation counts toward `max_evals`; there are no hidden
//! evaluations.

/// Simplex acceptability: no vertex farther than `BETA * rho` from the base.
const BETA: f64 = 2.1;
/// Simplex acceptability: no vertex closer than `ALPHA * rho` to its opposite face.
const ALPHA: f64 = 0.25;
/// Length of geometry-repair steps, relative to `rho`.
const GAMMA: f64 = 0.5;
/// Steps with actual/predicted reduction at or below this are unsuccessful.
const SUCCESS_RATIO: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CobylaOptions {
    pub rho_begin: f64,
    pub rho_end: f64,
    pub max_evals: usize,
    /// Stop as soon as an evaluation is at or below this value.
    pub f_target: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    TargetReached,
    RadiusConverged,
    MaxEvals,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CobylaResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub evals: usize,
    pub termination: Termination,
}

struct Counter<F> {
    f: F,
    evals: usize,
    max: usize,
    target: f64,
    best_x: Vec<f64>,
    best_f: f64,
}

enum Stop {
    Target,
    Budget,
}

impl<F: FnMut(&[f64]) -> f64> Counter<F> {
    fn eval(&mut self, x: &[f64]) -> Result<f64, Stop> {
        if self.evals >= self.max {
            return Err(Stop::Budget);
        }
        self.evals += 1;
        let v = (self.f)(x);
        if v < self.best_f || self.best_x.is_empty() {
            self.best_f = v;
            self.best_x = x.to_vec();
        }
        if v <= self.target {
            return Err(Stop::Target);
        }
        Ok(v)
    }

    fn finish(self, termination: Termination) -> CobylaResult {
        CobylaResult {
            x: self.best_x,
            f: self.best_f,
            evals: self.evals,
            termination,
        }
    }
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Inverse of the matrix whose rows are `rows`, returned as columns: entry
/// `k` satisfies `rows[i] . cols[k] == delta_ik`. `None` if singular.
fn inverse_columns(rows: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = rows.len();
    let mut m: Vec<Vec<f64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|k| if k == i { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    let scale = rows.iter().map(|r| norm(r)).fold(0.0, f64::max);
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[pivot][col].abs() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
            return None;
        }
        m.swap(col, pivot);
        let p = m[col][col];
        m[col].iter_mut().for_each(|v| *v /= p);
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && row[col] != 0.0 {
                let factor = row[col];
                row.iter_mut().zip(&pivot_row).for_each(|(v, pv)| *v -= factor * pv);
            }
        }
    }
    // m = [I | D^-1]; column k of D^-1 is read down the rows
    Some(
        (0..n)
            .map(|k| (0..n).map(|i| m[i][n + k]).collect())
            .collect(),
    )
}

/// Minimizes `f` starting from `x0`.
pub fn minimize<F: FnMut(&[f64]) -> f64>(f: F, x0: &[f64], opts: &CobylaOptions) -> CobylaResult {
    let n = x0.len();
    let mut ctr = Counter {
        f,
        evals: 0,
        max: opts.max_evals,
        target: opts.f_target,
        best_x: Vec::new(),
        best_f: f64::INFINITY,
    };
    match run(&mut ctr, n, x0, opts) {
        Ok(()) => ctr.finish(Termination::RadiusConverged),
        Err(Stop::Target) => ctr.finish(Termination::TargetReached),
        Err(Stop::Budget) => ctr.finish(Termination::MaxEvals),
    }
}

fn run<F: FnMut(&[f64]) -> f64>(ctr: &mut Counter<F>, n: usize, x0: &[f64], opts: &CobylaOptions) -> Result<(), Stop> {
    let mut rho = opts.rho_begin;
    let mut base = x0.to_vec();
    let mut fbase = ctr.eval(&base)?;
    if n == 0 {
        return Ok(());
    }

    let mut offsets: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut values: Vec<f64> = Vec::with_capacity(n);
    let coordinate_simplex = |rho: f64| -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|k| if k == i { rho } else { 0.0 }).collect())
            .collect()
    };
    for d in coordinate_simplex(rho) {
        values.push(ctr.eval(&add(&base, &d))?);
        offsets.push(d);
    }

    let mut after_trust_step = false;
    loop {
        // The base is the best vertex.
        if let Some(k) = (0..n)
            .filter(|&k| values[k] < fbase)
            .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        {
            let shift = offsets[k].clone();
            base = add(&base, &shift);
            for (i, d) in offsets.iter_mut().enumerate() {
                if i == k {
                    d.iter_mut().for_each(|v| *v = -*v);
                } else {
                    d.iter_mut().zip(&shift).for_each(|(v, s)| *v -= s);
                }
            }
            std::mem::swap(&mut fbase, &mut values[k]);
        }

        let Some(inv) = inverse_columns(&offsets) else {
            // Degenerate simplex: rebuild it around the base.
            offsets = coordinate_simplex(rho);
            for (i, d) in offsets.iter().enumerate() {
                values[i] = ctr.eval(&add(&base, d))?;
            }
            after_trust_step = false;
            continue;
        };
        // Linear model gradient: D g = f(vertices) - f(base), so g = D^-1 df.
        let grad: Vec<f64> = (0..n)
            .map(|r| (0..n).map(|k| inv[k][r] * (values[k] - fbase)).sum())
            .collect();

        // Acceptability of the simplex at the current radius.
        let lengths: Vec<f64> = offsets.iter().map(|d| norm(d)).collect();
        let heights: Vec<f64> = inv.iter().map(|w| 1.0 / norm(w)).collect();
        let far = (0..n)
            .filter(|&j| lengths[j] > BETA * rho)
            .max_by(|&a, &b| lengths[a].total_cmp(&lengths[b]));
        let flat = (0..n)
            .filter(|&j| heights[j] < ALPHA * rho)
            .min_by(|&a, &b| heights[a].total_cmp(&heights[b]));
        let bad_vertex = far.or(flat);

        if let (Some(j), false) = (bad_vertex, after_trust_step) {
            // Move vertex j along the normal of its opposite face.
            let w = &inv[j];
            let mut step: Vec<f64> = w.iter().map(|v| GAMMA * rho * heights[j] * v).collect();
            if dot(&step, &grad) > 0.0 {
                step.iter_mut().for_each(|v| *v = -*v);
            }
            values[j] = ctr.eval(&add(&base, &step))?;
            offsets[j] = step;
            continue;
        }

        let gnorm = norm(&grad);
        let mut successful = false;
        if gnorm > 0.0 && gnorm.is_finite() {
            let step: Vec<f64> = grad.iter().map(|g| -rho * g / gnorm).collect();
            let predicted = rho * gnorm;
            let fnew = ctr.eval(&add(&base, &step))?;
            let improved = fnew < fbase;

            // Drop the vertex whose replacement keeps the simplex volume largest.
            let mut best = if improved { 0.0 } else { 1.0 };
            let mut drop = None;
            for j in 0..n {
                let mut score = dot(&step, &inv[j]).abs();
                if improved {
                    let edge: f64 = offsets[j].iter().zip(&step).map(|(d, s)| (d - s).powi(2)).sum();
                    score *= (edge / (rho * rho)).max(1.0);
                }
                if score > best {
                    best = score;
                    drop = Some(j);
                }
            }
            if let Some(j) = drop {
                offsets[j] = step;
                values[j] = fnew;
            }
            after_trust_step = true;
            successful = (fbase - fnew) > SUCCESS_RATIO * predicted;
        }
        if successful {
            continue;
        }
        if bad_vertex.is_some() {
            after_trust_step = false;
            continue;
        }
        if rho <= opts.rho_end {
            return Ok(());
        }
        rho *= 0.5;
        if rho <= 1.5 * opts.rho_end {
            rho = opts.rho_end;
        }
        after_trust_step = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(max: usize) -> CobylaOptions {
        CobylaOptions {
            rho_begin: 1.0,
            rho_end: 1e-6,
            max_evals: max,
            f_target: f64::NEG_INFINITY,
        }
    }

    #[test]
    fn inverse_columns_is_inverse() {
        let rows = vec![vec![2.0, 1.0, 0.0], vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 1.0]];
        let cols = inverse_columns(&rows).unwrap();
        for (i, r) in rows.iter().enumerate() {
            for (k, c) in cols.iter().enumerate() {
                let expected = if i == k { 1.0 } else { 0.0 };
                assert!((dot(r, c) - expected).abs() < 1e-12);
            }
        }
        assert!(inverse_columns(&[vec![1.0, 2.0], vec![2.0, 4.0]]).is_none());
    }

    #[test]
    fn minimizes_a_quadratic() {
        let r = minimize(
            |x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2) + 0.5 * x[0] * x[1],
            &[4.0, 4.0],
            &opts(2000),
        );
        // stationary point of the quadratic
        let (xs, ys) = (72.0 / 47.0, -100.0 / 47.0);
        assert_eq!(r.termination, Termination::RadiusConverged);
        assert!((r.x[0] - xs).abs() < 1e-3 && (r.x[1] - ys).abs() < 1e-3, "{:?}", r.x);
    }

    #[test]
    fn minimizes_separable_trig() {
        let f = |x: &[f64]| 1.0 - x.iter().map(|t| (t / 2.0).sin().powi(2)).product::<f64>();
        let r = minimize(f, &[0.5, 2.0, 4.0, -1.0], &opts(5000));
        assert!(r.f < 1e-9, "{}", r.f);
    }

    #[test]
    fn respects_budget_and_counts_evals() {
        let mut calls = 0;
        let r = minimize(
            |x| {
                calls += 1;
                x.iter().map(|v| v * v).sum()
            },
            &[3.0, -2.0, 1.0],
            &opts(7),
        );
        assert_eq!(r.termination, Termination::MaxEvals);
        assert_eq!(r.evals, 7);
        assert_eq!(calls, 7);
    }

    #[test]
    fn stops_at_target() {
        let r = minimize(
            |x| x[0] * x[0],
            &[0.0],
            &CobylaOptions {
                f_target: 1e-6,
                ..opts(100)
            },
        );
        assert_eq!(r.termination, Termination::TargetReached);
        assert_eq!(r.evals, 1);
    }

    #[test]
    fn flat_function_converges() {
        // only geometry repairs after each radius reduction cost evaluations
        let r = minimize(|_| 1.0, &[0.1, 0.2], &opts(1000));
        assert_eq!(r.termination, Termination::RadiusConverged);
        assert!(r.evals <= 3 + 2 * 20, "{}", r.evals);
        assert_eq!(r.x, vec![0.1, 0.2]);
    }

    #[test]
    fn zero_dimensional_problem() {
        let r = minimize(|_| 0.5, &[], &opts(10));
        assert_eq!(r.evals, 1);
        assert_eq!(r.f, 0.5);
    }
}
