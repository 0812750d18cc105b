//! Graph entropy of a comparability graph (or of its complement) by
//! conditional gradient over the stable set polytope.
//!
//! The objective is `f(x) = -(1/n) sum log2 x_v`. Its gradient is
//! `-1/(n ln 2 x_v)`, so the linear minimisation step is a maximum-weight
//! antichain (comparability graph) or chain (complement) under weights
//! `1/x_v`, and the duality gap reduces to `(max weight - n) / (n ln 2)`.
//! Away steps over the active vertex set give linear convergence on these
//! polytopes; the gap bounds the distance to the optimum from above.

use std::collections::HashMap;
use std::f64::consts::LN_2;

use crate::antichain::{max_antichain_within, max_weight_chain};
use crate::error::{Error, Result};
use crate::flow::greedy_antichain_decomposition;
use crate::linext::BRUTE_FORCE_LIMIT;
use crate::poset::Poset;

/// Which graph of the poset to take the entropy of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyMode {
    /// Comparability graph: stable sets are antichains.
    Comparability,
    /// Its complement: stable sets are chains.
    Complement,
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub max_iters: usize,
    /// Stop once the duality gap (in bits) drops to this value.
    pub tol: f64,
    /// Largest poset handled by the exhaustive antichain oracle.
    pub brute_limit: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_iters: 200_000,
            tol: 1e-4,
            brute_limit: BRUTE_FORCE_LIMIT,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EntropyEstimate {
    /// Objective at the final iterate; an upper bound on the entropy.
    pub value: f64,
    /// Final duality gap; `value - gap` is a lower bound.
    pub gap: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Final iterate.
    pub x: Vec<f64>,
    /// Objective after each iteration, starting with the initial point.
    pub history: Vec<f64>,
}

impl EntropyEstimate {
    pub fn lower_bound(&self) -> f64 {
        (self.value - self.gap).max(0.0)
    }
}

const MIN_COORD: f64 = 1e-12;

fn objective(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    -x.iter().map(|v| v.log2()).sum::<f64>() / n
}

pub fn entropy_exact(p: &Poset, mode: EntropyMode, opts: &SolverOptions) -> Result<EntropyEstimate> {
    let n = p.len();
    if mode == EntropyMode::Comparability && n > opts.brute_limit {
        return Err(Error::OracleLimit {
            what: "comparability-graph entropy",
            n,
            limit: opts.brute_limit,
        });
    }
    if n == 0 {
        return Ok(EntropyEstimate {
            value: 0.0,
            gap: 0.0,
            converged: true,
            iterations: 0,
            x: Vec::new(),
            history: vec![0.0],
        });
    }

    let all: Vec<usize> = (0..n).collect();
    let oracle = |weights: &[f64]| -> Result<(Vec<usize>, f64)> {
        let best = match mode {
            EntropyMode::Comparability => max_antichain_within(p, &all, Some(weights), opts.brute_limit)?,
            EntropyMode::Complement => max_weight_chain(p, weights)?,
        };
        Ok((best.elements, best.weight))
    };

    let mut active = ActiveSet::default();
    match mode {
        EntropyMode::Comparability => {
            let dec = greedy_antichain_decomposition(p);
            for set in dec.sets() {
                active.add(set.clone(), set.len() as f64 / n as f64);
            }
        }
        EntropyMode::Complement => {
            for v in 0..n {
                active.add(vec![v], 1.0 / n as f64);
            }
        }
    }
    let mut x = active.point(n);
    let scale = n as f64 * LN_2;

    let mut history = vec![objective(&x)];
    let mut gap = f64::INFINITY;
    let mut iterations = 0;
    while iterations < opts.max_iters {
        let weights: Vec<f64> = x.iter().map(|v| 1.0 / v).collect();
        let (fw_atom, fw_weight) = oracle(&weights)?;
        gap = ((fw_weight - n as f64) / scale).max(0.0);
        if gap <= opts.tol {
            break;
        }
        iterations += 1;

        let (away_idx, away_weight) = active.lightest(&weights);
        let away_gain = (n as f64 - away_weight) / scale;
        let lambda_away = active.weight[away_idx];

        let mut direction = vec![0.0; n];
        let (max_step, away) = if gap >= away_gain || lambda_away >= 1.0 - 1e-15 {
            for (d, xv) in direction.iter_mut().zip(&x) {
                *d = -xv;
            }
            for &v in &fw_atom {
                direction[v] += 1.0;
            }
            (1.0, false)
        } else {
            for (d, xv) in direction.iter_mut().zip(&x) {
                *d = *xv;
            }
            for &v in &active.atoms[away_idx] {
                direction[v] -= 1.0;
            }
            (lambda_away / (1.0 - lambda_away), true)
        };

        let gamma = line_search(&x, &direction, max_step);
        if gamma <= 0.0 {
            break;
        }
        for (xv, d) in x.iter_mut().zip(&direction) {
            *xv = (*xv + gamma * d).max(MIN_COORD);
        }
        if away {
            active.scale(1.0 + gamma);
            active.weight[away_idx] -= gamma;
            if gamma >= max_step * (1.0 - 1e-12) {
                active.remove(away_idx);
            }
        } else {
            active.scale(1.0 - gamma);
            active.add(fw_atom, gamma);
        }
        active.prune();
        if iterations % 256 == 0 {
            x = active.point(n);
        }
        history.push(objective(&x));
    }

    Ok(EntropyEstimate {
        value: objective(&x),
        gap,
        converged: gap <= opts.tol,
        iterations,
        x,
        history,
    })
}

/// Largest step in `[0, max_step]` not beyond the minimiser of `f(x + t d)`,
/// keeping every coordinate above `MIN_COORD`.
fn line_search(x: &[f64], d: &[f64], max_step: f64) -> f64 {
    let mut hi = max_step;
    for (xv, dv) in x.iter().zip(d) {
        if *dv < 0.0 {
            hi = hi.min((xv - MIN_COORD) / -dv);
        }
    }
    // derivative of sum -ln(x + t d), up to a positive factor
    let slope = |t: f64| -> f64 {
        x.iter()
            .zip(d)
            .filter(|(_, dv)| **dv != 0.0)
            .map(|(xv, dv)| -dv / (xv + t * dv))
            .sum()
    };
    if slope(0.0) >= 0.0 {
        return 0.0;
    }
    if slope(hi) <= 0.0 {
        return hi;
    }
    let mut lo = 0.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if slope(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi.max(1e-300) {
            break;
        }
    }
    lo
}

#[derive(Default)]
struct ActiveSet {
    atoms: Vec<Vec<usize>>,
    weight: Vec<f64>,
    index: HashMap<Vec<usize>, usize>,
}

impl ActiveSet {
    fn add(&mut self, atom: Vec<usize>, w: f64) {
        if let Some(&i) = self.index.get(&atom) {
            self.weight[i] += w;
        } else {
            self.index.insert(atom.clone(), self.atoms.len());
            self.atoms.push(atom);
            self.weight.push(w);
        }
    }

    fn scale(&mut self, factor: f64) {
        for w in &mut self.weight {
            *w *= factor;
        }
    }

    fn remove(&mut self, i: usize) {
        self.weight[i] = 0.0;
    }

    fn prune(&mut self) {
        if self.weight.iter().all(|&w| w > 1e-14) {
            return;
        }
        let mut atoms = Vec::with_capacity(self.atoms.len());
        let mut weight = Vec::with_capacity(self.atoms.len());
        for (a, &w) in self.atoms.drain(..).zip(&self.weight) {
            if w > 1e-14 {
                atoms.push(a);
                weight.push(w);
            }
        }
        let total: f64 = weight.iter().sum();
        for w in &mut weight {
            *w /= total;
        }
        self.index = atoms.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        self.atoms = atoms;
        self.weight = weight;
    }

    fn lightest(&self, weights: &[f64]) -> (usize, f64) {
        self.atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (i, a.iter().map(|&v| weights[v]).sum::<f64>()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("active set is never empty")
    }

    fn point(&self, n: usize) -> Vec<f64> {
        let mut x = vec![0.0; n];
        for (a, &w) in self.atoms.iter().zip(&self.weight) {
            for &v in a {
                x[v] += w;
            }
        }
        x.iter().map(|v| v.max(MIN_COORD)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(p: &Poset, mode: EntropyMode) -> EntropyEstimate {
        let opts = SolverOptions {
            tol: 1e-7,
            ..SolverOptions::default()
        };
        entropy_exact(p, mode, &opts).unwrap()
    }

    #[test]
    fn single_relation_example() {
        // b <= c with a isolated
        let p = Poset::from_relations(3, &[(1, 2)]).unwrap();
        let est = solve(&p, EntropyMode::Comparability);
        assert!(est.converged);
        assert!((est.value - 2.0 / 3.0).abs() < 1e-5, "{}", est.value);
        for (got, want) in est.x.iter().zip([1.0, 0.5, 0.5]) {
            assert!((got - want).abs() < 1e-2);
        }
    }

    #[test]
    fn chain_has_log_n_entropy() {
        for n in 1..=6 {
            let est = solve(&Poset::chain(n), EntropyMode::Comparability);
            assert!((est.value - (n as f64).log2()).abs() < 1e-5);
        }
    }

    #[test]
    fn v_poset_matches_one_dimensional_minimum() {
        // -(1/3)(log x + 2 log(1-x)) is minimised at x = 1/3
        let oracle = |t: f64| -(t.log2() + 2.0 * (1.0 - t).log2()) / 3.0;
        let mut best = f64::INFINITY;
        for i in 1..100_000 {
            best = best.min(oracle(i as f64 / 100_000.0));
        }
        let p = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        let est = solve(&p, EntropyMode::Comparability);
        assert!((est.value - best).abs() < 1e-5);
        assert!((best - (3f64.log2() - 2.0 / 3.0)).abs() < 1e-8);
    }

    #[test]
    fn complement_of_chain_is_zero() {
        let est = solve(&Poset::chain(5), EntropyMode::Complement);
        assert!(est.value.abs() < 1e-6);
        let est = solve(&Poset::antichain(4), EntropyMode::Complement);
        assert!((est.value - 2.0).abs() < 1e-6);
    }

    #[test]
    fn history_is_nonincreasing() {
        let p = Poset::from_relations(6, &[(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (3, 5)]).unwrap();
        for mode in [EntropyMode::Comparability, EntropyMode::Complement] {
            let est = solve(&p, mode);
            for w in est.history.windows(2) {
                assert!(w[1] <= w[0] + 1e-12, "{:?}", w);
            }
            assert!(est.gap <= 1e-7);
        }
    }

    #[test]
    fn iteration_cap_reports_gap() {
        let p = Poset::from_relations(5, &[(0, 2), (1, 2), (2, 3), (1, 4)]).unwrap();
        let opts = SolverOptions {
            max_iters: 0,
            tol: 1e-12,
            ..SolverOptions::default()
        };
        let est = entropy_exact(&p, EntropyMode::Complement, &opts).unwrap();
        assert!(!est.converged);
        assert!(est.gap > 0.0);
    }

    #[test]
    fn comparability_mode_limit() {
        let p = Poset::antichain(21);
        assert!(matches!(
            entropy_exact(&p, EntropyMode::Comparability, &SolverOptions::default()),
            Err(Error::OracleLimit { .. })
        ));
        let est = entropy_exact(&p, EntropyMode::Complement, &SolverOptions::default()).unwrap();
        assert!((est.value - 21f64.log2()).abs() < 1e-3);
    }
}
