//! Benchmark rows comparing measured comparisons with the lower bound and
//! entropy estimates.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::entropy::greedy_point;
use crate::error::Result;
use crate::families::{multiselection, selection, Family};
use crate::flow::greedy_antichain_decomposition;
use crate::frank_wolfe::{entropy_exact, EntropyMode, SolverOptions};
use crate::linext::{count_linear_extensions, log2_factorial, BRUTE_FORCE_LIMIT};
use crate::multiselect::PivotRule;
use crate::oracle::ComparisonOracle;
use crate::poset::Poset;
use crate::produce::Producer;

/// Largest poset whose entropy is solved exactly for a report.
pub const EXACT_ENTROPY_LIMIT: usize = 14;

/// One production run. Column order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub comparisons: u64,
    /// `log2 n! - log2 e(P)`, or `n H` from the greedy point when
    /// `itlb_exact` is false.
    pub itlb: f64,
    pub itlb_exact: bool,
    /// Lower end of the range known to contain the bound: equal to `itlb`
    /// when exact, otherwise `itlb - n log2 e`.
    pub itlb_low: f64,
    /// `n H(P)`; the greedy-point entropy stands in when `nh_p_exact` is false.
    pub nh_p: f64,
    pub nh_p_exact: bool,
    pub nh_w: f64,
    /// `log2 n! - log2 e(W)` for the weak order actually produced.
    pub b: f64,
    pub preprocess_ms: f64,
    pub ordering_ms: f64,
    /// Exact bound known and this run used fewer comparisons than it.
    pub below_itlb: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

#[derive(Debug, Clone, Copy)]
pub struct BenchConfig {
    pub trials: usize,
    pub seed: u64,
    pub median_of_medians: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            trials: 10,
            seed: 0,
            median_of_medians: false,
        }
    }
}

/// Exact `log2 n! - log2 e(P)` where a closed form or the counting oracle
/// applies.
fn exact_itlb(family: &Family, p: &Poset) -> Result<Option<f64>> {
    let closed = match family {
        Family::Chain(n) => Some(log2_factorial(*n)),
        Family::Antichain(_) => Some(0.0),
        Family::Selection { n, k } => Some(selection(*n, *k)?.itlb()),
        Family::Multiselection { n, ranks } => Some(multiselection(*n, ranks)?.itlb()),
        _ => None,
    };
    if closed.is_some() {
        return Ok(closed);
    }
    if p.len() <= BRUTE_FORCE_LIMIT {
        let e = count_linear_extensions(p)?;
        return Ok(Some((log2_factorial(p.len()) - e.log2()).max(0.0)));
    }
    Ok(None)
}

pub fn run_bench(families: &[Family], config: &BenchConfig) -> Result<BenchReport> {
    let mut rows = Vec::new();
    for family in families {
        let p = family.build()?;
        let n = p.len();
        let start = Instant::now();
        let producer = Producer::new(p)?;
        let preprocess_ms = start.elapsed().as_secs_f64() * 1e3;

        let (nh_p, nh_p_exact) = if n <= EXACT_ENTROPY_LIMIT {
            let h = entropy_exact(producer.poset(), EntropyMode::Comparability, &SolverOptions::default())?;
            (n as f64 * h.value, h.converged)
        } else {
            let g = greedy_point(&greedy_antichain_decomposition(producer.poset()));
            (n as f64 * g.entropy(), false)
        };
        let exact = exact_itlb(family, producer.poset())?;
        let (itlb, itlb_low) = match exact {
            Some(v) => (v, v),
            None => (nh_p, (nh_p - n as f64 * std::f64::consts::E.log2()).max(0.0)),
        };
        let weak = producer.weak();

        for trial in 0..config.trials {
            let seed = config.seed.wrapping_add(trial as u64);
            let mut oracle = ComparisonOracle::from_seed(n, seed);
            let rule = if config.median_of_medians {
                PivotRule::MedianOfMedians
            } else {
                PivotRule::Random { seed }
            };
            let start = Instant::now();
            let prod = producer.run(&mut oracle, rule)?;
            let ordering_ms = start.elapsed().as_secs_f64() * 1e3;
            debug_assert_eq!(prod.comparisons, oracle.count());
            rows.push(BenchRow {
                family: family.to_string(),
                n,
                trial,
                seed,
                comparisons: oracle.count(),
                itlb,
                itlb_exact: exact.is_some(),
                itlb_low,
                nh_p,
                nh_p_exact,
                nh_w: n as f64 * weak.entropy(),
                b: weak.itlb(),
                preprocess_ms,
                ordering_ms,
                below_itlb: exact.is_some() && (oracle.count() as f64) < (itlb - 1e-9).ceil(),
            });
        }
    }
    Ok(BenchReport { rows })
}
