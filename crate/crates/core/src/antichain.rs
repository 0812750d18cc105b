//! Maximum-weight antichains by exhaustive branch and bound, and
//! maximum-weight chains by a longest-path pass over the Hasse diagram.

use crate::error::{Error, Result};
use crate::linext::BRUTE_FORCE_LIMIT;
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSet {
    /// Sorted ascending.
    pub elements: Vec<usize>,
    pub weight: f64,
}

/// A maximum-weight antichain for nonnegative `weights` (unit weights when
/// `None`). Ties resolve towards the lexicographically first set found by
/// including low indices first.
pub fn max_antichain_brute(p: &Poset, weights: Option<&[f64]>) -> Result<WeightedSet> {
    let all: Vec<usize> = (0..p.len()).collect();
    max_antichain_within(p, &all, weights, BRUTE_FORCE_LIMIT)
}

/// Same as [`max_antichain_brute`] restricted to the elements in `allowed`.
pub fn max_antichain_within(
    p: &Poset,
    allowed: &[usize],
    weights: Option<&[f64]>,
    limit: usize,
) -> Result<WeightedSet> {
    let n = p.len();
    if allowed.len() > limit.min(63) {
        return Err(Error::OracleLimit {
            what: "brute-force antichain search",
            n: allowed.len(),
            limit: limit.min(63),
        });
    }
    if let Some(w) = weights {
        if w.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: w.len(),
            });
        }
    }
    let weight_of = |v: usize| weights.map_or(1.0, |w| w[v]);

    let k = allowed.len();
    let local_weight: Vec<f64> = allowed.iter().map(|&v| weight_of(v)).collect();
    let conflicts: Vec<u64> = allowed
        .iter()
        .map(|&v| {
            allowed.iter().enumerate().fold(0u64, |mask, (j, &w)| {
                if v != w && p.comparable(v, w) {
                    mask | (1 << j)
                } else {
                    mask
                }
            })
        })
        .collect();

    let mut search = Search {
        weight: &local_weight,
        conflicts: &conflicts,
        best_mask: 0,
        best_weight: f64::NEG_INFINITY,
    };
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    search.run(full, 0, 0.0);

    let mut elements: Vec<usize> = (0..k)
        .filter(|&j| search.best_mask >> j & 1 == 1)
        .map(|j| allowed[j])
        .collect();
    elements.sort_unstable();
    Ok(WeightedSet {
        elements,
        weight: search.best_weight.max(0.0),
    })
}

struct Search<'a> {
    weight: &'a [f64],
    conflicts: &'a [u64],
    best_mask: u64,
    best_weight: f64,
}

impl Search<'_> {
    fn run(&mut self, cand: u64, chosen: u64, acc: f64) {
        if cand == 0 {
            if acc > self.best_weight {
                self.best_weight = acc;
                self.best_mask = chosen;
            }
            return;
        }
        let bound: f64 = acc + ones(cand).map(|j| self.weight[j]).sum::<f64>();
        if bound <= self.best_weight {
            return;
        }
        let j = cand.trailing_zeros() as usize;
        let bit = 1u64 << j;
        self.run(cand & !bit & !self.conflicts[j], chosen | bit, acc + self.weight[j]);
        self.run(cand & !bit, chosen, acc);
    }
}

fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let j = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(j)
        }
    })
}

/// A maximum-weight chain for nonnegative weights, by longest path over the
/// cover relation. Linear in the size of the Hasse diagram.
pub fn max_weight_chain(p: &Poset, weights: &[f64]) -> Result<WeightedSet> {
    let n = p.len();
    if weights.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: weights.len(),
        });
    }
    if n == 0 {
        return Ok(WeightedSet {
            elements: Vec::new(),
            weight: 0.0,
        });
    }
    let mut best = vec![0.0f64; n];
    let mut prev = vec![usize::MAX; n];
    for &v in p.topological_order() {
        let mut base = 0.0;
        for &u in p.lower_covers(v) {
            if prev[v] == usize::MAX || best[u] > base {
                base = best[u];
                prev[v] = u;
            }
        }
        best[v] = base + weights[v];
    }
    let mut end = 0;
    for v in 1..n {
        if best[v] > best[end] {
            end = v;
        }
    }
    let mut elements = vec![end];
    while prev[*elements.last().unwrap()] != usize::MAX {
        let u = prev[*elements.last().unwrap()];
        elements.push(u);
    }
    elements.sort_unstable();
    Ok(WeightedSet {
        elements,
        weight: best[end],
    })
}
