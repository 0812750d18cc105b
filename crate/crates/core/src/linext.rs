//! Exact linear extension counting by dynamic programming over downsets,
//! and the information-theoretic lower bound built on it.

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Largest ground set the exhaustive oracles accept by default.
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Exact number of linear extensions `e(P)`, with `1 <= e(P) <= n!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearExtensionCount(pub u128);

impl LinearExtensionCount {
    pub fn value(self) -> u128 {
        self.0
    }

    pub fn log2(self) -> f64 {
        (self.0 as f64).log2()
    }
}

pub fn count_linear_extensions(p: &Poset) -> Result<LinearExtensionCount> {
    count_linear_extensions_with_limit(p, BRUTE_FORCE_LIMIT)
}

/// Counts linear extensions. Memory and time are `O(2^n)` and `O(n 2^n)`,
/// so the ground set must not exceed `limit` (itself capped at 22).
pub fn count_linear_extensions_with_limit(p: &Poset, limit: usize) -> Result<LinearExtensionCount> {
    let n = p.len();
    let limit = limit.min(22);
    if n > limit {
        return Err(Error::OracleLimit {
            what: "linear extension counting",
            n,
            limit,
        });
    }
    let below: Vec<u32> = (0..n)
        .map(|v| {
            p.lower_covers(v)
                .iter()
                .fold(0u32, |mask, &u| mask | (1 << u))
        })
        .collect();

    // ways[mask] = number of ways to list the downset `mask` in order
    let mut ways = vec![0u128; 1usize << n];
    ways[0] = 1;
    for mask in 0..(1u32 << n) {
        let count = ways[mask as usize];
        if count == 0 {
            continue;
        }
        for (v, &need) in below.iter().enumerate() {
            let bit = 1u32 << v;
            if mask & bit == 0 && need & !mask == 0 {
                ways[(mask | bit) as usize] += count;
            }
        }
    }
    Ok(LinearExtensionCount(ways[(1usize << n) - 1]))
}

/// `log2(n!)`, summed term by term.
pub fn log2_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).log2()).sum()
}

/// `log2 n! - log2 e(P)`, in bits.
pub fn itlb(p: &Poset) -> Result<f64> {
    let e = count_linear_extensions(p)?;
    Ok((log2_factorial(p.len()) - e.log2()).max(0.0))
}

/// `ceil(ITLB)` computed in exact integer arithmetic: the least `c` with
/// `2^c * e(P) >= n!`.
pub fn itlb_ceil(p: &Poset) -> Result<u32> {
    let e = count_linear_extensions(p)?.value();
    let n_fact: u128 = (1..=p.len() as u128).product();
    let mut c = 0;
    while e << c < n_fact {
        c += 1;
    }
    Ok(c)
}
