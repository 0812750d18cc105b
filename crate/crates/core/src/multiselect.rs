//! Multiple selection by rank-pruned quickselect: partition around a pivot
//! and recurse only into subranges that still contain a requested cut.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oracle::ComparisonOracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// Pivot drawn uniformly from the subrange. The generator is keyed by
    /// `(seed, start, length)` of the subrange, so a subproblem sees the same
    /// pivot whichever cuts were requested.
    Random { seed: u64 },
    /// Median of medians of groups of five; linear worst case per level.
    MedianOfMedians,
}

impl Default for PivotRule {
    fn default() -> Self {
        PivotRule::Random { seed: 0 }
    }
}

/// Splits `T` into consecutive blocks at the cut positions `ranks` (strictly
/// increasing, each in `1..n`). Block `j` holds the indices of the elements
/// of hidden rank `r_{j-1} .. r_j - 1`, in no particular order.
pub fn multiselect(
    oracle: &mut ComparisonOracle,
    ranks: &[usize],
    rule: PivotRule,
) -> Result<Vec<Vec<usize>>> {
    let n = oracle.len();
    let mut prev = 0;
    for &r in ranks {
        if r <= prev || r >= n {
            return Err(Error::InvalidRank { rank: r, n });
        }
        prev = r;
    }

    let mut items: Vec<usize> = (0..n).collect();
    // (start, end, first cut, end of cuts) with cuts strictly inside
    let mut work = vec![(0, n, 0, ranks.len())];
    while let Some((lo, hi, rlo, rhi)) = work.pop() {
        if rlo == rhi {
            continue;
        }
        let pivot = match rule {
            PivotRule::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(((lo as u64) << 32) ^ (hi - lo) as u64);
                items[lo + rng.gen_range(0..hi - lo)]
            }
            PivotRule::MedianOfMedians => median_of_medians(oracle, &items[lo..hi]),
        };
        let q = lo + partition(oracle, &mut items[lo..hi], pivot);
        let cuts = &ranks[rlo..rhi];
        let left_end = rlo + cuts.partition_point(|&r| r < q);
        let right_start = rlo + cuts.partition_point(|&r| r <= q + 1);
        work.push((q + 1, hi, right_start, rhi));
        work.push((lo, q, rlo, left_end));
    }

    let mut blocks = Vec::with_capacity(ranks.len() + 1);
    let mut start = 0;
    for &end in ranks.iter().chain(std::iter::once(&n)) {
        blocks.push(items[start..end].to_vec());
        start = end;
    }
    Ok(blocks)
}

/// Reorders `items` as (smaller, pivot, larger) and returns the pivot's
/// position. One comparison per non-pivot element.
fn partition(oracle: &mut ComparisonOracle, items: &mut [usize], pivot: usize) -> usize {
    let mut smaller = Vec::with_capacity(items.len());
    let mut larger = Vec::with_capacity(items.len());
    for &v in items.iter() {
        if v == pivot {
            continue;
        }
        if oracle.less_eq(v, pivot) {
            smaller.push(v);
        } else {
            larger.push(v);
        }
    }
    let q = smaller.len();
    items[..q].copy_from_slice(&smaller);
    items[q] = pivot;
    items[q + 1..].copy_from_slice(&larger);
    q
}

fn insertion_sort(oracle: &mut ComparisonOracle, items: &mut [usize]) {
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && !oracle.less_eq(items[j - 1], items[j]) {
            items.swap(j - 1, j);
            j -= 1;
        }
    }
}

fn median_of_medians(oracle: &mut ComparisonOracle, items: &[usize]) -> usize {
    let mut medians = Vec::with_capacity(items.len() / 5 + 1);
    for group in items.chunks(5) {
        let mut group = group.to_vec();
        insertion_sort(oracle, &mut group);
        medians.push(group[(group.len() - 1) / 2]);
    }
    if medians.len() == 1 {
        return medians[0];
    }
    let k = (medians.len() - 1) / 2;
    select(oracle, medians, k)
}

/// The element of rank `k` (0-based) among `items`.
fn select(oracle: &mut ComparisonOracle, mut items: Vec<usize>, mut k: usize) -> usize {
    loop {
        if items.len() <= 5 {
            insertion_sort(oracle, &mut items);
            return items[k];
        }
        let pivot = median_of_medians(oracle, &items);
        let q = partition(oracle, &mut items, pivot);
        match k.cmp(&q) {
            std::cmp::Ordering::Equal => return pivot,
            std::cmp::Ordering::Less => items.truncate(q),
            std::cmp::Ordering::Greater => {
                items.drain(..=q);
                k -= q + 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_blocks(oracle: &ComparisonOracle, ranks: &[usize], blocks: &[Vec<usize>]) {
        let h = oracle.hidden();
        let mut start = 0;
        for (j, block) in blocks.iter().enumerate() {
            let end = ranks.get(j).copied().unwrap_or(h.len());
            assert_eq!(block.len(), end - start);
            let mut got: Vec<usize> = block.iter().map(|&i| h[i]).collect();
            got.sort_unstable();
            assert_eq!(got, (start..end).collect::<Vec<_>>());
            start = end;
        }
    }

    #[test]
    fn no_ranks_no_comparisons() {
        let mut o = ComparisonOracle::from_seed(10, 1);
        let blocks = multiselect(&mut o, &[], PivotRule::default()).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(o.count(), 0);
    }

    #[test]
    fn full_sort_of_three() {
        for rule in [PivotRule::Random { seed: 4 }, PivotRule::MedianOfMedians] {
            for seed in 0..20 {
                let mut o = ComparisonOracle::from_seed(3, seed);
                let blocks = multiselect(&mut o, &[1, 2], rule).unwrap();
                check_blocks(&o, &[1, 2], &blocks);
                assert!(o.count() >= 2);
            }
        }
    }

    #[test]
    fn median_layers() {
        for rule in [PivotRule::Random { seed: 9 }, PivotRule::MedianOfMedians] {
            for seed in 0..30 {
                let mut o = ComparisonOracle::from_seed(5, seed);
                let blocks = multiselect(&mut o, &[2, 3], rule).unwrap();
                check_blocks(&o, &[2, 3], &blocks);
            }
        }
    }

    #[test]
    fn large_selection() {
        let ranks = [17, 250, 251, 900];
        for rule in [PivotRule::Random { seed: 2 }, PivotRule::MedianOfMedians] {
            let mut o = ComparisonOracle::from_seed(1000, 8);
            let blocks = multiselect(&mut o, &ranks, rule).unwrap();
            check_blocks(&o, &ranks, &blocks);
        }
    }

    #[test]
    fn select_finds_rank() {
        let mut o = ComparisonOracle::from_seed(101, 5);
        for k in [0, 50, 100] {
            let v = select(&mut o, (0..101).collect(), k);
            assert_eq!(o.hidden()[v], k);
        }
    }

    #[test]
    fn rejects_bad_ranks() {
        let mut o = ComparisonOracle::from_seed(4, 0);
        for ranks in [&[0][..], &[4], &[2, 2], &[3, 1]] {
            assert!(matches!(
                multiselect(&mut o, ranks, PivotRule::default()),
                Err(Error::InvalidRank { .. })
            ));
        }
    }
}
