//! The family `G_k`: a central clique `K_{2^{k-1}}` joined to two copies of
//! `G_{k-1}`, one half of the clique complete to each copy. It is an interval
//! graph; its complement is the comparability graph of an interval order
//! `I_k`, which we keep as integer endpoints.
//!
//! Layout: `G_1` is `(0, 1)` with width `W_1 = 1`. For `G_k`, the copies sit
//! at offsets `1` and `W + 2`, where `W = W_{k-1}`, and the two clique halves
//! are `(0, W + 2)` and `(W + 1, 2W + 3)`, so `W_k = 2W + 3`.

use num_traits::ToPrimitive;

use crate::entropy::StabPoint;
use crate::error::{Error, Result};
use crate::interval::IntervalOrder;
use crate::Rational;

pub const GK_MAX_LEVEL: u32 = 20;

#[derive(Debug, Clone)]
pub struct GkFamily {
    k: u32,
    left: Vec<i64>,
    right: Vec<i64>,
    /// Recursion node owning the vertex's central clique, numbered
    /// heap-style: root 0, children `2i + 1` and `2i + 2`.
    clique: Vec<usize>,
}

pub fn gen_gk(k: u32) -> Result<GkFamily> {
    if k == 0 || k > GK_MAX_LEVEL {
        return Err(Error::InvalidParameter(format!(
            "gk level must be in 1..={GK_MAX_LEVEL}, got {k}"
        )));
    }
    let n = k as usize * (1usize << (k - 1));
    let mut fam = GkFamily {
        k,
        left: Vec::with_capacity(n),
        right: Vec::with_capacity(n),
        clique: Vec::with_capacity(n),
    };
    fam.build(k, 0, 0);
    debug_assert_eq!(fam.left.len(), n);
    Ok(fam)
}

fn width(k: u32) -> i64 {
    (1i64 << (k + 1)) - 3
}

impl GkFamily {
    fn build(&mut self, k: u32, offset: i64, node: usize) {
        if k == 1 {
            self.push(offset, offset + 1, node);
            return;
        }
        let w = width(k - 1);
        let half = 1usize << (k - 2);
        for _ in 0..half {
            self.push(offset, offset + w + 2, node);
        }
        for _ in 0..half {
            self.push(offset + w + 1, offset + 2 * w + 3, node);
        }
        self.build(k - 1, offset + 1, 2 * node + 1);
        self.build(k - 1, offset + w + 2, 2 * node + 2);
    }

    fn push(&mut self, l: i64, r: i64, node: usize) {
        self.left.push(l);
        self.right.push(r);
        self.clique.push(node);
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn interval(&self, v: usize) -> (i64, i64) {
        (self.left[v], self.right[v])
    }

    /// Recursion level (1-based) of the central clique containing `v`.
    pub fn level(&self, v: usize) -> u32 {
        (self.clique[v] + 1).ilog2() + 1
    }

    pub fn interval_order(&self) -> IntervalOrder {
        IntervalOrder::new(
            self.left.iter().map(|&l| Rational::from_integer(l)).collect(),
            self.right.iter().map(|&r| Rational::from_integer(r)).collect(),
        )
        .expect("nonempty integer intervals")
    }

    /// Sweep over endpoints. Returns the size of every maximal clique of
    /// `G_k` (maximal antichain of `I_k`) from left to right, and for each
    /// vertex the number of maximal cliques containing it.
    pub fn maximal_cliques(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.len();
        // at equal coordinates open intervals close before others open
        let mut events: Vec<(i64, bool, usize)> = (0..n)
            .flat_map(|v| [(self.left[v], true, v), (self.right[v], false, v)])
            .collect();
        events.sort_unstable();
        let mut sizes = Vec::new();
        let mut opened_at = vec![0; n];
        let mut membership = vec![0; n];
        let mut active = 0;
        let mut last_was_open = false;
        for (_, open, v) in events {
            if open {
                opened_at[v] = sizes.len();
                active += 1;
            } else {
                if last_was_open {
                    sizes.push(active);
                }
                membership[v] = sizes.len() - opened_at[v];
                active -= 1;
            }
            last_was_open = open;
        }
        (sizes, membership)
    }

    /// The point averaging the characteristic vectors of all maximal
    /// antichains of `I_k`.
    pub fn upper_point(&self) -> StabPoint {
        let (sizes, membership) = self.maximal_cliques();
        let total = sizes.len() as i64;
        StabPoint::new(
            membership
                .iter()
                .map(|&m| Rational::new(m as i64, total))
                .collect(),
        )
        .expect("every vertex lies in a maximal clique")
    }
}

/// Colors `\bar G_k` by taking the central clique first and recursing into
/// both copies. Classes are listed level by level.
pub fn gk_recursive_coloring(fam: &GkFamily) -> Vec<Vec<usize>> {
    let nodes = (1usize << fam.k) - 1;
    let mut classes = vec![Vec::new(); nodes];
    for (v, &node) in fam.clique.iter().enumerate() {
        classes[node].push(v);
    }
    classes
}

/// Entropy of [`GkFamily::upper_point`], computed from the clique structure.
pub fn gk_upper_point_entropy(fam: &GkFamily) -> f64 {
    let (sizes, membership) = fam.maximal_cliques();
    let total = sizes.len() as f64;
    let n = fam.len() as f64;
    -membership
        .iter()
        .map(|&m| (m as f64 / total).log2())
        .sum::<f64>()
        / n
}

/// Closed form `log2(2^k - 1) - (k - 1)/2`.
pub fn gk_upper_point_entropy_formula(k: u32) -> f64 {
    ((1u64 << k) - 1).to_f64().expect("small").log2() - (k as f64 - 1.0) / 2.0
}

/// Closed form `(k - 1)/2 + log2 k` for the recursive coloring.
pub fn gk_recursive_coloring_entropy_formula(k: u32) -> f64 {
    (k as f64 - 1.0) / 2.0 + (k as f64).log2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        let g1 = gen_gk(1).unwrap();
        assert_eq!(g1.len(), 1);
        let g2 = gen_gk(2).unwrap();
        assert_eq!(g2.len(), 4);
        let (a, b) = (g2.interval(0), g2.interval(1));
        assert_eq!((a, b), ((0, 3), (2, 5)));
        // G_2 is the path copy1 - A - B - copy2
        let order = g2.interval_order();
        assert!(order.leq(2, 1) && order.leq(0, 3) && order.leq(2, 3));
        assert!(!order.leq(0, 2) && !order.leq(2, 0));
        assert_eq!(g2.maximal_cliques().0, vec![2, 2, 2]);
    }

    #[test]
    fn structure_up_to_twelve() {
        for k in 1..=12 {
            let fam = gen_gk(k).unwrap();
            assert_eq!(fam.len(), k as usize * (1 << (k - 1)));
            let (sizes, membership) = fam.maximal_cliques();
            assert_eq!(sizes.len(), (1 << k) - 1);
            assert!(sizes.iter().all(|&s| s == 1 << (k - 1)));
            for l in 0..k {
                let count = membership.iter().filter(|&&m| m == 1 << l).count();
                assert_eq!(count, 1 << (k - 1));
            }
        }
    }

    #[test]
    fn coloring_levels() {
        let fam = gen_gk(4).unwrap();
        let classes = gk_recursive_coloring(&fam);
        let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![8, 4, 4, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(fam.level(0), 1);
        assert_eq!(fam.level(fam.len() - 1), 4);
    }

    #[test]
    fn rejects_bad_levels() {
        assert!(gen_gk(0).is_err());
        assert!(gen_gk(GK_MAX_LEVEL + 1).is_err());
    }
}
