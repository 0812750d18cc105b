use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linext::log2_factorial;
use crate::poset::Poset;

/// A weak order: ordered, nonempty, pairwise disjoint layers covering
/// `{0, .., n-1}`, with `v < w` iff `v`'s layer comes strictly first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakOrder {
    layers: Vec<Vec<usize>>,
    #[serde(skip)]
    layer_of: Vec<usize>,
}

impl WeakOrder {
    pub fn new(n: usize, layers: Vec<Vec<usize>>) -> Result<Self> {
        let layer_of = partition_index(n, &layers)?;
        if let Some(i) = layers.iter().position(Vec::is_empty) {
            return Err(Error::NotPartition(format!("layer {i} is empty")));
        }
        let layers = layers
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l
            })
            .collect();
        Ok(Self { layers, layer_of })
    }

    /// Weak order whose layers have the given sizes, filled with consecutive
    /// element indices. Zero sizes are skipped.
    pub fn from_sizes(sizes: &[usize]) -> Self {
        let mut next = 0;
        let layers: Vec<Vec<usize>> = sizes
            .iter()
            .filter(|&&s| s > 0)
            .map(|&s| {
                let layer = (next..next + s).collect();
                next += s;
                layer
            })
            .collect();
        Self::new(next, layers).expect("consecutive layers partition the ground set")
    }

    pub fn len(&self) -> usize {
        self.layer_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layer_of.is_empty()
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn layer_of(&self, v: usize) -> usize {
        self.layer_of[v]
    }

    /// Cut positions `r_i = |A_1| + .. + |A_i|` for `i < k`.
    pub fn ranks(&self) -> Vec<usize> {
        self.layers
            .iter()
            .take(self.layers.len().saturating_sub(1))
            .scan(0, |acc, l| {
                *acc += l.len();
                Some(*acc)
            })
            .collect()
    }

    /// Entropy of the layer-size distribution, in bits.
    pub fn entropy(&self) -> f64 {
        crate::entropy::distribution_entropy(&self.layer_sizes(), self.len())
    }

    /// `log2 e(W) = sum log2 |A_i|!`.
    pub fn log2_linear_extensions(&self) -> f64 {
        self.layers.iter().map(|l| log2_factorial(l.len())).sum()
    }

    /// `log2 n! - log2 e(W)`.
    pub fn itlb(&self) -> f64 {
        (log2_factorial(self.len()) - self.log2_linear_extensions()).max(0.0)
    }

    /// True iff every relation of `p` holds in this weak order. Checks covers
    /// only, so it runs in the size of the Hasse diagram.
    pub fn extends_poset(&self, p: &Poset) -> bool {
        p.len() == self.len()
            && p
                .covers()
                .iter()
                .all(|&(v, w)| self.layer_of[v] < self.layer_of[w])
    }

    pub fn to_poset(&self) -> Poset {
        let n = self.len();
        let mut above = FixedBitSet::with_capacity(n);
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for layer in self.layers.iter().rev() {
            for &v in layer {
                let mut row = above.clone();
                row.insert(v);
                rows[v] = row;
            }
            for &v in layer {
                above.insert(v);
            }
        }
        Poset::from_closed_rows(rows)
    }
}

/// Checks that `sets` partition `{0, .., n-1}` and returns each element's
/// set index.
pub(crate) fn partition_index(n: usize, sets: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut owner = vec![usize::MAX; n];
    for (i, set) in sets.iter().enumerate() {
        for &v in set {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if owner[v] != usize::MAX {
                return Err(Error::NotPartition(format!(
                    "element {v} appears in sets {} and {i}",
                    owner[v]
                )));
            }
            owner[v] = i;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::NotPartition(format!("element {v} is not covered")));
    }
    Ok(owner)
}
