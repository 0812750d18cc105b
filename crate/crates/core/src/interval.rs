//! Interval orders given by open intervals `(left, right)`: `v < w` iff
//! `right(v) <= left(w)`.
//!
//! Antichains are families of pairwise overlapping intervals, which share a
//! common point, so a maximum antichain is the set of intervals covering a
//! point of maximum depth. The greedy decomposition sweeps that depth with
//! two segment trees and never materialises the order relation.

use fixedbitset::FixedBitSet;
use num_traits::Zero;

use crate::entropy::{Potential, StabPoint};
use crate::error::{Error, Result};
use crate::flow::AntichainDecomposition;
use crate::poset::Poset;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalOrder {
    left: Vec<Rational>,
    right: Vec<Rational>,
}

impl IntervalOrder {
    pub fn new(left: Vec<Rational>, right: Vec<Rational>) -> Result<Self> {
        if left.len() != right.len() {
            return Err(Error::SizeMismatch {
                expected: left.len(),
                found: right.len(),
            });
        }
        if let Some(v) = (0..left.len()).find(|&v| left[v] >= right[v]) {
            return Err(Error::InvalidParameter(format!(
                "interval {v} is empty: ({}, {})",
                left[v], right[v]
            )));
        }
        Ok(Self { left, right })
    }

    /// Intervals taken from the labels of a potential: `(y_{v-}, y_{v+})`.
    pub fn from_potential(y: &Potential) -> Result<Self> {
        Self::new(y.lower().to_vec(), y.upper().to_vec())
            .map_err(|e| Error::InvalidPotential(e.to_string()))
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn left(&self) -> &[Rational] {
        &self.left
    }

    pub fn right(&self) -> &[Rational] {
        &self.right
    }

    pub fn leq(&self, v: usize, w: usize) -> bool {
        v == w || self.right[v] <= self.left[w]
    }

    pub fn to_poset(&self) -> Poset {
        let n = self.len();
        let mut by_left: Vec<usize> = (0..n).collect();
        by_left.sort_by(|&a, &b| self.left[a].cmp(&self.left[b]));
        let rows = (0..n)
            .map(|v| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(v);
                let start = by_left.partition_point(|&w| self.left[w] < self.right[v]);
                for &w in &by_left[start..] {
                    row.insert(w);
                }
                row
            })
            .collect();
        Poset::from_closed_rows(rows)
    }

    /// Heaviest chain ending at each element under weights `x`, in
    /// `O(n log n)`. Same contract as [`crate::entropy::potential_from_point`].
    pub fn chain_potential(&self, x: &StabPoint) -> Result<Potential> {
        let n = self.len();
        if x.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: x.len(),
            });
        }
        let mut by_left: Vec<usize> = (0..n).collect();
        by_left.sort_by(|&a, &b| self.left[a].cmp(&self.left[b]));
        let mut by_right: Vec<usize> = (0..n).collect();
        by_right.sort_by(|&a, &b| self.right[a].cmp(&self.right[b]));

        // Elements in ascending left endpoint; everything with right <= left
        // is final by then since right > left for each element.
        let mut upper = vec![Rational::zero(); n];
        let mut best_finished = Rational::zero();
        let mut finished = 0;
        for &v in &by_left {
            while finished < n && self.right[by_right[finished]] <= self.left[v] {
                best_finished = best_finished.max(upper[by_right[finished]]);
                finished += 1;
            }
            upper[v] = best_finished + x.coords()[v];
            if upper[v] > Rational::from_integer(1) {
                return Err(Error::NotInStablePolytope {
                    element: v,
                    weight: upper[v].to_string(),
                });
            }
        }
        let lower = upper.iter().zip(x.coords()).map(|(hi, xv)| hi - xv).collect();
        Potential::new(lower, upper)
    }

    /// Greedy decomposition into maximum antichains: repeatedly removes all
    /// intervals through the leftmost point of maximum depth.
    pub fn greedy_decomposition(&self) -> AntichainDecomposition {
        let n = self.len();
        let mut coords: Vec<Rational> = self.left.iter().chain(&self.right).copied().collect();
        coords.sort();
        coords.dedup();
        let at = |q: &Rational| coords.binary_search(q).expect("endpoint present");
        let lo: Vec<usize> = self.left.iter().map(at).collect();
        let hi: Vec<usize> = self.right.iter().map(at).collect();

        let segments = coords.len().saturating_sub(1);
        let mut depth = MaxAddTree::new(segments);
        for v in 0..n {
            depth.add(lo[v], hi[v], 1);
        }

        let mut by_lo: Vec<usize> = (0..n).collect();
        by_lo.sort_by_key(|&v| (lo[v], v));
        let mut alive = MaxTree::new(by_lo.iter().map(|&v| hi[v] as i64).collect());

        let mut sets = Vec::new();
        let mut remaining = n;
        while remaining > 0 {
            let (d, seg) = depth.max_leftmost();
            debug_assert!(d > 0);
            let prefix = by_lo.partition_point(|&v| lo[v] <= seg);
            let mut clique = Vec::with_capacity(d as usize);
            while let Some(pos) = alive.first_above(prefix, seg as i64) {
                let v = by_lo[pos];
                alive.set(pos, i64::MIN);
                depth.add(lo[v], hi[v], -1);
                clique.push(v);
            }
            debug_assert_eq!(clique.len() as i64, d);
            remaining -= clique.len();
            sets.push(clique);
        }
        AntichainDecomposition::new(n, sets).expect("cliques partition the intervals")
    }
}

/// Range add, global max with leftmost argmax.
struct MaxAddTree {
    size: usize,
    max: Vec<i64>,
    lazy: Vec<i64>,
}

impl MaxAddTree {
    fn new(len: usize) -> Self {
        let size = len.max(1).next_power_of_two();
        let mut max = vec![i64::MIN / 4; 2 * size];
        for leaf in max[size..size + len].iter_mut() {
            *leaf = 0;
        }
        for i in (1..size).rev() {
            max[i] = max[2 * i].max(max[2 * i + 1]);
        }
        Self {
            size,
            max,
            lazy: vec![0; 2 * size],
        }
    }

    /// Adds `delta` on `[from, to)`.
    fn add(&mut self, from: usize, to: usize, delta: i64) {
        self.add_rec(1, 0, self.size, from, to, delta);
    }

    fn add_rec(&mut self, node: usize, l: usize, r: usize, from: usize, to: usize, delta: i64) {
        if to <= l || r <= from {
            return;
        }
        if from <= l && r <= to {
            self.max[node] += delta;
            self.lazy[node] += delta;
            return;
        }
        let mid = (l + r) / 2;
        self.add_rec(2 * node, l, mid, from, to, delta);
        self.add_rec(2 * node + 1, mid, r, from, to, delta);
        self.max[node] = self.max[2 * node].max(self.max[2 * node + 1]) + self.lazy[node];
    }

    fn max_leftmost(&self) -> (i64, usize) {
        let mut node = 1;
        let mut pending = 0;
        while node < self.size {
            pending += self.lazy[node];
            let target = self.max[node] - self.lazy[node];
            node = if self.max[2 * node] == target {
                2 * node
            } else {
                2 * node + 1
            };
        }
        (self.max[node] + pending, node - self.size)
    }
}

/// Point assignment, leftmost position in a prefix whose value exceeds a bound.
struct MaxTree {
    size: usize,
    max: Vec<i64>,
}

impl MaxTree {
    fn new(values: Vec<i64>) -> Self {
        let size = values.len().max(1).next_power_of_two();
        let mut max = vec![i64::MIN; 2 * size];
        max[size..size + values.len()].copy_from_slice(&values);
        for i in (1..size).rev() {
            max[i] = max[2 * i].max(max[2 * i + 1]);
        }
        Self { size, max }
    }

    fn set(&mut self, pos: usize, value: i64) {
        let mut i = pos + self.size;
        self.max[i] = value;
        while i > 1 {
            i /= 2;
            self.max[i] = self.max[2 * i].max(self.max[2 * i + 1]);
        }
    }

    /// Leftmost `pos < prefix` with value `> bound`.
    fn first_above(&self, prefix: usize, bound: i64) -> Option<usize> {
        self.search(1, 0, self.size, prefix, bound)
    }

    fn search(&self, node: usize, l: usize, r: usize, prefix: usize, bound: i64) -> Option<usize> {
        if l >= prefix || self.max[node] <= bound {
            return None;
        }
        if r - l == 1 {
            return Some(l);
        }
        let mid = (l + r) / 2;
        self.search(2 * node, l, mid, prefix, bound)
            .or_else(|| self.search(2 * node + 1, mid, r, prefix, bound))
    }
}
