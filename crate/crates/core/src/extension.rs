//! Greedy weak-order extension: greedy point, potential, interval order,
//! a second greedy decomposition, and an ordering of its antichains.

use serde::Serialize;

use crate::entropy::{greedy_point, potential_from_point, Potential, StabPoint};
use crate::error::{Error, Result};
use crate::flow::{greedy_antichain_decomposition, AntichainDecomposition};
use crate::interval::IntervalOrder;
use crate::poset::Poset;
use crate::weak::WeakOrder;

/// Intermediate objects of one pipeline run.
#[derive(Debug, Clone)]
pub struct ExtensionTrace {
    pub first: AntichainDecomposition,
    pub point: StabPoint,
    pub potential: Potential,
    pub second: AntichainDecomposition,
}

#[derive(Debug, Clone)]
pub struct GreedyExtension {
    pub interval: IntervalOrder,
    pub weak: WeakOrder,
    /// Layer `i` of `weak` is antichain `sigma[i]` of `trace.second`.
    pub sigma: Vec<usize>,
    pub trace: ExtensionTrace,
}

impl GreedyExtension {
    /// Plain summary for serialisation: endpoints as strings, sets as lists.
    pub fn summary(&self) -> ExtensionSummary {
        ExtensionSummary {
            layers: self.weak.layers().to_vec(),
            sigma: self.sigma.clone(),
            first: self.trace.first.sets().to_vec(),
            point: self.trace.point.coords().iter().map(|q| q.to_string()).collect(),
            intervals: self
                .interval
                .left()
                .iter()
                .zip(self.interval.right())
                .map(|(l, r)| (l.to_string(), r.to_string()))
                .collect(),
            second: self.trace.second.sets().to_vec(),
            greedy_entropy: self.trace.point.entropy(),
            weak_entropy: self.weak.entropy(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionSummary {
    pub layers: Vec<Vec<usize>>,
    pub sigma: Vec<usize>,
    pub first: Vec<Vec<usize>>,
    pub point: Vec<String>,
    pub intervals: Vec<(String, String)>,
    pub second: Vec<Vec<usize>>,
    pub greedy_entropy: f64,
    pub weak_entropy: f64,
}

/// Interval order with intervals `(y_{v-}, y_{v+})`, after checking that `y`
/// is a potential for `p`.
pub fn interval_order_from_potential(p: &Poset, y: &Potential) -> Result<IntervalOrder> {
    y.verify(p)?;
    IntervalOrder::from_potential(y)
}

/// Orders the antichains of `dec` so that every relation of `order` goes
/// from an earlier antichain to a later one.
///
/// Each antichain is a family of pairwise overlapping intervals, so it has a
/// common point; the largest left endpoint is the left end of that common
/// region. If `v < w` with `v` in `A` and `w` in `B` then
/// `maxleft(A) < minright(A) <= right(v) <= left(w) <= maxleft(B)`, so
/// sorting by largest left endpoint works.
pub fn sort_antichains(order: &IntervalOrder, dec: &AntichainDecomposition) -> Result<Vec<usize>> {
    if dec.element_count() != order.len() {
        return Err(Error::SizeMismatch {
            expected: order.len(),
            found: dec.element_count(),
        });
    }
    let (left, right) = (order.left(), order.right());
    let mut keys = Vec::with_capacity(dec.len());
    for set in dec.sets() {
        let max_left = set.iter().map(|&v| left[v]).max().ok_or(Error::Unsortable)?;
        let min_right = set.iter().map(|&v| right[v]).min().ok_or(Error::Unsortable)?;
        if max_left >= min_right {
            return Err(Error::Unsortable);
        }
        keys.push((max_left, min_right));
    }
    let mut sigma: Vec<usize> = (0..dec.len()).collect();
    sigma.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));

    // every element of a later antichain must end after every element of an
    // earlier one starts
    let mut suffix_min_right = vec![None; sigma.len() + 1];
    for i in (0..sigma.len()).rev() {
        let here = dec.sets()[sigma[i]].iter().map(|&v| right[v]).min();
        suffix_min_right[i] = match (here, suffix_min_right[i + 1]) {
            (Some(a), Some(b)) => Some(std::cmp::min(a, b)),
            (a, b) => a.or(b),
        };
    }
    let mut prefix_max_left = None;
    for i in 0..sigma.len() {
        let here = dec.sets()[sigma[i]].iter().map(|&v| left[v]).max();
        prefix_max_left = std::cmp::max(prefix_max_left, here);
        if let (Some(l), Some(r)) = (prefix_max_left, suffix_min_right[i + 1]) {
            if r <= l {
                return Err(Error::Unsortable);
            }
        }
    }
    Ok(sigma)
}

/// The full pipeline on an explicit poset. The first decomposition uses the
/// flow algorithm on `p`; the second one runs on the interval order.
pub fn greedy_weak_extension(p: &Poset) -> Result<GreedyExtension> {
    let first = greedy_antichain_decomposition(p);
    let point = greedy_point(&first);
    let potential = potential_from_point(p, &point)?;
    finish(first, point, potential)
}

/// The same pipeline for a poset given as an interval order; never builds
/// the order relation, so it handles hundreds of thousands of elements.
pub fn greedy_weak_extension_interval(order: &IntervalOrder) -> Result<GreedyExtension> {
    let first = order.greedy_decomposition();
    let point = greedy_point(&first);
    let potential = order.chain_potential(&point)?;
    finish(first, point, potential)
}

fn finish(first: AntichainDecomposition, point: StabPoint, potential: Potential) -> Result<GreedyExtension> {
    let interval = IntervalOrder::from_potential(&potential)?;
    let second = interval.greedy_decomposition();
    let sigma = sort_antichains(&interval, &second)?;
    let layers = sigma.iter().map(|&i| second.sets()[i].clone()).collect();
    let weak = WeakOrder::new(interval.len(), layers)?;
    Ok(GreedyExtension {
        interval,
        weak,
        sigma,
        trace: ExtensionTrace {
            first,
            point,
            potential,
            second,
        },
    })
}
