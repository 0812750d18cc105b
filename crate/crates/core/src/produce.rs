//! End-to-end production: extend the target poset to a weak order once,
//! then split the unknown data at the layer boundaries.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{greedy_weak_extension, GreedyExtension};
use crate::multiselect::{multiselect, PivotRule};
use crate::oracle::{check_permutation, ComparisonOracle};
use crate::poset::Poset;
use crate::weak::WeakOrder;

/// `pi[i]` is the index of the element of `T` placed at poset element `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Production {
    pub pi: Vec<usize>,
    pub comparisons: u64,
}

/// Preprocessed target: the weak order is computed once and reused for any
/// number of hidden inputs.
#[derive(Debug, Clone)]
pub struct Producer {
    poset: Poset,
    extension: GreedyExtension,
}

impl Producer {
    pub fn new(poset: Poset) -> Result<Self> {
        let extension = greedy_weak_extension(&poset)?;
        Ok(Self { poset, extension })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn extension(&self) -> &GreedyExtension {
        &self.extension
    }

    pub fn weak(&self) -> &WeakOrder {
        &self.extension.weak
    }

    pub fn run(&self, oracle: &mut ComparisonOracle, rule: PivotRule) -> Result<Production> {
        produce_weak(self.weak(), oracle, rule)
    }
}

/// Produces a weak order directly: blocks of the multiple selection are
/// handed to the layers in order, ascending indices on both sides.
pub fn produce_weak(w: &WeakOrder, oracle: &mut ComparisonOracle, rule: PivotRule) -> Result<Production> {
    if oracle.len() != w.len() {
        return Err(Error::SizeMismatch {
            expected: w.len(),
            found: oracle.len(),
        });
    }
    let before = oracle.count();
    let blocks = multiselect(oracle, &w.ranks(), rule)?;
    let mut pi = vec![0; w.len()];
    for (layer, mut block) in w.layers().iter().zip(blocks) {
        block.sort_unstable();
        for (&s, t) in layer.iter().zip(block) {
            pi[s] = t;
        }
    }
    Ok(Production {
        pi,
        comparisons: oracle.count() - before,
    })
}

pub fn produce(p: &Poset, oracle: &mut ComparisonOracle, rule: PivotRule) -> Result<Production> {
    Producer::new(p.clone())?.run(oracle, rule)
}

/// Does `s_i <= s_j` imply `t_{pi(i)} <= t_{pi(j)}` under `hidden`? Checking
/// cover pairs suffices since the hidden order is transitive.
pub fn verify_production(p: &Poset, hidden: &[usize], pi: &[usize]) -> Result<bool> {
    for len in [hidden.len(), pi.len()] {
        if len != p.len() {
            return Err(Error::SizeMismatch {
                expected: p.len(),
                found: len,
            });
        }
    }
    check_permutation(hidden)?;
    check_permutation(pi)?;
    Ok(p.covers().iter().all(|&(v, w)| hidden[pi[v]] <= hidden[pi[w]]))
}
