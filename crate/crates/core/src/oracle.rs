//! Hidden total order on `T = {t_0, .., t_{n-1}}` answering comparison
//! queries and counting them.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// `t_i <= t_j` iff `hidden[i] <= hidden[j]`.
#[derive(Debug, Clone)]
pub struct ComparisonOracle {
    hidden: Vec<usize>,
    memo: Option<HashMap<(usize, usize), bool>>,
    count: u64,
    repeats: u64,
}

impl ComparisonOracle {
    pub fn new(hidden: Vec<usize>) -> Result<Self> {
        check_permutation(&hidden)?;
        Ok(Self {
            hidden,
            memo: Some(HashMap::new()),
            count: 0,
            repeats: 0,
        })
    }

    /// Uniformly random hidden order.
    pub fn from_seed(n: usize, seed: u64) -> Self {
        let mut hidden: Vec<usize> = (0..n).collect();
        hidden.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Self::new(hidden).expect("shuffled identity is a permutation")
    }

    /// Turns off memoisation; every query is then counted.
    pub fn without_memo(mut self) -> Self {
        self.memo = None;
        self
    }

    pub fn len(&self) -> usize {
        self.hidden.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hidden.is_empty()
    }

    pub fn hidden(&self) -> &[usize] {
        &self.hidden
    }

    /// Is `t_i <= t_j`? Reflexive queries are free; with memoisation on, a
    /// repeated pair is answered from the table and only tallied in
    /// [`repeats`](Self::repeats).
    pub fn less_eq(&mut self, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        let answer = self.hidden[i] <= self.hidden[j];
        match &mut self.memo {
            Some(memo) => {
                let key = (i.min(j), i.max(j));
                if memo.insert(key, self.hidden[key.0] <= self.hidden[key.1]).is_some() {
                    self.repeats += 1;
                } else {
                    self.count += 1;
                }
            }
            None => self.count += 1,
        }
        answer
    }

    /// Comparisons charged so far.
    pub fn count(&self) -> u64 {
        self.count
    }

    /// Queries answered from memory.
    pub fn repeats(&self) -> u64 {
        self.repeats
    }

    pub fn reset(&mut self) {
        self.count = 0;
        self.repeats = 0;
        if let Some(memo) = &mut self.memo {
            memo.clear();
        }
    }
}

pub(crate) fn check_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &v in perm {
        if v >= perm.len() || std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotPermutation(format!(
                "value {v} is out of range or repeated"
            )));
        }
    }
    Ok(())
}

/// Whitespace-separated permutation of `0..n`; `#` starts a comment.
pub fn parse_permutation(text: &str) -> Result<Vec<usize>> {
    let mut perm = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            perm.push(tok.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("expected an index, found {tok:?}"),
            })?);
        }
    }
    check_permutation(&perm)?;
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_distinct_pairs() {
        let mut o = ComparisonOracle::new(vec![2, 0, 1]).unwrap();
        assert!(!o.less_eq(0, 1));
        assert!(o.less_eq(1, 0));
        assert!(o.less_eq(1, 2));
        assert!(o.less_eq(2, 2));
        assert_eq!(o.count(), 2);
        assert_eq!(o.repeats(), 1);
        o.reset();
        assert_eq!(o.count(), 0);
    }

    #[test]
    fn without_memo_counts_everything() {
        let mut o = ComparisonOracle::new(vec![0, 1]).unwrap().without_memo();
        o.less_eq(0, 1);
        o.less_eq(1, 0);
        assert_eq!(o.count(), 2);
    }

    #[test]
    fn seeded_orders_are_permutations() {
        let o = ComparisonOracle::from_seed(50, 3);
        assert!(check_permutation(o.hidden()).is_ok());
        assert_eq!(o.hidden(), ComparisonOracle::from_seed(50, 3).hidden());
    }

    #[test]
    fn parses_permutations() {
        assert_eq!(parse_permutation("2 0\n# c\n1\n").unwrap(), vec![2, 0, 1]);
        assert!(matches!(parse_permutation("0 0"), Err(Error::NotPermutation(_))));
        assert!(matches!(parse_permutation("0 x"), Err(Error::Parse { line: 1, .. })));
        assert!(ComparisonOracle::new(vec![1, 2]).is_err());
    }
}
