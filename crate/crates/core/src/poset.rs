//! Finite posets stored as dense reachability bit matrices together with
//! their Hasse diagram.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A partial order on `{0, .., n-1}`.
///
/// `up[v]` holds every `w` with `v <= w` (reflexive), `down[w]` the
/// transpose. The cover lists are exactly the transitive reduction.
#[derive(Clone)]
pub struct Poset {
    n: usize,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    topo: Vec<usize>,
}

impl Poset {
    /// Builds the poset generated by `pairs`, where `(v, w)` means `v <= w`.
    ///
    /// Reflexive pairs are accepted and ignored. A generating set whose
    /// closure is not antisymmetric is rejected with one offending cycle.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut succ = vec![Vec::new(); n];
        for &(v, w) in pairs {
            for index in [v, w] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if v != w {
                succ[v].push(w);
            }
        }
        for list in &mut succ {
            list.sort_unstable();
            list.dedup();
        }

        let topo = topological_order(&succ).map_err(|cycle| Error::Cycle { cycle })?;

        let mut up: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
        for &v in topo.iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(v);
            for &d in &succ[v] {
                row.union_with(&up[d]);
            }
            up[v] = row;
        }

        let mut upper_covers = vec![Vec::new(); n];
        for v in 0..n {
            let mut cand = up[v].clone();
            cand.set(v, false);
            for &d in &succ[v] {
                let mut strict = up[d].clone();
                strict.set(d, false);
                cand.difference_with(&strict);
            }
            upper_covers[v] = cand.ones().collect();
        }

        Ok(Self::assemble(n, up, upper_covers, topo))
    }

    /// Builds a poset from reflexive up-sets that are already known to be a
    /// valid order (used for weak and interval orders).
    pub(crate) fn from_closed_rows(up: Vec<FixedBitSet>) -> Self {
        let n = up.len();
        let mut topo: Vec<usize> = (0..n).collect();
        topo.sort_by_key(|&v| std::cmp::Reverse(up[v].count_ones(..)));

        let mut upper_covers = vec![Vec::new(); n];
        for v in 0..n {
            let mut strict = up[v].clone();
            strict.set(v, false);
            let mut cand = strict.clone();
            for z in strict.ones() {
                if !cand.contains(z) {
                    // removed along with a smaller element's up-set
                    continue;
                }
                let mut above = up[z].clone();
                above.set(z, false);
                cand.difference_with(&above);
            }
            upper_covers[v] = cand.ones().collect();
        }
        Self::assemble(n, up, upper_covers, topo)
    }

    fn assemble(
        n: usize,
        up: Vec<FixedBitSet>,
        upper_covers: Vec<Vec<usize>>,
        topo: Vec<usize>,
    ) -> Self {
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (v, row) in up.iter().enumerate() {
            for w in row.ones() {
                down[w].insert(v);
            }
        }
        let mut lower_covers = vec![Vec::new(); n];
        for (v, ws) in upper_covers.iter().enumerate() {
            for &w in ws {
                lower_covers[w].push(v);
            }
        }
        Self {
            n,
            up,
            down,
            upper_covers,
            lower_covers,
            topo,
        }
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relations(n, &pairs).expect("a chain is acyclic")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relations(n, &[]).expect("no relations")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `v <= w` in the order.
    #[inline]
    pub fn leq(&self, v: usize, w: usize) -> bool {
        self.up[v].contains(w)
    }

    #[inline]
    pub fn lt(&self, v: usize, w: usize) -> bool {
        v != w && self.leq(v, w)
    }

    #[inline]
    pub fn comparable(&self, v: usize, w: usize) -> bool {
        self.leq(v, w) || self.leq(w, v)
    }

    /// Reflexive up-set of `v`.
    pub fn up_set(&self, v: usize) -> &FixedBitSet {
        &self.up[v]
    }

    /// Reflexive down-set of `v`.
    pub fn down_set(&self, v: usize) -> &FixedBitSet {
        &self.down[v]
    }

    pub fn upper_covers(&self, v: usize) -> &[usize] {
        &self.upper_covers[v]
    }

    pub fn lower_covers(&self, v: usize) -> &[usize] {
        &self.lower_covers[v]
    }

    /// All cover pairs `(v, w)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.upper_covers
            .iter()
            .enumerate()
            .flat_map(|(v, ws)| ws.iter().map(move |&w| (v, w)))
            .collect()
    }

    pub fn cover_count(&self) -> usize {
        self.upper_covers.iter().map(Vec::len).sum()
    }

    pub fn is_minimal(&self, v: usize) -> bool {
        self.lower_covers[v].is_empty()
    }

    pub fn is_maximal(&self, v: usize) -> bool {
        self.upper_covers[v].is_empty()
    }

    /// A linear extension: every element appears after all elements below it.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Number of strictly comparable ordered pairs `v < w`.
    pub fn relation_count(&self) -> usize {
        self.up.iter().map(|r| r.count_ones(..)).sum::<usize>() - self.n
    }

    /// True iff `self` extends `other`: same ground set and every relation of
    /// `other` holds in `self`.
    pub fn extends(&self, other: &Poset) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: other.n,
                found: self.n,
            });
        }
        Ok((0..self.n).all(|v| other.up[v].is_subset(&self.up[v])))
    }

    pub fn is_antichain(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &v)| {
            set[i + 1..]
                .iter()
                .all(|&w| v != w && !self.comparable(v, w))
        })
    }

    pub fn is_chain(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &v)| set[i + 1..].iter().all(|&w| self.comparable(v, w)))
    }

    /// The sub-poset induced by `keep`, with the map from new to old indices.
    pub fn restrict(&self, keep: &[usize]) -> (Poset, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let rows = keep
            .iter()
            .map(|&v| {
                let mut row = FixedBitSet::with_capacity(keep.len());
                for w in self.up[v].ones() {
                    if index[w] != usize::MAX {
                        row.insert(index[w]);
                    }
                }
                row
            })
            .collect();
        (Poset::from_closed_rows(rows), keep.to_vec())
    }

    /// Disjoint union, `other`'s elements shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        let n = self.n + other.n;
        let shift = self.n;
        let mut pairs = self.covers();
        pairs.extend(other.covers().into_iter().map(|(v, w)| (v + shift, w + shift)));
        Poset::from_relations(n, &pairs).expect("union of posets is a poset")
    }

    /// Text serialisation: `n <count>` followed by the cover pairs.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (v, w) in self.covers() {
            out.push_str(&format!("{v} {w}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            match n {
                None => {
                    if fields.next() != Some("n") {
                        return Err(parse_err("expected header `n <count>`".into()));
                    }
                    let count = fields
                        .next()
                        .ok_or_else(|| parse_err("missing element count".into()))?;
                    n = Some(
                        count
                            .parse::<usize>()
                            .map_err(|e| parse_err(format!("bad count `{count}`: {e}")))?,
                    );
                }
                Some(_) => {
                    let mut next = || -> Result<usize> {
                        let tok = fields
                            .next()
                            .ok_or_else(|| parse_err("expected `v w`".into()))?;
                        tok.parse()
                            .map_err(|e| parse_err(format!("bad element `{tok}`: {e}")))
                    };
                    let v = next()?;
                    let w = next()?;
                    pairs.push((v, w));
                }
            }
            if fields.next().is_some() {
                return Err(parse_err("trailing tokens".into()));
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            message: "empty poset file".into(),
        })?;
        Poset::from_relations(n, &pairs)
    }
}

impl FromStr for Poset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Poset::parse(s)
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.up == other.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.covers())
            .finish()
    }
}

/// Kahn's algorithm; on failure returns a directed cycle.
fn topological_order(succ: &[Vec<usize>]) -> std::result::Result<Vec<usize>, Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for ws in succ {
        for &w in ws {
            indeg[w] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }

    // Every leftover node keeps a leftover predecessor, so walking
    // predecessors must revisit a node.
    let mut pred = vec![usize::MAX; n];
    for (v, ws) in succ.iter().enumerate() {
        for &w in ws {
            if indeg[w] > 0 && indeg[v] > 0 {
                pred[w] = v;
            }
        }
    }
    let start = (0..n).find(|&v| indeg[v] > 0).expect("leftover node");
    let mut seen = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut v = start;
    while seen[v] == usize::MAX {
        seen[v] = walk.len();
        walk.push(v);
        v = pred[v];
    }
    let mut cycle = walk[seen[v]..].to_vec();
    cycle.reverse();
    Err(cycle)
}
