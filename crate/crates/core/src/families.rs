//! Named poset families and a compact textual spec for them, e.g.
//! `chain:8`, `selection:9:3`, `multiselection:10:3,5`, `heap:3`,
//! `random:12:0.3:7`, `gk:3`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gk::gen_gk;
use crate::poset::Poset;
use crate::weak::WeakOrder;

/// Largest `G_k` level built as an explicit poset.
pub const GK_POSET_LIMIT: u32 = 8;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Chain(usize),
    Antichain(usize),
    /// `k`-th smallest of `n`: layers `(k-1, 1, n-k)`.
    Selection { n: usize, k: usize },
    /// Weak order cut at the given ranks.
    Multiselection { n: usize, ranks: Vec<usize> },
    /// Complete binary tree of the given depth, children below parents.
    Heap(u32),
    /// Closure of a random DAG with edge probability `p` on a random order.
    Random { n: usize, p: f64, seed: u64 },
    /// The interval order `I_k` of the tightness family.
    Gk(u32),
}

impl Family {
    pub fn build(&self) -> Result<Poset> {
        match self {
            Family::Chain(n) => Ok(Poset::chain(*n)),
            Family::Antichain(n) => Ok(Poset::antichain(*n)),
            Family::Selection { n, k } => Ok(selection(*n, *k)?.to_poset()),
            Family::Multiselection { n, ranks } => Ok(multiselection(*n, ranks)?.to_poset()),
            Family::Heap(depth) => heap(*depth),
            Family::Random { n, p, seed } => random(*n, *p, *seed),
            Family::Gk(k) => {
                if *k > GK_POSET_LIMIT {
                    return Err(Error::InvalidParameter(format!(
                        "gk:{k} is too large for an explicit poset (limit {GK_POSET_LIMIT})"
                    )));
                }
                Ok(gen_gk(*k)?.interval_order().to_poset())
            }
        }
    }

    /// Element count without building the poset.
    pub fn len(&self) -> usize {
        match self {
            Family::Chain(n) | Family::Antichain(n) => *n,
            Family::Selection { n, .. } | Family::Multiselection { n, .. } | Family::Random { n, .. } => *n,
            Family::Heap(d) => (1usize << d) - 1,
            Family::Gk(k) => *k as usize * (1usize << (k - 1)),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Family::Chain(_) => "chain",
            Family::Antichain(_) => "antichain",
            Family::Selection { .. } => "selection",
            Family::Multiselection { .. } => "multiselection",
            Family::Heap(_) => "heap",
            Family::Random { .. } => "random",
            Family::Gk(_) => "gk",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Chain(n) => write!(f, "chain:{n}"),
            Family::Antichain(n) => write!(f, "antichain:{n}"),
            Family::Selection { n, k } => write!(f, "selection:{n}:{k}"),
            Family::Multiselection { n, ranks } => {
                let ranks: Vec<String> = ranks.iter().map(usize::to_string).collect();
                write!(f, "multiselection:{n}:{}", ranks.join(","))
            }
            Family::Heap(d) => write!(f, "heap:{d}"),
            Family::Random { n, p, seed } => write!(f, "random:{n}:{p}:{seed}"),
            Family::Gk(k) => write!(f, "gk:{k}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::InvalidParameter(format!("cannot parse family spec {s:?}"));
        fn num<T: FromStr>(tok: &str, bad: impl Fn() -> Error) -> Result<T> {
            tok.parse().map_err(|_| bad())
        }
        let family = match parts.as_slice() {
            ["chain", n] => Family::Chain(num(n, bad)?),
            ["antichain", n] => Family::Antichain(num(n, bad)?),
            ["selection", n, k] => Family::Selection {
                n: num(n, bad)?,
                k: num(k, bad)?,
            },
            ["multiselection", n] => Family::Multiselection {
                n: num(n, bad)?,
                ranks: Vec::new(),
            },
            ["multiselection", n, ranks] => Family::Multiselection {
                n: num(n, bad)?,
                ranks: ranks
                    .split(',')
                    .filter(|r| !r.is_empty())
                    .map(|r| num(r, bad))
                    .collect::<Result<_>>()?,
            },
            ["heap", d] => Family::Heap(num(d, bad)?),
            ["random", n, p, seed] => Family::Random {
                n: num(n, bad)?,
                p: num(p, bad)?,
                seed: num(seed, bad)?,
            },
            ["gk", k] => Family::Gk(num(k, bad)?),
            _ => return Err(bad()),
        };
        family.validate()?;
        Ok(family)
    }
}

impl Family {
    fn validate(&self) -> Result<()> {
        match self {
            Family::Selection { n, k } if *k == 0 || k > n => Err(Error::InvalidParameter(format!(
                "selection needs 1 <= k <= n, got k={k}, n={n}"
            ))),
            Family::Heap(d) if *d == 0 || *d > 24 => Err(Error::InvalidParameter(format!(
                "heap depth must be in 1..=24, got {d}"
            ))),
            Family::Random { p, .. } if !(0.0..=1.0).contains(p) => Err(Error::InvalidParameter(
                format!("edge probability must be in [0, 1], got {p}"),
            )),
            Family::Gk(k) if *k == 0 || *k > crate::gk::GK_MAX_LEVEL => Err(Error::InvalidParameter(
                format!("gk level must be in 1..={}, got {k}", crate::gk::GK_MAX_LEVEL),
            )),
            Family::Multiselection { n, ranks } => multiselection(*n, ranks).map(|_| ()),
            _ => Ok(()),
        }
    }
}

pub fn selection(n: usize, k: usize) -> Result<WeakOrder> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "selection needs 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    Ok(WeakOrder::from_sizes(&[k - 1, 1, n - k]))
}

/// Weak order with cuts at `ranks` (strictly increasing, inside `1..n`).
pub fn multiselection(n: usize, ranks: &[usize]) -> Result<WeakOrder> {
    let mut sizes = Vec::with_capacity(ranks.len() + 1);
    let mut prev = 0;
    for &r in ranks {
        if r <= prev || r >= n {
            return Err(Error::InvalidRank { rank: r, n });
        }
        sizes.push(r - prev);
        prev = r;
    }
    sizes.push(n - prev);
    Ok(WeakOrder::from_sizes(&sizes))
}

/// `k` layers whose sizes differ by at most one.
pub fn equal_layers(n: usize, k: usize) -> Result<WeakOrder> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n layers, got k={k}, n={n}"
        )));
    }
    let sizes: Vec<usize> = (0..k).map(|i| n / k + usize::from(i < n % k)).collect();
    Ok(WeakOrder::from_sizes(&sizes))
}

pub fn heap(depth: u32) -> Result<Poset> {
    if depth == 0 || depth > 24 {
        return Err(Error::InvalidParameter(format!(
            "heap depth must be in 1..=24, got {depth}"
        )));
    }
    let n = (1usize << depth) - 1;
    let pairs: Vec<(usize, usize)> = (1..n).map(|c| (c, (c - 1) / 2)).collect();
    Poset::from_relations(n, &pairs)
}

pub fn random(n: usize, p: f64, seed: u64) -> Result<Poset> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability must be in [0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.push((order[i], order[j]));
            }
        }
    }
    Poset::from_relations(n, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linext::count_linear_extensions;

    #[test]
    fn heap_of_depth_two() {
        let p = heap(2).unwrap();
        assert_eq!(p.covers(), vec![(1, 0), (2, 0)]);
        assert_eq!(count_linear_extensions(&p).unwrap().0, 2);
        assert_eq!(heap(3).unwrap().len(), 7);
    }

    #[test]
    fn selection_layers() {
        let w = selection(5, 2).unwrap();
        assert_eq!(w.layer_sizes(), vec![1, 1, 3]);
        assert!((w.log2_linear_extensions() - 6f64.log2()).abs() < 1e-12);
        assert_eq!(selection(3, 1).unwrap().layer_sizes(), vec![1, 2]);
        assert!(selection(3, 4).is_err());
    }

    #[test]
    fn equal_layer_sizes() {
        assert_eq!(equal_layers(10, 3).unwrap().layer_sizes(), vec![4, 3, 3]);
        assert!(equal_layers(3, 4).is_err());
    }

    #[test]
    fn random_is_seeded() {
        let a = random(12, 0.3, 7).unwrap();
        assert_eq!(a, random(12, 0.3, 7).unwrap());
        assert_eq!(random(6, 0.0, 1).unwrap(), Poset::antichain(6));
        assert!(random(6, 1.0, 1).unwrap().is_chain(&(0..6).collect::<Vec<_>>()));
    }

    #[test]
    fn specs_round_trip() {
        for s in [
            "chain:8",
            "antichain:100",
            "selection:9:3",
            "multiselection:10:3,5",
            "heap:3",
            "random:12:0.3:7",
            "gk:3",
        ] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
            assert_eq!(f.build().unwrap().len(), f.len());
        }
        for s in ["chain", "chain:x", "selection:3:0", "heap:0", "random:3:2:1", "gk:0", "multiselection:4:3,2", "tree:3"] {
            assert!(s.parse::<Family>().is_err(), "{s}");
        }
    }
}
