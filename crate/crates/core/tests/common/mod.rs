#![allow(dead_code)]

use posetprod::families::{multiselection, Family};
use posetprod::frank_wolfe::{entropy_exact, EntropyMode, SolverOptions};
use posetprod::Poset;

/// Small posets (at most 7 elements): every named family plus random ones.
pub fn corpus() -> Vec<(String, Poset)> {
    let mut out = Vec::new();
    let mut add = |f: Family| {
        let p = f.build().expect("corpus family builds");
        out.push((f.to_string(), p));
    };
    for n in 1..=7 {
        add(Family::Chain(n));
        add(Family::Antichain(n));
        for k in 1..=n {
            add(Family::Selection { n, k });
        }
    }
    for n in 2..=5 {
        for mask in 0u32..(1 << (n - 1)) {
            let ranks: Vec<usize> = (1..n).filter(|r| mask >> (r - 1) & 1 == 1).collect();
            multiselection(n, &ranks).unwrap();
            add(Family::Multiselection { n, ranks });
        }
    }
    add(Family::Heap(1));
    add(Family::Heap(2));
    add(Family::Gk(1));
    add(Family::Gk(2));
    for n in 3..=7 {
        for p in [0.15, 0.3, 0.5, 0.7] {
            for seed in 0..7 {
                add(Family::Random { n, p, seed });
            }
        }
    }
    // hand-picked shapes
    type Shape = (&'static str, usize, &'static [(usize, usize)]);
    let named: [Shape; 4] = [
        ("v", 3, &[(0, 1), (0, 2)]),
        ("n", 4, &[(0, 2), (0, 3), (1, 3)]),
        ("crown", 6, &[(0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)]),
        ("bowtie", 4, &[(0, 2), (0, 3), (1, 2), (1, 3)]),
    ];
    for (name, n, pairs) in named {
        out.push((name.to_string(), Poset::from_relations(n, pairs).unwrap()));
    }
    out
}

/// The 50 random posets with 4 to 14 elements used for entropy checks.
pub fn entropy_corpus() -> Vec<(String, Poset)> {
    (0..50u64)
        .map(|i| {
            let n = 4 + (i as usize % 11);
            let p = [0.1, 0.25, 0.4, 0.6, 0.8][i as usize % 5];
            let f = Family::Random { n, p, seed: 100 + i };
            (f.to_string(), f.build().unwrap())
        })
        .collect()
}

/// Certified bracket `(lower, upper)` on `H(G(P))`. Uses the comparability
/// graph directly when small and the complement identity otherwise.
pub fn entropy_bracket(p: &Poset) -> (f64, f64) {
    let opts = SolverOptions::default();
    let n = p.len();
    if n <= 14 {
        let est = entropy_exact(p, EntropyMode::Comparability, &opts).unwrap();
        assert!(est.converged, "solver did not converge");
        (est.lower_bound(), est.value)
    } else {
        let est = entropy_exact(p, EntropyMode::Complement, &opts).unwrap();
        assert!(est.converged, "solver did not converge");
        let log_n = (n as f64).log2();
        ((log_n - est.value).max(0.0), log_n - est.lower_bound())
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for perm in permutations(n - 1) {
        for pos in 0..n {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}
