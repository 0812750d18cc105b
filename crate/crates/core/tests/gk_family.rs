use posetprod::entropy::{coloring_entropy, potential_from_point};
use posetprod::gk::{gen_gk, gk_recursive_coloring, gk_upper_point_entropy};
use posetprod::{greedy_weak_extension, greedy_weak_extension_interval, Poset};

/// Maximal antichains by Bron-Kerbosch on the incomparability graph.
fn maximal_antichains(p: &Poset) -> Vec<Vec<usize>> {
    fn expand(p: &Poset, r: &mut Vec<usize>, cand: Vec<usize>, excl: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cand.is_empty() && excl.is_empty() {
            out.push(r.clone());
            return;
        }
        let mut cand = cand;
        let mut excl = excl;
        while let Some(v) = cand.pop() {
            let keep = |w: &usize| !p.comparable(v, *w);
            r.push(v);
            expand(
                p,
                r,
                cand.iter().copied().filter(keep).collect(),
                excl.iter().copied().filter(keep).collect(),
                out,
            );
            r.pop();
            excl.push(v);
        }
    }
    let mut out = Vec::new();
    expand(p, &mut Vec::new(), (0..p.len()).collect(), Vec::new(), &mut out);
    out
}

#[test]
fn maximal_antichains_exhaustively() {
    for k in 1..=4u32 {
        let fam = gen_gk(k).unwrap();
        let p = fam.interval_order().to_poset();
        let all = maximal_antichains(&p);
        assert_eq!(all.len(), (1 << k) - 1, "k={k}");
        assert!(all.iter().all(|a| a.len() == 1 << (k - 1)));
        let (sizes, _) = fam.maximal_cliques();
        assert_eq!(sizes.len(), all.len());
    }
}

#[test]
fn upper_point_is_feasible() {
    for k in 1..=6u32 {
        let fam = gen_gk(k).unwrap();
        let p = fam.interval_order().to_poset();
        let x = fam.upper_point();
        potential_from_point(&p, &x).unwrap();
        assert!((x.entropy() - gk_upper_point_entropy(&fam)).abs() < 1e-12);
    }
    let expected = [(1, 0.0), (3, 7f64.log2() - 1.0), (4, 15f64.log2() - 1.5)];
    for (k, h) in expected {
        let got = gk_upper_point_entropy(&gen_gk(k).unwrap());
        assert!((got - h).abs() < 1e-12);
        assert!(got <= (k as f64 + 1.0) / 2.0);
    }
    assert!((gk_upper_point_entropy(&gen_gk(3).unwrap()) - 1.807).abs() < 1e-3);
    assert!((gk_upper_point_entropy(&gen_gk(4).unwrap()) - 2.407).abs() < 1e-3);
}

#[test]
fn recursive_coloring() {
    for (k, h) in [(1, 0.0), (2, 1.5), (4, 3.5)] {
        let fam = gen_gk(k).unwrap();
        let p = fam.interval_order().to_poset();
        let classes = gk_recursive_coloring(&fam);
        for class in &classes {
            assert!(p.is_antichain(class));
        }
        assert!((coloring_entropy(&classes, fam.len()).unwrap() - h).abs() < 1e-12);
    }
}

#[test]
fn both_pipelines_extend_small_levels() {
    for k in 1..=6u32 {
        let fam = gen_gk(k).unwrap();
        let p = fam.interval_order().to_poset();
        let slow = greedy_weak_extension(&p).unwrap();
        let fast = greedy_weak_extension_interval(&fam.interval_order()).unwrap();
        let floor = (k as f64).log2() - std::f64::consts::E.log2() - 1.0;
        for ext in [&slow, &fast] {
            assert!(ext.weak.extends_poset(&p));
            assert!(ext.weak.entropy() - gk_upper_point_entropy(&fam) >= floor);
        }
        assert_eq!(slow.trace.first.sizes(), fast.trace.first.sizes());
    }
}
