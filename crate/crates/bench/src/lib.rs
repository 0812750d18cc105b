//! Fixtures shared by the criterion benches.

use posetprod::families::{equal_layers, random};
use posetprod::{gen_gk, IntervalOrder, Poset, WeakOrder};

/// Random poset; `p` is the edge probability before closure.
pub fn random_poset(n: usize, p: f64) -> Poset {
    random(n, p, 0x5eed).expect("valid parameters")
}

pub fn gk_order(k: u32) -> IntervalOrder {
    gen_gk(k).expect("level in range").interval_order()
}

pub fn layered(n: usize, k: usize) -> WeakOrder {
    equal_layers(n, k).expect("k <= n")
}
