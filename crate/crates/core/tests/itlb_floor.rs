//! The lower bound constrains the worst case and the average over hidden
//! orders; single lucky runs may go below it.

mod common;

use posetprod::linext::{itlb, itlb_ceil};
use posetprod::{ComparisonOracle, PivotRule, Producer};

use common::{corpus, permutations};

#[test]
fn worst_case_and_average_respect_the_bound() {
    for (name, p) in corpus().into_iter().filter(|(_, p)| p.len() <= 6) {
        let producer = Producer::new(p.clone()).unwrap();
        let bound = itlb_ceil(&p).unwrap() as u64;
        let exact = itlb(&p).unwrap();
        for rule in [PivotRule::Random { seed: 11 }, PivotRule::MedianOfMedians] {
            let costs: Vec<u64> = permutations(p.len())
                .into_iter()
                .map(|hidden| {
                    let mut oracle = ComparisonOracle::new(hidden).unwrap();
                    producer.run(&mut oracle, rule).unwrap().comparisons
                })
                .collect();
            let worst = *costs.iter().max().unwrap();
            let mean = costs.iter().sum::<u64>() as f64 / costs.len() as f64;
            assert!(worst >= bound, "{name}: worst {worst} < {bound}");
            assert!(mean >= exact - 1e-9, "{name}: mean {mean} < {exact}");
        }
    }
}

#[test]
fn chain_of_eight_in_ten_trials() {
    let producer = Producer::new(posetprod::Poset::chain(8)).unwrap();
    let costs: Vec<u64> = (0..10)
        .map(|seed| {
            let mut oracle = ComparisonOracle::from_seed(8, seed);
            producer.run(&mut oracle, PivotRule::Random { seed }).unwrap().comparisons
        })
        .collect();
    // at least 16 on average, not necessarily on every trial
    let mean = costs.iter().sum::<u64>() as f64 / 10.0;
    assert!(mean >= 40320f64.log2(), "{costs:?}");
}
