//! Producing partial orders with comparison queries close to the
//! information-theoretic lower bound.
//!
//! The pipeline takes a poset `P`, finds a weak order `W` extending it whose
//! linear extension count is within a constant factor of optimal in the
//! exponent (via greedy antichain decompositions and an interval order), and
//! then produces `W` (hence `P`) from an unknown total order by multiple
//! selection on the layer boundaries.

pub mod antichain;
pub mod entropy;
pub mod error;
pub mod extension;
pub mod families;
pub mod flow;
pub mod frank_wolfe;
pub mod gk;
pub mod interval;
pub mod linext;
pub mod multiselect;
pub mod oracle;
pub mod poset;
pub mod produce;
pub mod report;
pub mod weak;

/// Exact rational used for points of the stable set polytope and potentials.
pub type Rational = num_rational::Ratio<i64>;

pub use entropy::{greedy_point, potential_from_point, Potential, StabPoint};
pub use error::{Error, Result};
pub use extension::{greedy_weak_extension, greedy_weak_extension_interval, GreedyExtension};
pub use flow::{greedy_antichain_decomposition, AntichainDecomposition, InitialFlow, Network};
pub use families::Family;
pub use frank_wolfe::{entropy_exact, EntropyEstimate, EntropyMode, SolverOptions};
pub use gk::{gen_gk, GkFamily};
pub use interval::IntervalOrder;
pub use linext::{count_linear_extensions, itlb, itlb_ceil, log2_factorial};
pub use multiselect::{multiselect, PivotRule};
pub use oracle::ComparisonOracle;
pub use poset::Poset;
pub use produce::{produce, verify_production, Producer, Production};
pub use report::{run_bench, BenchConfig, BenchReport, BenchRow};
pub use weak::WeakOrder;
