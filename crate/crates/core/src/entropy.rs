//! Points of the stable set polytope of a comparability graph, their
//! entropies, and the network potentials certifying membership.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::flow::{AntichainDecomposition, Node};
use crate::poset::Poset;
use crate::weak::{partition_index, WeakOrder};
use crate::Rational;

/// A strictly positive point, exact. Whether it lies in the stable set
/// polytope of a given poset is checked by [`potential_from_point`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabPoint {
    x: Vec<Rational>,
}

impl StabPoint {
    pub fn new(x: Vec<Rational>) -> Result<Self> {
        if let Some(v) = x.iter().position(|c| !c.is_positive()) {
            return Err(Error::InvalidParameter(format!(
                "coordinate {v} must be positive, got {}",
                x[v]
            )));
        }
        Ok(Self { x })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.x
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.x.iter().map(ratio_f64).collect()
    }

    /// `-(1/n) sum log2 x_v`, in bits.
    pub fn entropy(&self) -> f64 {
        if self.x.is_empty() {
            return 0.0;
        }
        let n = self.x.len() as f64;
        -self.x.iter().map(|c| ratio_f64(c).log2()).sum::<f64>() / n
    }
}

pub(crate) fn ratio_f64(q: &Rational) -> f64 {
    q.to_f64().expect("finite ratio")
}

/// The greedy point `x_v = |S_{m(v)}| / n`.
pub fn greedy_point(dec: &AntichainDecomposition) -> StabPoint {
    let n = dec.element_count() as i64;
    let x = (0..dec.element_count())
        .map(|v| Rational::new(dec.sets()[dec.class_of(v)].len() as i64, n))
        .collect();
    StabPoint { x }
}

/// Entropy of the distribution `sizes / n` in bits; equals the entropy of
/// the greedy point built from sets of these sizes.
pub fn distribution_entropy(sizes: &[usize], n: usize) -> f64 {
    let n = n as f64;
    sizes
        .iter()
        .filter(|&&s| s > 0)
        .map(|&s| {
            let p = s as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// Entropy of a coloring (any partition into classes) of `n` vertices.
pub fn coloring_entropy(coloring: &[Vec<usize>], n: usize) -> Result<f64> {
    partition_index(n, coloring)?;
    let sizes: Vec<usize> = coloring.iter().map(Vec::len).collect();
    Ok(distribution_entropy(&sizes, n))
}

/// Entropy of a weak order: its layers are the maximal antichains, so this
/// is the layer-size distribution entropy.
pub fn weak_order_entropy(w: &WeakOrder) -> f64 {
    w.entropy()
}

/// Node labels of the auxiliary network with `y_s = 0`, `y_t = 1`,
/// nondecreasing along arcs, and `y_{v+} - y_{v-} = x_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    lower: Vec<Rational>,
    upper: Vec<Rational>,
}

impl Potential {
    pub fn new(lower: Vec<Rational>, upper: Vec<Rational>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::SizeMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        Ok(Self { lower, upper })
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn value(&self, node: Node) -> Rational {
        match node {
            Node::Source => Rational::zero(),
            Node::Sink => Rational::one(),
            Node::Minus(v) => self.lower[v],
            Node::Plus(v) => self.upper[v],
        }
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    /// The certified point `x_v = y_{v+} - y_{v-}`.
    pub fn point(&self) -> Result<StabPoint> {
        StabPoint::new(
            self.lower
                .iter()
                .zip(&self.upper)
                .map(|(lo, hi)| hi - lo)
                .collect(),
        )
    }

    /// Checks monotonicity along every arc of the network of `p`.
    pub fn verify(&self, p: &Poset) -> Result<()> {
        if p.len() != self.len() {
            return Err(Error::SizeMismatch {
                expected: p.len(),
                found: self.len(),
            });
        }
        let zero = Rational::zero();
        let one = Rational::one();
        for v in 0..p.len() {
            let (lo, hi) = (self.lower[v], self.upper[v]);
            if lo < zero || hi > one || hi < lo {
                return Err(Error::InvalidPotential(format!(
                    "element {v} has labels ({lo}, {hi})"
                )));
            }
            for &w in p.upper_covers(v) {
                if hi > self.lower[w] {
                    return Err(Error::InvalidPotential(format!(
                        "label drops along cover {v} -> {w}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Builds a potential from chain weights: `y_{v+}` is the heaviest chain
/// ending at `v` under weights `x`. Fails iff some chain has weight
/// above one, i.e. `x` is outside the stable set polytope.
pub fn potential_from_point(p: &Poset, x: &StabPoint) -> Result<Potential> {
    if p.len() != x.len() {
        return Err(Error::SizeMismatch {
            expected: p.len(),
            found: x.len(),
        });
    }
    let n = p.len();
    let mut upper = vec![Rational::zero(); n];
    for &v in p.topological_order() {
        let base = p
            .lower_covers(v)
            .iter()
            .map(|&u| upper[u])
            .max()
            .unwrap_or_else(Rational::zero);
        upper[v] = base + x.coords()[v];
        if upper[v] > Rational::one() {
            return Err(Error::NotInStablePolytope {
                element: v,
                weight: upper[v].to_string(),
            });
        }
    }
    let lower = upper.iter().zip(x.coords()).map(|(hi, xv)| hi - xv).collect();
    Ok(Potential { lower, upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::greedy_antichain_decomposition;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn v_poset() -> Poset {
        Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn greedy_points() {
        let anti = greedy_point(&greedy_antichain_decomposition(&Poset::antichain(5)));
        assert!(anti.coords().iter().all(|c| *c == q(1, 1)));
        assert_eq!(anti.entropy(), 0.0);

        let chain = greedy_point(&greedy_antichain_decomposition(&Poset::chain(2)));
        assert_eq!(chain.coords(), &[q(1, 2), q(1, 2)]);
        assert!((chain.entropy() - 1.0).abs() < 1e-12);

        let v = greedy_point(&greedy_antichain_decomposition(&v_poset()));
        assert_eq!(v.coords(), &[q(1, 3), q(2, 3), q(2, 3)]);
        let expected = 3f64.log2() - 2.0 / 3.0;
        assert!((v.entropy() - expected).abs() < 1e-12);
        assert!((distribution_entropy(&[2, 1], 3) - expected).abs() < 1e-12);
    }

    #[test]
    fn potentials() {
        let anti = potential_from_point(
            &Poset::antichain(2),
            &StabPoint::new(vec![q(1, 1), q(1, 1)]).unwrap(),
        )
        .unwrap();
        assert_eq!(anti.lower(), &[q(0, 1), q(0, 1)]);
        assert_eq!(anti.upper(), &[q(1, 1), q(1, 1)]);

        let chain = potential_from_point(
            &Poset::chain(2),
            &StabPoint::new(vec![q(1, 2), q(1, 2)]).unwrap(),
        )
        .unwrap();
        assert_eq!(chain.value(Node::Minus(0)), q(0, 1));
        assert_eq!(chain.value(Node::Plus(0)), q(1, 2));
        assert_eq!(chain.value(Node::Minus(1)), q(1, 2));
        assert_eq!(chain.value(Node::Plus(1)), q(1, 1));

        let v = potential_from_point(
            &v_poset(),
            &StabPoint::new(vec![q(1, 3), q(2, 3), q(2, 3)]).unwrap(),
        )
        .unwrap();
        assert_eq!(v.lower(), &[q(0, 1), q(1, 3), q(1, 3)]);
        assert_eq!(v.upper(), &[q(1, 3), q(1, 1), q(1, 1)]);
        v.verify(&v_poset()).unwrap();
        assert_eq!(v.point().unwrap().coords(), &[q(1, 3), q(2, 3), q(2, 3)]);
    }

    #[test]
    fn infeasible_point_has_no_potential() {
        let x = StabPoint::new(vec![q(1, 2), q(2, 3), q(1, 4)]).unwrap();
        assert!(matches!(
            potential_from_point(&v_poset(), &x),
            Err(Error::NotInStablePolytope { element: 1, .. })
        ));
    }

    #[test]
    fn verify_catches_bad_labels() {
        let bad = Potential::new(vec![q(0, 1), q(1, 4)], vec![q(1, 2), q(1, 1)]).unwrap();
        assert!(matches!(
            bad.verify(&Poset::chain(2)),
            Err(Error::InvalidPotential(_))
        ));
        assert!(bad.verify(&Poset::antichain(2)).is_ok());
    }

    #[test]
    fn stab_point_rejects_zero() {
        assert!(StabPoint::new(vec![q(0, 1)]).is_err());
    }

    #[test]
    fn coloring_entropies() {
        assert_eq!(coloring_entropy(&[vec![0, 1, 2]], 3).unwrap(), 0.0);
        let singletons: Vec<Vec<usize>> = (0..8).map(|v| vec![v]).collect();
        assert!((coloring_entropy(&singletons, 8).unwrap() - 3.0).abs() < 1e-12);
        assert!(coloring_entropy(&[vec![0]], 2).is_err());
    }

    #[test]
    fn weak_order_entropies() {
        assert_eq!(weak_order_entropy(&WeakOrder::from_sizes(&[4])), 0.0);
        assert!((weak_order_entropy(&WeakOrder::from_sizes(&[1, 1, 1, 1])) - 2.0).abs() < 1e-12);
        let h = weak_order_entropy(&WeakOrder::from_sizes(&[2, 1, 2]));
        let expected = 2.0 * 0.4 * 2.5f64.log2() + 0.2 * 5f64.log2();
        assert!((h - expected).abs() < 1e-12);
        assert!((h - 1.5219).abs() < 1e-4);
    }
}
