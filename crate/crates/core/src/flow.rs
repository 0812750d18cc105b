//! The auxiliary network of a poset and the greedy maximum-antichain
//! decomposition driven by decrementing an integer flow with lower bounds.
//!
//! Every element `v` is split into an arc `v- -> v+` with lower bound 1.
//! Cover pairs become arcs `v+ -> w-`, minimal elements hang off the source
//! and maximal elements feed the sink. Arcs have no capacities. While some
//! element is not yet extracted the flow value bounds the size of every
//! antichain of the remaining elements from above; once no decrementing
//! path reaches the sink, the tight element arcs leaving the reachable set
//! form an antichain of exactly that size.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::weak::partition_index;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Source,
    Sink,
    /// Tail of the element arc of `v`.
    Minus(usize),
    /// Head of the element arc of `v`.
    Plus(usize),
}

impl Node {
    pub fn index(self) -> usize {
        match self {
            Node::Source => 0,
            Node::Sink => 1,
            Node::Minus(v) => 2 + 2 * v,
            Node::Plus(v) => 3 + 2 * v,
        }
    }

    pub fn from_index(i: usize) -> Node {
        match i {
            0 => Node::Source,
            1 => Node::Sink,
            _ if i.is_multiple_of(2) => Node::Minus((i - 2) / 2),
            _ => Node::Plus((i - 3) / 2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub tail: Node,
    pub head: Node,
    pub lower: u64,
    pub flow: u64,
}

#[derive(Debug, Clone, Copy)]
struct Incidence {
    neighbor: usize,
    arc: usize,
    forward: bool,
}

/// How to pick the starting flow of value `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialFlow {
    /// One unit along a maximal chain through each element, always taking
    /// the lowest-indexed cover.
    #[default]
    MaximalChains,
    /// Same, but covers are picked at random from the seed.
    RandomChains(u64),
}

#[derive(Debug, Clone)]
pub struct Network {
    n: usize,
    arcs: Vec<FlowArc>,
    /// Per node, incident arcs sorted by neighbour index.
    adjacency: Vec<Vec<Incidence>>,
    element_arc: Vec<usize>,
}

/// Outcome of a search for decrementing paths from the source.
#[derive(Debug, Clone)]
pub struct Reachability {
    /// Membership of each node (by [`Node::index`]) in the reachable set `Y`.
    pub reachable: Vec<bool>,
    /// Arc and direction used to first reach each node.
    parent: Vec<Option<(usize, bool)>>,
}

impl Reachability {
    pub fn reaches_sink(&self) -> bool {
        self.reachable[Node::Sink.index()]
    }

    pub fn contains(&self, node: Node) -> bool {
        self.reachable[node.index()]
    }
}

impl Network {
    /// Builds the network with zero flow and lower bound 1 on element arcs.
    pub fn build(p: &Poset) -> Self {
        let n = p.len();
        let mut arcs = Vec::with_capacity(3 * n + p.cover_count());
        let mut push = |tail, head, lower| {
            arcs.push(FlowArc {
                tail,
                head,
                lower,
                flow: 0,
            });
            arcs.len() - 1
        };
        for v in (0..n).filter(|&v| p.is_minimal(v)) {
            push(Node::Source, Node::Minus(v), 0);
        }
        let element_arc: Vec<usize> = (0..n)
            .map(|v| push(Node::Minus(v), Node::Plus(v), 1))
            .collect();
        for (v, w) in p.covers() {
            push(Node::Plus(v), Node::Minus(w), 0);
        }
        for v in (0..n).filter(|&v| p.is_maximal(v)) {
            push(Node::Plus(v), Node::Sink, 0);
        }

        let mut adjacency = vec![Vec::new(); 2 * n + 2];
        for (i, arc) in arcs.iter().enumerate() {
            let (t, h) = (arc.tail.index(), arc.head.index());
            adjacency[t].push(Incidence {
                neighbor: h,
                arc: i,
                forward: true,
            });
            adjacency[h].push(Incidence {
                neighbor: t,
                arc: i,
                forward: false,
            });
        }
        for list in &mut adjacency {
            list.sort_by_key(|inc| (inc.neighbor, inc.arc));
        }
        Network {
            n,
            arcs,
            adjacency,
            element_arc,
        }
    }

    pub fn element_count(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        2 * self.n + 2
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    pub fn element_arc(&self, v: usize) -> &FlowArc {
        &self.arcs[self.element_arc[v]]
    }

    /// Net flow out of the source.
    pub fn value(&self) -> u64 {
        self.arcs
            .iter()
            .filter(|a| a.tail == Node::Source)
            .map(|a| a.flow)
            .sum()
    }

    /// Conservation at every inner node and `flow >= lower` on every arc.
    pub fn is_feasible(&self) -> bool {
        let mut balance = vec![0i128; self.node_count()];
        for a in &self.arcs {
            if a.flow < a.lower {
                return false;
            }
            balance[a.tail.index()] -= a.flow as i128;
            balance[a.head.index()] += a.flow as i128;
        }
        balance[2..].iter().all(|&b| b == 0)
    }

    /// Adds one unit along a maximal chain through each element in turn.
    pub fn set_initial_flow(&mut self, scheme: InitialFlow) {
        for a in &mut self.arcs {
            a.flow = 0;
        }
        let mut rng = match scheme {
            InitialFlow::MaximalChains => None,
            InitialFlow::RandomChains(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        for v in 0..self.n {
            self.arcs[self.element_arc[v]].flow += 1;
            // walk down to the source
            let mut at = Node::Minus(v).index();
            while at != Node::Source.index() {
                let arc = self.pick(at, false, rng.as_mut());
                self.arcs[arc].flow += 1;
                at = self.arcs[arc].tail.index();
                if at != Node::Source.index() {
                    // landed on some u+, cross the element arc of u
                    let Node::Plus(u) = Node::from_index(at) else {
                        unreachable!("in-arcs of an element tail start at a head or the source")
                    };
                    let e = self.element_arc[u];
                    self.arcs[e].flow += 1;
                    at = Node::Minus(u).index();
                }
            }
            let mut at = Node::Plus(v).index();
            while at != Node::Sink.index() {
                let arc = self.pick(at, true, rng.as_mut());
                self.arcs[arc].flow += 1;
                at = self.arcs[arc].head.index();
                if at != Node::Sink.index() {
                    let Node::Minus(u) = Node::from_index(at) else {
                        unreachable!("out-arcs of an element head end at a tail or the sink")
                    };
                    let e = self.element_arc[u];
                    self.arcs[e].flow += 1;
                    at = Node::Plus(u).index();
                }
            }
        }
    }

    fn pick(&self, node: usize, forward: bool, rng: Option<&mut ChaCha8Rng>) -> usize {
        let options: Vec<usize> = self.adjacency[node]
            .iter()
            .filter(|inc| inc.forward == forward)
            .map(|inc| inc.arc)
            .collect();
        match rng {
            None => options[0],
            Some(rng) => options[rng.gen_range(0..options.len())],
        }
    }

    /// Nodes reachable from the source along arcs with `flow > lower`
    /// (forwards) or along any arc backwards. Neighbours are explored in
    /// ascending node index, depth first.
    pub fn decrementing_reachable(&self) -> Reachability {
        let nodes = self.node_count();
        let mut reachable = vec![false; nodes];
        let mut parent = vec![None; nodes];
        let source = Node::Source.index();
        reachable[source] = true;
        let mut stack = vec![(source, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (node, next) = *top;
            let Some(inc) = self.adjacency[node].get(next) else {
                stack.pop();
                continue;
            };
            top.1 += 1;
            if reachable[inc.neighbor] {
                continue;
            }
            let arc = &self.arcs[inc.arc];
            if inc.forward && arc.flow <= arc.lower {
                continue;
            }
            reachable[inc.neighbor] = true;
            parent[inc.neighbor] = Some((inc.arc, inc.forward));
            stack.push((inc.neighbor, 0));
        }
        Reachability { reachable, parent }
    }

    /// Lowers the flow value by one along the search tree path to the sink.
    fn decrement(&mut self, reach: &Reachability) {
        let mut at = Node::Sink.index();
        while at != Node::Source.index() {
            let (arc, forward) = reach.parent[at].expect("sink is reachable");
            let a = &mut self.arcs[arc];
            if forward {
                a.flow -= 1;
                at = a.tail.index();
            } else {
                a.flow += 1;
                at = a.head.index();
            }
        }
    }

    /// Element arcs leaving `Y` that carry exactly one unit; their lower
    /// bounds are released.
    fn extract(&mut self, reach: &Reachability) -> Vec<usize> {
        let mut taken = Vec::new();
        for v in 0..self.n {
            let arc = &mut self.arcs[self.element_arc[v]];
            if reach.contains(arc.tail) && !reach.contains(arc.head) && arc.flow == 1 {
                arc.lower = 0;
                taken.push(v);
            }
        }
        taken
    }

    /// Graphviz rendering with `flow/lower` arc labels.
    pub fn to_dot(&self) -> String {
        let name = |node: Node| match node {
            Node::Source => "s".to_string(),
            Node::Sink => "t".to_string(),
            Node::Minus(v) => format!("\"{v}-\""),
            Node::Plus(v) => format!("\"{v}+\""),
        };
        let mut out = String::from("digraph D {\n");
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}/{}\"];",
                name(a.tail),
                name(a.head),
                a.flow,
                a.lower
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Ordered disjoint antichains `S_1, .., S_k` covering the ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntichainDecomposition {
    sets: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl AntichainDecomposition {
    /// Validates that `sets` partition `{0, .., n-1}`; antichain-ness is the
    /// caller's contract. Each set is sorted.
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let class_of = partition_index(n, &sets)?;
        if sets.iter().any(Vec::is_empty) {
            return Err(Error::NotPartition("empty antichain".into()));
        }
        let sets = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        Ok(Self { sets, class_of })
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    /// Index `m(v)` of the set holding `v`.
    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn element_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Bookkeeping from one run of the decomposition.
#[derive(Debug, Clone)]
pub struct GreedyRun {
    pub decomposition: AntichainDecomposition,
    /// Main-loop passes: decrements plus extractions.
    pub iterations: usize,
    pub decrements: usize,
    /// Flow value at the moment each antichain was extracted.
    pub extraction_values: Vec<u64>,
}

pub fn greedy_antichain_decomposition(p: &Poset) -> AntichainDecomposition {
    greedy_run(p, InitialFlow::default()).decomposition
}

/// Repeatedly removes a maximum antichain of the remaining elements.
/// Runs in `O(n m)` for a Hasse diagram with `m` arcs.
pub fn greedy_run(p: &Poset, initial: InitialFlow) -> GreedyRun {
    let n = p.len();
    let mut net = Network::build(p);
    net.set_initial_flow(initial);
    let mut value = net.value();

    let mut sets = Vec::new();
    let mut extraction_values = Vec::new();
    let mut extracted = 0;
    let mut iterations = 0;
    let mut decrements = 0;
    while extracted < n {
        iterations += 1;
        let reach = net.decrementing_reachable();
        if reach.reaches_sink() {
            net.decrement(&reach);
            value -= 1;
            decrements += 1;
        } else {
            let antichain = net.extract(&reach);
            assert!(
                !antichain.is_empty(),
                "cut without tight element arcs while {} elements remain",
                n - extracted
            );
            debug_assert_eq!(value, antichain.len() as u64);
            extracted += antichain.len();
            extraction_values.push(value);
            sets.push(antichain);
        }
    }
    GreedyRun {
        decomposition: AntichainDecomposition::new(n, sets).expect("extractions partition"),
        iterations,
        decrements,
        extraction_values,
    }
}
