//! Chains and cochains of a graph over GF(2), the boundary and coboundary
//! maps, spanning-forest bases of H_1 and H^1, and the evaluation pairing
//! between them.
//!
//! Orientation is irrelevant over GF(2), so incidence is unsigned: the
//! boundary of an edge is the sum of its endpoints and a loop has boundary 0.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeDeletion, EdgeSubset, MultiGraph};
use crate::linalg::{Gf2Matrix, Gf2Vec};

macro_rules! gf2_chain {
    ($(#[$meta:meta])* $name:ident, $what:literal, $count:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash)]
        pub struct $name(Gf2Vec);

        impl $name {
            pub fn zero(g: &MultiGraph) -> Self {
                $name(Gf2Vec::zeros(g.$count()))
            }

            #[doc = concat!("Indicator of a set of ", $what, " indices; repeated indices cancel.")]
            pub fn from_support(g: &MultiGraph, support: &[usize]) -> Result<Self> {
                let n = g.$count();
                if let Some(&bad) = support.iter().find(|&&i| i >= n) {
                    return Err(gf2_chain!(@err $count, bad, n));
                }
                Ok($name(Gf2Vec::from_support(n, support.iter().copied())))
            }

            pub fn from_vec(g: &MultiGraph, bits: Gf2Vec) -> Result<Self> {
                if bits.len() != g.$count() {
                    return Err(Error::DimensionMismatch { expected: g.$count(), actual: bits.len() });
                }
                Ok($name(bits))
            }

            pub fn bits(&self) -> &Gf2Vec {
                &self.0
            }

            pub fn get(&self, i: usize) -> bool {
                self.0.get(i)
            }

            pub fn support(&self) -> Vec<usize> {
                self.0.ones().collect()
            }

            pub fn is_zero(&self) -> bool {
                self.0.is_zero()
            }

            pub fn add(&self, other: &Self) -> Self {
                $name(self.0.xor(&other.0))
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }
        }
    };
    (@err edge_count, $bad:expr, $n:expr) => {
        Error::EdgeOutOfRange { index: $bad, edge_count: $n }
    };
    (@err vertex_count, $bad:expr, $n:expr) => {
        Error::VertexOutOfRange { index: $bad, vertex_count: $n }
    };
}

gf2_chain!(
    /// An element of C_1: one bit per edge.
    Chain1, "edge", edge_count
);
gf2_chain!(
    /// An element of C_0: one bit per vertex.
    Chain0, "vertex", vertex_count
);
gf2_chain!(
    /// A GF(2)-valued function on edges.
    Cochain1, "edge", edge_count
);
gf2_chain!(
    /// A GF(2)-valued function on vertices.
    Cochain0, "vertex", vertex_count
);

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}

pub fn boundary(g: &MultiGraph, c: &Chain1) -> Result<Chain0> {
    check_len(g.edge_count(), c.len())?;
    let mut out = Gf2Vec::zeros(g.vertex_count());
    for e in c.0.ones() {
        let (u, v) = g.endpoints(e);
        if u != v {
            out.flip(u);
            out.flip(v);
        }
    }
    Ok(Chain0(out))
}

pub fn coboundary(g: &MultiGraph, f: &Cochain0) -> Result<Cochain1> {
    check_len(g.vertex_count(), f.len())?;
    let bits: Vec<bool> = g
        .edges()
        .iter()
        .map(|&(u, v)| f.get(u) != f.get(v))
        .collect();
    Ok(Cochain1(Gf2Vec::from_bits(&bits)))
}

pub fn is_cycle(g: &MultiGraph, c: &Chain1) -> Result<bool> {
    Ok(boundary(g, c)?.is_zero())
}

/// Vertex-by-edge incidence matrix of the boundary map.
pub fn boundary_matrix(g: &MultiGraph) -> Gf2Matrix {
    let mut m = Gf2Matrix::zeros(g.vertex_count(), g.edge_count());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if u != v {
            m.set(u, e, true);
            m.set(v, e, true);
        }
    }
    m
}

/// True when `gamma` is `δf` for some vertex function `f`.
pub fn is_coboundary(g: &MultiGraph, gamma: &Cochain1) -> Result<bool> {
    check_len(g.edge_count(), gamma.len())?;
    let delta = boundary_matrix(g).transpose();
    Ok(delta.solve(&gamma.0)?.is_some())
}

/// The evaluation pairing `Σ γ(e) α(e)`, restricted to cycles `α`.
pub fn graph_pairing(g: &MultiGraph, gamma: &Cochain1, alpha: &Chain1) -> Result<bool> {
    check_len(g.edge_count(), gamma.len())?;
    if !is_cycle(g, alpha)? {
        return Err(Error::NotACycle);
    }
    Ok(gamma.0.dot(&alpha.0))
}

/// Spanning-forest bases of H_1 and H^1. The cycle for a non-forest edge `e`
/// is `e` plus the forest path between its endpoints; the matching cocycle
/// is the indicator of `e`. The two bases are dual under evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyBasis {
    pub forest: EdgeSubset,
    /// The non-forest edges, one per basis element, ascending.
    pub chords: Vec<usize>,
    pub cycles: Vec<Chain1>,
    pub cocycles: Vec<Cochain1>,
}

impl HomologyBasis {
    pub fn new(g: &MultiGraph) -> Self {
        let forest = g.spanning_forest();
        let rooted = RootedForest::new(g, &forest);
        let chords: Vec<usize> = (0..g.edge_count())
            .filter(|&e| !forest.contains(e))
            .collect();
        let cycles = chords
            .iter()
            .map(|&e| {
                let (u, v) = g.endpoints(e);
                let mut bits = Gf2Vec::unit(g.edge_count(), e);
                for f in rooted.path_edges(u, v) {
                    bits.flip(f);
                }
                Chain1(bits)
            })
            .collect();
        let cocycles = chords
            .iter()
            .map(|&e| Cochain1(Gf2Vec::unit(g.edge_count(), e)))
            .collect();
        HomologyBasis {
            forest,
            chords,
            cycles,
            cocycles,
        }
    }

    pub fn dimension(&self) -> usize {
        self.chords.len()
    }

    /// Coordinates of a cycle in the cycle basis.
    pub fn homology_coordinates(&self, alpha: &Chain1) -> Gf2Vec {
        Gf2Vec::from_bits(
            &self
                .chords
                .iter()
                .map(|&e| alpha.get(e))
                .collect::<Vec<_>>(),
        )
    }

    /// Coordinates of the class of `gamma` in the cocycle basis.
    pub fn cohomology_coordinates(&self, gamma: &Cochain1) -> Gf2Vec {
        Gf2Vec::from_bits(
            &self
                .cycles
                .iter()
                .map(|c| gamma.0.dot(&c.0))
                .collect::<Vec<_>>(),
        )
    }

    pub fn cycle_from_coordinates(&self, g: &MultiGraph, coords: &Gf2Vec) -> Chain1 {
        let mut acc = Chain1::zero(g);
        for i in coords.ones() {
            acc = acc.add(&self.cycles[i]);
        }
        acc
    }

    pub fn cocycle_from_coordinates(&self, g: &MultiGraph, coords: &Gf2Vec) -> Cochain1 {
        let mut acc = Cochain1::zero(g);
        for i in coords.ones() {
            acc = acc.add(&self.cocycles[i]);
        }
        acc
    }
}

pub fn homology_basis(g: &MultiGraph) -> HomologyBasis {
    HomologyBasis::new(g)
}

/// Gram matrix `⟨cocycles[i], cycles[j]⟩`.
pub fn gram_matrix(cocycles: &[Cochain1], cycles: &[Chain1]) -> Gf2Matrix {
    let mut m = Gf2Matrix::zeros(cocycles.len(), cycles.len());
    for (i, gamma) in cocycles.iter().enumerate() {
        for (j, alpha) in cycles.iter().enumerate() {
            m.set(i, j, gamma.0.dot(&alpha.0));
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingCheck {
    pub perfect: bool,
    pub gram: Gf2Matrix,
}

/// Gram matrix of the graph pairing on the canonical bases and whether it is
/// invertible over GF(2).
pub fn is_perfect_pairing(g: &MultiGraph) -> PairingCheck {
    let basis = homology_basis(g);
    let gram = gram_matrix(&basis.cocycles, &basis.cycles);
    PairingCheck {
        perfect: gram.is_invertible(),
        gram,
    }
}

/// True when the support of `c` is a single simple closed walk: nonempty,
/// connected, and every touched vertex has degree two (a loop counts twice).
pub fn is_simple_cycle(g: &MultiGraph, c: &Chain1) -> bool {
    if c.len() != g.edge_count() || c.is_zero() {
        return false;
    }
    let mut degree = vec![0usize; g.vertex_count()];
    let mut uf = crate::graph::UnionFind::new(g.vertex_count());
    let mut touched = Vec::new();
    for e in c.0.ones() {
        let (u, v) = g.endpoints(e);
        degree[u] += 1;
        degree[v] += 1;
        uf.union(u, v);
        touched.push(u);
    }
    let root = uf.find(touched[0]);
    degree.iter().all(|&d| d == 0 || d == 2) && touched.iter().all(|&u| uf.find(u) == root)
}

/// Splits a cycle into edge-disjoint simple cycles summing to it. Starting
/// from the lowest-index remaining edge, walk along unused edges until a
/// vertex repeats, peel off the closed part, and repeat.
pub fn decompose_cycles(g: &MultiGraph, alpha: &Chain1) -> Result<Vec<Chain1>> {
    if !is_cycle(g, alpha)? {
        return Err(Error::NotACycle);
    }
    let inc = g.incidence();
    let mut remaining = alpha.0.clone();
    let mut pieces = Vec::new();
    loop {
        let first = remaining.ones().next();
        let Some(start) = first else { break };
        let (u, v) = g.endpoints(start);
        let mut walk_vertices = vec![u, v];
        let mut walk_edges = vec![start];
        let cycle_edges = if u == v {
            vec![start]
        } else {
            loop {
                let here = *walk_vertices.last().unwrap();
                let (e, next) = inc[here]
                    .iter()
                    .copied()
                    .filter(|&(e, _)| remaining.get(e) && !walk_edges.contains(&e))
                    .min()
                    .expect("even degree leaves an unused edge");
                if let Some(pos) = walk_vertices.iter().position(|&w| w == next) {
                    let mut closed = walk_edges[pos..].to_vec();
                    closed.push(e);
                    break closed;
                }
                walk_vertices.push(next);
                walk_edges.push(e);
            }
        };
        let piece = Gf2Vec::from_support(g.edge_count(), cycle_edges.iter().copied());
        remaining.xor_assign(&piece);
        pieces.push(Chain1(piece));
    }
    Ok(pieces)
}

/// Pushes a chain on a subgraph forward to the parent graph.
pub fn include_chain(parent: &MultiGraph, deletion: &EdgeDeletion, c: &Chain1) -> Result<Chain1> {
    check_len(deletion.graph.edge_count(), c.len())?;
    let mut bits = Gf2Vec::zeros(parent.edge_count());
    for e in c.0.ones() {
        bits.set(deletion.parent_edge[e], true);
    }
    Ok(Chain1(bits))
}

/// A spanning forest with each tree rooted at its lowest vertex.
struct RootedForest {
    parent_edge: Vec<Option<usize>>,
    parent: Vec<usize>,
    depth: Vec<usize>,
}

impl RootedForest {
    fn new(g: &MultiGraph, forest: &EdgeSubset) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for e in forest.iter() {
            let (u, v) = g.endpoints(e);
            adj[u].push((e, v));
            adj[v].push((e, u));
        }
        let mut parent_edge = vec![None; n];
        let mut parent: Vec<usize> = (0..n).collect();
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut stack = vec![root];
            while let Some(x) = stack.pop() {
                for &(e, y) in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = x;
                        parent_edge[y] = Some(e);
                        depth[y] = depth[x] + 1;
                        stack.push(y);
                    }
                }
            }
        }
        RootedForest {
            parent_edge,
            parent,
            depth,
        }
    }

    fn path_edges(&self, mut u: usize, mut v: usize) -> Vec<usize> {
        let mut edges = Vec::new();
        while u != v {
            if self.depth[u] < self.depth[v] {
                std::mem::swap(&mut u, &mut v);
            }
            edges.push(self.parent_edge[u].expect("endpoints lie in the same tree"));
            u = self.parent[u];
        }
        edges
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn chain(g: &MultiGraph, s: &[usize]) -> Chain1 {
        Chain1::from_support(g, s).unwrap()
    }

    fn cochain(g: &MultiGraph, s: &[usize]) -> Cochain1 {
        Cochain1::from_support(g, s).unwrap()
    }

    #[test]
    fn boundary_examples() {
        let p = path(3);
        let b = boundary(&p, &chain(&p, &[1])).unwrap();
        assert_eq!(b.support(), vec![1, 2]);
        let l = single_loop();
        assert!(boundary(&l, &chain(&l, &[0])).unwrap().is_zero());
        let t = theta();
        assert!(boundary(&t, &chain(&t, &[0, 1])).unwrap().is_zero());
    }

    #[test]
    fn coboundary_examples() {
        let t = theta();
        let f = Cochain0::from_support(&t, &[0]).unwrap();
        assert_eq!(coboundary(&t, &f).unwrap().support(), vec![0, 1, 2]);
        let ones = Cochain0::from_support(&t, &[0, 1]).unwrap();
        assert!(coboundary(&t, &ones).unwrap().is_zero());
        let d = dumbbell();
        let f = Cochain0::from_support(&d, &[0]).unwrap();
        assert_eq!(coboundary(&d, &f).unwrap().support(), vec![1]);
    }

    #[test]
    fn basis_examples() {
        let tree = path(4);
        let b = homology_basis(&tree);
        assert!(b.cycles.is_empty() && b.cocycles.is_empty());

        let l = single_loop();
        let b = homology_basis(&l);
        assert_eq!(b.cycles, vec![chain(&l, &[0])]);
        assert_eq!(b.cocycles, vec![cochain(&l, &[0])]);

        let t = theta();
        let b = homology_basis(&t);
        assert_eq!(b.forest, EdgeSubset::new([0]));
        assert_eq!(b.cycles, vec![chain(&t, &[0, 1]), chain(&t, &[0, 2])]);
        assert_eq!(b.cocycles, vec![cochain(&t, &[1]), cochain(&t, &[2])]);
        assert_eq!(gram_matrix(&b.cocycles, &b.cycles), Gf2Matrix::identity(2));
    }

    #[test]
    fn pairing_examples() {
        let t = theta();
        let f = Cochain0::from_support(&t, &[1]).unwrap();
        let delta = coboundary(&t, &f).unwrap();
        for alpha in homology_basis(&t).cycles {
            assert!(!graph_pairing(&t, &delta, &alpha).unwrap());
        }
        let l = single_loop();
        assert!(graph_pairing(&l, &cochain(&l, &[0]), &chain(&l, &[0])).unwrap());
        let g1 = cochain(&t, &[1]);
        assert!(!graph_pairing(&t, &g1, &chain(&t, &[0, 2])).unwrap());
        assert!(graph_pairing(&t, &g1, &chain(&t, &[0, 1])).unwrap());
        assert_eq!(
            graph_pairing(&t, &g1, &chain(&t, &[0])),
            Err(Error::NotACycle)
        );
    }

    #[test]
    fn perfect_pairing_examples() {
        let c = is_perfect_pairing(&theta());
        assert!(c.perfect);
        assert_eq!(c.gram, Gf2Matrix::identity(2));
        let c = is_perfect_pairing(&path(3));
        assert!(c.perfect);
        assert_eq!(c.gram.row_count(), 0);
        let c = is_perfect_pairing(&dumbbell());
        assert!(c.perfect);
        assert_eq!(c.gram, Gf2Matrix::identity(2));
    }

    #[test]
    fn decompose_examples() {
        let t = theta();
        assert!(decompose_cycles(&t, &Chain1::zero(&t)).unwrap().is_empty());
        let l = single_loop();
        assert_eq!(
            decompose_cycles(&l, &chain(&l, &[0])).unwrap(),
            vec![chain(&l, &[0])]
        );
        assert_eq!(
            decompose_cycles(&t, &chain(&t, &[1])),
            Err(Error::NotACycle)
        );
    }

    #[test]
    fn decompose_theta_with_loop() {
        // Theta plus a loop at vertex 0; e0 + e1 + loop splits into the
        // 2-cycle and the loop.
        let g = MultiGraph::new(2, vec![(0, 1), (0, 1), (0, 1), (0, 0)]).unwrap();
        let alpha = chain(&g, &[0, 1, 3]);
        let pieces = decompose_cycles(&g, &alpha).unwrap();
        let mut total = Chain1::zero(&g);
        let mut used = std::collections::HashSet::new();
        for p in &pieces {
            assert!(is_simple_cycle(&g, p));
            for e in p.support() {
                assert!(used.insert(e), "pieces share edge {e}");
            }
            total = total.add(p);
        }
        assert_eq!(total, alpha);
        assert_eq!(pieces.len(), 2);
    }

    #[test]
    fn simple_cycle_recognition() {
        let t = theta();
        assert!(is_simple_cycle(&t, &chain(&t, &[0, 2])));
        assert!(!is_simple_cycle(&t, &chain(&t, &[0])));
        assert!(!is_simple_cycle(&t, &Chain1::zero(&t)));
        // Figure eight: two loops at one vertex is a cycle but not simple.
        let eight = MultiGraph::new(1, vec![(0, 0), (0, 0)]).unwrap();
        assert!(!is_simple_cycle(&eight, &chain(&eight, &[0, 1])));
        // Two disjoint loops.
        let two = MultiGraph::new(2, vec![(0, 0), (1, 1)]).unwrap();
        assert!(!is_simple_cycle(&two, &chain(&two, &[0, 1])));
    }

    #[test]
    fn coboundary_membership() {
        let t = theta();
        assert!(is_coboundary(&t, &cochain(&t, &[0, 1, 2])).unwrap());
        assert!(!is_coboundary(&t, &cochain(&t, &[1])).unwrap());
        assert!(is_coboundary(&t, &Cochain1::zero(&t)).unwrap());
    }
}
