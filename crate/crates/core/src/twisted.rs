//! Combinatorial model of a twisted curve: dual graph, geometric genus per
//! component and stabilizer order per node.
//!
//! Two-torsion classes are written in split coordinates
//! `(h | component | q)`:
//! - `h` in H^1(Γ), the classes trivial on every component (spanning-forest
//!   cocycle basis of Γ);
//! - `component`, a symplectic basis of the two-torsion of each component,
//!   `2 g_i` coordinates per vertex;
//! - `q` in H_1(Γ'), where Γ' drops the odd-stabilizer edges (fundamental
//!   cycles of Γ').
//!
//! The model Weil form pairs `h` against `q` through the graph pairing,
//! pairs component blocks with the standard symplectic form, and is zero on
//! every other block.

use std::ops::Range;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeDeletion, EdgeSubset, MultiGraph};
use crate::homology::{gram_matrix, homology_basis, include_chain, Chain1, HomologyBasis};
use crate::linalg::{Gf2Matrix, Gf2Vec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistedCurveModel {
    graph: MultiGraph,
    vertex_genus: Vec<usize>,
    stabilizer_order: Vec<u64>,
    #[serde(skip)]
    derived: Arc<Derived>,
}

/// Quantities fixed by the graph and stabilizers, computed once.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Derived {
    graph_genus: usize,
    non_separating: EdgeSubset,
    kept: EdgeSubset,
    reduced: EdgeDeletion,
    reduced_genus: usize,
    h_basis: HomologyBasis,
    q_cycles: Vec<Chain1>,
    h_q_pairing: Gf2Matrix,
}

impl Derived {
    fn new(graph: &MultiGraph, stabilizer_order: &[u64]) -> Self {
        let kept: EdgeSubset = (0..graph.edge_count())
            .filter(|&e| stabilizer_order[e].is_multiple_of(2))
            .collect();
        let reduced = graph.restrict_to(&kept).expect("kept edges are in range");
        let h_basis = homology_basis(graph);
        let q_cycles: Vec<Chain1> = homology_basis(&reduced.graph)
            .cycles
            .iter()
            .map(|c| include_chain(graph, &reduced, c).expect("chain sized for Γ'"))
            .collect();
        let h_q_pairing = gram_matrix(&h_basis.cocycles, &q_cycles);
        Derived {
            graph_genus: h_basis.dimension(),
            non_separating: graph.non_separating_edges(),
            reduced_genus: q_cycles.len(),
            kept,
            reduced,
            h_basis,
            q_cycles,
            h_q_pairing,
        }
    }
}

impl TwistedCurveModel {
    pub fn new(
        graph: MultiGraph,
        vertex_genus: Vec<usize>,
        stabilizer_order: Vec<u64>,
    ) -> Result<Self> {
        if vertex_genus.len() != graph.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.vertex_count(),
                actual: vertex_genus.len(),
            });
        }
        if stabilizer_order.len() != graph.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.edge_count(),
                actual: stabilizer_order.len(),
            });
        }
        if let Some(edge) = stabilizer_order.iter().position(|&o| o == 0) {
            return Err(Error::ZeroStabilizer { edge });
        }
        let derived = Arc::new(Derived::new(&graph, &stabilizer_order));
        Ok(TwistedCurveModel {
            graph,
            vertex_genus,
            stabilizer_order,
            derived,
        })
    }

    /// Same graph and stabilizers, different component genera.
    pub fn with_vertex_genus(&self, vertex_genus: Vec<usize>) -> Result<Self> {
        if vertex_genus.len() != self.graph.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: self.graph.vertex_count(),
                actual: vertex_genus.len(),
            });
        }
        Ok(TwistedCurveModel {
            vertex_genus,
            ..self.clone()
        })
    }

    /// All components rational, every stabilizer of order 2.
    pub fn rational_even(graph: MultiGraph) -> Self {
        let (n, m) = (graph.vertex_count(), graph.edge_count());
        TwistedCurveModel::new(graph, vec![0; n], vec![2; m]).expect("sizes match")
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn vertex_genus(&self) -> &[usize] {
        &self.vertex_genus
    }

    pub fn stabilizer_order(&self) -> &[u64] {
        &self.stabilizer_order
    }

    pub fn component_genus_total(&self) -> usize {
        self.vertex_genus.iter().sum()
    }

    /// `Σ g_i + genus(Γ)`.
    pub fn arithmetic_genus(&self) -> usize {
        self.component_genus_total() + self.derived.graph_genus
    }

    /// Γ with the odd-stabilizer edges removed, and the surviving edges.
    pub fn reduced_graph(&self) -> (EdgeDeletion, EdgeSubset) {
        (self.derived.reduced.clone(), self.derived.kept.clone())
    }

    /// Genus of Γ'.
    pub fn reduced_genus(&self) -> usize {
        self.derived.reduced_genus
    }

    /// `log2 |Pic[2]| = 2g - g' + g''`.
    pub fn two_torsion_log2(&self) -> usize {
        2 * self.arithmetic_genus() - self.derived.graph_genus + self.reduced_genus()
    }

    pub fn two_torsion_order(&self) -> BigUint {
        BigUint::one() << self.two_torsion_log2()
    }

    /// Every non-separating edge has even stabilizer order.
    pub fn is_nondegenerate(&self) -> bool {
        self.derived
            .non_separating
            .iter()
            .all(|e| self.stabilizer_order[e].is_multiple_of(2))
    }

    pub fn layout(&self) -> BlockLayout {
        BlockLayout {
            h: self.derived.graph_genus,
            component: 2 * self.component_genus_total(),
            q: self.reduced_genus(),
        }
    }

    pub fn weil_form(&self) -> WeilFormModel {
        WeilFormModel::new(self)
    }
}

/// Sizes of the three coordinate blocks, in order h, component, q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockLayout {
    pub h: usize,
    pub component: usize,
    pub q: usize,
}

impl BlockLayout {
    pub fn dimension(&self) -> usize {
        self.h + self.component + self.q
    }

    pub fn h_range(&self) -> Range<usize> {
        0..self.h
    }

    pub fn component_range(&self) -> Range<usize> {
        self.h..self.h + self.component
    }

    pub fn q_range(&self) -> Range<usize> {
        self.h + self.component..self.dimension()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTorsionClass {
    pub h_part: Gf2Vec,
    pub component_part: Gf2Vec,
    pub q_part: Gf2Vec,
}

impl TwoTorsionClass {
    pub fn zero(layout: BlockLayout) -> Self {
        TwoTorsionClass {
            h_part: Gf2Vec::zeros(layout.h),
            component_part: Gf2Vec::zeros(layout.component),
            q_part: Gf2Vec::zeros(layout.q),
        }
    }

    pub fn from_flat(layout: BlockLayout, flat: &Gf2Vec) -> Result<Self> {
        if flat.len() != layout.dimension() {
            return Err(Error::DimensionMismatch {
                expected: layout.dimension(),
                actual: flat.len(),
            });
        }
        let take = |r: Range<usize>| Gf2Vec::from_bits(&r.map(|i| flat.get(i)).collect::<Vec<_>>());
        Ok(TwoTorsionClass {
            h_part: take(layout.h_range()),
            component_part: take(layout.component_range()),
            q_part: take(layout.q_range()),
        })
    }

    pub fn layout(&self) -> BlockLayout {
        BlockLayout {
            h: self.h_part.len(),
            component: self.component_part.len(),
            q: self.q_part.len(),
        }
    }

    pub fn flatten(&self) -> Gf2Vec {
        let bits: Vec<bool> = self
            .h_part
            .to_bits()
            .into_iter()
            .chain(self.component_part.to_bits())
            .chain(self.q_part.to_bits())
            .collect();
        Gf2Vec::from_bits(&bits)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilFormModel {
    pub layout: BlockLayout,
    pub gram: Gf2Matrix,
    derived: Arc<Derived>,
}

impl WeilFormModel {
    fn new(m: &TwistedCurveModel) -> Self {
        let layout = m.layout();
        let pairing = &m.derived.h_q_pairing;

        let mut gram = Gf2Matrix::zeros(layout.dimension(), layout.dimension());
        let q0 = layout.q_range().start;
        for i in 0..layout.h {
            for j in 0..layout.q {
                if pairing.get(i, j) {
                    gram.set(i, q0 + j, true);
                    gram.set(q0 + j, i, true);
                }
            }
        }
        // Standard symplectic block [[0, 1], [1, 0]] for each handle.
        let mut offset = layout.component_range().start;
        for &g in &m.vertex_genus {
            for k in 0..g {
                let (a, b) = (offset + 2 * k, offset + 2 * k + 1);
                gram.set(a, b, true);
                gram.set(b, a, true);
            }
            offset += 2 * g;
        }
        WeilFormModel {
            layout,
            gram,
            derived: Arc::clone(&m.derived),
        }
    }

    /// Cocycle basis of H^1(Γ) indexing the h block.
    pub fn h_basis(&self) -> &HomologyBasis {
        &self.derived.h_basis
    }

    /// Fundamental cycles of Γ' pushed into Γ, indexing the q block.
    pub fn q_cycles(&self) -> &[Chain1] {
        &self.derived.q_cycles
    }

    /// The (h × q) block.
    pub fn h_q_block(&self) -> Gf2Matrix {
        let mut b = Gf2Matrix::zeros(self.layout.h, self.layout.q);
        let q0 = self.layout.q_range().start;
        for i in 0..self.layout.h {
            for j in 0..self.layout.q {
                b.set(i, j, self.gram.get(i, q0 + j));
            }
        }
        b
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.is_invertible()
    }

    /// `x^T G y` over GF(2).
    pub fn pair_classes(&self, x: &TwoTorsionClass, y: &TwoTorsionClass) -> Result<bool> {
        for c in [x, y] {
            let got = c.layout();
            if got != self.layout {
                return Err(Error::DimensionMismatch {
                    expected: self.layout.dimension(),
                    actual: got.dimension(),
                });
            }
        }
        self.gram.bilinear(&x.flatten(), &y.flatten())
    }
}

/// Sum over vertices of the standard symplectic pairing on each vertex's
/// `2 g_i` coordinates.
pub fn coarse_pairing(m: &TwistedCurveModel, x: &Gf2Vec, y: &Gf2Vec) -> Result<bool> {
    let n = 2 * m.component_genus_total();
    for v in [x, y] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: v.len(),
            });
        }
    }
    let mut acc = false;
    for k in 0..n / 2 {
        let (a, b) = (2 * k, 2 * k + 1);
        acc ^= (x.get(a) && y.get(b)) ^ (x.get(b) && y.get(a));
    }
    Ok(acc)
}

pub fn pair_classes(w: &WeilFormModel, x: &TwoTorsionClass, y: &TwoTorsionClass) -> Result<bool> {
    w.pair_classes(x, y)
}
