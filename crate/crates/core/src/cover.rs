//! The 2:1 graph cover classified by an edge cochain, and the cycle-lifting
//! realization of the graph pairing.
//!
//! Total vertices are numbered sheet `a` first: base vertex `v` lifts to `v`
//! (sheet a) and `n + v` (sheet b). Base edge `e` lifts to `e` (starting on
//! sheet a) and `m + e` (starting on sheet b). An edge with `γ(e) = 1`
//! crosses sheets.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, MultiGraph, UnionFind};
use crate::homology::{decompose_cycles, is_simple_cycle, Chain1, Cochain1};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sheet {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCover {
    pub base: MultiGraph,
    pub total: MultiGraph,
    pub classifying_cochain: Cochain1,
}

impl DoubleCover {
    pub fn build(base: &MultiGraph, gamma: &Cochain1) -> Result<Self> {
        if gamma.len() != base.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: base.edge_count(),
                actual: gamma.len(),
            });
        }
        let n = base.vertex_count();
        let mut edges = Vec::with_capacity(2 * base.edge_count());
        for sheet in [Sheet::A, Sheet::B] {
            let (here, there) = match sheet {
                Sheet::A => (0, n),
                Sheet::B => (n, 0),
            };
            for (e, &(u, v)) in base.edges().iter().enumerate() {
                let target = if gamma.get(e) { there } else { here };
                edges.push((u + here, v + target));
            }
        }
        Ok(DoubleCover {
            base: base.clone(),
            total: MultiGraph::new(2 * n, edges)?,
            classifying_cochain: gamma.clone(),
        })
    }

    pub fn project_vertex(&self, x: usize) -> usize {
        x % self.base.vertex_count()
    }

    pub fn project_edge(&self, e: usize) -> usize {
        e % self.base.edge_count()
    }

    pub fn vertex_sheet(&self, x: usize) -> Sheet {
        if x < self.base.vertex_count() {
            Sheet::A
        } else {
            Sheet::B
        }
    }

    pub fn lift_vertex(&self, v: usize, sheet: Sheet) -> usize {
        match sheet {
            Sheet::A => v,
            Sheet::B => v + self.base.vertex_count(),
        }
    }

    pub fn lift_edge(&self, e: usize, sheet: Sheet) -> usize {
        match sheet {
            Sheet::A => e,
            Sheet::B => e + self.base.edge_count(),
        }
    }

    /// The sheet swap on vertices.
    pub fn involution_vertex(&self, x: usize) -> usize {
        let n = self.base.vertex_count();
        if x < n {
            x + n
        } else {
            x - n
        }
    }

    /// The sheet swap on edges.
    pub fn involution_edge(&self, e: usize) -> usize {
        let m = self.base.edge_count();
        if e < m {
            e + m
        } else {
            e - m
        }
    }

    pub fn is_crossing(&self, total_edge: usize) -> bool {
        self.classifying_cochain.get(self.project_edge(total_edge))
    }

    /// Connectivity of the total graph. The base must be connected.
    pub fn is_connected(&self) -> Result<bool> {
        if !self.base.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.total.is_connected())
    }

    /// Preimage of a simple cycle, split into connected components.
    pub fn lift_cycle(&self, alpha: &Chain1) -> Result<LiftedCycle> {
        if alpha.len() != self.base.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: self.base.edge_count(),
                actual: alpha.len(),
            });
        }
        if !is_simple_cycle(&self.base, alpha) {
            return Err(Error::NotASimpleCycle);
        }
        let preimage: Vec<usize> = alpha
            .support()
            .into_iter()
            .flat_map(|e| [self.lift_edge(e, Sheet::A), self.lift_edge(e, Sheet::B)])
            .collect();
        let mut uf = UnionFind::new(self.total.vertex_count());
        for &f in &preimage {
            let (x, y) = self.total.endpoints(f);
            uf.union(x, y);
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &f in &preimage {
            let r = uf.find(self.total.endpoints(f).0);
            match roots.iter().position(|&x| x == r) {
                Some(i) => groups[i].push(f),
                None => {
                    roots.push(r);
                    groups.push(vec![f]);
                }
            }
        }
        let mut components: Vec<EdgeSubset> = groups.into_iter().map(EdgeSubset::new).collect();
        components.sort_by_key(|c| c.as_slice().first().copied());
        Ok(LiftedCycle {
            base_length: alpha.support().len(),
            components,
        })
    }
}

pub fn build_double_cover(g: &MultiGraph, gamma: &Cochain1) -> Result<DoubleCover> {
    DoubleCover::build(g, gamma)
}

pub fn cover_is_connected(c: &DoubleCover) -> Result<bool> {
    c.is_connected()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedCycle {
    /// Length `l` of the base cycle.
    pub base_length: usize,
    /// Edge sets (in the total graph) of the connected pieces of the preimage.
    pub components: Vec<EdgeSubset>,
}

impl LiftedCycle {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.components.iter().map(EdgeSubset::len).collect()
    }
}

pub fn lift_cycle(c: &DoubleCover, alpha: &Chain1) -> Result<LiftedCycle> {
    c.lift_cycle(alpha)
}

/// 1 when the lift of the simple cycle `alpha` is a single connected cycle,
/// 0 when it falls apart into two.
pub fn pairing_via_cover(g: &MultiGraph, gamma: &Cochain1, alpha: &Chain1) -> Result<bool> {
    let cover = DoubleCover::build(g, gamma)?;
    Ok(cover.lift_cycle(alpha)?.component_count() == 1)
}

/// Extends [`pairing_via_cover`] to an arbitrary cycle by splitting it into
/// simple cycles and adding the results.
pub fn pairing_via_cover_on_class(
    g: &MultiGraph,
    gamma: &Cochain1,
    alpha: &Chain1,
) -> Result<bool> {
    let cover = DoubleCover::build(g, gamma)?;
    decompose_cycles(g, alpha)?
        .iter()
        .try_fold(false, |acc, piece| {
            Ok(acc ^ (cover.lift_cycle(piece)?.component_count() == 1))
        })
}

/// Graphviz rendering of the total graph. Vertices are `v<i>_a` / `v<i>_b`;
/// sheet-crossing edges are dashed and red.
pub fn to_dot(c: &DoubleCover) -> String {
    let mut out = String::from("graph cover {\n");
    let name = |x: usize| {
        let sheet = match c.vertex_sheet(x) {
            Sheet::A => 'a',
            Sheet::B => 'b',
        };
        format!("v{}_{}", c.project_vertex(x), sheet)
    };
    for x in 0..c.total.vertex_count() {
        let color = match c.vertex_sheet(x) {
            Sheet::A => "lightblue",
            Sheet::B => "lightgoldenrod",
        };
        let _ = writeln!(out, "  {} [style=filled, fillcolor={}];", name(x), color);
    }
    for (f, &(x, y)) in c.total.edges().iter().enumerate() {
        let style = if c.is_crossing(f) {
            " style=dashed, color=red,"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  {} -- {} [{} label=\"e{}\"];",
            name(x),
            name(y),
            style,
            c.project_edge(f)
        );
    }
    out.push_str("}\n");
    out
}
