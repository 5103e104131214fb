//! Finite undirected multigraphs with loops and parallel edges.
//!
//! Edges are identified by their position in the edge list, so two edges with
//! the same endpoints are distinct objects. Every higher-level module addresses
//! edges by index.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            for index in [u, v] {
                if index >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        index,
                        vertex_count,
                    });
                }
            }
        }
        Ok(MultiGraph {
            vertex_count,
            edges,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        MultiGraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let (u, v) = self.edges[edge];
        u == v
    }

    pub fn check_edge(&self, edge: usize) -> Result<()> {
        if edge < self.edges.len() {
            Ok(())
        } else {
            Err(Error::EdgeOutOfRange {
                index: edge,
                edge_count: self.edges.len(),
            })
        }
    }

    pub fn check_vertex(&self, vertex: usize) -> Result<()> {
        if vertex < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: vertex,
                vertex_count: self.vertex_count,
            })
        }
    }

    /// Incidence lists: for each vertex, the `(edge, other endpoint)` pairs.
    /// A loop appears twice in its vertex's list.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push((e, v));
            inc[v].push((e, u));
        }
        inc
    }

    /// Component label per vertex, labels numbered by first vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        self.component_labels_without(None)
    }

    fn component_labels_without(&self, skip: Option<usize>) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertex_count);
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if Some(e) != skip {
                uf.union(u, v);
            }
        }
        let mut root_label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        (0..self.vertex_count)
            .map(|v| {
                let r = uf.find(v);
                if root_label[r] == usize::MAX {
                    root_label[r] = next;
                    next += 1;
                }
                root_label[r]
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_count_without(None)
    }

    fn component_count_without(&self, skip: Option<usize>) -> usize {
        self.component_labels_without(skip)
            .into_iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    /// A graph with no vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// `|E| - |V| + #components`, the dimension of the cycle space.
    pub fn genus(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertex_count
    }

    /// Edges whose deletion does not increase the number of components.
    /// Loops are always non-separating.
    pub fn non_separating_edges(&self) -> EdgeSubset {
        let base = self.component_count();
        let members = (0..self.edges.len())
            .filter(|&e| self.is_loop(e) || self.component_count_without(Some(e)) == base)
            .collect();
        EdgeSubset { members }
    }

    /// Greedy spanning forest: edges are scanned in index order and kept
    /// whenever they join two different trees.
    pub fn spanning_forest(&self) -> EdgeSubset {
        let mut uf = UnionFind::new(self.vertex_count);
        let members = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(_, &(u, v))| uf.union(u, v))
            .map(|(e, _)| e)
            .collect();
        EdgeSubset { members }
    }

    pub fn delete_edges(&self, remove: &EdgeSubset) -> Result<EdgeDeletion> {
        remove.validate(self)?;
        let mut edges = Vec::new();
        let mut parent_edge = Vec::new();
        for (e, &uv) in self.edges.iter().enumerate() {
            if !remove.contains(e) {
                edges.push(uv);
                parent_edge.push(e);
            }
        }
        Ok(EdgeDeletion {
            graph: MultiGraph {
                vertex_count: self.vertex_count,
                edges,
            },
            parent_edge,
        })
    }

    /// Keeps exactly the edges in `keep`.
    pub fn restrict_to(&self, keep: &EdgeSubset) -> Result<EdgeDeletion> {
        keep.validate(self)?;
        self.delete_edges(&keep.complement(self.edge_count()))
    }

    /// Replaces each edge in `which` by a path of `r` edges through `r - 1`
    /// fresh vertices. Original vertices keep their indices; interior vertices
    /// are appended in edge order.
    pub fn subdivide(&self, r: usize, which: &EdgeSubset) -> Result<SubdivisionMap> {
        if r == 0 {
            return Err(Error::ZeroSubdivision);
        }
        which.validate(self)?;
        let mut vertex_count = self.vertex_count;
        let mut edges = Vec::new();
        let mut edge_paths = Vec::with_capacity(self.edges.len());
        let mut interior_vertices = Vec::with_capacity(self.edges.len());
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let factor = if which.contains(e) { r } else { 1 };
            let interior: Vec<usize> = (vertex_count..vertex_count + factor - 1).collect();
            vertex_count += factor - 1;
            let mut stops = Vec::with_capacity(factor + 1);
            stops.push(u);
            stops.extend(interior.iter().copied());
            stops.push(v);
            let path = stops
                .windows(2)
                .map(|w| {
                    edges.push((w[0], w[1]));
                    edges.len() - 1
                })
                .collect();
            edge_paths.push(path);
            interior_vertices.push(interior);
        }
        Ok(SubdivisionMap {
            parent: self.clone(),
            child: MultiGraph {
                vertex_count,
                edges,
            },
            original_vertices: (0..self.vertex_count).collect(),
            edge_paths,
            interior_vertices,
        })
    }

    pub fn all_edges(&self) -> EdgeSubset {
        EdgeSubset {
            members: (0..self.edges.len()).collect(),
        }
    }
}

/// A set of edge indices, kept sorted and deduplicated.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeSubset {
    members: Vec<usize>,
}

impl EdgeSubset {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = members.into_iter().collect();
        EdgeSubset {
            members: set.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        EdgeSubset::default()
    }

    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        match self.members.last() {
            Some(&e) => g.check_edge(e),
            None => Ok(()),
        }
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.members.binary_search(&edge).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn complement(&self, edge_count: usize) -> EdgeSubset {
        EdgeSubset {
            members: (0..edge_count).filter(|&e| !self.contains(e)).collect(),
        }
    }
}

impl FromIterator<usize> for EdgeSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        EdgeSubset::new(iter)
    }
}

/// Result of deleting edges: the smaller graph plus, for each surviving edge,
/// its index in the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDeletion {
    pub graph: MultiGraph,
    pub parent_edge: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionMap {
    pub parent: MultiGraph,
    pub child: MultiGraph,
    /// Child indices of the parent's vertices (the identity prefix).
    pub original_vertices: Vec<usize>,
    /// For each parent edge, the child edges forming its path, in order from
    /// the first endpoint to the second.
    pub edge_paths: Vec<Vec<usize>>,
    /// For each parent edge, the fresh interior vertices along its path.
    pub interior_vertices: Vec<Vec<usize>>,
}

impl SubdivisionMap {
    /// Original vertices together with every interior subdivision vertex.
    pub fn regular_vertices(&self) -> BTreeSet<usize> {
        self.original_vertices
            .iter()
            .copied()
            .chain(self.interior_vertices.iter().flatten().copied())
            .collect()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when `a` and `b` were in different sets.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Small named graphs.
pub mod named {
    use super::MultiGraph;

    pub fn path(n: usize) -> MultiGraph {
        MultiGraph::new(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
    }

    pub fn cycle(n: usize) -> MultiGraph {
        assert!(n >= 1);
        MultiGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    pub fn single_loop() -> MultiGraph {
        MultiGraph::new(1, vec![(0, 0)]).unwrap()
    }

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> MultiGraph {
        MultiGraph::new(2, vec![(0, 1); 3]).unwrap()
    }

    /// Two loops joined by a bridge; edges are loop at 0, bridge, loop at 1.
    pub fn dumbbell() -> MultiGraph {
        MultiGraph::new(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn genus_examples() {
        assert_eq!(path(3).genus(), 0);
        assert_eq!(single_loop().genus(), 1);
        assert_eq!(theta().genus(), 2);
        assert_eq!(dumbbell().genus(), 2);
        assert_eq!(MultiGraph::empty(3).genus(), 0);
    }

    #[test]
    fn rejects_bad_endpoints() {
        assert_eq!(
            MultiGraph::new(2, vec![(0, 2)]),
            Err(Error::VertexOutOfRange {
                index: 2,
                vertex_count: 2
            })
        );
    }

    #[test]
    fn non_separating_examples() {
        assert_eq!(dumbbell().non_separating_edges(), EdgeSubset::new([0, 2]));
        assert_eq!(theta().non_separating_edges(), EdgeSubset::new([0, 1, 2]));
        assert!(path(4).non_separating_edges().is_empty());
    }

    #[test]
    fn spanning_forest_examples() {
        assert_eq!(theta().spanning_forest(), EdgeSubset::new([0]));
        assert_eq!(path(4).spanning_forest(), EdgeSubset::new([0, 1, 2]));
        assert!(single_loop().spanning_forest().is_empty());
    }

    #[test]
    fn delete_edges_examples() {
        let d = theta().delete_edges(&EdgeSubset::new([1])).unwrap();
        assert_eq!(d.graph.vertex_count(), 2);
        assert_eq!(d.graph.edge_count(), 2);
        assert_eq!(d.graph.genus(), 1);
        assert_eq!(d.parent_edge, vec![0, 2]);

        let same = dumbbell().delete_edges(&EdgeSubset::empty()).unwrap();
        assert_eq!(same.graph, dumbbell());
        assert_eq!(same.parent_edge, vec![0, 1, 2]);

        let split = dumbbell().delete_edges(&EdgeSubset::new([1])).unwrap();
        assert_eq!(split.graph.component_count(), 2);
        assert_eq!(split.graph.genus(), 2);

        assert_eq!(
            theta().delete_edges(&EdgeSubset::new([3])),
            Err(Error::EdgeOutOfRange {
                index: 3,
                edge_count: 3
            })
        );
    }

    #[test]
    fn subdivide_examples() {
        let s = single_loop()
            .subdivide(2, &single_loop().all_edges())
            .unwrap();
        assert_eq!(s.child, MultiGraph::new(2, vec![(0, 1), (1, 0)]).unwrap());
        assert_eq!(s.edge_paths, vec![vec![0, 1]]);

        let g = dumbbell();
        let id = g.subdivide(1, &g.all_edges()).unwrap();
        assert_eq!(id.child, g);

        let t = theta().subdivide(3, &theta().all_edges()).unwrap();
        assert_eq!(t.child.vertex_count(), 8);
        assert_eq!(t.child.edge_count(), 9);
        assert_eq!(t.child.genus(), 2);
        assert_eq!(t.regular_vertices().len(), 8);

        assert_eq!(
            theta().subdivide(0, &EdgeSubset::empty()),
            Err(Error::ZeroSubdivision)
        );
    }

    #[test]
    fn subdivision_paths_are_simple_with_degree_two_interiors() {
        let g = dumbbell();
        let s = g.subdivide(4, &EdgeSubset::new([0, 1])).unwrap();
        let inc = s.child.incidence();
        for (e, path) in s.edge_paths.iter().enumerate() {
            let expected = if e < 2 { 4 } else { 1 };
            assert_eq!(path.len(), expected);
            for &w in &s.interior_vertices[e] {
                assert_eq!(inc[w].len(), 2);
                assert!(!s.original_vertices.contains(&w));
            }
        }
    }
}
