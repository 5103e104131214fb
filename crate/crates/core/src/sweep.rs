//! Exhaustive small-instance sweeps over enumerated multigraphs.
//!
//! Each sweep checks one family of properties on every instance and collects
//! counterexamples. Instances are independent, so sweeps fan out over graphs
//! with rayon when the `parallel` feature is enabled; [`Execution`] selects
//! the strategy at run time and falls back to sequential without the feature.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::cover::{build_double_cover, pairing_via_cover};
use crate::graph::MultiGraph;
use crate::homology::{
    gram_matrix, graph_pairing, homology_basis, is_cycle, is_perfect_pairing, is_simple_cycle,
    Chain1, Cochain1,
};
use crate::linalg::{Gf2Matrix, Gf2Vec, SmithForm};
use crate::tropical::{
    critical_group, dhar_reduce, divisors_equivalent, in_image_with, laplacian,
    spanning_tree_count, verify_torsion_on_subdivision, Divisor, SubdivisionMode,
};
use crate::twisted::TwistedCurveModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Maps `f` over `items` and concatenates the results in item order.
    pub fn flat_map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Vec<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().flat_map_iter(f).collect()
            }
            _ => items.iter().flat_map(f).collect(),
        }
    }

    pub fn sum<T, F>(self, items: &[T], f: F) -> u64
    where
        T: Sync,
        F: Fn(&T) -> u64 + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).sum()
            }
            _ => items.iter().map(f).sum(),
        }
    }
}

/// Connected multigraphs (loops and parallel edges allowed) with at most
/// `max_edges` edges and, optionally, at most `max_vertices` vertices.
///
/// Edge lists are non-decreasing sequences of endpoint pairs `u <= v`, and
/// vertices must first appear in label order. Every connected multigraph has
/// such a labeling (breadth-first order), so each isomorphism class is
/// represented at least once; some classes appear several times.
pub fn enumerate_connected(max_edges: usize, max_vertices: Option<usize>) -> Vec<MultiGraph> {
    let mut out = Vec::new();
    for m in 0..=max_edges {
        let top = max_vertices.map_or(m + 1, |cap| cap.min(m + 1));
        for n in 1..=top {
            if m == 0 {
                out.push(MultiGraph::empty(1));
                continue;
            }
            let slots: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
            let mut edges = Vec::with_capacity(m);
            extend(&slots, n, m, 0, 0, &mut edges, &mut out);
        }
    }
    out
}

fn extend(
    slots: &[(usize, usize)],
    n: usize,
    m: usize,
    start: usize,
    seen: usize,
    edges: &mut Vec<(usize, usize)>,
    out: &mut Vec<MultiGraph>,
) {
    if edges.len() == m {
        if seen == n {
            let g = MultiGraph::new(n, edges.clone()).expect("slots are in range");
            if g.is_connected() {
                out.push(g);
            }
        }
        return;
    }
    // Vertices not yet seen cannot all be introduced by the remaining edges.
    if n - seen > 2 * (m - edges.len()) {
        return;
    }
    for (i, &(u, v)) in slots.iter().enumerate().skip(start) {
        let mut next = seen;
        for w in if u == v { vec![u] } else { vec![u, v] } {
            if w == next {
                next += 1;
            } else if w > next {
                next = usize::MAX;
                break;
            }
        }
        if next == usize::MAX {
            // Slots are sorted, so once u is out of order nothing later fits.
            if u > seen {
                break;
            }
            continue;
        }
        edges.push((u, v));
        extend(slots, n, m, i, next, edges, out);
        edges.pop();
    }
}

/// Every edge subset of `g` that is a single simple cycle.
pub fn simple_cycles(g: &MultiGraph) -> Vec<Chain1> {
    let m = g.edge_count();
    assert!(m < 32, "subset enumeration is for small graphs");
    (1u32..1 << m)
        .map(|mask| Chain1::from_vec(g, mask_vec(m, mask)).expect("sized for g"))
        .filter(|c| is_simple_cycle(g, c))
        .collect()
}

fn mask_vec(len: usize, mask: u32) -> Gf2Vec {
    Gf2Vec::from_support(len, (0..len).filter(|i| mask >> i & 1 == 1))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Counterexample {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub detail: String,
}

impl Counterexample {
    fn new(g: &MultiGraph, detail: String) -> Self {
        Counterexample {
            vertices: g.vertex_count(),
            edges: g.edges().to_vec(),
            detail,
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "vertices={} edges={:?}: {}",
            self.vertices, self.edges, self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepOutcome {
    pub name: String,
    pub graphs: usize,
    pub instances: u64,
    /// Sorted, so the outcome does not depend on scheduling.
    pub failures: Vec<Counterexample>,
}

impl SweepOutcome {
    fn new(name: &str, graphs: usize, instances: u64, mut failures: Vec<Counterexample>) -> Self {
        failures.sort();
        SweepOutcome {
            name: name.to_string(),
            graphs,
            instances,
            failures,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Faults {
    /// Flip the (0, 0) bit of every nonempty pairing Gram matrix.
    pub flip_gram_bit: bool,
}

/// The H^1 x H_1 Gram matrix on the canonical bases is invertible.
pub fn perfect_pairing_sweep(
    graphs: &[MultiGraph],
    exec: Execution,
    faults: Faults,
) -> SweepOutcome {
    let failures = exec.flat_map(graphs, |g| {
        let mut check = is_perfect_pairing(g);
        if faults.flip_gram_bit && check.gram.row_count() > 0 {
            check.gram.flip(0, 0);
            check.perfect = check.gram.is_invertible();
        }
        if check.perfect && check.gram.row_count() == g.genus() {
            vec![]
        } else {
            vec![Counterexample::new(
                g,
                format!("gram {} is not invertible", check.gram),
            )]
        }
    });
    SweepOutcome::new(
        "perfect-pairing",
        graphs.len(),
        graphs.len() as u64,
        failures,
    )
}

/// For every cochain and every simple cycle, the cover pairing equals the
/// graph pairing, and the lift is one 2l-cycle or two l-cycles swapped by
/// the involution.
pub fn cover_equivalence_sweep(graphs: &[MultiGraph], exec: Execution) -> SweepOutcome {
    let instances = exec.sum(graphs, |g| {
        (simple_cycles(g).len() as u64) << g.edge_count()
    });
    let failures = exec.flat_map(graphs, |g| {
        let cycles = simple_cycles(g);
        let m = g.edge_count();
        let mut bad = Vec::new();
        for mask in 0u32..1 << m {
            let gamma = Cochain1::from_vec(g, mask_vec(m, mask)).expect("sized for g");
            let cover = build_double_cover(g, &gamma).expect("sized for g");
            for alpha in &cycles {
                let expected = graph_pairing(g, &gamma, alpha).expect("simple cycles are cycles");
                let via_cover = pairing_via_cover(g, &gamma, alpha).expect("simple cycle");
                let lift = cover.lift_cycle(alpha).expect("simple cycle");
                let l = lift.base_length;
                let shape_ok = match lift.lengths().as_slice() {
                    [one] => *one == 2 * l,
                    [a, b] => *a == l && *b == l,
                    _ => false,
                };
                let swap_ok = lift.components.iter().all(|comp| {
                    let image: crate::graph::EdgeSubset =
                        comp.iter().map(|f| cover.involution_edge(f)).collect();
                    match lift.component_count() {
                        1 => image == *comp,
                        _ => lift
                            .components
                            .iter()
                            .any(|other| other != comp && *other == image),
                    }
                });
                if via_cover != expected || !shape_ok || !swap_ok {
                    bad.push(Counterexample::new(
                        g,
                        format!(
                            "gamma={:?} alpha={:?}: cover={} graph={} lengths={:?} swap_ok={}",
                            gamma.support(),
                            alpha.support(),
                            via_cover as u8,
                            expected as u8,
                            lift.lengths(),
                            swap_ok
                        ),
                    ));
                }
            }
        }
        bad
    });
    SweepOutcome::new("cover-equivalence", graphs.len(), instances, failures)
}

/// Stabilizer orders tried by [`model_sweep`].
pub const STABILIZER_ORDERS: [u64; 4] = [1, 2, 3, 4];

fn q_cycles_independent(cycles: &[Chain1]) -> bool {
    let rows: Vec<Gf2Vec> = cycles.iter().map(|c| c.bits().clone()).collect();
    match rows.first() {
        None => true,
        Some(first) => Gf2Matrix::from_rows(first.len(), rows.clone())
            .map(|mat| mat.rank() == rows.len())
            .unwrap_or(false),
    }
}

fn digits(mut x: usize, base: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = x % base;
            x /= base;
            d
        })
        .collect()
}

/// Torsion-order formula, the even-order criterion, non-degeneracy of the
/// model Weil form, alternation, isotropy of H and the h x q block identity,
/// over all models on `graphs` with vertex genera up to `max_vertex_genus`
/// and stabilizer orders in [`STABILIZER_ORDERS`].
pub fn model_sweep(
    graphs: &[MultiGraph],
    max_vertex_genus: usize,
    exec: Execution,
) -> SweepOutcome {
    let instances = exec.sum(graphs, |g| {
        ((max_vertex_genus + 1).pow(g.vertex_count() as u32)
            * STABILIZER_ORDERS.len().pow(g.edge_count() as u32)) as u64
    });
    let failures = exec.flat_map(graphs, |g| {
        let (n, m) = (g.vertex_count(), g.edge_count());
        let nonsep = g.non_separating_edges();
        let h_cocycles = homology_basis(g).cocycles;
        let mut bad = Vec::new();
        for oi in 0..STABILIZER_ORDERS.len().pow(m as u32) {
            let orders: Vec<u64> = digits(oi, STABILIZER_ORDERS.len(), m)
                .into_iter()
                .map(|d| STABILIZER_ORDERS[d])
                .collect();
            let base =
                TwistedCurveModel::new(g.clone(), vec![0; n], orders.clone()).expect("sizes match");
            let w = base.weil_form();
            let q_ok = w.q_cycles().iter().all(|c| {
                is_cycle(g, c).unwrap_or(false)
                    && c.support().iter().all(|&e| orders[e].is_multiple_of(2))
            }) && q_cycles_independent(w.q_cycles());
            if !q_ok || w.h_q_block() != gram_matrix(&h_cocycles, w.q_cycles()) {
                bad.push(Counterexample::new(
                    g,
                    format!("orders={orders:?}: h x q block != graph pairing"),
                ));
            }
            let even = nonsep.iter().all(|e| orders[e].is_multiple_of(2));
            let g1 = g.genus();
            for gi in 0..(max_vertex_genus + 1).pow(n as u32) {
                let genera = digits(gi, max_vertex_genus + 1, n);
                let model = base.with_vertex_genus(genera).expect("sizes match");
                let mut problems = Vec::new();
                let genus = model.arithmetic_genus();
                let order = model.two_torsion_order();
                if order != BigUint::one() << (2 * genus - g1 + model.reduced_genus()) {
                    problems.push("order formula");
                }
                let full = order == BigUint::one() << (2 * genus);
                if even != full || even != model.is_nondegenerate() {
                    problems.push("even-order criterion");
                }
                let w = model.weil_form();
                if w.layout.dimension() != model.two_torsion_log2() {
                    problems.push("log2 order != dimension");
                }
                if !w.gram.is_alternating() {
                    problems.push("not alternating");
                }
                if w.is_nondegenerate() != even {
                    problems.push("invertibility != criterion");
                }
                let h = w.layout.h_range();
                if h.clone().any(|i| h.clone().any(|j| w.gram.get(i, j))) {
                    problems.push("H not isotropic");
                }
                if !problems.is_empty() {
                    bad.push(Counterexample::new(
                        g,
                        format!(
                            "genera={:?} orders={:?}: {}",
                            model.vertex_genus(),
                            model.stabilizer_order(),
                            problems.join(", ")
                        ),
                    ));
                }
            }
        }
        bad
    });
    SweepOutcome::new("model", graphs.len(), instances, failures)
}

/// r-torsion of the critical group of the r-subdivision has order
/// `r^genus`; generators have degree 0, sit on the regular vertices, and
/// `r` times each is principal.
pub fn tropical_sweep(
    graphs: &[MultiGraph],
    rs: &[u64],
    modes: &[SubdivisionMode],
    exec: Execution,
) -> SweepOutcome {
    let cases: Vec<(&MultiGraph, u64, SubdivisionMode)> = graphs
        .iter()
        .flat_map(|g| {
            rs.iter()
                .flat_map(move |&r| modes.iter().map(move |&mode| (g, r, mode)))
        })
        .collect();
    let failures = exec.flat_map(&cases, |&(g, r, mode)| {
        let report = match verify_torsion_on_subdivision(g, r, mode) {
            Ok(rep) => rep,
            Err(e) => return vec![Counterexample::new(g, format!("r={r} {mode:?}: error {e}"))],
        };
        let mut problems = Vec::new();
        if !report.verdict {
            problems.push(format!(
                "count {} != expected {}",
                report.torsion_count, report.expected
            ));
        }
        if report.subdivided.child.genus() != g.genus() {
            problems.push("subdivision changed genus".to_string());
        }
        let child = &report.subdivided.child;
        let regular = report.subdivided.regular_vertices();
        for gen in &report.generators {
            if gen.degree() != 0 {
                problems.push(format!("generator degree {}", gen.degree()));
            }
            if gen.support().iter().any(|(v, _)| !regular.contains(v)) {
                problems.push("generator off the regular vertices".to_string());
            }
            let principal = gen
                .scaled(r as i64)
                .and_then(|k| divisors_equivalent(child, &k, &Divisor::zero(child), 0));
            if principal != Ok(true) {
                problems.push(format!("r * generator not principal: {principal:?}"));
            }
        }
        if problems.is_empty() {
            vec![]
        } else {
            vec![Counterexample::new(
                g,
                format!("r={r} {mode:?}: {}", problems.join("; ")),
            )]
        }
    });
    SweepOutcome::new(
        "tropical-torsion",
        graphs.len(),
        cases.len() as u64,
        failures,
    )
}

/// Degree-0 divisors with coefficients in `[-bound, bound]`.
pub fn degree_zero_divisors(g: &MultiGraph, bound: i64) -> Vec<Divisor> {
    let n = g.vertex_count();
    let width = (2 * bound + 1) as usize;
    (0..width.pow(n as u32))
        .map(|x| {
            digits(x, width, n)
                .into_iter()
                .map(|d| d as i64 - bound)
                .collect::<Vec<_>>()
        })
        .filter(|c| c.iter().sum::<i64>() == 0)
        .map(|c| Divisor::new(g, c).expect("sized for g"))
        .collect()
}

/// Dhar-reduction equivalence agrees with membership of the difference in
/// the integer image of the Laplacian, on all pairs of degree-0 divisors
/// with coefficients in `[-bound, bound]`.
pub fn oracle_sweep(graphs: &[MultiGraph], bound: i64, exec: Execution) -> SweepOutcome {
    let instances = exec.sum(graphs, |g| {
        (degree_zero_divisors(g, bound).len() as u64).pow(2)
    });
    let failures = exec.flat_map(graphs, |g| {
        let divisors = degree_zero_divisors(g, bound);
        let reduced: Vec<Divisor> = divisors
            .iter()
            .map(|d| dhar_reduce(g, d, 0).expect("connected"))
            .collect();
        let snf = SmithForm::compute(&laplacian(g));
        let mut bad = Vec::new();
        for (i, a) in divisors.iter().enumerate() {
            for (j, b) in divisors.iter().enumerate() {
                let by_dhar = reduced[i] == reduced[j];
                let by_lattice = in_image_with(&snf, &a.sub(b).expect("same size")).expect("sized");
                if by_dhar != by_lattice {
                    bad.push(Counterexample::new(
                        g,
                        format!(
                            "{:?} vs {:?}: dhar={by_dhar} lattice={by_lattice}",
                            a.coefficients(),
                            b.coefficients()
                        ),
                    ));
                }
            }
        }
        bad
    });
    SweepOutcome::new("dhar-oracle", graphs.len(), instances, failures)
}

/// Order of the critical group equals the spanning-tree count.
pub fn kirchhoff_sweep(graphs: &[MultiGraph], exec: Execution) -> SweepOutcome {
    let failures = exec.flat_map(graphs, |g| {
        let order = critical_group(g, 0).expect("connected").order();
        let trees = spanning_tree_count(g).expect("connected");
        if order == trees {
            vec![]
        } else {
            vec![Counterexample::new(
                g,
                format!("group order {order} != tree count {trees}"),
            )]
        }
    });
    SweepOutcome::new("kirchhoff", graphs.len(), graphs.len() as u64, failures)
}
