//! Chip-firing on graphs with unit edge lengths.
//!
//! Divisor classes of degree 0 on the vertices of a graph form its critical
//! group, the cokernel of the reduced Laplacian. On the r-subdivision of a
//! graph these are exactly the classes of the metric graph supported on the
//! (1/r)-lattice, so the r-torsion of the metric Jacobian can be counted
//! from the Smith normal form of the subdivision's reduced Laplacian.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, MultiGraph, SubdivisionMap};
use crate::linalg::{IntMatrix, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Divisor {
    coefficients: Vec<i64>,
}

impl Divisor {
    pub fn new(g: &MultiGraph, coefficients: Vec<i64>) -> Result<Self> {
        if coefficients.len() != g.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: g.vertex_count(),
                actual: coefficients.len(),
            });
        }
        Ok(Divisor { coefficients })
    }

    pub fn zero(g: &MultiGraph) -> Self {
        Divisor {
            coefficients: vec![0; g.vertex_count()],
        }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn degree(&self) -> i64 {
        self.coefficients.iter().sum()
    }

    /// Nonzero `(vertex, coefficient)` pairs.
    pub fn support(&self) -> Vec<(usize, i64)> {
        self.coefficients
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> Result<Divisor> {
        let coefficients = self
            .coefficients
            .iter()
            .map(|&c| c.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Divisor { coefficients })
    }

    pub fn sub(&self, other: &Divisor) -> Result<Divisor> {
        if self.coefficients.len() != other.coefficients.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coefficients.len(),
                actual: other.coefficients.len(),
            });
        }
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Divisor { coefficients })
    }

    fn check(&self, g: &MultiGraph) -> Result<()> {
        if self.coefficients.len() == g.vertex_count() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: g.vertex_count(),
                actual: self.coefficients.len(),
            })
        }
    }
}

/// `L[v][v]` counts non-loop incidences, `L[u][v] = -#edges(u, v)`.
pub fn laplacian(g: &MultiGraph) -> IntMatrix {
    let n = g.vertex_count();
    let mut counts = vec![0i64; n * n];
    for &(u, v) in g.edges() {
        if u != v {
            counts[u * n + u] += 1;
            counts[v * n + v] += 1;
            counts[u * n + v] -= 1;
            counts[v * n + u] -= 1;
        }
    }
    IntMatrix::from_entries(n, n, counts.into_iter().map(BigInt::from).collect())
        .expect("n x n entries")
}

/// The Laplacian with the row and column of `base` removed.
pub fn reduced_laplacian(g: &MultiGraph, base: usize) -> Result<IntMatrix> {
    g.check_vertex(base)?;
    Ok(laplacian(g).minor(base, base))
}

fn require_connected(g: &MultiGraph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Number of spanning trees, as the determinant of a reduced Laplacian.
pub fn spanning_tree_count(g: &MultiGraph) -> Result<BigInt> {
    require_connected(g)?;
    if g.vertex_count() == 0 {
        return Ok(BigInt::one());
    }
    reduced_laplacian(g, 0)?.determinant()
}

// Exact integers are written as decimal strings.
fn serialize_factors<S: Serializer>(
    factors: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(factors.iter().map(|f| f.to_string()))
}

fn serialize_decimal<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalGroup {
    pub base_vertex: usize,
    /// Invariant factors greater than one, each dividing the next.
    #[serde(serialize_with = "serialize_factors")]
    pub invariant_factors: Vec<BigInt>,
    /// One degree-0 divisor per factor; generator `i` has order exactly
    /// `invariant_factors[i]`. Stored as base-reduced representatives.
    pub generator_divisors: Vec<Divisor>,
}

impl CriticalGroup {
    pub fn compute(g: &MultiGraph, base: usize) -> Result<Self> {
        require_connected(g)?;
        g.check_vertex(base)?;
        let reduced = reduced_laplacian(g, base)?;
        let snf = SmithForm::compute(&reduced);
        let others: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != base).collect();
        let mut invariant_factors = Vec::new();
        let mut generator_divisors = Vec::new();
        for (i, d) in snf.diagonal.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            // x = column i of the inverse left transform maps to the i-th
            // unit vector of the cokernel. Its preimage under the reduced
            // Laplacian is right[:, i] / d; subtracting L * round(that)
            // leaves an equivalent vector with entries bounded by degrees.
            let x = snf.left_inverse.column(i);
            let rounded: Vec<BigInt> = if d.is_zero() {
                vec![BigInt::zero(); others.len()]
            } else {
                let twice: BigInt = d * 2;
                snf.right
                    .column(i)
                    .iter()
                    .map(|v: &BigInt| -> BigInt {
                        let s: BigInt = v * 2 + d;
                        s.div_floor(&twice)
                    })
                    .collect()
            };
            let shift = reduced.mul_vec(&rounded)?;
            let mut coefficients = vec![0i64; g.vertex_count()];
            let mut total = 0i64;
            for (row, &v) in others.iter().enumerate() {
                let c = (&x[row] - &shift[row]).to_i64().ok_or(Error::Overflow)?;
                coefficients[v] = c;
                total = total.checked_add(c).ok_or(Error::Overflow)?;
            }
            coefficients[base] = total.checked_neg().ok_or(Error::Overflow)?;
            let raw = Divisor { coefficients };
            invariant_factors.push(d.clone());
            generator_divisors.push(dhar_reduce(g, &raw, base)?);
        }
        Ok(CriticalGroup {
            base_vertex: base,
            invariant_factors,
            generator_divisors,
        })
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

pub fn critical_group(g: &MultiGraph, base: usize) -> Result<CriticalGroup> {
    CriticalGroup::compute(g, base)
}

/// Fires `set` `times` times: every edge leaving the set moves `times` chips
/// from its inside endpoint to its outside endpoint.
fn fire(g: &MultiGraph, coefficients: &mut [i64], in_set: &[bool], times: i64) -> Result<()> {
    for &(u, v) in g.edges() {
        if in_set[u] != in_set[v] {
            let (from, to) = if in_set[u] { (u, v) } else { (v, u) };
            coefficients[from] = coefficients[from]
                .checked_sub(times)
                .ok_or(Error::Overflow)?;
            coefficients[to] = coefficients[to].checked_add(times).ok_or(Error::Overflow)?;
        }
    }
    Ok(())
}

fn bfs_distances(g: &MultiGraph, base: usize) -> Vec<usize> {
    let inc = g.incidence();
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[base] = 0;
    let mut queue = VecDeque::from([base]);
    while let Some(x) = queue.pop_front() {
        for &(_, y) in &inc[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// The unique `base`-reduced divisor equivalent to `d`.
///
/// First every vertex away from `base` is made non-negative by firing the
/// balls `{dist < i}` around `base`, outermost level first. Then Dhar's
/// burning runs from `base`; while some vertices stay unburnt, that set is
/// fired as many times as it legally can and the burn restarts.
pub fn dhar_reduce(g: &MultiGraph, d: &Divisor, base: usize) -> Result<Divisor> {
    require_connected(g)?;
    g.check_vertex(base)?;
    d.check(g)?;
    let n = g.vertex_count();
    let mut c = d.coefficients.clone();

    let dist = bfs_distances(g, base);
    let depth = dist.iter().copied().max().unwrap_or(0);
    for level in (1..=depth).rev() {
        let deficit = (0..n)
            .filter(|&v| dist[v] == level)
            .map(|v| -c[v])
            .max()
            .unwrap_or(0);
        if deficit > 0 {
            let ball: Vec<bool> = dist.iter().map(|&x| x < level).collect();
            fire(g, &mut c, &ball, deficit)?;
        }
    }

    let inc = g.incidence();
    loop {
        let mut burnt = vec![false; n];
        let mut heat = vec![0i64; n];
        burnt[base] = true;
        let mut queue = VecDeque::from([base]);
        while let Some(x) = queue.pop_front() {
            for &(_, y) in &inc[x] {
                if burnt[y] {
                    continue;
                }
                heat[y] += 1;
                if heat[y] > c[y] {
                    burnt[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let unburnt: Vec<bool> = burnt.iter().map(|&b| !b).collect();
        if !unburnt.iter().any(|&u| u) {
            return Ok(Divisor { coefficients: c });
        }
        // Unburnt vertices hold at least as many chips as edges into the
        // burnt region, so the set can fire floor(c / out) times.
        let times = (0..n)
            .filter(|&v| unburnt[v] && heat[v] > 0)
            .map(|v| c[v] / heat[v])
            .min()
            .expect("connected graph: some unburnt vertex touches the fire");
        fire(g, &mut c, &unburnt, times.max(1))?;
    }
}

pub fn divisors_equivalent(
    g: &MultiGraph,
    d1: &Divisor,
    d2: &Divisor,
    base: usize,
) -> Result<bool> {
    d1.check(g)?;
    d2.check(g)?;
    if d1.degree() != d2.degree() {
        return Err(Error::DegreeMismatch(d1.degree(), d2.degree()));
    }
    Ok(dhar_reduce(g, d1, base)? == dhar_reduce(g, d2, base)?)
}

/// Whether `d = L x` has an integer solution, decided from the Smith form of
/// the full Laplacian. Independent of chip-firing.
pub fn in_laplacian_image(g: &MultiGraph, d: &Divisor) -> Result<bool> {
    d.check(g)?;
    let snf = SmithForm::compute(&laplacian(g));
    in_image_with(&snf, d)
}

/// Same test with a precomputed Smith form of the Laplacian.
pub fn in_image_with(laplacian_snf: &SmithForm, d: &Divisor) -> Result<bool> {
    let b: Vec<BigInt> = d.coefficients.iter().map(|&c| BigInt::from(c)).collect();
    let transformed = laplacian_snf.left.mul_vec(&b)?;
    Ok(transformed
        .iter()
        .zip(&laplacian_snf.diagonal)
        .all(|(y, dd)| {
            if dd.is_zero() {
                y.is_zero()
            } else {
                y.is_multiple_of(dd)
            }
        }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RTorsion {
    #[serde(serialize_with = "serialize_decimal")]
    pub count: BigUint,
    pub generators: Vec<Divisor>,
}

/// `count = Π gcd(d_i, r)`; generators are `(d_i / gcd(d_i, r))` times the
/// generator divisor of each factor with a nontrivial gcd.
pub fn r_torsion(cg: &CriticalGroup, r: u64) -> Result<RTorsion> {
    if r == 0 {
        return Err(Error::ZeroTorsionOrder);
    }
    let r_big = BigInt::from(r);
    let mut count = BigUint::one();
    let mut generators = Vec::new();
    for (d, gen) in cg.invariant_factors.iter().zip(&cg.generator_divisors) {
        let common = d.gcd(&r_big);
        count *= common.magnitude();
        if !common.is_one() {
            let k = (d / &common).to_i64().ok_or(Error::Overflow)?;
            generators.push(gen.scaled(k)?);
        }
    }
    Ok(RTorsion { count, generators })
}

/// Which edges get subdivided before counting torsion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubdivisionMode {
    AllEdges,
    NonSeparating,
    /// No subdivision; diagnostic only, shows the subdivision is needed.
    Unsubdivided,
}

impl SubdivisionMode {
    pub fn edges(self, g: &MultiGraph) -> EdgeSubset {
        match self {
            SubdivisionMode::AllEdges => g.all_edges(),
            SubdivisionMode::NonSeparating => g.non_separating_edges(),
            SubdivisionMode::Unsubdivided => EdgeSubset::empty(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub r: u64,
    pub mode: SubdivisionMode,
    pub genus: usize,
    #[serde(skip)]
    pub subdivided: SubdivisionMap,
    pub child_vertices: usize,
    pub child_edges: usize,
    pub critical_group: CriticalGroup,
    #[serde(serialize_with = "serialize_decimal")]
    pub torsion_count: BigUint,
    /// `r^genus`.
    #[serde(serialize_with = "serialize_decimal")]
    pub expected: BigUint,
    /// `r^(2 genus)`; reported alongside for comparison, not asserted.
    #[serde(serialize_with = "serialize_decimal")]
    pub doubled_exponent_count: BigUint,
    pub generators: Vec<Divisor>,
    pub verdict: bool,
}

/// Subdivides, computes the critical group of the subdivision based at
/// vertex 0, and compares its r-torsion with `r^genus`.
pub fn verify_torsion_on_subdivision(
    g: &MultiGraph,
    r: u64,
    mode: SubdivisionMode,
) -> Result<TorsionReport> {
    if r == 0 {
        return Err(Error::ZeroTorsionOrder);
    }
    require_connected(g)?;
    g.check_vertex(0)?;
    let factor = usize::try_from(r).map_err(|_| Error::Overflow)?;
    let subdivided = g.subdivide(factor, &mode.edges(g))?;
    let cg = critical_group(&subdivided.child, 0)?;
    let torsion = r_torsion(&cg, r)?;
    let genus = g.genus();
    let r_big = BigUint::from(r);
    let expected = Pow::pow(&r_big, genus);
    let doubled_exponent_count = Pow::pow(&r_big, 2 * genus);
    Ok(TorsionReport {
        r,
        mode,
        genus,
        child_vertices: subdivided.child.vertex_count(),
        child_edges: subdivided.child.edge_count(),
        subdivided,
        critical_group: cg,
        verdict: torsion.count == expected,
        torsion_count: torsion.count,
        expected,
        doubled_exponent_count,
        generators: torsion.generators,
    })
}
