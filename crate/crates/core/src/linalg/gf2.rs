//! Dense linear algebra over the two-element field.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A bit vector read as an element of GF(2)^len.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gf2Vec {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Gf2Vec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Gf2Vec::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Gf2Vec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Vector with ones exactly at `support`. Panics on an index `>= len`.
    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Gf2Vec::zeros(len);
        for i in support {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &Gf2Vec) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Gf2Vec) -> Gf2Vec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn dot(&self, other: &Gf2Vec) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Gf2Vec(")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<Gf2Vec>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            cols,
            rows: vec![Gf2Vec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix {
            cols: n,
            rows: (0..n).map(|i| Gf2Vec::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Gf2Vec>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: r.len(),
                });
            }
        }
        Ok(Gf2Matrix { cols, rows })
    }

    /// Builds from 0/1 entries; any odd value counts as 1.
    pub fn from_u8(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix");
                Gf2Vec::from_bits(&r.iter().map(|&x| x & 1 == 1).collect::<Vec<_>>())
            })
            .collect();
        Gf2Matrix { cols, rows }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c)
    }

    pub fn row(&self, r: usize) -> &Gf2Vec {
        &self.rows[r]
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &Gf2Vec) -> Result<Gf2Vec> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: x.len(),
            });
        }
        Ok(Gf2Vec::from_bits(
            &self.rows.iter().map(|r| r.dot(x)).collect::<Vec<_>>(),
        ))
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if other.row_count() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.row_count(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = Gf2Vec::zeros(other.cols);
                for k in r.ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(Gf2Matrix {
            cols: other.cols,
            rows,
        })
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &Gf2Vec, y: &Gf2Vec) -> Result<bool> {
        if x.len() != self.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                actual: x.len(),
            });
        }
        let my = self.mul_vec(y)?;
        Ok(x.dot(&my))
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Symmetric with zero diagonal.
    pub fn is_alternating(&self) -> bool {
        self.is_symmetric() && (0..self.cols).all(|i| !self.get(i, i))
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.cols
    }

    /// Basis of the right null space, one vector per free column in
    /// ascending column order.
    pub fn kernel_basis(&self) -> Vec<Gf2Vec> {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = Gf2Vec::unit(self.cols, f);
                for (row, &p) in ech.pivots.iter().enumerate() {
                    if ech.rows[row].get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `M x = b`, free variables set to zero; `None` when the
    /// system is inconsistent.
    pub fn solve(&self, b: &Gf2Vec) -> Result<Option<Gf2Vec>> {
        if b.len() != self.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                actual: b.len(),
            });
        }
        let augmented = Gf2Matrix {
            cols: self.cols + 1,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut a = Gf2Vec::zeros(self.cols + 1);
                    for j in r.ones() {
                        a.set(j, true);
                    }
                    a.set(self.cols, b.get(i));
                    a
                })
                .collect(),
        };
        let ech = augmented.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = Gf2Vec::zeros(self.cols);
        for (row, &p) in ech.pivots.iter().enumerate() {
            x.set(p, ech.rows[row].get(self.cols));
        }
        Ok(Some(x))
    }

    /// Reduced row echelon form; `rows[i]` has its leading one at `pivots[i]`.
    fn echelon(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        Echelon { rows, pivots }
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        f.write_str("]")
    }
}

/// Rows as bit strings, e.g. `[10 01]`.
impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            for j in 0..self.cols {
                f.write_str(if r.get(j) { "1" } else { "0" })?;
            }
        }
        f.write_str("]")
    }
}

struct Echelon {
    rows: Vec<Gf2Vec>,
    pivots: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(bits: &[u8]) -> Gf2Vec {
        Gf2Vec::from_bits(&bits.iter().map(|&b| b == 1).collect::<Vec<_>>())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
        assert_eq!(Gf2Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Gf2Matrix::from_u8(&[&[1, 1], &[1, 1]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Gf2Matrix::identity(4).kernel_basis().is_empty());
        let k = Gf2Matrix::zeros(2, 3).kernel_basis();
        assert_eq!(k, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let k = Gf2Matrix::from_u8(&[&[1, 1, 0]]).kernel_basis();
        assert_eq!(k, vec![v(&[1, 1, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn kernel_of_single_row_matches_enumeration() {
        let m = Gf2Matrix::from_u8(&[&[1, 1, 0]]);
        let mut kernel: Vec<Gf2Vec> = (0u8..8)
            .map(|x| v(&[x & 1, x >> 1 & 1, x >> 2 & 1]))
            .filter(|x| m.mul_vec(x).unwrap().is_zero())
            .collect();
        kernel.sort_by_key(|x| x.to_bits());
        assert_eq!(kernel.len(), 4);
        // The returned basis spans exactly the enumerated kernel.
        let basis = m.kernel_basis();
        let mut spanned: Vec<Gf2Vec> = (0..4u8)
            .map(|c| {
                let mut acc = Gf2Vec::zeros(3);
                for (i, b) in basis.iter().enumerate() {
                    if c >> i & 1 == 1 {
                        acc.xor_assign(b);
                    }
                }
                acc
            })
            .collect();
        spanned.sort_by_key(|x| x.to_bits());
        assert_eq!(spanned, kernel);
    }

    #[test]
    fn solve_examples() {
        let b = v(&[1, 0, 1]);
        assert_eq!(Gf2Matrix::identity(3).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Gf2Matrix::zeros(3, 3).solve(&b).unwrap(), None);
        assert_eq!(
            Gf2Matrix::from_u8(&[&[1, 1]]).solve(&v(&[1])).unwrap(),
            Some(v(&[1, 0]))
        );
        assert_eq!(
            Gf2Matrix::identity(2).solve(&b),
            Err(Error::DimensionMismatch {
                expected: 2,
                actual: 3
            })
        );
    }

    #[test]
    fn alternating_checks() {
        assert!(Gf2Matrix::from_u8(&[&[0, 1], &[1, 0]]).is_alternating());
        assert!(!Gf2Matrix::identity(2).is_alternating());
        assert!(!Gf2Matrix::from_u8(&[&[0, 1], &[0, 0]]).is_alternating());
    }

    fn arb_matrix() -> impl Strategy<Value = Gf2Matrix> {
        (1usize..=64, 1usize..=64).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    Gf2Matrix::from_rows(c, rows.iter().map(|b| Gf2Vec::from_bits(b)).collect())
                        .unwrap()
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let kernel = m.kernel_basis();
            prop_assert_eq!(m.rank() + kernel.len(), m.col_count());
            for k in &kernel {
                prop_assert!(m.mul_vec(k).unwrap().is_zero());
            }
            let stacked = Gf2Matrix::from_rows(m.col_count(), kernel.clone()).unwrap();
            prop_assert_eq!(stacked.rank(), kernel.len());
        }

        #[test]
        fn solve_is_exact(m in arb_matrix(), seed in any::<u64>()) {
            let x0 = Gf2Vec::from_bits(
                &(0..m.col_count()).map(|i| seed.rotate_left(i as u32) & 1 == 1).collect::<Vec<_>>());
            let b = m.mul_vec(&x0).unwrap();
            let x = m.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
        }
    }
}
