//! Integer matrices with arbitrary-precision entries, Smith normal form and
//! fraction-free determinants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &x) in r.iter().enumerate() {
                m.entries[i * cols + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    fn at(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.at(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Deletes row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> IntMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                entries.push(self.get(i, j).clone());
            }
        }
        IntMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    /// Bareiss fraction-free elimination. The determinant of a 0x0 matrix
    /// is 1.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                actual: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(if n == 0 { sign } else { sign * prev })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(src, c) * factor;
            if !v.is_zero() {
                *self.at(dst, c) += v;
            }
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, src) * factor;
            if !v.is_zero() {
                *self.at(r, dst) += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(self.at(r, c));
            *self.at(r, c) = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -std::mem::take(self.at(r, c));
            *self.at(r, c) = v;
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn smith_normal_form(&self) -> SmithForm {
        SmithForm::compute(self)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

/// `left * original * right = diag(diagonal)` with unimodular transforms.
/// `diagonal` has `min(rows, cols)` entries, non-negative, each dividing the
/// next, zeros last. `left_inverse` is kept so cokernel generators can be
/// pulled back to the original coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub left_inverse: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Elimination pivoting on the entry of smallest nonzero magnitude.
    pub fn compute(m: &IntMatrix) -> SmithForm {
        let (rows, cols) = (m.rows, m.cols);
        let mut a = m.clone();
        let mut left = IntMatrix::identity(rows);
        let mut left_inverse = IntMatrix::identity(rows);
        let mut right = IntMatrix::identity(cols);

        // Each row operation on `a` is mirrored on `left`; its inverse is
        // applied to `left_inverse` as the matching column operation.
        let swap_rows = |a: &mut IntMatrix, l: &mut IntMatrix, li: &mut IntMatrix, i, j| {
            a.swap_rows(i, j);
            l.swap_rows(i, j);
            li.swap_cols(i, j);
        };
        let add_row =
            |a: &mut IntMatrix, l: &mut IntMatrix, li: &mut IntMatrix, dst, src, q: &BigInt| {
                a.add_row(dst, src, q);
                l.add_row(dst, src, q);
                li.add_col(src, dst, &-q);
            };

        for t in 0..rows.min(cols) {
            let Some((pr, pc)) = smallest_nonzero(&a, t) else {
                break;
            };
            swap_rows(&mut a, &mut left, &mut left_inverse, t, pr);
            a.swap_cols(t, pc);
            right.swap_cols(t, pc);

            loop {
                let pivot = a.get(t, t).clone();
                let mut dirty = false;
                for i in t + 1..rows {
                    if !a.get(i, t).is_zero() {
                        let q = a.get(i, t).div_floor(&pivot);
                        if !q.is_zero() {
                            add_row(&mut a, &mut left, &mut left_inverse, i, t, &-q);
                        }
                        dirty |= !a.get(i, t).is_zero();
                    }
                }
                for j in t + 1..cols {
                    if !a.get(t, j).is_zero() {
                        let q = a.get(t, j).div_floor(&pivot);
                        if !q.is_zero() {
                            a.add_col(j, t, &-&q);
                            right.add_col(j, t, &-q);
                        }
                        dirty |= !a.get(t, j).is_zero();
                    }
                }
                if dirty {
                    // A remainder smaller than the pivot survives in row or
                    // column t; move the smallest one onto the diagonal.
                    let (pr, pc) = smallest_in_cross(&a, t);
                    swap_rows(&mut a, &mut left, &mut left_inverse, t, pr);
                    a.swap_cols(t, pc);
                    right.swap_cols(t, pc);
                    continue;
                }
                let offender = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
                match offender {
                    Some(i) => add_row(&mut a, &mut left, &mut left_inverse, t, i, &BigInt::one()),
                    None => break,
                }
            }
            if a.get(t, t).is_negative() {
                a.negate_row(t);
                left.negate_row(t);
                left_inverse.negate_col(t);
            }
        }

        let diagonal = (0..rows.min(cols)).map(|i| a.get(i, i).clone()).collect();
        SmithForm {
            diagonal,
            left,
            left_inverse,
            right,
        }
    }

    /// Diagonal entries different from one, in order.
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.magnitude() < a.get(bi, bj).magnitude()) {
                best = Some((i, j));
                if x.magnitude().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let candidates = (t..a.rows)
        .map(|i| (i, t))
        .chain((t + 1..a.cols).map(|j| (t, j)));
    candidates
        .filter(|&(i, j)| !a.get(i, j).is_zero())
        .min_by(|&(i, j), &(k, l)| a.get(i, j).magnitude().cmp(a.get(k, l).magnitude()))
        .expect("pivot itself is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_witness(m: &IntMatrix, s: &SmithForm) {
        let prod = s.left.mul(m).unwrap().mul(&s.right).unwrap();
        assert!(prod.is_diagonal(), "not diagonal: {prod:?}");
        assert_eq!(prod, s.diagonal_matrix(m.row_count(), m.col_count()));
        assert_eq!(
            s.left.mul(&s.left_inverse).unwrap(),
            IntMatrix::identity(m.row_count())
        );
        assert!(s.left.determinant().unwrap().magnitude().is_one());
        assert!(s.right.determinant().unwrap().magnitude().is_one());
        for w in s.diagonal.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros must trail");
            } else {
                assert!(
                    w[1].is_multiple_of(&w[0]),
                    "{} does not divide {}",
                    w[0],
                    w[1]
                );
            }
        }
    }

    #[test]
    fn smith_examples() {
        let id = IntMatrix::identity(2);
        let s = id.smith_normal_form();
        assert_eq!(s.diagonal, big(&[1, 1]));
        check_witness(&id, &s);

        let d = IntMatrix::from_i64(&[&[2, 0], &[0, 4]]);
        let s = d.smith_normal_form();
        assert_eq!(s.diagonal, big(&[2, 4]));
        check_witness(&d, &s);

        let m = IntMatrix::from_i64(&[&[2, 1], &[0, 2]]);
        let s = m.smith_normal_form();
        assert_eq!(s.diagonal, big(&[1, 4]));
        check_witness(&m, &s);
    }

    #[test]
    fn smith_sorts_divisibility() {
        let m = IntMatrix::from_i64(&[&[4, 0], &[0, 6]]);
        let s = m.smith_normal_form();
        assert_eq!(s.diagonal, big(&[2, 12]));
        check_witness(&m, &s);
        let z = IntMatrix::from_i64(&[&[0, 0, 0], &[0, 3, 0]]);
        let s = z.smith_normal_form();
        assert_eq!(s.diagonal, big(&[3, 0]));
        check_witness(&z, &s);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(IntMatrix::identity(0).determinant().unwrap(), BigInt::one());
        let m = IntMatrix::from_i64(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 5]]);
        // Cofactor expansion along the second row: -1 * (2*5 - 1*1) = -9.
        assert_eq!(m.determinant().unwrap(), BigInt::from(-9));
        assert_eq!(
            IntMatrix::from_i64(&[&[1, 2], &[2, 4]])
                .determinant()
                .unwrap(),
            BigInt::zero()
        );
    }

    /// Determinant by cofactor expansion; independent of Bareiss.
    fn cofactor_det(m: &IntMatrix) -> BigInt {
        let n = m.row_count();
        if n == 0 {
            return BigInt::one();
        }
        (0..n)
            .map(|j| {
                let term = m.get(0, j) * cofactor_det(&m.minor(0, j));
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
            .collect()
    }

    /// k-th determinantal divisor: gcd of all k x k minors.
    fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
        let mut g = BigInt::zero();
        for rs in subsets(m.row_count(), k) {
            for cs in subsets(m.col_count(), k) {
                let entries = rs
                    .iter()
                    .flat_map(|&i| cs.iter().map(move |&j| (i, j)))
                    .map(|(i, j)| m.get(i, j).clone())
                    .collect();
                let sub = IntMatrix::from_entries(k, k, entries).unwrap();
                g = g.gcd(&cofactor_det(&sub));
            }
        }
        g
    }

    fn arb_int_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..=6, r * c).prop_map(move |xs| {
                IntMatrix::from_entries(r, c, xs.into_iter().map(BigInt::from).collect()).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn smith_witness_and_minors(m in arb_int_matrix()) {
            let s = m.smith_normal_form();
            check_witness(&m, &s);
            // d_1 ... d_k equals the k-th determinantal divisor.
            let mut prefix = BigInt::one();
            for k in 1..=s.diagonal.len() {
                prefix *= &s.diagonal[k - 1];
                prop_assert_eq!(&prefix, &determinantal_divisor(&m, k));
            }
        }

        #[test]
        fn bareiss_matches_cofactor(n in 1usize..=5, xs in proptest::collection::vec(-9i64..=9, 25)) {
            let m = IntMatrix::from_entries(n, n, xs[..n * n].iter().map(|&x| BigInt::from(x)).collect()).unwrap();
            prop_assert_eq!(m.determinant().unwrap(), cofactor_det(&m));
        }
    }
}
