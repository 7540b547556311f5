use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Usage(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. `cols` is needed so
    /// that a matrix with zero rows still has a shape.
    pub fn from_rows<T: Into<BigInt> + Copy>(cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Usage(format!("row {i} has length {}, expected {cols}", row.len())));
            }
            entries.extend(row.iter().map(|&x| x.into()));
        }
        Ok(Self { rows: rows.len(), cols, entries })
    }

    pub fn from_big_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Usage(format!("row {i} has length {}, expected {cols}", row.len())));
            }
            entries.extend(row);
        }
        Ok(Self { rows: n, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat> {
        if self.cols != other.rows {
            return Err(Error::Usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let (h, _) = hermite_normal_form(self);
        (0..h.rows).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Usage("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    fn row_sub_scaled(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.entries[source * self.cols + j] * factor;
            self.entries[target * self.cols + j] -= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.entries[i * self.cols + j]);
            self.entries[i * self.cols + j] = -v;
        }
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form: returns `(h, u)` with `u` unimodular and
/// `u * m == h`. Pivots are positive, each pivot lies strictly right of the
/// one above it, entries above a pivot lie in `[0, pivot)`, and zero rows
/// sit at the bottom.
pub fn hermite_normal_form(m: &IntMat) -> (IntMat, IntMat) {
    let mut h = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut pivot_row = 0;
    for col in 0..m.cols {
        if pivot_row == m.rows {
            break;
        }
        loop {
            let best = (pivot_row..m.rows)
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by(|&a, &b| h.get(a, col).abs().cmp(&h.get(b, col).abs()));
            let Some(k) = best else { break };
            h.swap_rows(k, pivot_row);
            u.swap_rows(k, pivot_row);
            let mut cleared = true;
            for i in pivot_row + 1..m.rows {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let q = h.get(i, col).div_floor(h.get(pivot_row, col));
                h.row_sub_scaled(i, pivot_row, &q);
                u.row_sub_scaled(i, pivot_row, &q);
                if !h.get(i, col).is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for i in 0..pivot_row {
            let q = h.get(i, col).div_floor(h.get(pivot_row, col));
            h.row_sub_scaled(i, pivot_row, &q);
            u.row_sub_scaled(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Basis, as rows, of the integer kernel `{v : m vᵀ = 0}`, returned in
/// Hermite normal form. The basis comes from the unimodular transform of
/// `mᵀ`, so the lattice it spans is saturated.
pub fn kernel_lattice(m: &IntMat) -> IntMat {
    let t = m.transpose();
    let (h, u) = hermite_normal_form(&t);
    let rank = (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count();
    let basis: Vec<Vec<BigInt>> = (rank..u.rows()).map(|i| u.row(i).to_vec()).collect();
    let k = IntMat::from_big_rows(m.cols(), basis).expect("kernel rows have matching width");
    hermite_normal_form(&k).0
}

/// Nonzero invariant factors of the Smith normal form, in divisibility order.
pub fn smith_invariants(m: &IntMat) -> Vec<BigInt> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.row_vecs();
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        'pivot: loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return out;
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..cols {
                    let s = &a[t][j] * &q;
                    a[i][j] -= s;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let s = &row[t] * &q;
                    row[j] -= s;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue 'pivot;
            }
            for i in t + 1..rows {
                if (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)) {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                    continue 'pivot;
                }
            }
            break;
        }
        out.push(a[t][t].abs());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(cols: usize, rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_rows(cols, rows).unwrap()
    }

    #[test]
    fn identity_is_its_own_hermite_form() {
        let id = IntMat::identity(3);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
    }

    #[test]
    fn row_swap() {
        let (h, u) = hermite_normal_form(&mat(2, &[vec![0, 1], vec![1, 0]]));
        assert_eq!(h, IntMat::identity(2));
        assert_eq!(u.determinant().unwrap().abs(), BigInt::one());
    }

    /// Every unimodular `u` with entries in [-6, 6] is tried against
    /// [[2,4],[1,3]]; exactly one product is in reduced Hermite form.
    #[test]
    fn two_by_two_matches_exhaustive_row_operations() {
        let m = mat(2, &[vec![2, 4], vec![1, 3]]);
        let mut forms = Vec::new();
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                for c in -6i64..=6 {
                    for d in -6i64..=6 {
                        if (a * d - b * c).abs() != 1 {
                            continue;
                        }
                        let h = [2 * a + b, 4 * a + 3 * b, 2 * c + d, 4 * c + 3 * d];
                        let upper = h[2] == 0 && h[0] > 0 && h[3] > 0 && (0..h[3]).contains(&h[1]);
                        if upper && !forms.contains(&h) {
                            forms.push(h);
                        }
                    }
                }
            }
        }
        assert_eq!(forms, vec![[1, 1, 0, 2]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, mat(2, &[vec![1, 1], vec![0, 2]]));
        assert_eq!(u.mul(&m).unwrap(), h);
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let k = kernel_lattice(&mat(3, &[vec![1, 1, 1]]));
        let expected = mat(3, &[vec![1, -1, 0], vec![0, 1, -1]]);
        assert_eq!(k, hermite_normal_form(&expected).0);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = kernel_lattice(&IntMat::identity(2));
        assert_eq!(k.rows(), 0);
        assert_eq!(k.cols(), 2);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y = 0 has kernel spanned by (2, -1), not (4, -2).
        let k = kernel_lattice(&mat(2, &[vec![2, 4]]));
        assert_eq!(k, mat(2, &[vec![2, -1]]));
    }

    #[test]
    fn smith_of_small_matrices() {
        let s = smith_invariants(&mat(2, &[vec![2, 4], vec![1, 3]]));
        assert_eq!(s, vec![BigInt::from(1), BigInt::from(2)]);
        let s = smith_invariants(&mat(2, &[vec![2, 0], vec![0, 3]]));
        assert_eq!(s, vec![BigInt::from(1), BigInt::from(6)]);
        let s = smith_invariants(&mat(3, &[vec![0, 0, 0]]));
        assert!(s.is_empty());
    }

    #[test]
    fn bareiss_determinant() {
        let m = mat(3, &[vec![2, -1, 0], vec![1, 3, 2], vec![0, 5, -4]]);
        // 2(-12-10) + 1(-4-0) = -48
        assert_eq!(m.determinant().unwrap(), BigInt::from(-48));
        assert_eq!(mat(2, &[vec![1, 2], vec![2, 4]]).determinant().unwrap(), BigInt::zero());
    }
}
