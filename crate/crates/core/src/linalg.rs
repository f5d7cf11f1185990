//! Dense exact linear algebra over arbitrary-precision rationals.

use crate::poly::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense matrix of rationals, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Like `from_rows` but keeps the column count meaningful when `rows` is empty.
    pub fn from_rows_cols(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        assert!(rows.iter().all(|x| x.len() == cols), "ragged rows");
        QMat { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Rational> {
        self.row(i).to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn mul_row_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.rows, "dimension mismatch in mul_row_vec");
        let mut out = vec![Rational::zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let b = &self[(k, j)];
                if !b.is_zero() {
                    out[j] += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> QMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn trace(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    /// Row reduces in place to reduced row echelon form, returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = &self[(i, j)] - &(&f * &self[(r, j)]);
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Rank via fraction-free Bareiss elimination on a denominator-cleared copy.
    pub fn rank_fraction_free(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let lcm = self.row(i).iter().fold(BigInt::one(), |acc, x| {
                    num_integer::lcm(acc, x.denom().clone())
                });
                self.row(i).iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            r += 1;
        }
        r
    }

    /// Right kernel {v : M v = 0}, returned as a subspace of dimension `cols`.
    pub fn nullspace(&self) -> Subspace {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(ri, f)].clone();
            }
            basis.push(v);
        }
        Subspace::from_rows(self.cols, basis)
    }

    /// Solves M x = b for a column vector, if consistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(ri, self.cols)].clone();
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Subspace of Q^n stored as canonical reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::one();
                v
            })
            .collect();
        Subspace { ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn from_rows(ambient: usize, rows: Vec<Vec<Rational>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ambient), "row length mismatch");
        let mut m = QMat::from_rows(rows);
        if m.rows == 0 {
            return Subspace::zero(ambient);
        }
        let pivots = m.rref_in_place();
        let rows = (0..pivots.len()).map(|i| m.row_vec(i)).collect();
        Subspace { ambient, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces v modulo this subspace; result has zeros in all pivot columns.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if !out[p].is_zero() {
                let f = out[p].clone();
                for (o, r) in out.iter_mut().zip(row.iter()) {
                    *o -= &f * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::from_rows(self.ambient, rows)
    }

    /// Intersection by the Zassenhaus block method.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let n = self.ambient;
        let mut block = Vec::new();
        for r in &self.rows {
            let mut row = r.clone();
            row.extend(r.iter().cloned());
            block.push(row);
        }
        for r in &other.rows {
            let mut row = r.clone();
            row.extend(std::iter::repeat(Rational::zero()).take(n));
            block.push(row);
        }
        if block.is_empty() {
            return Subspace::zero(n);
        }
        let mut m = QMat::from_rows(block);
        m.rref_in_place();
        let mut rows = Vec::new();
        for i in 0..m.rows {
            let left_zero = (0..n).all(|j| m[(i, j)].is_zero());
            let right = m.row(i)[n..].to_vec();
            if left_zero && right.iter().any(|x| !x.is_zero()) {
                rows.push(right);
            }
        }
        Subspace::from_rows(n, rows)
    }

    /// Orthogonal complement with respect to the bilinear form given by `gram`.
    pub fn perp(&self, gram: &QMat) -> Subspace {
        assert_eq!(gram.rows, self.ambient);
        assert_eq!(gram.cols, self.ambient);
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        let sg = QMat::from_rows(self.rows.clone()).mul(gram);
        sg.nullspace()
    }

    /// Matrix of the restriction of `m` to this subspace, if invariant.
    /// Row convention: vectors act as rows, v -> v M.
    pub fn restriction(&self, m: &QMat) -> Option<QMat> {
        assert_eq!(m.rows, self.ambient);
        let mut out = QMat::zeros(self.dim(), self.dim());
        for (i, r) in self.rows.iter().enumerate() {
            let img = m.mul_row_vec(r);
            if !self.contains(&img) {
                return None;
            }
            for (j, &p) in self.pivots.iter().enumerate() {
                out[(i, j)] = img[p].clone();
            }
        }
        Some(out)
    }

    /// Trace of `m` restricted to this subspace, if invariant.
    pub fn trace_restriction(&self, m: &QMat) -> Option<Rational> {
        self.restriction(m).map(|r| r.trace())
    }

    /// Image of this subspace under the row action v -> v M.
    pub fn apply(&self, m: &QMat) -> Subspace {
        assert_eq!(m.rows, self.ambient);
        let rows: Vec<Vec<Rational>> = self.rows.iter().map(|r| m.mul_row_vec(r)).collect();
        Subspace::from_rows(m.cols, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn mat(entries: &[&[i64]]) -> QMat {
        QMat::from_rows(
            entries.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
        )
    }

    #[test]
    fn rref_identifies_rank_and_pivots() {
        let mut m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let pivots = m.rref_in_place();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn bareiss_rank_agrees_with_rref_rank() {
        let m = mat(&[&[2, 4, 1, 3], &[0, 0, 5, 1], &[2, 4, 6, 4], &[1, 2, 0, 0]]);
        assert_eq!(m.rank_fraction_free(), m.rank());
        let m2 = mat(&[&[1, 1], &[1, 2], &[3, 5]]);
        assert_eq!(m2.rank_fraction_free(), 2);
    }

    #[test]
    fn nullspace_vectors_are_killed() {
        let m = mat(&[&[1, 2, 3], &[4, 5, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 1);
        for v in ns.basis() {
            let img: Vec<Rational> = (0..m.rows)
                .map(|i| m.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
                .collect();
            assert!(img.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_finds_exact_solution() {
        let m = mat(&[&[2, 1], &[1, 3]]);
        let b = vec![q(5), q(10)];
        let x = m.solve(&b).expect("consistent system");
        assert_eq!(x, vec![q(1), q(3)]);
        let bad = mat(&[&[1, 1], &[2, 2]]);
        assert!(bad.solve(&[q(1), q(3)]).is_none());
    }

    #[test]
    fn subspace_sum_and_intersection_dims() {
        let a = Subspace::from_rows(3, vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let b = Subspace::from_rows(3, vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        assert_eq!(a.sum(&b).dim(), 3);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[q(0), q(1), q(0)]));
    }

    #[test]
    fn subspace_canonical_equality() {
        let a = Subspace::from_rows(2, vec![vec![q(1), q(1)], vec![q(2), q(2)]]);
        let b = Subspace::from_rows(2, vec![vec![q(3), q(3)]]);
        assert_eq!(a, b);
    }

    #[test]
    fn perp_with_identity_gram_is_orthogonal_complement() {
        let a = Subspace::from_rows(3, vec![vec![q(1), q(1), q(0)]]);
        let p = a.perp(&QMat::identity(3));
        assert_eq!(p.dim(), 2);
        assert!(p.contains(&[q(0), q(0), q(1)]));
        assert!(p.contains(&[q(1), q(-1), q(0)]));
    }

    #[test]
    fn restriction_computes_trace_on_invariant_subspace() {
        // v -> v M swaps coordinates 0,1 and fixes 2.
        let m = mat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let s = Subspace::from_rows(3, vec![vec![q(1), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        let tr = s.trace_restriction(&m).expect("invariant");
        assert_eq!(tr, q(2));
        let bad = Subspace::from_rows(3, vec![vec![q(1), q(0), q(0)]]);
        assert!(bad.trace_restriction(&m).is_none());
    }
}
