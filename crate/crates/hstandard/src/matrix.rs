//! Dense exact linear algebra over ℚ.
//!
//! Echelonization uses a fixed pivot rule (first nonzero entry in column
//! order), so ranks, nullspace bases and solutions are reproducible
//! bit-for-bit across runs.

use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![Scalar::zero(); self.rows];
        for i in 0..self.rows {
            let row = self.row(i);
            for (a, b) in row.iter().zip(x) {
                out[i].add_mul_assign(a, b);
            }
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, t);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// In-place reduction to reduced row-echelon form.
    ///
    /// Forward elimination with the first-nonzero pivot rule, then
    /// back-substitution. Returns the pivot columns in order.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in r + 1..self.rows {
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        // Back-substitution.
        for (r, &c) in pivots.iter().enumerate().rev() {
            for i in 0..r {
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Canonical basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m.get(r, free);
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, basis)
    }

    /// One exact solution of `self * x = b`, or `None` if inconsistent.
    ///
    /// Deterministic choice: free variables are set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of ℚ^n, held as a reduced-echelon row basis.
///
/// Two subspaces are equal iff their canonical bases are identical.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    /// Span of the given vectors, canonicalized.
    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector/ambient dimension mismatch");
        }
        let mut m = Matrix::from_rows(vectors);
        let pivots = m.rref_in_place();
        let basis = Matrix::from_fn(pivots.len(), ambient, |i, j| m.get(i, j).clone());
        Subspace { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero_space(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn contains_vec(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut v = v.to_vec();
        // Reduce against the echelon basis.
        for i in 0..self.basis.rows() {
            let pivot = (0..self.ambient)
                .find(|&j| !self.basis.get(i, j).is_zero())
                .expect("basis row cannot be zero");
            if v[pivot].is_zero() {
                continue;
            }
            let f = v[pivot].clone();
            for j in pivot..self.ambient {
                let t = &v[j] - &(&f * self.basis.get(i, j));
                v[j] = t;
            }
        }
        v.iter().all(Scalar::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        (0..other.basis.rows()).all(|i| self.contains_vec(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut vecs = self.basis.row_vecs();
        vecs.extend(other.basis.row_vecs());
        Subspace::from_vectors(self.ambient, vecs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        // x = aᵀ·U = bᵀ·W; solve [Uᵀ | -Wᵀ] on stacked coefficients.
        let u = self.basis.transpose();
        let w = other.basis.transpose().scale(&-Scalar::one());
        if u.cols() == 0 || w.cols() == 0 {
            return Subspace::zero(self.ambient);
        }
        let sys = u.hstack(&w);
        let null = sys.nullspace();
        let vecs = null
            .basis_vectors()
            .into_iter()
            .map(|coef| {
                let mut v = vec![Scalar::zero(); self.ambient];
                for (i, c) in coef[..self.dim()].iter().enumerate() {
                    for j in 0..self.ambient {
                        v[j].add_mul_assign(c, self.basis.get(i, j));
                    }
                }
                v
            })
            .collect();
        Subspace::from_vectors(self.ambient, vecs)
    }

    /// dim(self / other); requires `other ⊆ self`.
    pub fn quotient_dim(&self, other: &Subspace) -> usize {
        assert!(self.contains(other), "quotient of non-subspace");
        self.dim() - other.dim()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

/// Incremental row-echelon accumulator for large sparse-ish constraint
/// systems. Rows are inserted one at a time and reduced against the pivots
/// already found; back-substitution happens once at the end.
pub struct RrefAccum {
    width: usize,
    /// pivot column -> row (pivot entry normalized to 1).
    rows: std::collections::BTreeMap<usize, Vec<Scalar>>,
}

impl RrefAccum {
    pub fn new(width: usize) -> Self {
        RrefAccum {
            width,
            rows: std::collections::BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Insert a row; returns true if it added a new pivot.
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.width);
        loop {
            let Some(lead) = row.iter().position(|v| !v.is_zero()) else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(existing) => {
                    let f = row[lead].clone();
                    for j in lead..self.width {
                        if !existing[j].is_zero() {
                            let t = &row[j] - &(&f * &existing[j]);
                            row[j] = t;
                        }
                    }
                }
                None => {
                    let inv = row[lead].inv();
                    for v in row.iter_mut().skip(lead) {
                        *v *= &inv;
                    }
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Canonical nullspace of the accumulated system.
    pub fn nullspace(mut self) -> Subspace {
        // Back-substitute to full RREF first.
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        for (idx, &p) in pivots.iter().enumerate().rev() {
            let prow = self.rows[&p].clone();
            for &q in &pivots[..idx] {
                let row = self.rows.get_mut(&q).unwrap();
                let f = row[p].clone();
                if f.is_zero() {
                    continue;
                }
                for j in p..self.width {
                    if !prow[j].is_zero() {
                        let t = &row[j] - &(&f * &prow[j]);
                        row[j] = t;
                    }
                }
            }
        }
        let mut basis = Vec::new();
        for free in 0..self.width {
            if self.rows.contains_key(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.width];
            v[free] = Scalar::one();
            for (&p, row) in self.rows.iter() {
                v[p] = -&row[free];
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.width, basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn mat(rows: Vec<Vec<i64>>) -> Matrix {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(s).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(mat(vec![vec![1, 0], vec![0, 1]]).rank(), 2);
        assert_eq!(mat(vec![vec![1, 1]]).rank(), 1);
        assert_eq!(mat(vec![vec![0, 0, 0]; 3]).rank(), 0);
    }

    #[test]
    fn nullspace_examples() {
        // [1, 1] -> span{(1, -1)} canonicalized
        let n = mat(vec![vec![1, 1]]).nullspace();
        assert_eq!(n.dim(), 1);
        assert_eq!(n.basis().row(0), &[s(1), s(-1)][..]);
        // identity -> zero space
        assert!(mat(vec![vec![1, 0], vec![0, 1]]).nullspace().is_zero_space());
        // zero 2x2 -> full space
        let full = mat(vec![vec![0, 0], vec![0, 0]]).nullspace();
        assert_eq!(full, Subspace::full(2));
    }

    #[test]
    fn solve_examples() {
        let id = mat(vec![vec![1, 0], vec![0, 1]]);
        let b = vec![Scalar::new(3, 2), s(-1)];
        assert_eq!(id.solve(&b).unwrap(), b);

        let m = mat(vec![vec![1, 1]]);
        let x = m.solve(&[s(5)]).unwrap();
        assert_eq!(&x[0] + &x[1], s(5));

        let m = mat(vec![vec![1], vec![1]]);
        assert!(m.solve(&[s(0), s(1)]).is_none());
    }

    #[test]
    fn subspace_ops() {
        let e1 = Subspace::from_vectors(2, vec![vec![s(1), s(0)]]);
        let e2 = Subspace::from_vectors(2, vec![vec![s(0), s(1)]]);
        assert!(Subspace::full(2).contains(&e1));
        assert!(e1.intersect(&e2).is_zero_space());
        assert_eq!(e1.sum(&e2), Subspace::full(2));
        let e1_in_3 = Subspace::from_vectors(3, vec![vec![s(1), s(0), s(0)]]);
        assert_eq!(Subspace::full(3).quotient_dim(&e1_in_3), 2);
    }

    #[test]
    fn accum_matches_nullspace() {
        let m = mat(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        let mut acc = RrefAccum::new(3);
        for r in m.row_vecs() {
            acc.insert(r);
        }
        assert_eq!(acc.nullspace(), m.nullspace());
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..5, r * c).prop_map(move |vals| {
                Matrix::from_fn(r, c, |i, j| Scalar::from_int(vals[i * c + j]))
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            prop_assert_eq!(m.rank() + m.nullspace().dim(), m.cols());
        }

        #[test]
        fn solve_consistent(m in arb_matrix(), xs in proptest::collection::vec(-3i64..4, 4)) {
            let x: Vec<Scalar> = (0..m.cols()).map(|j| Scalar::from_int(xs[j % xs.len()])).collect();
            let b = m.mul_vec(&x);
            let sol = m.solve(&b).expect("consistent system must solve");
            prop_assert_eq!(m.mul_vec(&sol), b);
        }

        #[test]
        fn nullspace_deterministic(m in arb_matrix()) {
            let a = serde_json::to_vec(&m.nullspace()).unwrap();
            let b = serde_json::to_vec(&m.clone().nullspace()).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
