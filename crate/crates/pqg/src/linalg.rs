//! Dense exact linear algebra over [`Scalar`].
//!
//! Small-matrix kernels used throughout: Gaussian elimination with exact
//! division for rank / solve / nullspace / inverse, and an LDLᵀ-style
//! positive-semidefiniteness test whose pivot signs are decided exactly for
//! rationals and by certified rational intervals for radical sums.

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar, field: &FieldSpec) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c, field)).collect(),
        }
    }

    pub fn mul(&self, other: &Mat, field: &FieldSpec) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b, field));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).star())
    }

    pub fn entrywise_star(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::star).collect(),
        }
    }

    /// Kronecker product (row-major block order).
    pub fn kron(&self, other: &Mat, field: &FieldSpec) -> Mat {
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            a.mul(other.get(k, l), field),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut t = Scalar::zero();
        for i in 0..self.rows {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Reduced row-echelon form; returns (rref, pivot column indices).
    pub fn rref(&self, field: &FieldSpec) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            // Find a row with an invertible entry in this column.
            let mut pivot_row = None;
            for r in row..m.rows {
                if !m.get(r, col).is_zero() && m.get(r, col).inv(field).is_some() {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            m.swap_rows(row, pr);
            let inv = m.get(row, col).inv(field).unwrap();
            for j in col..m.cols {
                let v = m.get(row, j).mul(&inv, field);
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for j in col..m.cols {
                        let v = m.get(r, j).sub(&factor.mul(m.get(row, j), field));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, field: &FieldSpec) -> usize {
        self.rref(field).1.len()
    }

    /// Basis of the right nullspace, one column vector per basis element.
    pub fn nullspace(&self, field: &FieldSpec) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref(field);
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = r.get(prow, free).neg();
            }
            // Rows whose entries admit no invertible pivot stay unreduced;
            // keep only candidates that are annihilated exactly.
            let in_kernel = (0..self.rows).all(|i| {
                let mut acc = Scalar::zero();
                for (j, vj) in v.iter().enumerate() {
                    if !vj.is_zero() {
                        acc = acc.add(&self.get(i, j).mul(vj, field));
                    }
                }
                acc.is_zero()
            });
            if in_kernel {
                basis.push(v);
            }
        }
        basis
    }

    /// One solution of `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Scalar], field: &FieldSpec) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref(field);
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = r.get(prow, self.cols).clone();
        }
        // Columns that never acquired an invertible pivot are left at zero,
        // which can silently drop constraints; accept the candidate only if
        // it satisfies the system exactly.
        for i in 0..self.rows {
            let mut acc = Scalar::zero();
            for (j, xj) in x.iter().enumerate() {
                if !xj.is_zero() {
                    acc = acc.add(&self.get(i, j).mul(xj, field));
                }
            }
            if !acc.sub(&b[i]).is_zero() {
                return None;
            }
        }
        Some(x)
    }

    pub fn inverse(&self, field: &FieldSpec) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let (r, pivots) = aug.rref(field);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }
}

/// Outcome of the positive-semidefiniteness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdOutcome {
    /// PSD, every pivot sign decided by exact rational arithmetic.
    PsdExact,
    /// PSD, at least one pivot sign certified by rational intervals
    /// (width 1e-30, refined).
    PsdCertifiedNumeric,
    /// Not PSD; the witness names the offending pivot index.
    NotPsd { pivot: usize },
    /// A pivot sign could not be certified.
    Unknown { pivot: usize },
}

/// Hermitian positive-semidefiniteness by symmetric (LDLᵀ-style) elimination.
pub fn psd_check(g: &Mat, field: &FieldSpec) -> Result<PsdOutcome> {
    if g.rows() != g.cols() {
        return Err(Error::Precondition("psd_check requires a square matrix".into()));
    }
    if g.sub(&g.adjoint()) != Mat::zeros(g.rows(), g.cols()) {
        return Err(Error::Precondition("psd_check requires a hermitian matrix".into()));
    }
    let n = g.rows();
    let mut m = g.clone();
    let mut numeric = false;
    for k in 0..n {
        let d = m.get(k, k).clone();
        match d.sign(field) {
            Sign::Zero => {
                // PSD with zero diagonal forces a zero row/column.
                for j in k + 1..n {
                    if !m.get(k, j).is_zero() {
                        return Ok(PsdOutcome::NotPsd { pivot: k });
                    }
                }
            }
            Sign::Negative => return Ok(PsdOutcome::NotPsd { pivot: k }),
            Sign::Unknown => return Ok(PsdOutcome::Unknown { pivot: k }),
            Sign::Positive => {
                if d.as_rat().is_none() {
                    numeric = true;
                }
                let dinv = d.inv(field).ok_or_else(|| {
                    Error::NotInvertible("positive pivot without tower inverse".into())
                })?;
                for i in k + 1..n {
                    let li = m.get(i, k).mul(&dinv, field);
                    if li.is_zero() {
                        continue;
                    }
                    for j in k + 1..n {
                        // Schur complement: G_ij - G_ik G_kj / d
                        // (G_kj = conj(G_jk) by hermitianity).
                        let v = m.get(i, j).sub(&li.mul(m.get(k, j), field));
                        m.set(i, j, v);
                    }
                }
            }
        }
    }
    Ok(if numeric {
        PsdOutcome::PsdCertifiedNumeric
    } else {
        PsdOutcome::PsdExact
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, sqrt_of_rat, int};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rank_solve_nullspace() {
        let f = FieldSpec::rational();
        let a = Mat::from_rows(vec![
            vec![s(1), s(2), s(3)],
            vec![s(2), s(4), s(6)],
            vec![s(0), s(1), s(1)],
        ]);
        assert_eq!(a.rank(&f), 2);
        let ns = a.nullspace(&f);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            let b = Mat::from_rows(vec![v.clone()]).transpose();
            assert!(a.mul(&b, &f).is_zero());
        }
        let x = a.solve(&[s(6), s(12), s(2)], &f).unwrap();
        let b = Mat::from_rows(vec![x]).transpose();
        let prod = a.mul(&b, &f);
        assert_eq!(prod.get(0, 0), &s(6));
        assert_eq!(prod.get(2, 0), &s(2));
    }

    #[test]
    fn inverse_with_radicals() {
        let f = FieldSpec::rational();
        let r2 = sqrt_of_rat(&int(2)).unwrap();
        let a = Mat::from_rows(vec![vec![Scalar::one(), r2.clone()], vec![r2, s(3)]]);
        let inv = a.inverse(&f).unwrap();
        assert_eq!(a.mul(&inv, &f), Mat::identity(2));
    }

    #[test]
    fn psd_outcomes() {
        let f = FieldSpec::rational();
        let g = Mat::from_rows(vec![vec![s(2), s(1)], vec![s(1), s(1)]]);
        assert_eq!(psd_check(&g, &f).unwrap(), PsdOutcome::PsdExact);
        let bad = Mat::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(1)]]);
        assert_eq!(psd_check(&bad, &f).unwrap(), PsdOutcome::NotPsd { pivot: 1 });
        // radical pivot: [[sqrt(2), 1], [1, sqrt(2)]] is PSD (det = 1 > 0)
        let r2 = sqrt_of_rat(&int(2)).unwrap();
        let g2 = Mat::from_rows(vec![
            vec![r2.clone(), Scalar::one()],
            vec![Scalar::one(), r2],
        ]);
        assert_eq!(psd_check(&g2, &f).unwrap(), PsdOutcome::PsdCertifiedNumeric);
        // zero diagonal with nonzero off-diagonal is not PSD
        let z = Mat::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]);
        assert_eq!(psd_check(&z, &f).unwrap(), PsdOutcome::NotPsd { pivot: 0 });
        // hermitian with imaginary entries
        let h = Mat::from_rows(vec![
            vec![s(2), Scalar::i()],
            vec![Scalar::i().neg(), s(1)],
        ]);
        assert_eq!(psd_check(&h, &f).unwrap(), PsdOutcome::PsdExact);
        let _ = rat(1, 2);
    }
}
