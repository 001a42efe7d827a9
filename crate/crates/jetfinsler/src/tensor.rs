//! Dense tensor shells of rank ≤ 4 with fixed index conventions.
//!
//! Storage is 0-based row-major; the geometry literature that this crate
//! follows writes indices 1..n, so public reports re-emit 1-based labels at
//! the API boundary (CLI, Python).  Rank-3 entries are indexed
//! `(upper; lower, lower)`, rank-4 entries `(upper; lower, lower, lower)`.

use crate::error::{Error, Result};

/// Central tolerance table.  Every numerical gate in the crate cites one of
/// these three values rather than a local magic number.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Pivot / determinant floor for symmetric inversion (scaled by max|m|).
    pub det: f64,
    /// Allowed asymmetry when wrapping a general matrix as symmetric.
    pub sym: f64,
    /// Cross-validation tolerance between closed forms and the generic engine.
    pub xval: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            det: 1e-12,
            sym: 1e-10,
            xval: 1e-6,
        }
    }
}

/// General dense square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |a, &v| a.max(v.abs()))
    }

    /// max |self - other| entry-wise.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |a, (&x, &y)| a.max((x - y).abs()))
    }

    /// max |self[i][j] - self[j][i]|.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.set(i, j, out.get(i, j) + a * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// Symmetric square matrix; `entries[i][j] == entries[j][i]` holds exactly,
/// enforced by every constructor (values are stored mirrored, never re-derived).
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    inner: Matrix,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            inner: Matrix::zeros(n),
        }
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix {
            inner: Matrix::identity(n),
        }
    }

    /// Builds from the upper triangle: `f` is invoked only for `i <= j` and the
    /// value is mirrored, so the symmetry invariant is exact by construction.
    pub fn from_fn_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        SymMatrix { inner: m }
    }

    /// Wraps a general matrix after a symmetry check at tolerance `eps_sym`;
    /// the stored entries are the exact averages of the mirrored pairs.
    pub fn from_matrix(m: &Matrix, eps_sym: f64) -> Result<Self> {
        let asym = m.max_asymmetry();
        if asym > eps_sym {
            return Err(Error::MalformedField(format!(
                "matrix asymmetry {asym:e} exceeds eps_sym {eps_sym:e}"
            )));
        }
        Ok(SymMatrix::from_fn_upper(m.dim(), |i, j| {
            0.5 * (m.get(i, j) + m.get(j, i))
        }))
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner.get(i, j)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.inner
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.max_abs()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.inner.rows()
    }
}

/// Rank-3 tensor indexed `(upper; lower, lower)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank3 {
    n: usize,
    data: Vec<f64>,
}

impl Rank3 {
    pub fn zeros(n: usize) -> Self {
        Rank3 {
            n,
            data: vec![0.0; n * n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t.set(i, j, k, f(i, j, k));
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.n + j) * self.n + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.data[(i * self.n + j) * self.n + k] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |a, &v| a.max(v.abs()))
    }

    pub fn entries(&self) -> Vec<Vec<Vec<f64>>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| (0..self.n).map(|k| self.get(i, j, k)).collect())
                    .collect()
            })
            .collect()
    }
}

/// Rank-4 tensor indexed `(upper; lower, lower, lower)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank4 {
    n: usize,
    data: Vec<f64>,
}

impl Rank4 {
    pub fn zeros(n: usize) -> Self {
        Rank4 {
            n,
            data: vec![0.0; n * n * n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zeros(n);
        for l in 0..n {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        t.set(l, i, j, k, f(l, i, j, k));
                    }
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, l: usize, i: usize, j: usize, k: usize) -> f64 {
        self.data[((l * self.n + i) * self.n + j) * self.n + k]
    }

    #[inline]
    pub fn set(&mut self, l: usize, i: usize, j: usize, k: usize, v: f64) {
        self.data[((l * self.n + i) * self.n + j) * self.n + k] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |a, &v| a.max(v.abs()))
    }

    pub fn entries(&self) -> Vec<Vec<Vec<Vec<f64>>>> {
        (0..self.n)
            .map(|l| {
                (0..self.n)
                    .map(|i| {
                        (0..self.n)
                            .map(|j| (0..self.n).map(|k| self.get(l, i, j, k)).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }
}

/// Inverts a symmetric matrix by Gauss-Jordan elimination with partial
/// pivoting.  The closed-form inverse that the conformal Minkowski model
/// admits is used as a test oracle elsewhere, never as the implementation
/// path here: the generic engine needs inversion for arbitrary Lagrangians.
///
/// Fails with [`Error::SingularMatrix`] when a pivot falls below
/// `tol.det * max|m|`, or when the multiply-back residual `max|m·r − I|`
/// exceeds `tol.det * max(1, max|m|)`.
pub fn invert_symmetric(m: &SymMatrix, tol: &Tolerances) -> Result<SymMatrix> {
    let n = m.dim();
    assert!(n >= 1 && n <= 16, "invert_symmetric supports 1 <= n <= 16");
    let scale = m.max_abs();
    let pivot_floor = tol.det * scale.max(1e-300);

    // Augmented [m | I] elimination.
    let mut a = m.as_matrix().clone();
    let mut inv = Matrix::identity(n);
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = a.get(col, col).abs();
        for r in (col + 1)..n {
            let v = a.get(r, col).abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = r;
            }
        }
        if pivot_val < pivot_floor {
            return Err(Error::SingularMatrix(format!(
                "pivot {pivot_val:e} below floor {pivot_floor:e} at column {}",
                col + 1
            )));
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = a.get(col, j);
                a.set(col, j, a.get(pivot_row, j));
                a.set(pivot_row, j, tmp);
                let tmp = inv.get(col, j);
                inv.set(col, j, inv.get(pivot_row, j));
                inv.set(pivot_row, j, tmp);
            }
        }
        let p = a.get(col, col);
        for j in 0..n {
            a.set(col, j, a.get(col, j) / p);
            inv.set(col, j, inv.get(col, j) / p);
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a.get(r, col);
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                a.set(r, j, a.get(r, j) - f * a.get(col, j));
                inv.set(r, j, inv.get(r, j) - f * inv.get(col, j));
            }
        }
    }

    let residual = m.as_matrix().matmul(&inv).max_abs_diff(&Matrix::identity(n));
    let bound = tol.det * scale.max(1.0);
    if residual > bound {
        return Err(Error::SingularMatrix(format!(
            "multiply-back residual {residual:e} exceeds {bound:e}"
        )));
    }

    // The inverse of a symmetric matrix is symmetric; averaging the mirrored
    // pairs removes the elimination's last-bit asymmetry.
    SymMatrix::from_matrix(&inv, 1e-8 * scale.max(1.0))
}

/// Contraction of the upper index with the last lower index:
/// `out[i][j] = Σ_m t[m][i][j][m]`.
///
/// Symmetry of the result is not assumed; callers wrap it in [`SymMatrix`]
/// only after their own symmetry check.
pub fn contract_trace(t: &Rank4) -> Matrix {
    let n = t.dim();
    Matrix::from_fn(n, |i, j| (0..n).map(|m| t.get(m, i, j, m)).sum())
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn sym_eigenvalues(m: &SymMatrix) -> Vec<f64> {
    let n = m.dim();
    let mut a = m.as_matrix().clone();
    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(a.get(i, j).abs());
            }
        }
        if off < 1e-14 * a.max_abs().max(1.0) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = 0.5 * (a.get(q, q) - a.get(p, p)) / apq;
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invert_identity() {
        let tol = Tolerances::default();
        let id = SymMatrix::identity(4);
        let inv = invert_symmetric(&id, &tol).unwrap();
        assert_eq!(inv, id);
    }

    #[test]
    fn invert_offdiag_half_matches_lemma_inverse() {
        // g_ij = (1 - delta_ij)/2 has inverse (2/3)(1 - 3 delta_jk).
        let tol = Tolerances::default();
        let g = SymMatrix::from_fn_upper(4, |i, j| if i == j { 0.0 } else { 0.5 });
        let ginv = invert_symmetric(&g, &tol).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = 2.0 / 3.0 * (1.0 - 3.0 * if i == j { 1.0 } else { 0.0 });
                assert!((ginv.get(i, j) - expect).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn invert_rejects_singular() {
        let tol = Tolerances::default();
        let all_ones = SymMatrix::from_fn_upper(4, |_, _| 1.0);
        assert!(matches!(
            invert_symmetric(&all_ones, &tol),
            Err(Error::SingularMatrix(_))
        ));
        let zero = SymMatrix::zeros(3);
        assert!(invert_symmetric(&zero, &tol).is_err());
    }

    #[test]
    fn contract_trace_zero_and_kronecker() {
        let z = Rank4::zeros(4);
        assert_eq!(contract_trace(&z).max_abs(), 0.0);

        // t[m][i][j][k] = delta^m_k * delta_ij  =>  out[i][j] = 4 delta_ij.
        let t = Rank4::from_fn(4, |m, i, j, k| {
            if m == k && i == j {
                1.0
            } else {
                0.0
            }
        });
        let out = contract_trace(&t);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 4.0 } else { 0.0 };
                assert_eq!(out.get(i, j), expect);
            }
        }
    }

    #[test]
    fn jacobi_eigenvalues_diag() {
        let m = SymMatrix::from_fn_upper(3, |i, j| {
            if i == j {
                [3.0, -1.0, 2.0][i]
            } else {
                0.0
            }
        });
        let eig = sym_eigenvalues(&m);
        assert!((eig[0] + 1.0).abs() < 1e-12);
        assert!((eig[1] - 2.0).abs() < 1e-12);
        assert!((eig[2] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn sym_from_matrix_rejects_asymmetric() {
        let mut m = Matrix::zeros(2);
        m.set(0, 1, 1.0);
        m.set(1, 0, 1.0 + 1e-6);
        assert!(SymMatrix::from_matrix(&m, 1e-10).is_err());
        assert!(SymMatrix::from_matrix(&m, 1e-3).is_ok());
    }
}
