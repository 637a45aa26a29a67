//! Dense complex square matrices.
//!
//! Everything in this crate works with small dense matrices (ambient sizes up
//! to a few hundred, occasionally `n^3 = 512`), so a plain row-major `Vec` of
//! `Complex64` entries is the whole story. Indices are 0-based here; the
//! 1-based index conventions of the mathematical tables only appear at
//! reporting boundaries.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar type used throughout: double-precision complex.
pub type Scalar = Complex64;

/// The imaginary unit.
pub const I: Scalar = Scalar::new(0.0, 1.0);

/// A unimodular scalar `e^{i angle}`.
pub fn unit(angle: f64) -> Scalar {
    Scalar::from_polar(1.0, angle)
}

/// Dense square matrix over `Complex64`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix { n, entries: vec![Scalar::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Scalar::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { n, entries }
    }

    /// Builds from nested rows, checking squareness.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, row: i + 1, cols: row.len() });
            }
        }
        Ok(SquareMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    /// Diagonal matrix from its diagonal entries.
    pub fn from_diagonal(diag: &[Scalar]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "size mismatch in matrix product");
        let n = self.n;
        let mut out = SquareMatrix::zeros(n);
        // i-k-j loop order keeps the inner loop contiguous in both operands.
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.entries[k * n..(k + 1) * n];
                let out_row = &mut out.entries[i * n..(i + 1) * n];
                for j in 0..n {
                    out_row[j] += a * rhs_row[j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> SquareMatrix {
        SquareMatrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> SquareMatrix {
        SquareMatrix::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> SquareMatrix {
        SquareMatrix::from_fn(self.n, |i, j| self[(i, j)].conj())
    }

    pub fn scale(&self, s: Scalar) -> SquareMatrix {
        SquareMatrix { n: self.n, entries: self.entries.iter().map(|e| e * s).collect() }
    }

    pub fn add(&self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n);
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n);
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }

    /// Kronecker product; `self` indexes the coarse blocks, `rhs` the fine
    /// positions: `(A ⊗ B)[(i*m+k, j*m+l)] = A[i,j] * B[k,l]`.
    pub fn kron(&self, rhs: &SquareMatrix) -> SquareMatrix {
        let (p, m) = (self.n, rhs.n);
        let n = p * m;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..p {
            for j in 0..p {
                let a = self[(i, j)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Normalized trace `tr(x)/n` (the trace that gives the identity value 1).
    pub fn normalized_trace(&self) -> Scalar {
        self.trace() / self.n as f64
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference `max |self - rhs|`.
    pub fn max_abs_diff(&self, rhs: &SquareMatrix) -> f64 {
        assert_eq!(self.n, rhs.n);
        self.entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Commutator `[self, rhs] = self*rhs - rhs*self`.
    pub fn commutator(&self, rhs: &SquareMatrix) -> SquareMatrix {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Entrywise defect from being unitary: `max |self*self^adj - id|`.
    pub fn unitary_defect(&self) -> f64 {
        self.mul(&self.adjoint()).max_abs_diff(&SquareMatrix::identity(self.n))
    }

    /// Entrywise defect from being a self-adjoint idempotent.
    pub fn projection_defect(&self) -> f64 {
        let idem = self.mul(self).max_abs_diff(self);
        let herm = self.adjoint().max_abs_diff(self);
        idem.max(herm)
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|e| e.re.is_finite() && e.im.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for SquareMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.n + j]
    }
}

/// `p x p` matrix unit `e_{r,s}` (0-based), the single-entry matrix.
pub fn matrix_unit(p: usize, r: usize, s: usize) -> SquareMatrix {
    let mut m = SquareMatrix::zeros(p);
    m[(r, s)] = Scalar::new(1.0, 0.0);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_places_fine_factor_inside_coarse_blocks() {
        // e_{0,1} (coarse) ⊗ e_{1,0} (fine) over n=2 has its single 1 at
        // row 0*2+1 = 1, column 1*2+0 = 2.
        let a = matrix_unit(2, 0, 1);
        let b = matrix_unit(2, 1, 0);
        let k = a.kron(&b);
        assert_eq!(k.size(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i, j) == (1, 2) { 1.0 } else { 0.0 };
                assert_eq!(k[(i, j)].re, expect, "entry ({i},{j})");
                assert_eq!(k[(i, j)].im, 0.0);
            }
        }
    }

    #[test]
    fn mul_and_adjoint_agree_with_hand_computation() {
        let a = SquareMatrix::from_rows(vec![
            vec![Scalar::new(1.0, 1.0), Scalar::new(0.0, 2.0)],
            vec![Scalar::new(3.0, 0.0), Scalar::new(0.0, -1.0)],
        ])
        .unwrap();
        let prod = a.mul(&a.adjoint());
        // Row 0 dotted with conj(row 0): |1+i|^2 + |2i|^2 = 2 + 4 = 6.
        assert!((prod[(0, 0)] - Scalar::new(6.0, 0.0)).norm() < 1e-12);
        // Hermitian product must be self-adjoint.
        assert!(prod.adjoint().max_abs_diff(&prod) < 1e-12);
    }

    #[test]
    fn unitary_defect_flags_non_unitaries() {
        let id = SquareMatrix::identity(3);
        assert_eq!(id.unitary_defect(), 0.0);
        let two = id.scale(Scalar::new(2.0, 0.0));
        assert!(two.unitary_defect() > 1.0);
    }

    #[test]
    fn trace_and_normalized_trace() {
        let m = SquareMatrix::from_diagonal(&[
            Scalar::new(1.0, 0.0),
            Scalar::new(0.0, 0.0),
            Scalar::new(1.0, 0.0),
            Scalar::new(0.0, 0.0),
        ]);
        assert_eq!(m.trace(), Scalar::new(2.0, 0.0));
        assert_eq!(m.normalized_trace(), Scalar::new(0.5, 0.0));
    }
}
