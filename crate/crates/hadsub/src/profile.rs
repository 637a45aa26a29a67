//! The profile tensor of a complex Hadamard matrix.
//!
//! For the unitary `U = H/sqrt(n)` the *profile* is the rank-4 tensor
//!
//! ```text
//! p_{a,b}^{c,d} = sum_i u_{a,i} conj(u_{b,i}) conj(u_{c,i}) u_{d,i}
//! ```
//!
//! (indices 1-based in the tables, 0-based internally). Arranged as an
//! `n^2 x n^2` matrix with row `(a-1)n + c` and column `(b-1)n + d`, the
//! profile *is* the first tower projection: the orthogonal projection whose
//! relative commutant data drives everything else in this crate. The profile
//! is an equivalence invariant up to phases and index permutations, which is
//! what makes fingerprints and partitions comparable across equivalent
//! matrices.

use crate::hadamard::HadamardMatrix;
use crate::matrix::{Scalar, SquareMatrix};

/// The profile tensor `p_{a,b}^{c,d}` of a Hadamard matrix, stored densely.
#[derive(Debug, Clone)]
pub struct ProfileTensor {
    n: usize,
    /// Row-major over `(a, b, c, d)`, all 0-based.
    entries: Vec<Scalar>,
}

impl ProfileTensor {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Raw entries in `(a, b, c, d)` row-major order; length `n^4`.
    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// `p_{a,b}^{c,d}` with 0-based indices.
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> Scalar {
        let n = self.n;
        self.entries[((a * n + b) * n + c) * n + d]
    }

    /// The profile arranged as the `n^2 x n^2` first tower projection:
    /// entry `[(a*n + c, b*n + d)] = p_{a,b}^{c,d}` (0-based).
    pub fn as_projection(&self) -> SquareMatrix {
        let n = self.n;
        let mut m = SquareMatrix::zeros(n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        m[(a * n + c, b * n + d)] = self.get(a, b, c, d);
                    }
                }
            }
        }
        m
    }

    /// Boolean zero pattern at tolerance `tol`: `true` where `|p| > tol`.
    pub fn zero_pattern(&self, tol: f64) -> Vec<bool> {
        self.entries.iter().map(|z| z.norm() > tol).collect()
    }

    /// Worst violation of the structural symmetries every profile satisfies:
    /// `p_{a,b}^{c,d} = conj(p_{b,a}^{d,c}) = p_{d,c}^{b,a}` and
    /// `p_{a,b}^{c,c} = delta_{ab}/n`, `p_{a,a}^{c,d} = delta_{cd}/n`.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.n;
        let inv_n = 1.0 / n as f64;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let p = self.get(a, b, c, d);
                        worst = worst.max((p - self.get(b, a, d, c).conj()).norm());
                        worst = worst.max((p - self.get(d, c, b, a)).norm());
                        if c == d {
                            let expect = if a == b { inv_n } else { 0.0 };
                            worst = worst.max((p - Scalar::new(expect, 0.0)).norm());
                        }
                        if a == b {
                            let expect = if c == d { inv_n } else { 0.0 };
                            worst = worst.max((p - Scalar::new(expect, 0.0)).norm());
                        }
                    }
                }
            }
        }
        worst
    }
}

/// Computes the profile tensor of `h` by direct summation.
pub fn profile(h: &HadamardMatrix) -> ProfileTensor {
    let n = h.size();
    let u = h.unitary();
    let mut entries = Vec::with_capacity(n * n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut s = Scalar::new(0.0, 0.0);
                    for i in 0..n {
                        s += u[(a, i)] * u[(b, i)].conj() * u[(c, i)].conj() * u[(d, i)];
                    }
                    entries.push(s);
                }
            }
        }
    }
    ProfileTensor { n, entries }
}
