//! Numerical rank helpers shared by the commutant computations.
//!
//! Dimension counts are decided from eigenvalues of Hermitian Gram matrices:
//! eigenvalues below `REL_ZERO_THRESHOLD * lambda_max` count as zero. The gap
//! between the largest "zero" and the smallest "nonzero" eigenvalue is
//! recorded so that a shaky decision (gap under a factor 10) can be flagged
//! instead of silently committing to an integer.

use faer::{Mat, Side};

use crate::matrix::{Scalar, SquareMatrix};

/// Relative eigenvalue threshold under which a Gram eigenvalue counts as zero.
pub const REL_ZERO_THRESHOLD: f64 = 1e-10;

/// Factor by which the zero/nonzero eigenvalue groups must be separated for
/// the rank decision to count as unambiguous.
pub const GAP_FACTOR: f64 = 10.0;

/// Outcome of a nullity decision on a positive semidefinite Gram matrix.
#[derive(Debug, Clone)]
pub struct RankGap {
    /// Number of eigenvalues classified as zero (the nullity).
    pub nullity: usize,
    /// Largest eigenvalue classified as zero (0.0 when none were).
    pub largest_zero: f64,
    /// Smallest eigenvalue classified as nonzero (`None` when all are zero).
    pub smallest_nonzero: Option<f64>,
    /// `smallest_nonzero / max(largest_zero, threshold/GAP_FACTOR)`;
    /// `None` when every eigenvalue is zero.
    pub gap_ratio: Option<f64>,
    /// True when some eigenvalue lies within a factor [`GAP_FACTOR`] of the
    /// zero threshold, on either side — the classification then hinges on
    /// the threshold rather than on a clean spectral gap.
    pub ambiguous: bool,
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &SquareMatrix) -> Vec<f64> {
    let n = m.size();
    let fm = Mat::<faer::c64>::from_fn(n, n, |i, j| {
        let z = m[(i, j)];
        faer::c64::new(z.re, z.im)
    });
    let evd = fm
        .self_adjoint_eigen(Side::Lower)
        .expect("self-adjoint eigendecomposition of a finite Gram matrix");
    let s = evd.S();
    let mut eigs: Vec<f64> = (0..n).map(|i| s[i].re).collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    eigs
}

/// Classifies Gram eigenvalues into zero/nonzero groups.
pub fn decide_nullity(eigs: &[f64]) -> RankGap {
    // Gram matrices are PSD; tiny negative values are rounding noise.
    let mags: Vec<f64> = eigs.iter().map(|e| e.abs()).collect();
    let max = mags.iter().cloned().fold(0.0f64, f64::max);
    if max == 0.0 {
        return RankGap {
            nullity: eigs.len(),
            largest_zero: 0.0,
            smallest_nonzero: None,
            gap_ratio: None,
            ambiguous: false,
        };
    }
    let threshold = REL_ZERO_THRESHOLD * max;
    let mut largest_zero = 0.0f64;
    let mut smallest_nonzero = f64::INFINITY;
    let mut nullity = 0;
    for &m in &mags {
        if m <= threshold {
            nullity += 1;
            largest_zero = largest_zero.max(m);
        } else {
            smallest_nonzero = smallest_nonzero.min(m);
        }
    }
    let smallest_nonzero = (smallest_nonzero.is_finite()).then_some(smallest_nonzero);
    // The reported ratio floors the denominator so it stays finite when the
    // zero group is exactly zero; this can only understate the gap.
    let gap_ratio = smallest_nonzero.map(|s| s / largest_zero.max(threshold / GAP_FACTOR));
    // The decision is shaky whenever any eigenvalue lands within a factor
    // GAP_FACTOR of the threshold, on either side of it.
    let ambiguous = largest_zero > threshold / GAP_FACTOR
        || smallest_nonzero.is_some_and(|s| s < threshold * GAP_FACTOR);
    RankGap { nullity, largest_zero, smallest_nonzero, gap_ratio, ambiguous }
}

/// A sparse 0/1 "basis element": the sum of matrix units at `units` positions
/// (row, column), all with coefficient 1, inside an ambient space of a fixed
/// size. This covers every unknown-algebra basis used by the commutant
/// solvers (diagonal and full legs, with identity legs appended).
#[derive(Debug, Clone)]
pub struct UnitSum {
    pub units: Vec<(usize, usize)>,
}

/// Gram matrix of the linearized commutator map `B -> [B, P]` over a basis of
/// [`UnitSum`] elements, assembled from closed-form inner products.
///
/// For single matrix units `E_{u,v}`:
///
/// ```text
/// <[E_{u,v},P], [E_{u',v'},P]> = d_{u,u'} (P P*)[v',v] + d_{v,v'} (P* P)[u,u']
///                              - conj(P[v,v']) P[u,u'] - conj(P[u',u]) P[v',v]
/// ```
///
/// so only `P`, `P P*` and `P* P` are materialized — never the `d x ambient^2`
/// constraint matrix itself.
pub fn commutator_gram(p: &SquareMatrix, basis: &[UnitSum]) -> SquareMatrix {
    let pp = p.mul(&p.adjoint());
    let ppt = p.adjoint().mul(p);
    let d = basis.len();
    let mut g = SquareMatrix::zeros(d);
    for s in 0..d {
        for t in s..d {
            let mut acc = Scalar::new(0.0, 0.0);
            for &(u, v) in &basis[s].units {
                for &(u2, v2) in &basis[t].units {
                    if u == u2 {
                        acc += pp[(v2, v)];
                    }
                    if v == v2 {
                        acc += ppt[(u, u2)];
                    }
                    acc -= p[(v, v2)].conj() * p[(u, u2)];
                    acc -= p[(u2, u)].conj() * p[(v2, v)];
                }
            }
            g[(s, t)] = acc;
            g[(t, s)] = acc.conj();
        }
    }
    g
}

/// Dimension of `{X in span(basis) : [X, P] = 0}` with gap diagnostics.
pub fn commutant_nullity(p: &SquareMatrix, basis: &[UnitSum]) -> RankGap {
    let g = commutator_gram(p, basis);
    let eigs = hermitian_eigenvalues(&g);
    decide_nullity(&eigs)
}

/// Rank of a set of vectors by modified Gram-Schmidt with a relative
/// tolerance: a vector counts as new when its residual keeps more than
/// `rel_tol` of its norm.
pub fn span_rank(vectors: &[Vec<Scalar>], rel_tol: f64) -> usize {
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for v in vectors {
        let norm0 = vec_norm(v);
        if norm0 == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for b in &basis {
            let coeff = dot(b, &w);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= coeff * bi;
            }
        }
        let res = vec_norm(&w);
        if res > rel_tol * norm0 {
            let inv = Scalar::new(1.0 / res, 0.0);
            for wi in w.iter_mut() {
                *wi *= inv;
            }
            basis.push(w);
        }
    }
    basis.len()
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn vec_norm(a: &[Scalar]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}
