//! Complex Hadamard matrices: verification, dephasing, and seeded equivalences.
//!
//! An `n x n` complex matrix is *Hadamard* when every entry has modulus 1 and
//! distinct rows are orthogonal, so that `H/sqrt(n)` is unitary. Two Hadamard
//! matrices are *equivalent* when one is obtained from the other by permuting
//! rows/columns and multiplying by unimodular diagonal matrices on both sides;
//! all invariants computed by this crate are equivalence invariants.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{unit, Scalar, SquareMatrix};

/// Default certification tolerance for Hadamard inputs.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A certified complex Hadamard matrix.
///
/// Construction goes through [`verify_hadamard`], so holding this type means
/// the unimodularity and row-orthogonality checks passed at tolerance `tol`.
#[derive(Debug, Clone)]
pub struct HadamardMatrix {
    mat: SquareMatrix,
    tol: f64,
}

impl HadamardMatrix {
    pub fn matrix(&self) -> &SquareMatrix {
        &self.mat
    }

    pub fn size(&self) -> usize {
        self.mat.size()
    }

    /// Tolerance at which the Hadamard property was certified.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// The associated unitary `U = H / sqrt(n)`.
    pub fn unitary(&self) -> SquareMatrix {
        let s = 1.0 / (self.size() as f64).sqrt();
        self.mat.scale(Scalar::new(s, 0.0))
    }

    /// Wraps a matrix without certification, so negative tests can exercise
    /// structural checks on deliberate non-examples.
    #[cfg(test)]
    pub(crate) fn unchecked_for_tests(mat: SquareMatrix, tol: f64) -> Self {
        HadamardMatrix { mat, tol }
    }
}

/// Checks the Hadamard property and returns a certified wrapper.
///
/// The first violated constraint wins: non-finiteness, then unimodularity of
/// entries (within `tol`), then row orthogonality (`|<r_a, r_b>| <= n * tol`).
/// The returned error names the worst offending entry or row pair.
pub fn verify_hadamard(mat: &SquareMatrix, tol: f64) -> Result<HadamardMatrix> {
    let n = mat.size();
    if n == 0 {
        return Err(Error::UnsupportedSize { n, reason: "empty matrix".into() });
    }
    for i in 0..n {
        for j in 0..n {
            let e = mat[(i, j)];
            if !(e.re.is_finite() && e.im.is_finite()) {
                return Err(Error::NonFinite { i: i + 1, j: j + 1 });
            }
        }
    }
    // Worst unimodularity offender.
    let mut worst: Option<(usize, usize, f64)> = None;
    for i in 0..n {
        for j in 0..n {
            let m = mat[(i, j)].norm();
            let defect = (m - 1.0).abs();
            if worst.map_or(true, |(_, _, w)| defect > (w - 1.0).abs()) {
                worst = Some((i, j, m));
            }
        }
    }
    if let Some((i, j, m)) = worst {
        if (m - 1.0).abs() > tol {
            return Err(Error::NotUnimodular { i: i + 1, j: j + 1, modulus: m, tol });
        }
    }
    // Worst row-pair inner product.
    let mut worst_pair: Option<(usize, usize, f64)> = None;
    for a in 0..n {
        for b in (a + 1)..n {
            let dot: Scalar = (0..n).map(|k| mat[(a, k)] * mat[(b, k)].conj()).sum();
            let mag = dot.norm();
            if worst_pair.map_or(true, |(_, _, w)| mag > w) {
                worst_pair = Some((a, b, mag));
            }
        }
    }
    if let Some((a, b, mag)) = worst_pair {
        if mag > n as f64 * tol {
            return Err(Error::RowsNotOrthogonal {
                row_a: a + 1,
                row_b: b + 1,
                magnitude: mag,
                tol: n as f64 * tol,
            });
        }
    }
    Ok(HadamardMatrix { mat: mat.clone(), tol })
}

/// Dephased form: first row and first column rescaled to 1.
///
/// Entry-wise, `h'_{ij} = h_{ij} * conj(h_{i1}) * conj(h_{1j}) * h_{11}`,
/// which is an equivalence (two unimodular diagonal factors) and idempotent
/// up to rounding.
pub fn dephase(h: &HadamardMatrix) -> HadamardMatrix {
    let n = h.size();
    let m = h.matrix();
    let h11 = m[(0, 0)];
    let out = SquareMatrix::from_fn(n, |i, j| {
        m[(i, j)] * m[(i, 0)].conj() * m[(0, j)].conj() * h11
    });
    HadamardMatrix { mat: out, tol: h.tol }
}

/// A seeded random equivalence `P1 * D1 * H * D2 * P2`: unimodular diagonals
/// and permutations drawn deterministically from a ChaCha stream.
///
/// The same `(matrix, seed)` pair always produces the same output, so tests
/// and reports built on this are reproducible.
pub fn random_equivalence(h: &HadamardMatrix, seed: u64) -> HadamardMatrix {
    let n = h.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d1: Vec<Scalar> = (0..n).map(|_| unit(rng.gen::<f64>() * std::f64::consts::TAU)).collect();
    let d2: Vec<Scalar> = (0..n).map(|_| unit(rng.gen::<f64>() * std::f64::consts::TAU)).collect();
    let mut row_perm: Vec<usize> = (0..n).collect();
    row_perm.shuffle(&mut rng);
    let mut col_perm: Vec<usize> = (0..n).collect();
    col_perm.shuffle(&mut rng);

    let m = h.matrix();
    // out[i][j] = d1[i] * h[row_perm[i]][col_perm[j]] * d2[j]
    let out = SquareMatrix::from_fn(n, |i, j| d1[i] * m[(row_perm[i], col_perm[j])] * d2[j]);
    HadamardMatrix { mat: out, tol: h.tol }
}

/// Number of decimal digits used when rounding fingerprint magnitudes.
pub fn fingerprint_digits(tol: f64) -> usize {
    (-tol.log10()).ceil().max(1.0) as usize
}

/// Equivalence fingerprint: the sorted multiset of profile magnitudes
/// `|p_{a,b}^{c,d}|`, rounded to `ceil(-log10 tol)` decimals.
///
/// Permutations permute the multiset and diagonal factors only change phases,
/// so equivalent matrices yield identical fingerprints; differing fingerprints
/// certify inequivalence (the converse does not hold).
pub fn equivalence_fingerprint(h: &HadamardMatrix) -> Vec<f64> {
    let p = crate::profile::profile(h);
    let digits = fingerprint_digits(h.tol());
    let scale = 10f64.powi(digits as i32);
    let mut values: Vec<f64> =
        p.entries().iter().map(|z| (z.norm() * scale).round() / scale).collect();
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite magnitudes"));
    values
}

/// Hex SHA-256 digest of a fingerprint, for compact report output.
pub fn fingerprint_hash(fingerprint: &[f64], digits: usize) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    for v in fingerprint {
        hasher.update(format!("{v:.digits$};").as_bytes());
    }
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}
