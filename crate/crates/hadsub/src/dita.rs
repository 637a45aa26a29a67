//! Block-structured (Dita-type) Hadamard matrices and the intermediate
//! structure they induce.
//!
//! A `k×k` Hadamard matrix `A` composed with `m×m` Hadamard matrices
//! `B_1, …, B_k` (optionally twisted by unit diagonals `D_j`) yields an
//! `n×n` Hadamard matrix with `n = m·k`, laid out as a `k×k` grid of `m×m`
//! blocks `a_{i,j}·B_jD_j`. Such matrices carry extra symmetry: the diagonal
//! *Bisch projection* `f = Σ_{i≡j (mod m)} e_ii ⊗ e_jj` lands in the second
//! relative commutant, which certifies an intermediate subfactor. This module
//! builds the composition, decides membership of `f` from the profile tensor,
//! and verifies the two closed-form identities that decompose the commuting
//! square into two adjacent ones.

use crate::error::{Error, Result};
use crate::hadamard::{verify_hadamard, HadamardMatrix};
use crate::linalg::span_rank;
use crate::matrix::{matrix_unit, Scalar, SquareMatrix};
use crate::profile::profile;
use crate::tower::{AlgebraDescriptor, Leg, TowerElement};

/// Block layout of an `n×n` matrix as a `k×k` grid of `m×m` blocks,
/// `n = m·k` with `m, k ≥ 2`.
///
/// One-based indices decompose as `i ↦ (i_0, i_1)` with
/// `i_0 = (i−1) mod m + 1` (position inside a block) and
/// `i_1 = (i − i_0)/m + 1` (which block), a bijection
/// `{1..n} ↔ {1..m} × {1..k}`. The zero-based equivalents are [`fine`] and
/// [`block`].
///
/// [`fine`]: DitaShape::fine
/// [`block`]: DitaShape::block
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DitaShape {
    n: usize,
    m: usize,
    k: usize,
}

impl DitaShape {
    /// Validates `n = m·k` with `m, k ≥ 2`.
    pub fn new(n: usize, m: usize, k: usize) -> Result<Self> {
        if m < 2 || k < 2 {
            return Err(Error::ShapeMismatch(format!(
                "block layout needs m >= 2 and k >= 2, got m = {m}, k = {k}"
            )));
        }
        if n != m * k {
            return Err(Error::ShapeMismatch(format!(
                "block layout needs n = m*k, got n = {n} with m = {m}, k = {k}"
            )));
        }
        Ok(DitaShape { n, m, k })
    }

    /// Total size `n = m·k`.
    pub fn n(self) -> usize {
        self.n
    }

    /// Block size `m`.
    pub fn m(self) -> usize {
        self.m
    }

    /// Number of blocks per side, `k`.
    pub fn k(self) -> usize {
        self.k
    }

    /// Within-block part of a zero-based index (`i_0 − 1`).
    pub fn fine(self, i: usize) -> usize {
        i % self.m
    }

    /// Block part of a zero-based index (`i_1 − 1`).
    pub fn block(self, i: usize) -> usize {
        i / self.m
    }
}

impl std::fmt::Display for DitaShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.m, self.k)
    }
}

/// The diagonal projection `f = Σ_{i ≡ j (mod m)} e_ii ⊗ e_jj` on `C^{n²}`,
/// supported on the graph vertices whose row and column share a fine index.
#[derive(Debug, Clone)]
pub struct BischProjection {
    pub shape: DitaShape,
    /// `n²×n²` diagonal 0/1 matrix.
    pub mat: SquareMatrix,
}

impl BischProjection {
    /// One-based vertex labels `(i−1)·n + j` of the supported diagonal
    /// positions, ascending. Useful for comparing the support of `f` against
    /// a partition of the profile graph.
    pub fn vertex_labels(&self) -> Vec<usize> {
        let n = self.shape.n();
        let mut labels = Vec::with_capacity(n * self.shape.k());
        for a in 0..n {
            for c in 0..n {
                if self.shape.fine(a) == self.shape.fine(c) {
                    labels.push(a * n + c + 1);
                }
            }
        }
        labels
    }
}

/// Builds the Bisch projection of a block layout. It dominates the second
/// Jones projection (`f·e_3 = e_3`, since `i ≡ i`) and has normalized trace
/// `1/m`: each of the `n` rows contributes `k` columns sharing its fine
/// index.
pub fn bisch_projection(shape: DitaShape) -> BischProjection {
    let n = shape.n();
    let mat = SquareMatrix::from_fn(n * n, |r, c| {
        if r == c && shape.fine(r / n) == shape.fine(r % n) {
            Scalar::new(1.0, 0.0)
        } else {
            Scalar::new(0.0, 0.0)
        }
    });
    BischProjection { shape, mat }
}

/// Validates composition inputs and returns the layout together with the
/// twisted blocks `B'_j = B_j·D_j`.
fn prepared_blocks(
    a: &HadamardMatrix,
    b: &[HadamardMatrix],
    d: Option<&[SquareMatrix]>,
) -> Result<(DitaShape, Vec<SquareMatrix>)> {
    let k = a.size();
    if b.len() != k {
        return Err(Error::ShapeMismatch(format!(
            "a {k}×{k} outer matrix needs {k} block matrices, got {}",
            b.len()
        )));
    }
    let m = b[0].size();
    if b.iter().any(|bj| bj.size() != m) {
        return Err(Error::ShapeMismatch(
            "all block matrices must share one size".into(),
        ));
    }
    let shape = DitaShape::new(m * k, m, k)?;
    let tol = a.tol();
    let mut twisted = Vec::with_capacity(k);
    for (j, bj) in b.iter().enumerate() {
        let bj = bj.matrix();
        match d {
            None => twisted.push(bj.clone()),
            Some(ds) => {
                if ds.len() != k {
                    return Err(Error::ShapeMismatch(format!(
                        "expected {k} diagonal twists, got {}",
                        ds.len()
                    )));
                }
                let dj = &ds[j];
                if dj.size() != m {
                    return Err(Error::ShapeMismatch(format!(
                        "diagonal twist {} is {}×{}, expected {m}×{m}",
                        j + 1,
                        dj.size(),
                        dj.size()
                    )));
                }
                for r in 0..m {
                    for c in 0..m {
                        let mag = dj[(r, c)].norm();
                        let bad = if r == c { (mag - 1.0).abs() > tol } else { mag > tol };
                        if bad {
                            return Err(Error::ShapeMismatch(format!(
                                "twist {} is not a unit diagonal at entry ({}, {})",
                                j + 1,
                                r + 1,
                                c + 1
                            )));
                        }
                    }
                }
                // Right multiplication by a diagonal scales columns.
                twisted.push(SquareMatrix::from_fn(m, |r, c| bj[(r, c)] * dj[(c, c)]));
            }
        }
    }
    Ok((shape, twisted))
}

/// Assembles the block matrix with `(i_1, j_1)` block `a_{i_1 j_1}·B'_{j_1}`.
fn compose_blocks(a: &SquareMatrix, twisted: &[SquareMatrix], shape: DitaShape) -> SquareMatrix {
    SquareMatrix::from_fn(shape.n(), |i, j| {
        a[(shape.block(i), shape.block(j))] * twisted[shape.block(j)][(shape.fine(i), shape.fine(j))]
    })
}

/// Composes a `k×k` Hadamard matrix `A` with `m×m` Hadamard matrices
/// `B_1..B_k`, optionally twisted by unit diagonals `D_1..D_k`, into the
/// `n×n` block matrix with `(i_1, j_1)` block `a_{i_1 j_1}·B_{j_1}D_{j_1}`.
/// The result is re-verified before it is returned (at the tolerance of
/// `A`). With all `B_j` equal and no twists this is exactly the Kronecker
/// product of `A` and `B`.
pub fn dita_compose(
    a: &HadamardMatrix,
    b: &[HadamardMatrix],
    d: Option<&[SquareMatrix]>,
) -> Result<HadamardMatrix> {
    let (shape, twisted) = prepared_blocks(a, b, d)?;
    verify_hadamard(&compose_blocks(a.matrix(), &twisted, shape), a.tol())
}

/// Outcome of the Bisch-projection membership test.
#[derive(Debug, Clone)]
pub struct MembershipCheck {
    /// True when `f` lies in the second relative commutant at the tolerance.
    pub member: bool,
    /// On failure, the one-based quadruple `(a, b, c, d)` of the worst
    /// violating profile entry `p_{a,b}^{c,d}`: rows `a ≡ c` and columns
    /// `b ≢ d` modulo `m`, yet `|p| > tol`.
    pub witness: Option<(usize, usize, usize, usize)>,
    /// Largest profile modulus over the forbidden index region; membership
    /// holds exactly when this stays at or below the tolerance.
    pub worst: f64,
}

/// Decides whether the Bisch projection of `shape` commutes with the first
/// tower projection, reading the profile tensor directly: `f` is a member
/// exactly when every entry `p_{a,b}^{c,d}` with `a ≡ c (mod m)` and
/// `b ≢ d (mod m)` vanishes. (The mirrored region `a ≢ c`, `b ≡ d` carries
/// the conjugate entries, so one scan is complete.)
pub fn verify_bisch_membership(
    h: &HadamardMatrix,
    shape: DitaShape,
    tol: f64,
) -> Result<MembershipCheck> {
    let n = h.size();
    if n != shape.n() {
        return Err(Error::ShapeMismatch(format!(
            "matrix is {n}×{n} but the block layout expects {}×{}",
            shape.n(),
            shape.n()
        )));
    }
    let p = profile(h);
    let mut worst = 0.0f64;
    let mut witness = None;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if shape.fine(a) != shape.fine(c) {
                    continue;
                }
                for d in 0..n {
                    if shape.fine(b) == shape.fine(d) {
                        continue;
                    }
                    let mag = p.get(a, b, c, d).norm();
                    if mag > worst {
                        worst = mag;
                        witness = Some((a + 1, b + 1, c + 1, d + 1));
                    }
                }
            }
        }
    }
    let member = worst <= tol;
    Ok(MembershipCheck { member, witness: if member { None } else { witness }, worst })
}

/// Max-norm of the commutator `[f, P_1]` — the matrix route to the same
/// decision as [`verify_bisch_membership`]. Since `f` is a 0/1 diagonal,
/// the commutator entries are exactly the profile entries bridging the
/// support of `f` and its complement, so this defect equals the `worst`
/// field of the membership check.
pub fn bisch_commutator_defect(h: &HadamardMatrix, shape: DitaShape) -> Result<f64> {
    if h.size() != shape.n() {
        return Err(Error::ShapeMismatch(format!(
            "matrix is {}×{} but the block layout expects {}×{}",
            h.size(),
            h.size(),
            shape.n(),
            shape.n()
        )));
    }
    let f = bisch_projection(shape).mat;
    let p1 = profile(h).as_projection();
    Ok(f.commutator(&p1).max_abs())
}

/// Defect report for the decomposition of the commuting square into two
/// adjacent ones through the intermediate algebra.
#[derive(Debug, Clone)]
pub struct DecompositionCheck {
    /// All closed forms matched and the corner dimensions multiply.
    pub passed: bool,
    /// Worst mismatch of `U*(I_k ⊗ D)U` against its block-diagonal closed
    /// form, over the diagonal units `D = e_tt` of the `m×m` factor.
    pub defect_a: f64,
    /// Worst entry of `U*(I_k ⊗ D)U` outside the block-diagonal support.
    pub support_defect_a: f64,
    /// Worst mismatch of the conditional-expectation closed form for
    /// `diag(U (e_jj ⊗ e_rs) U*)`, over the full unit basis.
    pub defect_b: f64,
    /// Worst deviation of `diag(U e_vv U*)` from the flat value `1/n` — the
    /// commuting-square condition of both adjacent squares. The closed
    /// forms (a) and (b) are identities in the blocks whenever the outer
    /// matrix is Hadamard, so this is the check that actually binds the
    /// blocks: it vanishes exactly when every twisted block is unimodular.
    pub square_defect: f64,
    /// Span ranks of the three corner algebras: the fine diagonal
    /// `I_k ⊗ D_m`, the rotated full diagonal `U(D_k ⊗ D_m)U*`, and the
    /// rotated half-matrix algebra `U(D_k ⊗ M_m)U*`.
    pub corner_ranks: [usize; 3],
    /// Whether the first two corner ranks multiply to the third
    /// (`m · n = m²k`), the symmetry bookkeeping of the two squares.
    pub bookkeeping_ok: bool,
}

/// Verifies that the commuting square of the composed matrix splits into two
/// adjacent squares through the intermediate algebra, by checking closed
/// forms on spanning sets:
///
/// (a) `U*(I_k ⊗ e_tt)U = (k/n)·Σ_j e_jj ⊗ (B'_j)* e_tt B'_j` for each fine
///     diagonal unit — in particular the left side is supported on the
///     block-diagonal pattern `Diag(k) ⊗ Full(m)`;
/// (b) `diag(U (e_jj ⊗ e_rs) U*) = (1/n)·diag over blocks of B'_j e_rs (B'_j)*`
///     for every unit pair — the compression of the rotated algebra to the
///     diagonal factors through the intermediate algebra;
/// (c) the corner dimensions of the two squares multiply:
///     `dim(I_k ⊗ D_m) · dim(U(D_k ⊗ D_m)U*) = dim(U(D_k ⊗ M_m)U*)`;
///
/// plus the commuting-square condition itself, `diag(U e_vv U*) = (1/n)·I`
/// for every `v`, which is what fails when a block is not unimodular.
///
/// `H` is assembled internally from the same inputs as [`dita_compose`] but
/// without re-verification, so a deliberately broken block surfaces here as
/// a defect rather than an upstream error.
pub fn verify_intermediate_decomposition(
    a: &HadamardMatrix,
    b: &[HadamardMatrix],
    d: Option<&[SquareMatrix]>,
    tol: f64,
) -> Result<DecompositionCheck> {
    let (shape, twisted) = prepared_blocks(a, b, d)?;
    let (n, m, k) = (shape.n(), shape.m(), shape.k());
    let h = compose_blocks(a.matrix(), &twisted, shape);
    let u = h.scale(Scalar::new(1.0 / (n as f64).sqrt(), 0.0));
    let uh = u.adjoint();
    let eye_k = SquareMatrix::identity(k);

    // (a) rotate each fine diagonal unit down into the block-diagonal form.
    let support = AlgebraDescriptor::new(vec![Leg::Diag(k), Leg::Full(m)]);
    let mut defect_a = 0.0f64;
    let mut support_defect_a = 0.0f64;
    let scale_a = Scalar::new(k as f64 / n as f64, 0.0);
    for t in 0..m {
        let ett = matrix_unit(m, t, t);
        let lhs = uh.mul(&eye_k.kron(&ett)).mul(&u);
        let mut rhs = SquareMatrix::zeros(n);
        for (j, bj) in twisted.iter().enumerate() {
            let core = bj.adjoint().mul(&ett).mul(bj);
            rhs = rhs.add(&matrix_unit(k, j, j).kron(&core));
        }
        defect_a = defect_a.max(lhs.max_abs_diff(&rhs.scale(scale_a)));
        let element = TowerElement { descriptor: support.clone(), mat: lhs };
        support_defect_a = support_defect_a.max(element.support_defect());
    }

    // The commuting-square condition: every |u_{i,v}|² must equal 1/n.
    let mut square_defect = 0.0f64;
    for v in 0..n {
        for i in 0..n {
            square_defect = square_defect.max((u[(i, v)].norm_sqr() - 1.0 / n as f64).abs());
        }
    }

    // (b) expectation onto the diagonal, over the full unit basis.
    let mut defect_b = 0.0f64;
    let inv_n = 1.0 / n as f64;
    for (j, bj) in twisted.iter().enumerate() {
        let ejj = matrix_unit(k, j, j);
        for r in 0..m {
            for s in 0..m {
                let rotated = u.mul(&ejj.kron(&matrix_unit(m, r, s))).mul(&uh);
                let core = bj.mul(&matrix_unit(m, r, s)).mul(&bj.adjoint());
                for i in 0..n {
                    let want = core[(shape.fine(i), shape.fine(i))] * inv_n;
                    defect_b = defect_b.max((rotated[(i, i)] - want).norm());
                }
            }
        }
    }

    // (c) corner dimensions of the two adjacent squares.
    let ul: Vec<Vec<Scalar>> = (0..m)
        .map(|t| eye_k.kron(&matrix_unit(m, t, t)).entries().to_vec())
        .collect();
    let mut lr = Vec::with_capacity(n);
    let mut ur = Vec::with_capacity(m * m * k);
    for j in 0..k {
        let ejj = matrix_unit(k, j, j);
        for r in 0..m {
            for s in 0..m {
                let rotated = u.mul(&ejj.kron(&matrix_unit(m, r, s))).mul(&uh);
                if r == s {
                    lr.push(rotated.entries().to_vec());
                }
                ur.push(rotated.entries().to_vec());
            }
        }
    }
    let corner_ranks = [
        span_rank(&ul, 1e-9),
        span_rank(&lr, 1e-9),
        span_rank(&ur, 1e-9),
    ];
    let bookkeeping_ok = corner_ranks[0] * corner_ranks[1] == corner_ranks[2]
        && corner_ranks[2] == m * m * k;

    Ok(DecompositionCheck {
        passed: defect_a <= tol
            && support_defect_a <= tol
            && defect_b <= tol
            && square_defect <= tol
            && bookkeeping_ok,
        defect_a,
        support_defect_a,
        defect_b,
        square_defect,
        corner_ranks,
        bookkeeping_ok,
    })
}

/// Outcome of the conditional-expectation identity check.
#[derive(Debug, Clone)]
pub struct ExpectationCheck {
    pub passed: bool,
    /// Worst entry mismatch over the full matrix-unit basis.
    pub worst_defect: f64,
}

/// Checks that compressing by `f` implements the conditional expectation
/// onto the intermediate algebra: for every matrix unit `x = e_{r,s}`,
/// `f·(x ⊗ I_n)·f = (E(x) ⊗ I_n)·f`, where `E` keeps exactly the units
/// with `r ≡ s (mod m)`.
pub fn verify_bisch_expectation(shape: DitaShape, tol: f64) -> ExpectationCheck {
    let n = shape.n();
    let f = bisch_projection(shape).mat;
    let eye = SquareMatrix::identity(n);
    let mut worst = 0.0f64;
    for r in 0..n {
        for s in 0..n {
            let lifted = matrix_unit(n, r, s).kron(&eye);
            let lhs = f.mul(&lifted).mul(&f);
            let rhs = if shape.fine(r) == shape.fine(s) {
                lifted.mul(&f)
            } else {
                SquareMatrix::zeros(n * n)
            };
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
    }
    ExpectationCheck { passed: worst <= tol, worst_defect: worst }
}
