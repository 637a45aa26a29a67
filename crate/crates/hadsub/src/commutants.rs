//! Relative commutants of the spin-model subfactor.
//!
//! The `(i+1)`-th relative commutant is computed as the set of elements of
//! `D_n' ∩ P_i` commuting with the tower projection `P_i`:
//!
//! * order 2: `{X ∈ D_n ⊗ D_n : [X, P_1] = 0}` — because `P_1` is the profile
//!   tensor arranged as a matrix, this has a purely combinatorial answer: the
//!   commutant dimension is the number of connected components of the *profile
//!   graph* on vertices `(a, c)`, with an edge `(a,c) — (b,d)` whenever
//!   `p_{a,b}^{c,d} ≠ 0` ([`second_commutant`]);
//! * order 3: `{X ∈ D_n ⊗ M_n : [X ⊗ I, P_2] = 0}`, `n^3` unknowns;
//! * order 4: `{X ∈ D_n ⊗ M_n ⊗ D_n : [X, P_3] = 0}`, `n^4` unknowns.
//!
//! The linear orders are decided spectrally: the Gram matrix of the
//! commutators `[B_s, P]` over the canonical basis is assembled in closed form
//! and its kernel dimension is read off the eigenvalue gap
//! ([`relative_commutant_dim`]). For order 2 both routes are available and
//! must agree, which is a standing cross-check: the Gram matrix there is a
//! weighted graph Laplacian of the profile graph, whose kernel counts
//! connected components.

use std::collections::BTreeSet;
use std::fmt;

use crate::catalog::{bn6_min_angle, catalog_matrix, Family};
use crate::error::{Error, Result};
use crate::hadamard::HadamardMatrix;
use crate::linalg::{commutator_gram, decide_nullity, hermitian_eigenvalues, RankGap, UnitSum};
use crate::matrix::{Scalar, SquareMatrix};
use crate::profile::{profile, ProfileTensor};
use crate::tower::{tower_projection_with_limit, AlgebraDescriptor, TowerElement, MAX_AMBIENT};

/// Largest spin size accepted by the order-3 computation without forcing.
pub const ORDER3_SIZE_LIMIT: usize = 8;

/// Largest spin size accepted by the order-4 computation without forcing.
pub const ORDER4_SIZE_LIMIT: usize = 6;

/// A partition of the vertex grid `{1, …, n^2}`, blocks and elements sorted
/// ascending, blocks ordered by their least element. Vertex `(a, c)` (rows of
/// the Hadamard matrix, both 1-based) carries the label `(a-1)n + c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
            b.dedup();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_by_key(|b| b[0]);
        Partition { blocks }
    }

    /// Number of blocks — the commutant dimension.
    pub fn dim(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Block sizes, largest first: a compact signature for sweeps.
    pub fn block_sizes_desc(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// Whether the given vertex set is exactly a union of blocks. This is the
    /// membership test behind intermediate-subfactor checks: a biprojection's
    /// support must not cut through any block.
    pub fn is_union_of_blocks(&self, vertices: &[usize]) -> bool {
        let set: BTreeSet<usize> = vertices.iter().copied().collect();
        let mut covered = 0usize;
        for b in &self.blocks {
            let inside = b.iter().filter(|v| set.contains(v)).count();
            if inside != 0 && inside != b.len() {
                return false;
            }
            covered += inside;
        }
        covered == set.len()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "{{")?;
            for (i, v) in b.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// The second relative commutant, with its defining partition.
#[derive(Debug, Clone)]
pub struct SecondCommutant {
    /// Commutant dimension (number of partition blocks).
    pub dim: usize,
    /// Connected components of the profile graph, 1-based vertex labels.
    pub partition: Partition,
}

/// Computes the second relative commutant combinatorially: union-find over
/// the profile graph, using the certification tolerance of `h` as the zero
/// threshold for profile entries.
pub fn second_commutant(h: &HadamardMatrix) -> SecondCommutant {
    let n = h.size();
    let p = profile(h);
    let partition = profile_partition(&p, h.tol());
    debug_assert_eq!(partition.blocks().iter().map(Vec::len).sum::<usize>(), n * n);
    SecondCommutant { dim: partition.dim(), partition }
}

/// The profile-graph partition for an already-computed profile tensor.
pub fn profile_partition(p: &ProfileTensor, tol: f64) -> Partition {
    let n = p.n();
    let mut uf = UnionFind::new(n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if p.get(a, b, c, d).norm() > tol {
                        uf.union(a * n + c, b * n + d);
                    }
                }
            }
        }
    }
    uf.into_partition()
}

/// Result of a spectral relative-commutant computation.
#[derive(Debug, Clone)]
pub struct CommutantDim {
    /// Which relative commutant (2, 3 or 4).
    pub order: usize,
    /// Its linear dimension — the kernel dimension of the commutator Gram.
    pub dim: usize,
    /// Number of basis elements of the enclosing algebra `D_n' ∩ P_{order-1}`.
    pub basis_size: usize,
    /// Eigenvalue-gap details of the rank decision.
    pub gap: RankGap,
}

/// Computes the dimension of the second, third or fourth relative commutant
/// spectrally. Sizes above [`ORDER3_SIZE_LIMIT`] / [`ORDER4_SIZE_LIMIT`] are
/// refused; an eigenvalue gap within a factor 10 of the zero threshold is
/// reported as [`Error::AmbiguousRank`]. Both guards can be overridden with
/// [`relative_commutant_dim_forced`].
pub fn relative_commutant_dim(h: &HadamardMatrix, order: usize) -> Result<CommutantDim> {
    commutant_dim_impl(h, order, false)
}

/// Like [`relative_commutant_dim`], but ignores the size guard and returns a
/// result even when the eigenvalue gap is ambiguous (inspect
/// [`CommutantDim::gap`] in that case).
pub fn relative_commutant_dim_forced(h: &HadamardMatrix, order: usize) -> Result<CommutantDim> {
    commutant_dim_impl(h, order, true)
}

/// The second relative commutant by the spectral route: kernel of the
/// commutator Gram against the first tower projection built through the
/// correction unitaries. Independent of the profile-graph method of
/// [`second_commutant`], whose dimension it must reproduce.
pub fn second_commutant_direct(h: &HadamardMatrix) -> Result<CommutantDim> {
    relative_commutant_dim(h, 2)
}

fn commutant_dim_impl(h: &HadamardMatrix, order: usize, force: bool) -> Result<CommutantDim> {
    let n = h.size();
    let ambient_limit = if force { usize::MAX } else { MAX_AMBIENT };
    let (proj, basis): (SquareMatrix, Vec<UnitSum>) = match order {
        2 => {
            let p1 = tower_projection_with_limit(h, 1, ambient_limit)?;
            let basis = (0..n * n).map(|v| UnitSum { units: vec![(v, v)] }).collect();
            (p1.mat, basis)
        }
        3 => {
            if !force && n > ORDER3_SIZE_LIMIT {
                return Err(Error::SizeLimit { size: n, limit: ORDER3_SIZE_LIMIT });
            }
            let p2 = tower_projection_with_limit(h, 2, ambient_limit)?;
            // Basis of D_n ⊗ M_n, embedded as X ⊗ I: e_aa ⊗ e_kl ⊗ I is the
            // unit sum Σ_c E_{(a,k,c),(a,l,c)}.
            let mut basis = Vec::with_capacity(n * n * n);
            for a in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let units =
                            (0..n).map(|c| (a * n * n + k * n + c, a * n * n + l * n + c)).collect();
                        basis.push(UnitSum { units });
                    }
                }
            }
            (p2.mat, basis)
        }
        4 => {
            if !force && n > ORDER4_SIZE_LIMIT {
                return Err(Error::SizeLimit { size: n, limit: ORDER4_SIZE_LIMIT });
            }
            let p3 = tower_projection_with_limit(h, 3, ambient_limit)?;
            // Basis of D_n ⊗ M_n ⊗ D_n: e_aa ⊗ e_kl ⊗ e_cc is the single
            // matrix unit E_{(a,k,c),(a,l,c)}.
            let mut basis = Vec::with_capacity(n * n * n * n);
            for a in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        for c in 0..n {
                            let units = vec![(a * n * n + k * n + c, a * n * n + l * n + c)];
                            basis.push(UnitSum { units });
                        }
                    }
                }
            }
            (p3.mat, basis)
        }
        other => {
            return Err(Error::ShapeMismatch(format!(
                "relative commutants are computed for orders 2, 3 and 4; got {other}"
            )))
        }
    };

    let gram = commutator_gram(&proj, &basis);
    let gap = decide_nullity(&hermitian_eigenvalues(&gram));
    if gap.ambiguous && !force {
        return Err(Error::AmbiguousRank { gap: gap.gap_ratio.unwrap_or(1.0) });
    }
    Ok(CommutantDim { order, dim: gap.nullity, basis_size: basis.len(), gap })
}

/// Builds the odd tower projection `P_{2i+1}` directly from the profile
/// tensor: over multi-indices `(a, k_1, …, k_i, c)`,
///
/// ```text
/// P_{2i+1}[(a,k_1,…,k_i,c), (b,l_1,…,l_i,d)]
///   = n^i · p_{a,b}^{k_1,l_1} p_{k_1,l_1}^{k_2,l_2} ⋯ p_{k_i,l_i}^{c,d}.
/// ```
///
/// For `i = 0` this is exactly [`ProfileTensor::as_projection`]. The `n^i`
/// prefactor makes the result a projection of normalized trace `1/n`,
/// matching `tower_projection(h, 2i+1)` entry for entry — a strong
/// cross-check between the unitary and combinatorial routes.
pub fn odd_profile_compose(p: &ProfileTensor, i: usize) -> Result<TowerElement> {
    let n = p.n();
    let legs = i + 2;
    let ambient = n
        .checked_pow(legs as u32)
        .filter(|&s| s <= MAX_AMBIENT)
        .ok_or(Error::SizeLimit { size: n.saturating_pow(legs as u32), limit: MAX_AMBIENT })?;
    // Precompute the digit strings of every linear index (coarse digit first).
    let digit_table: Vec<Vec<usize>> = (0..ambient)
        .map(|mut x| {
            let mut d = vec![0usize; legs];
            for slot in (0..legs).rev() {
                d[slot] = x % n;
                x /= n;
            }
            d
        })
        .collect();
    let scale = (n as f64).powi(i as i32);
    let mat = SquareMatrix::from_fn(ambient, |r, c| {
        let rd = &digit_table[r];
        let cd = &digit_table[c];
        let mut acc = Scalar::new(scale, 0.0);
        for t in 0..=i {
            acc *= p.get(rd[t], cd[t], rd[t + 1], cd[t + 1]);
        }
        acc
    });
    // The projection P_{2i+1} is an element of the next tower algebra.
    Ok(TowerElement { descriptor: AlgebraDescriptor::tower(n, 2 * i + 2), mat })
}

/// One evaluated point of a parameter sweep.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    /// Angle parameters of this grid point, in radians.
    pub params: Vec<f64>,
    /// Second-commutant dimension at this point.
    pub dim: usize,
    /// Partition block sizes, largest first.
    pub block_sizes: Vec<usize>,
    /// Zero pattern of the profile at this point, packed as bits in index
    /// order (1 = entry vanishes at the sweep tolerance).
    pub pattern: Vec<u8>,
}

/// Result of sweeping the second commutant over a parameter grid.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub family: Family,
    /// Grid steps per parameter axis.
    pub steps: Vec<usize>,
    /// Points in row-major axis order (last axis varies fastest).
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    /// The most frequent zero pattern on the grid — the generic one.
    pub fn generic_pattern(&self) -> Vec<u8> {
        let mut counts: std::collections::BTreeMap<&[u8], usize> = Default::default();
        for p in &self.points {
            *counts.entry(&p.pattern).or_default() += 1;
        }
        counts
            .into_iter()
            .max_by_key(|&(_, c)| c)
            .map(|(pat, _)| pat.to_vec())
            .unwrap_or_default()
    }

    /// The dimension attained on the generic pattern.
    pub fn generic_dim(&self) -> usize {
        let pat = self.generic_pattern();
        self.points.iter().find(|p| p.pattern == pat).map(|p| p.dim).unwrap_or(0)
    }

    /// Indices (into `points`) whose zero pattern differs from the generic
    /// one. The exceptional parameter sets of a family are finite, so on a
    /// grid they show up as isolated pattern changes.
    pub fn exceptional_indices(&self) -> Vec<usize> {
        let generic = self.generic_pattern();
        (0..self.points.len()).filter(|&i| self.points[i].pattern != generic).collect()
    }

    /// Decomposes a row-major point index into per-axis grid indices.
    pub fn axis_indices(&self, mut point: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.steps.len()];
        for (slot, &s) in self.steps.iter().enumerate().rev() {
            idx[slot] = point % s;
            point /= s;
        }
        idx
    }
}

/// Hard cap on the number of grid points a sweep will evaluate.
pub const MAX_SWEEP_POINTS: usize = 20_000;

/// Sweeps the second commutant of a continuously parameterized family over a
/// uniform grid. Full-circle parameters take the values `2πk/steps`; the
/// interval-parameterized family samples open midpoints of its valid domain,
/// staying clear of the endpoints. `steps` gives one entry per parameter
/// (at least 8 each), or a single entry broadcast to all axes.
pub fn sweep_second_commutant(family: Family, steps: &[usize]) -> Result<SweepResult> {
    let spec = crate::catalog::spec_of(family);
    let domains = sweep_domains(family)?;
    let steps: Vec<usize> = if steps.len() == domains.len() {
        steps.to_vec()
    } else if steps.len() == 1 {
        vec![steps[0]; domains.len()]
    } else {
        return Err(Error::ParamArity {
            family: spec.tag.to_string(),
            expected: domains.len(),
            got: steps.len(),
        });
    };
    if steps.iter().any(|&s| s < 8) {
        return Err(Error::InvalidParam {
            family: spec.tag.to_string(),
            reason: "sweeps need at least 8 grid steps per parameter".into(),
        });
    }
    let total: usize = steps.iter().product();
    if total > MAX_SWEEP_POINTS {
        return Err(Error::SizeLimit { size: total, limit: MAX_SWEEP_POINTS });
    }

    let mut points = Vec::with_capacity(total);
    let mut params = vec![0.0f64; domains.len()];
    for flat in 0..total {
        let mut rem = flat;
        for slot in (0..domains.len()).rev() {
            let k = rem % steps[slot];
            rem /= steps[slot];
            params[slot] = match domains[slot] {
                ParamDomain::Circle => std::f64::consts::TAU * k as f64 / steps[slot] as f64,
                ParamDomain::Interval { lo, hi } => {
                    lo + (hi - lo) * (k as f64 + 0.5) / steps[slot] as f64
                }
            };
        }
        let h = catalog_matrix(family, &params)?;
        let p = profile(&h);
        let partition = profile_partition(&p, h.tol());
        points.push(SweepPoint {
            params: params.clone(),
            dim: partition.dim(),
            block_sizes: partition.block_sizes_desc(),
            pattern: pack_bits(&p.zero_pattern(h.tol())),
        });
    }
    Ok(SweepResult { family, steps, points })
}

/// Packs a boolean sequence into bytes, first flag in the low bit.
fn pack_bits(flags: &[bool]) -> Vec<u8> {
    let mut out = vec![0u8; flags.len().div_ceil(8)];
    for (i, &f) in flags.iter().enumerate() {
        if f {
            out[i / 8] |= 1 << (i % 8);
        }
    }
    out
}

/// Domain of one sweep axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamDomain {
    /// A full angle parameter on `[0, 2π)`.
    Circle,
    /// An interval of valid angles, endpoints excluded by midpoint sampling.
    Interval { lo: f64, hi: f64 },
}

fn sweep_domains(family: Family) -> Result<Vec<ParamDomain>> {
    use ParamDomain::*;
    match family {
        Family::F4 => Ok(vec![Circle]),
        Family::F6 => Ok(vec![Circle, Circle]),
        Family::P7 => Ok(vec![Circle]),
        Family::F8 => Ok(vec![Circle; 5]),
        Family::Bn6 => Ok(vec![Interval { lo: bn6_min_angle(), hi: std::f64::consts::PI }]),
        other => Err(Error::InvalidParam {
            family: crate::catalog::spec_of(other).tag.to_string(),
            reason: "sweeps need a continuously parameterized family".into(),
        }),
    }
}

/// Union-find with path halving and union by size.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }

    /// Components as a partition of 1-based labels.
    fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..n {
            let r = self.find(v);
            by_root.entry(r).or_default().push(v + 1);
        }
        Partition::new(by_root.into_values().collect())
    }
}
