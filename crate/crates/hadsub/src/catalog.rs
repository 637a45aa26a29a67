//! The built-in catalog of complex Hadamard matrix families.
//!
//! Families are driven by real *angle* parameters: a parameter value `t`
//! enters the matrix as the unimodular scalar `e^{it}`. The exception is
//! `fourier`, whose single parameter is the matrix size itself. Every
//! constructor re-verifies the Hadamard property before returning, so a bad
//! parameter (e.g. an angle outside the `bn6` domain) surfaces as an error
//! rather than as a silently non-Hadamard matrix.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hadamard::{verify_hadamard, HadamardMatrix, DEFAULT_TOL};
use crate::matrix::{unit, Scalar, SquareMatrix};

/// Identifiers for the built-in families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Fourier matrix `F_n`; parameter = size `n`.
    Fourier,
    /// 4x4 one-parameter affine family through `F_4`.
    F4,
    /// 6x6 two-parameter affine family through `F_6`.
    F6,
    /// 6x6 self-adjoint one-parameter family (restricted angle domain).
    Bn6,
    /// Petrescu's 7x7 one-parameter family.
    P7,
    /// 8x8 five-parameter affine family through `F_8`.
    F8,
    /// Tao's 6x6 matrix (third roots of unity); no parameters.
    Tao,
    /// A fixed member of Haagerup's 6x6 family; no parameters.
    Haagerup,
}

/// Static description of a family: tag, size behaviour, parameter count.
#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub family: Family,
    pub tag: &'static str,
    pub size: Option<usize>,
    pub arity: usize,
    pub summary: &'static str,
}

/// All catalog families, in listing order.
pub fn families() -> Vec<FamilySpec> {
    vec![
        FamilySpec {
            family: Family::Fourier,
            tag: "fourier",
            size: None,
            arity: 1,
            summary: "Fourier matrix F_n with entries w^{ij}; parameter is the size n >= 2",
        },
        FamilySpec {
            family: Family::F4,
            tag: "f4",
            size: Some(4),
            arity: 1,
            summary: "4x4 affine family F_4(a); a = i recovers the Fourier matrix",
        },
        FamilySpec {
            family: Family::F6,
            tag: "f6",
            size: Some(6),
            arity: 2,
            summary: "6x6 affine family F_6(a,b) through the Fourier matrix",
        },
        FamilySpec {
            family: Family::Bn6,
            tag: "bn6",
            size: Some(6),
            arity: 1,
            summary: "6x6 self-adjoint family BN_6(theta); |theta| in [acos((sqrt(3)-1)/2), pi]",
        },
        FamilySpec {
            family: Family::P7,
            tag: "p7",
            size: Some(7),
            arity: 1,
            summary: "Petrescu's 7x7 family P_7(a)",
        },
        FamilySpec {
            family: Family::F8,
            tag: "f8",
            size: Some(8),
            arity: 5,
            summary: "8x8 affine family F_8(a,b,c,d,z) through the Fourier matrix",
        },
        FamilySpec {
            family: Family::Tao,
            tag: "tao",
            size: Some(6),
            arity: 0,
            summary: "Tao's 6x6 matrix over third roots of unity",
        },
        FamilySpec {
            family: Family::Haagerup,
            tag: "haagerup",
            size: Some(6),
            arity: 0,
            summary: "Haagerup's 6x6 matrix (family member at a generic parameter)",
        },
    ]
}

/// Looks up a family by its CLI tag.
pub fn family_by_tag(tag: &str) -> Result<Family> {
    families()
        .into_iter()
        .find(|spec| spec.tag == tag)
        .map(|spec| spec.family)
        .ok_or_else(|| Error::UnknownFamily(tag.to_string()))
}

pub fn spec_of(family: Family) -> FamilySpec {
    families().into_iter().find(|spec| spec.family == family).expect("every family is listed")
}

/// Lower end of the valid `|theta|` range for `bn6`: `acos((sqrt(3)-1)/2)`.
pub fn bn6_min_angle() -> f64 {
    ((3f64.sqrt() - 1.0) / 2.0).acos()
}

/// Builds a catalog matrix. `params` are angles in radians (`fourier` takes
/// the size instead). The result is verified at the default tolerance.
pub fn catalog_matrix(family: Family, params: &[f64]) -> Result<HadamardMatrix> {
    let spec = spec_of(family);
    if params.len() != spec.arity {
        return Err(Error::ParamArity {
            family: spec.tag.into(),
            expected: spec.arity,
            got: params.len(),
        });
    }
    let mat = match family {
        Family::Fourier => fourier_matrix(params[0])?,
        Family::F4 => f4_matrix(unit(params[0])),
        Family::F6 => f6_matrix(unit(params[0]), unit(params[1])),
        Family::Bn6 => bn6_matrix(params[0])?,
        Family::P7 => p7_matrix(unit(params[0])),
        Family::F8 => f8_matrix(
            unit(params[0]),
            unit(params[1]),
            unit(params[2]),
            unit(params[3]),
            unit(params[4]),
        ),
        Family::Tao => tao_matrix(),
        Family::Haagerup => haagerup_matrix(),
    };
    verify_hadamard(&mat, DEFAULT_TOL).map_err(|e| match e {
        // A verification failure for a catalog matrix is a parameter problem
        // (e.g. a branch leaving the unit circle), not a malformed input.
        Error::NotUnimodular { i, j, modulus, .. } => Error::InvalidParam {
            family: spec.tag.into(),
            reason: format!("entry ({i},{j}) left the unit circle (modulus {modulus:.6})"),
        },
        other => other,
    })
}

fn fourier_matrix(size_param: f64) -> Result<SquareMatrix> {
    let n = size_param as usize;
    if size_param.fract() != 0.0 || n < 2 {
        return Err(Error::InvalidParam {
            family: "fourier".into(),
            reason: format!("size must be an integer >= 2, got {size_param}"),
        });
    }
    if n > 64 {
        return Err(Error::UnsupportedSize { n, reason: "fourier size capped at 64".into() });
    }
    // Entries w^{ij} with 1-based i, j (not dephased; dephasing shifts to
    // the familiar w^{(i-1)(j-1)} form).
    Ok(SquareMatrix::from_fn(n, |i, j| {
        unit(TAU / n as f64 * ((i + 1) as f64) * ((j + 1) as f64))
    }))
}

fn f4_matrix(a: Scalar) -> SquareMatrix {
    let one = Scalar::new(1.0, 0.0);
    rows_to_matrix(vec![
        vec![one, one, one, one],
        vec![one, a, -one, -a],
        vec![one, -one, one, -one],
        vec![one, -a, -one, a],
    ])
}

fn f6_matrix(a: Scalar, b: Scalar) -> SquareMatrix {
    let one = Scalar::new(1.0, 0.0);
    let e = unit(PI / 3.0); // primitive 6th root
    let e2 = e * e;
    let (ec, e2c) = (e.conj(), e2.conj());
    rows_to_matrix(vec![
        vec![one, one, one, one, one, one],
        vec![one, a * e, b * e2, -one, a * e2c, b * ec],
        vec![one, e2, e2c, one, e2, e2c],
        vec![one, -a, b, -one, a, -b],
        vec![one, e2c, e2, one, e2c, e2],
        vec![one, a * ec, b * e2c, -one, a * e2, b * e],
    ])
}

fn bn6_matrix(theta: f64) -> Result<SquareMatrix> {
    // Normalize into (-pi, pi] before checking the domain.
    let mut t = theta.rem_euclid(TAU);
    if t > PI {
        t -= TAU;
    }
    if t.abs() < bn6_min_angle() {
        return Err(Error::InvalidParam {
            family: "bn6".into(),
            reason: format!(
                "theta = {theta} normalizes to {t:.6}; |theta| must lie in [{:.6}, pi]",
                bn6_min_angle()
            ),
        });
    }
    let one = Scalar::new(1.0, 0.0);
    let y = unit(t);
    let y2 = y * y;
    // z is unimodular for every unimodular y with nonzero denominators;
    // x and t_ are unimodular exactly on the valid theta domain (principal
    // square root branch), which the final verification certifies.
    let disc = (one + y.scale_re(2.0) + (y * y2).scale_re(2.0) + y2 * y2).sqrt();
    let num = one + y.scale_re(2.0) + y2 - disc.scale_re(2f64.sqrt());
    let x = num / (one + y.scale_re(2.0) - y2);
    let t_ = num / (-one + y.scale_re(2.0) + y2);
    let z = (one + y.scale_re(2.0) - y2) / (y * (-one + y.scale_re(2.0) + y2));

    let (xc, yc, zc, tc) = (x.conj(), y.conj(), z.conj(), t_.conj());
    Ok(rows_to_matrix(vec![
        vec![one, one, one, one, one, one],
        vec![one, -one, xc, -y, -xc, y],
        vec![one, x, -one, t_, -t_, -x],
        vec![one, -yc, tc, -one, yc, -tc],
        vec![one, -x, -tc, y, one, zc],
        vec![one, yc, -xc, -t_, z, one],
    ]))
}

fn p7_matrix(a: Scalar) -> SquareMatrix {
    let one = Scalar::new(1.0, 0.0);
    let e = unit(PI / 3.0);
    let (ec, e2c) = (e.conj(), (e * e).conj());
    let ac = a.conj(); // 1/a for unimodular a
    rows_to_matrix(vec![
        vec![one, one, one, one, one, one, one],
        vec![one, a * e, a * e2c, ec, -one, -one, e],
        vec![one, a * e2c, a * e, -one, ec, -one, e],
        vec![one, ec, -one, e * ac, ac * e2c, e, -one],
        vec![one, -one, ec, ac * e2c, e * ac, e, -one],
        vec![one, -one, -one, e, e, e2c, ec],
        vec![one, e, e, -one, -one, ec, e2c],
    ])
}

fn f8_matrix(a: Scalar, b: Scalar, c: Scalar, d: Scalar, z: Scalar) -> SquareMatrix {
    let one = Scalar::new(1.0, 0.0);
    let i = Scalar::new(0.0, 1.0);
    let q = unit(PI / 4.0); // primitive 8th root
    let q3 = q * q * q;
    let (qc, q3c) = (q.conj(), q3.conj());
    let w = c * z * a.conj(); // c z / a for unimodular a
    rows_to_matrix(vec![
        vec![one, one, one, one, one, one, one, one],
        vec![one, a * q, i * b, c * q3, -one, a * q3c, -i * b, c * qc],
        vec![one, i * d, -one, -i * d, one, i * d, -one, -i * d],
        vec![one, z * q3, -i * b, w * q, -one, z * qc, i * b, w * q3c],
        vec![one, -one, one, -one, one, -one, one, -one],
        vec![one, a * q3c, i * b, c * qc, -one, a * q, -i * b, c * q3],
        vec![one, -i * d, -one, i * d, one, -i * d, -one, i * d],
        vec![one, z * qc, -i * b, w * q3c, -one, z * q3, i * b, w * q],
    ])
}

fn tao_matrix() -> SquareMatrix {
    let one = Scalar::new(1.0, 0.0);
    let w = unit(TAU / 3.0);
    let w2 = w * w;
    rows_to_matrix(vec![
        vec![one, one, one, one, one, one],
        vec![one, one, w, w, w2, w2],
        vec![one, w, one, w2, w2, w],
        vec![one, w, w2, one, w, w2],
        vec![one, w2, w2, w, one, w],
        vec![one, w2, w, w2, w, one],
    ])
}

/// Angle of the Haagerup family parameter `q` frozen into the catalog.
///
/// The family is Hadamard for every unimodular `q`; a generic angle is used so
/// the catalog entry has the family's generic invariants (second commutant
/// generated by the Jones projection alone).
pub const HAAGERUP_Q_ANGLE: f64 = 1.0;

fn haagerup_matrix() -> SquareMatrix {
    let one = Scalar::new(1.0, 0.0);
    let i = Scalar::new(0.0, 1.0);
    let q = unit(HAAGERUP_Q_ANGLE);
    let qc = q.conj();
    rows_to_matrix(vec![
        vec![one, one, one, one, one, one],
        vec![one, -one, i, i, -i, -i],
        vec![one, i, -one, -i, q, -q],
        vec![one, i, -i, -one, -q, q],
        vec![one, -i, qc, -qc, i, -one],
        vec![one, -i, -qc, qc, -one, i],
    ])
}

fn rows_to_matrix(rows: Vec<Vec<Scalar>>) -> SquareMatrix {
    SquareMatrix::from_rows(rows).expect("catalog rows are square by construction")
}

/// Small extension trait: scale a complex by a real without building a Scalar.
trait ScaleRe {
    fn scale_re(self, s: f64) -> Self;
}

impl ScaleRe for Complex64 {
    fn scale_re(self, s: f64) -> Self {
        Complex64::new(self.re * s, self.im * s)
    }
}
