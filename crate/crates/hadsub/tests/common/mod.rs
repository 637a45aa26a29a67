//! Helpers shared by the integration-test suites.

#![allow(dead_code)]

use std::f64::consts::TAU;

use hadsub::catalog::{catalog_matrix, Family};
use hadsub::dita::{dita_compose, DitaShape};
use hadsub::matrix::unit;
use hadsub::{random_equivalence, HadamardMatrix, SquareMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One deterministic block composition plus the inputs it was built from.
pub struct SeededComposition {
    pub a: HadamardMatrix,
    pub blocks: Vec<HadamardMatrix>,
    pub twists: Vec<SquareMatrix>,
    pub h: HadamardMatrix,
    pub shape: DitaShape,
    pub label: String,
}

/// A deterministic batch of block compositions: every outer/inner size pair
/// from {2, 3, 4} with composed size at most 12, cycled with fresh
/// pseudo-random block parameters, column twists and scrambles. The same
/// `(count, seed)` always yields the same matrices.
pub fn seeded_compositions(count: usize, seed: u64) -> Vec<SeededComposition> {
    // (outer size k, block size m); n = m * k <= 12.
    const SPLITS: [(usize, usize); 8] =
        [(2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (3, 3), (3, 4), (4, 3)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for idx in 0..count {
        let (k, m) = SPLITS[idx % SPLITS.len()];
        let a = random_block(k, &mut rng);
        let blocks: Vec<HadamardMatrix> = (0..k).map(|_| random_block(m, &mut rng)).collect();
        let twists: Vec<SquareMatrix> = (0..k)
            .map(|_| {
                let diag: Vec<_> = (0..m).map(|_| unit(rng.gen_range(0.0..TAU))).collect();
                SquareMatrix::from_diagonal(&diag)
            })
            .collect();
        let h = dita_compose(&a, &blocks, Some(&twists))
            .expect("a seeded composition always verifies");
        let shape = DitaShape::new(m * k, m, k).expect("split sizes are consistent");
        let label = format!("composition #{idx} {shape}");
        out.push(SeededComposition { a, blocks, twists, h, shape, label });
    }
    out
}

/// A pseudo-random complex Hadamard matrix of the given size (2, 3 or 4),
/// drawn as a scrambled catalog matrix.
fn random_block(size: usize, rng: &mut ChaCha8Rng) -> HadamardMatrix {
    let base = match size {
        2 => catalog_matrix(Family::Fourier, &[2.0]),
        3 => catalog_matrix(Family::Fourier, &[3.0]),
        4 => catalog_matrix(Family::F4, &[rng.gen_range(0.0..TAU)]),
        _ => unreachable!("block sizes are 2, 3 or 4"),
    }
    .expect("catalog parameters are in range");
    random_equivalence(&base, rng.gen())
}

/// Every catalog matrix of size at most 8, at fixed representative parameters,
/// labelled for diagnostics.
pub fn catalog_representatives() -> Vec<(String, HadamardMatrix)> {
    let entries: Vec<(&str, Family, Vec<f64>)> = vec![
        ("fourier(2)", Family::Fourier, vec![2.0]),
        ("fourier(3)", Family::Fourier, vec![3.0]),
        ("fourier(4)", Family::Fourier, vec![4.0]),
        ("fourier(5)", Family::Fourier, vec![5.0]),
        ("fourier(6)", Family::Fourier, vec![6.0]),
        ("fourier(7)", Family::Fourier, vec![7.0]),
        ("fourier(8)", Family::Fourier, vec![8.0]),
        ("f4(0.9)", Family::F4, vec![0.9]),
        ("f6(1.234, 2.345)", Family::F6, vec![1.234, 2.345]),
        ("bn6(2.0)", Family::Bn6, vec![2.0]),
        ("p7(0.9)", Family::P7, vec![0.9]),
        ("f8(0.3, 1.1, 2.0, 2.9, 4.1)", Family::F8, vec![0.3, 1.1, 2.0, 2.9, 4.1]),
        ("tao", Family::Tao, vec![]),
        ("haagerup", Family::Haagerup, vec![]),
    ];
    entries
        .into_iter()
        .map(|(label, family, params)| {
            let h = catalog_matrix(family, &params).expect("representative parameters are valid");
            (label.to_owned(), h)
        })
        .collect()
}
