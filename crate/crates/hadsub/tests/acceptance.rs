//! Acceptance suite: twelve numbered criteria covering the analysis pipeline
//! end to end. Each criterion is one test, so `cargo test --test acceptance`
//! prints one pass/fail line per criterion; run with `-- --nocapture` for the
//! detail lines. Tolerances and time budgets are pinned as constants below.

mod common;

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use hadsub::catalog::{bn6_min_angle, catalog_matrix, Family};
use hadsub::commutants::{
    odd_profile_compose, relative_commutant_dim, second_commutant, second_commutant_direct,
    sweep_second_commutant, Partition,
};
use hadsub::dita::{
    verify_bisch_expectation, verify_bisch_membership, verify_intermediate_decomposition,
};
use hadsub::hadamard::{equivalence_fingerprint, fingerprint_digits, fingerprint_hash, DEFAULT_TOL};
use hadsub::profile::profile;
use hadsub::tower::tower_projection;
use hadsub::{random_equivalence, verify_hadamard};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tolerance for profile-tensor identities (criterion 9).
const PROFILE_TOL: f64 = 1e-10;
/// Tolerance for projection and tower identities (criterion 9).
const PROJECTION_TOL: f64 = 1e-7;
/// Tolerance for the intermediate-decomposition closed forms (criterion 11).
const DECOMPOSITION_TOL: f64 = 1e-8;
/// Tolerance for block-membership checks (criterion 11).
const MEMBERSHIP_TOL: f64 = 1e-8;
/// Tolerance for the conditional-expectation identity (criterion 11); the
/// underlying arithmetic is exact zeros and ones.
const EXPECTATION_TOL: f64 = 1e-12;
/// Tolerance for Hadamard and self-adjointness certification (criterion 5).
const MATRIX_TOL: f64 = 1e-9;
/// Minimum acceptable eigenvalue gap ratio in rank decisions (criterion 3).
const MIN_GAP: f64 = 10.0;
/// Seed for every pseudo-random draw in this suite.
const SUITE_SEED: u64 = 0x5EED;

fn timed<T>(budget: Duration, what: &str, f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    assert!(elapsed <= budget, "{what}: {elapsed:?} exceeded the {budget:?} budget");
    (out, elapsed)
}

fn pass(criterion: u32, detail: &str) {
    println!("criterion {criterion:02}: pass — {detail}");
}

fn partition(blocks: &[&[usize]]) -> Partition {
    Partition::new(blocks.iter().map(|b| b.to_vec()).collect())
}

/// Expected partition for the 4x4 family at a generic angle.
fn f4_generic_partition() -> Partition {
    partition(&[&[1, 6, 11, 16], &[2, 4, 5, 7, 10, 12, 13, 15], &[3, 8, 9, 14]])
}

/// Expected partition for the 4x4 family at a = 1 or a = -1.
fn f4_real_partition() -> Partition {
    partition(&[&[1, 6, 11, 16], &[2, 5, 12, 15], &[3, 8, 9, 14], &[4, 7, 10, 13]])
}

/// Expected partition for the 4x4 family at a = i or a = -i.
fn f4_imaginary_partition() -> Partition {
    partition(&[&[1, 6, 11, 16], &[2, 7, 12, 13], &[3, 8, 9, 14], &[4, 5, 10, 15]])
}

/// Expected partition for the 6x6 two-parameter family at a generic point.
fn f6_generic_partition() -> Partition {
    partition(&[
        &[1, 8, 15, 22, 29, 36],
        &[2, 4, 6, 7, 9, 11, 14, 16, 18, 19, 21, 23, 26, 28, 30, 31, 33, 35],
        &[3, 10, 17, 24, 25, 32],
        &[5, 12, 13, 20, 27, 34],
    ])
}

/// Expected partition for the 8x8 five-parameter family at a generic point.
fn f8_generic_partition() -> Partition {
    partition(&[
        &[1, 10, 19, 28, 37, 46, 55, 64],
        &[
            2, 4, 6, 8, 9, 11, 13, 15, 18, 20, 22, 24, 25, 27, 29, 31, 34, 36, 38, 40, 41, 43,
            45, 47, 50, 52, 54, 56, 57, 59, 61, 63,
        ],
        &[3, 7, 12, 16, 17, 21, 26, 30, 35, 39, 44, 48, 49, 53, 58, 62],
        &[5, 14, 23, 32, 33, 42, 51, 60],
    ])
}

#[test]
fn criterion_01_f4_generic_point() {
    let (sc, elapsed) = timed(Duration::from_secs(1), "generic 4x4 analysis", || {
        let h = catalog_matrix(Family::F4, &[TAU * 0.113]).unwrap();
        second_commutant(&h)
    });
    assert_eq!(sc.dim, 3, "generic 4x4 second commutant");
    assert_eq!(sc.partition, f4_generic_partition(), "generic 4x4 partition");
    pass(1, &format!("f4 at angle 2π·0.113: dim 3 with the expected partition in {elapsed:?}"));
}

#[test]
fn criterion_02_f4_exceptional_points() {
    let ((), elapsed) = timed(Duration::from_secs(1), "exceptional 4x4 analyses", || {
        for (angle, expected) in [
            (0.0, f4_real_partition()),
            (PI, f4_real_partition()),
            (PI / 2.0, f4_imaginary_partition()),
            (3.0 * PI / 2.0, f4_imaginary_partition()),
        ] {
            let h = catalog_matrix(Family::F4, &[angle]).unwrap();
            let sc = second_commutant(&h);
            assert_eq!(sc.dim, 4, "f4 at angle {angle}");
            assert_eq!(sc.partition, expected, "f4 at angle {angle}");
        }
    });
    pass(2, &format!("f4 at a = ±1, ±i: dim 4 with the expected partitions in {elapsed:?}"));
}

#[test]
fn criterion_03_f4_higher_commutants() {
    let h = catalog_matrix(Family::F4, &[TAU * 0.113]).unwrap();

    let third = relative_commutant_dim(&h, 3).unwrap();
    assert_eq!(third.dim, 10, "third commutant at a generic angle");
    assert!(!third.gap.ambiguous, "third-commutant rank decision must be clean");
    assert!(third.gap.gap_ratio.unwrap() >= MIN_GAP);

    let (fourth, elapsed) = timed(Duration::from_secs(60), "fourth commutant", || {
        relative_commutant_dim(&h, 4).unwrap()
    });
    assert_eq!(fourth.dim, 35, "fourth commutant at a generic angle");
    assert!(!fourth.gap.ambiguous);
    assert!(fourth.gap.gap_ratio.unwrap() >= MIN_GAP);

    // a = e^{iπ/4} is a primitive eighth root of unity: one extra dimension.
    let h8 = catalog_matrix(Family::F4, &[PI / 4.0]).unwrap();
    let fourth8 = relative_commutant_dim(&h8, 4).unwrap();
    assert_eq!(fourth8.dim, 36, "fourth commutant at a primitive eighth root");
    assert!(!fourth8.gap.ambiguous);
    assert!(fourth8.gap.gap_ratio.unwrap() >= MIN_GAP);

    pass(
        3,
        &format!(
            "f4 third 10, fourth 35 (36 at e^{{iπ/4}}), gap ratios ≥ {MIN_GAP}, fourth in {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_04_f6_generic_and_sweep() {
    let budget = Duration::from_secs(600);
    let start = Instant::now();

    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    for i in 0..5 {
        let params = [rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)];
        let h = catalog_matrix(Family::F6, &params).unwrap();
        let sc = second_commutant(&h);
        assert_eq!(sc.dim, 4, "f6 sample {i} at {params:?}");
        assert_eq!(sc.partition, f6_generic_partition(), "f6 sample {i} at {params:?}");
    }

    let sweep = sweep_second_commutant(Family::F6, &[72, 72]).unwrap();
    assert_eq!(sweep.points.len(), 72 * 72);
    assert_eq!(sweep.generic_dim(), 4, "generic dimension on the 72x72 grid");

    let exceptional = sweep.exceptional_indices();
    let mut found: Vec<(usize, usize)> = exceptional
        .iter()
        .map(|&p| {
            let axes = sweep.axis_indices(p);
            (axes[0], axes[1])
        })
        .collect();
    found.sort_unstable();
    let mut expected = vec![
        (0, 0),
        (0, 36),
        (12, 24),
        (12, 60),
        (24, 12),
        (24, 48),
        (36, 0),
        (36, 36),
        (48, 24),
        (48, 60),
        (60, 12),
        (60, 48),
    ];
    expected.sort_unstable();
    assert_eq!(found, expected, "exceptional grid points");
    for &p in &exceptional {
        assert_eq!(sweep.points[p].dim, 6, "dimension at exceptional point {p}");
    }

    let elapsed = start.elapsed();
    assert!(elapsed <= budget, "criterion 4 took {elapsed:?}, budget {budget:?}");
    pass(
        4,
        &format!(
            "five generic f6 points dim 4; 72x72 sweep found exactly the 12 exceptional pairs, all dim 6, in {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_05_bn6_family() {
    let lo = bn6_min_angle();
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    for i in 0..10 {
        // Stay strictly inside the angle domain and cover both signs.
        let mut theta = lo + rng.gen_range(0.02..0.98) * (PI - lo);
        if i % 2 == 1 {
            theta = -theta;
        }
        let h = catalog_matrix(Family::Bn6, &[theta]).unwrap();
        verify_hadamard(h.matrix(), MATRIX_TOL)
            .unwrap_or_else(|e| panic!("bn6 sample {i} at theta = {theta}: {e}"));
        let self_adjoint_defect = h.matrix().max_abs_diff(&h.matrix().adjoint());
        assert!(
            self_adjoint_defect <= MATRIX_TOL,
            "bn6 sample {i} at theta = {theta}: self-adjointness defect {self_adjoint_defect:.3e}"
        );
        let sc = second_commutant(&h);
        assert_eq!(sc.dim, 2, "bn6 sample {i} at theta = {theta}");
    }
    pass(5, "ten bn6 samples: Hadamard and self-adjoint at 1e-9, second commutant dim 2");
}

#[test]
fn criterion_06_p7_family() {
    let budget = Duration::from_secs(300);
    let start = Instant::now();

    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let mut angles = vec![0.0];
    angles.extend((0..9).map(|_| rng.gen_range(0.0..TAU)));
    for (i, &angle) in angles.iter().enumerate() {
        let h = catalog_matrix(Family::P7, &[angle]).unwrap();
        let sc = second_commutant(&h);
        assert_eq!(sc.dim, 2, "p7 sample {i} at angle {angle}");
    }

    // At angle 0 the parameter is 1 and the third relative commutant computes
    // to dimension 5 with a decisive spectral gap. Recorded as a finding: the
    // value is robust under the pinned thresholds.
    let h1 = catalog_matrix(Family::P7, &[0.0]).unwrap();
    let third = relative_commutant_dim(&h1, 3).unwrap();
    assert_eq!(third.dim, 5, "third commutant of p7 at angle 0");
    assert!(!third.gap.ambiguous);
    println!(
        "finding: p7 at angle 0 has third relative commutant of dimension {} (gap ratio {:.1e})",
        third.dim,
        third.gap.gap_ratio.unwrap()
    );

    let elapsed = start.elapsed();
    assert!(elapsed <= budget, "criterion 6 took {elapsed:?}, budget {budget:?}");
    pass(6, &format!("ten p7 samples dim 2; angle-0 third commutant dim 5 reported, in {elapsed:?}"));
}

#[test]
fn criterion_07_f8_generic_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let mut slowest = Duration::ZERO;
    for i in 0..5 {
        let params: Vec<f64> = (0..5).map(|_| rng.gen_range(0.0..TAU)).collect();
        let ((), elapsed) = timed(Duration::from_secs(5), &format!("f8 sample {i}"), || {
            let h = catalog_matrix(Family::F8, &params).unwrap();
            let sc = second_commutant(&h);
            assert_eq!(sc.dim, 4, "f8 sample {i} at {params:?}");
            assert_eq!(sc.partition, f8_generic_partition(), "f8 sample {i} at {params:?}");
        });
        slowest = slowest.max(elapsed);
    }
    pass(7, &format!("five generic f8 points dim 4 with the expected partition, slowest {slowest:?}"));
}

#[test]
fn criterion_08_graph_matches_spectral_route() {
    let mut checked = 0usize;
    for (label, h) in common::catalog_representatives() {
        let graph = second_commutant(&h).dim;
        let direct = second_commutant_direct(&h).unwrap();
        assert_eq!(graph, direct.dim, "{label}: graph vs spectral dimension");
        checked += 1;
    }
    for c in common::seeded_compositions(20, SUITE_SEED) {
        let graph = second_commutant(&c.h).dim;
        let direct = second_commutant_direct(&c.h).unwrap();
        assert_eq!(graph, direct.dim, "{}: graph vs spectral dimension", c.label);
        checked += 1;
    }
    pass(8, &format!("graph and spectral dimensions agree on {checked} matrices"));
}

#[test]
fn criterion_09_profile_and_tower_identities() {
    let representatives = common::catalog_representatives();
    for (label, h) in &representatives {
        let n = h.size();
        let p = profile(h);
        assert!(
            p.symmetry_defect() <= PROFILE_TOL,
            "{label}: profile symmetry defect {:.3e}",
            p.symmetry_defect()
        );
        let mut trace_defect = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let expected = if a == b { 1.0 / n as f64 } else { 0.0 };
                    trace_defect = trace_defect.max((p.get(a, b, c, c) - expected).norm());
                }
            }
        }
        assert!(trace_defect <= PROFILE_TOL, "{label}: partial-trace defect {trace_defect:.3e}");

        let p1 = p.as_projection();
        assert!(
            p1.projection_defect() <= PROJECTION_TOL,
            "{label}: projection defect {:.3e}",
            p1.projection_defect()
        );
        let towered = tower_projection(h, 1).unwrap();
        assert!(
            towered.mat.max_abs_diff(&p1) <= PROJECTION_TOL,
            "{label}: tower route differs from the profile projection"
        );
    }

    // The third tower projection agrees with the profile composition (small sizes).
    for (label, h) in representatives.iter().filter(|(_, h)| h.size() <= 4) {
        let p = profile(h);
        let composed = odd_profile_compose(&p, 1).unwrap();
        let towered = tower_projection(h, 3).unwrap();
        let diff = composed.mat.max_abs_diff(&towered.mat);
        assert!(diff <= PROJECTION_TOL, "{label}: P_3 routes differ by {diff:.3e}");
    }
    pass(9, "profile identities at 1e-10 and projection/tower identities at 1e-7 on all representatives");
}

#[test]
fn criterion_10_fourier_law_and_dimension_bound() {
    for n in 2..=8usize {
        let h = catalog_matrix(Family::Fourier, &[n as f64]).unwrap();
        let sc = second_commutant(&h);
        assert_eq!(sc.dim, n, "fourier({n}) dimension");
        // Blocks are the congruence classes a - c ≡ r (mod n) of 1-based labels.
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in 1..=n {
            for c in 1..=n {
                classes[(a + n - c) % n].push((a - 1) * n + c);
            }
        }
        assert_eq!(sc.partition, Partition::new(classes), "fourier({n}) block structure");
    }

    for (label, h) in common::catalog_representatives() {
        let dim = second_commutant(&h).dim;
        assert!(dim <= h.size(), "{label}: dim {dim} exceeds n = {}", h.size());
    }
    for c in common::seeded_compositions(20, SUITE_SEED) {
        let dim = second_commutant(&c.h).dim;
        assert!(dim <= c.h.size(), "{}: dim {dim} exceeds n = {}", c.label, c.h.size());
    }
    pass(10, "fourier law holds for n = 2..8 and dim ≤ n everywhere");
}

#[test]
fn criterion_11_block_composition_suite() {
    let compositions = common::seeded_compositions(20, SUITE_SEED);
    assert_eq!(compositions.len(), 20);
    for c in &compositions {
        let membership = verify_bisch_membership(&c.h, c.shape, MEMBERSHIP_TOL).unwrap();
        assert!(
            membership.member,
            "{}: worst profile violation {:.3e} at {:?}",
            c.label, membership.worst, membership.witness
        );

        let sc = second_commutant(&c.h);
        assert!(sc.dim >= 3, "{}: composed matrix has dim {}", c.label, sc.dim);

        let decomposition =
            verify_intermediate_decomposition(&c.a, &c.blocks, Some(&c.twists), DECOMPOSITION_TOL)
                .unwrap();
        assert!(decomposition.passed, "{}: {decomposition:?}", c.label);

        let expectation = verify_bisch_expectation(c.shape, EXPECTATION_TOL);
        assert!(
            expectation.passed,
            "{}: expectation defect {:.3e}",
            c.label, expectation.worst_defect
        );
    }
    pass(11, "20 seeded compositions: member, dim ≥ 3, decomposition at 1e-8, expectation exact");
}

#[test]
fn criterion_12_fingerprint_invariance() {
    let digits = fingerprint_digits(DEFAULT_TOL);
    for (label, h) in common::catalog_representatives() {
        let base_hash = fingerprint_hash(&equivalence_fingerprint(&h), digits);
        let base_dim = second_commutant(&h).dim;
        for seed in 1..=5u64 {
            let image = random_equivalence(&h, seed);
            let hash = fingerprint_hash(&equivalence_fingerprint(&image), digits);
            assert_eq!(hash, base_hash, "{label}: fingerprint changed under scramble {seed}");
            assert_eq!(
                second_commutant(&image).dim,
                base_dim,
                "{label}: dimension changed under scramble {seed}"
            );
        }
    }
    pass(12, "fingerprint hash and dimension invariant across five scrambles per catalog matrix");
}
