//! Acceptance suite: one test per release criterion, each ending with a
//! printed pass line (visible under `--nocapture`; a failed criterion
//! fails its test). Run with
//!
//! ```text
//! cargo test -p gbs-core --test acceptance -- --nocapture
//! ```

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gbs_core::fixtures::{self, TableId};
use gbs_core::store::ClassificationDoc;
use gbs_core::*;

/// Regression floor for the 200-restart sweep on the indistinguishable
/// 4-set: the observed deterministic minimum is 4.9999999999999967e-1,
/// pinned just below to absorb cross-platform rounding.
const S30_RESIDUAL_FLOOR: f64 = 0.499;

/// Floors for the structural decomposition of the best sweep vector into
/// the three 2-vectors (a0,a3), (a2,a5), (a4,a1): observed pairwise
/// overlap maximum 0.2287 and smallest norm 0.4405.
const S30_OVERLAP_MARGIN: f64 = 0.2;
const S30_MIN_PAIR_NORM: f64 = 0.3;

fn set(d: u32, pairs: &[(u32, u32)]) -> GbsSet {
    GbsSet::canonicalize(pairs.iter().map(|&(m, n)| Gpm::new(d, m, n))).unwrap()
}

fn s30() -> GbsSet {
    set(6, &[(0, 0), (0, 2), (2, 0), (2, 2)])
}

fn reps_only() -> ClassifyOptions {
    ClassifyOptions {
        emit: Emit::Reps,
        workers: 1,
    }
}

fn with_members() -> ClassifyOptions {
    ClassifyOptions {
        emit: Emit::Members,
        workers: 1,
    }
}

fn incremental_chain(d: u32, l: usize, opts: &ClassifyOptions) -> Classification {
    let mut current = identity_base(d);
    while current.l < l {
        let step = if current.l + 1 == l { *opts } else { reps_only() };
        current = classify_extension(&current, &step).unwrap();
    }
    current
}

#[test]
fn acceptance_1_two_set_classification() {
    let started = Instant::now();
    let check = fixtures::check_table(TableId::I, 1).unwrap();
    assert!(check.passed && check.notes.is_empty(), "{:?}", check.notes);
    assert_eq!(check.class_count, 3);

    let c = classify_all(6, 2, &with_members()).unwrap();
    let sizes: Vec<u64> = c.classes.iter().map(|cl| cl.size).collect();
    assert_eq!(sizes, vec![24, 8, 3]);
    assert_eq!(c.universe_size, 35);

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("PASS criterion 1: d=6 l=2 gives 3 classes (24, 8, 3) with exact memberships in {elapsed:?}");
}

#[test]
fn acceptance_2_three_set_classification() {
    let started = Instant::now();

    let check = fixtures::check_table(TableId::II, 1).unwrap();
    assert!(check.passed && check.notes.is_empty(), "{:?}", check.notes);
    assert_eq!(check.class_count, 9);

    let base = classify_all(6, 2, &reps_only()).unwrap();
    let extended = classify_extension(&base, &with_members()).unwrap();
    let intersections: Vec<usize> = extended
        .classes
        .iter()
        .map(|cl| cl.members.as_ref().unwrap().len())
        .collect();
    assert_eq!(intersections, vec![4, 22, 12, 30, 20, 2, 1, 6, 2]);
    assert_eq!(intersections.iter().sum::<usize>(), 99);

    let direct = classify_all(6, 3, &reps_only()).unwrap();
    assert_eq!(direct.classes.len(), 9);
    assert_eq!(direct.universe_size, 595);
    let direct_reps: Vec<&GbsSet> = direct.representatives().collect();
    let extended_reps: Vec<&GbsSet> = extended.representatives().collect();
    assert_eq!(direct_reps, extended_reps);

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("PASS criterion 2: d=6 l=3 gives 9 classes, family of 99 split 4/22/12/30/20/2/1/6/2, methods agree, in {elapsed:?}");
}

#[test]
fn acceptance_3_four_set_classification() {
    let started = Instant::now();

    let full = classify_all(6, 4, &reps_only()).unwrap();
    let incremental = incremental_chain(6, 4, &reps_only());
    assert_eq!(full.classes.len(), 31);
    assert_eq!(incremental.classes.len(), 31);
    let full_reps: Vec<&GbsSet> = full.representatives().collect();
    let incremental_reps: Vec<&GbsSet> = incremental.representatives().collect();
    assert_eq!(full_reps, incremental_reps);

    let fixture = fixtures::load(TableId::III);
    let fixture_reps: Vec<&GbsSet> = fixture.classes.iter().map(|c| &c.representative).collect();
    assert_eq!(full_reps, fixture_reps);

    assert_eq!(full.classes.iter().map(|c| c.size).sum::<u64>(), 6545);
    assert_eq!(full.universe_size, 6545);

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!("PASS criterion 3: d=6 l=4 gives 31 classes by both methods, sizes sum 6545, single-threaded in {elapsed:?}");
}

#[test]
fn acceptance_4_five_set_classification() {
    let started = Instant::now();

    let check = fixtures::check_table(TableId::IV, 1).unwrap();
    assert!(check.passed, "{:?}", check.notes);
    assert_eq!(check.class_count, 112);
    assert_eq!(check.sizes_sum, 52360);
    // The listing is expected to disagree in exactly the documented row;
    // report it rather than reconciling silently.
    for note in &check.notes {
        println!("  criterion 4 note: {note}");
    }
    if !check.notes.is_empty() {
        assert!(check.anomaly_only, "{:?}", check.notes);
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    println!("PASS criterion 4: d=6 l=5 gives 112 representatives, sizes sum 52360, fixture diff limited to the documented row, in {elapsed:?}");
}

#[test]
fn acceptance_5_dimension_five_counts() {
    let l4 = classify_all(5, 4, &reps_only()).unwrap();
    assert_eq!(l4.classes.len(), 8);
    let l5 = classify_all(5, 5, &reps_only()).unwrap();
    assert_eq!(l5.classes.len(), 21);
    println!("PASS criterion 5: d=5 gives 8 classes at l=4 and 21 classes at l=5");
}

#[test]
fn acceptance_6_locc_suite() {
    let started = Instant::now();
    let cfg = SearchConfig::default();

    let two_set_reps = [
        set(6, &[(0, 0), (0, 1)]),
        set(6, &[(0, 0), (0, 2)]),
        set(6, &[(0, 0), (0, 3)]),
    ];
    let three_set_reps: Vec<GbsSet> = [
        [(0, 1), (0, 2)],
        [(0, 1), (0, 3)],
        [(0, 1), (1, 0)],
        [(0, 1), (2, 0)],
        [(0, 1), (3, 0)],
        [(0, 1), (3, 2)],
        [(0, 2), (0, 4)],
        [(0, 2), (2, 0)],
        [(0, 3), (3, 0)],
    ]
    .iter()
    .map(|pair| {
        let mut v = vec![(0, 0)];
        v.extend_from_slice(pair);
        set(6, &v)
    })
    .collect();

    for rep in two_set_reps.iter().chain(&three_set_reps) {
        let report = find_witness(rep, &cfg).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::Distinguishable,
            "no witness for {rep}"
        );
        let witness = report.witness.expect("witness accompanies the verdict");
        let check = verify_witness(rep, witness.amplitudes(), 1e-9).unwrap();
        assert!(
            check.pass,
            "witness for {rep} re-verifies at {}",
            check.max_magnitude
        );
    }

    // The indistinguishable 4-set: the full sweep must fail and stay above
    // the recorded floor.
    let report = find_witness(&s30(), &cfg).unwrap();
    assert_eq!(report.verdict, Verdict::NoWitnessFound);
    assert_eq!(report.restarts_used, 200);
    assert!(
        report.min_residual >= S30_RESIDUAL_FLOOR,
        "sweep minimum {} fell below the floor {}",
        report.min_residual,
        S30_RESIDUAL_FLOOR
    );
    assert!(report.caveat().is_some());

    // Structural check: the best vector splits into the 2-vectors
    // (a0,a3), (a2,a5), (a4,a1), which would have to be nonzero and
    // pairwise orthogonal for a witness; at least one orthogonality
    // residual stays above the margin.
    let amps = report.best_vector.amplitudes();
    let pair = |i: usize, j: usize| [amps[i], amps[j]];
    let vectors = [pair(0, 3), pair(2, 5), pair(4, 1)];
    for v in &vectors {
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        assert!(norm >= S30_MIN_PAIR_NORM, "degenerate 2-vector, norm {norm}");
    }
    let overlap = |a: &[Complex64; 2], b: &[Complex64; 2]| {
        (a[0].conj() * b[0] + a[1].conj() * b[1]).norm()
    };
    let max_overlap = overlap(&vectors[0], &vectors[1])
        .max(overlap(&vectors[1], &vectors[2]))
        .max(overlap(&vectors[2], &vectors[0]));
    assert!(
        max_overlap >= S30_OVERLAP_MARGIN,
        "all three 2-vectors nearly orthogonal: max overlap {max_overlap}"
    );

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!("PASS criterion 6: all 3+9 representatives distinguishable (witnesses < 1e-9), indistinguishable 4-set floor {:.3} >= {S30_RESIDUAL_FLOOR}, in {elapsed:?}", report.min_residual);
}

fn random_standard_set(d: u32, l: usize, rng: &mut ChaCha8Rng) -> GbsSet {
    let mut picked: BTreeSet<Gpm> = BTreeSet::new();
    picked.insert(Gpm::identity(d));
    while picked.len() < l {
        picked.insert(Gpm::new(d, rng.random_range(0..d), rng.random_range(0..d)));
    }
    GbsSet::canonicalize(picked).unwrap()
}

fn assert_orbit_closed(seed: &GbsSet) {
    let class = orbit(seed, 1).unwrap();
    let members: BTreeSet<GbsSet> = class.members.unwrap().into_iter().collect();
    for member in &members {
        assert_eq!(
            one_round_images(member).unwrap(),
            members,
            "one round from {member} does not reproduce the orbit of {seed}"
        );
    }
}

#[test]
fn acceptance_7_property_suites() {
    let started = Instant::now();

    // Orbit closure: exhaustive at l=2.
    for m in 0..6u32 {
        for n in 0..6u32 {
            if m == 0 && n == 0 {
                continue;
            }
            assert_orbit_closed(&set(6, &[(0, 0), (m, n)]));
        }
    }
    // Sampled at l=3 and l=4.
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for l in [3usize, 4] {
        for _ in 0..20 {
            assert_orbit_closed(&random_standard_set(6, l, &mut rng));
        }
    }

    // Every one of the 144 maps preserves the symplectic form and the
    // essential power.
    let maps = enumerate(6).unwrap();
    assert_eq!(maps.len(), 144);
    let all: Vec<Gpm> = (0..36).map(|i| Gpm::new(6, i / 6, i % 6)).collect();
    for w in maps.iter() {
        for a in &all {
            assert_eq!(
                w.apply(*a).power_profile().essential_power,
                a.power_profile().essential_power
            );
            for b in &all {
                assert_eq!(
                    w.apply(*a).symplectic_form(w.apply(*b)),
                    a.symplectic_form(*b)
                );
            }
        }
    }

    // Essential power vector fixtures.
    assert_eq!(
        set(6, &[(1, 0), (3, 3), (0, 4), (2, 0)]).power_vector(),
        PowerVector(vec![1, 2, 2, 3])
    );
    assert_eq!(
        set(30, &[(12, 0), (0, 3), (3, 4), (5, 15)]).power_vector(),
        PowerVector(vec![1, 3, 5, 6])
    );
    assert_eq!(
        set(30, &[(4, 6), (6, 12), (2, 0), (3, 5)]).power_vector(),
        PowerVector(vec![1, 2, 2, 6])
    );

    // Analytic gradient against central finite differences at 100 random
    // points, relative error below 1e-6.
    let s = s30();
    let h = 1e-5;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for point in 0..100 {
        let mut amps: Vec<Complex64> = (0..6)
            .map(|_| {
                Complex64::new(
                    rng.sample(rand_distr::StandardNormal),
                    rng.sample(rand_distr::StandardNormal),
                )
            })
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        let grad = gradient_at(&s, &amps).unwrap();
        for k in 0..6 {
            for (imaginary, analytic) in [(false, 2.0 * grad[k].re), (true, 2.0 * grad[k].im)] {
                let delta = if imaginary {
                    Complex64::new(0.0, h)
                } else {
                    Complex64::new(h, 0.0)
                };
                let mut plus = amps.clone();
                let mut minus = amps.clone();
                plus[k] += delta;
                minus[k] -= delta;
                let fd = (residual_at(&s, &plus).unwrap() - residual_at(&s, &minus).unwrap())
                    / (2.0 * h);
                assert!(
                    (fd - analytic).abs() / analytic.abs().max(1.0) < 1e-6,
                    "point {point}, component {k}, imaginary {imaginary}: {fd} vs {analytic}"
                );
            }
        }
    }

    // Classification documents are byte-identical across worker counts.
    let reference = ClassificationDoc::from_classification(
        &classify_all(
            6,
            3,
            &ClassifyOptions {
                emit: Emit::Members,
                workers: 1,
            },
        )
        .unwrap(),
    )
    .to_json_string();
    for workers in [2usize, 8] {
        let doc = ClassificationDoc::from_classification(
            &classify_all(
                6,
                3,
                &ClassifyOptions {
                    emit: Emit::Members,
                    workers,
                },
            )
            .unwrap(),
        )
        .to_json_string();
        assert_eq!(doc, reference, "document drift at {workers} workers");
    }

    let elapsed = started.elapsed();
    println!("PASS criterion 7: orbit closure, action invariants, power vectors, gradient checks and worker determinism in {elapsed:?}");
}

#[test]
fn acceptance_8_canonicalizer_postcondition() {
    for d in 2..=12u32 {
        for m in 0..d {
            for n in 0..d {
                if m == 0 && n == 0 {
                    continue;
                }
                let g = Gpm::new(d, m, n);
                let w = canonicalizer_for(g).unwrap();
                assert_eq!(
                    w.apply(g),
                    Gpm::new(d, 0, gcd3(m, n, d)),
                    "canonicalizer failed for {g} at d={d}"
                );
            }
        }
    }
    println!("PASS criterion 8: canonicalizer postcondition holds for every nontrivial GPM at d=2..=12");
}
