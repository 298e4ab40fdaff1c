//! Acceptance suite: every closed formula is checked against an
//! independent exact computation, at pinned scales and with exact
//! tolerances (no floating point exists anywhere in the crate). Each
//! test prints one `criterion N: PASS` line; run with `--nocapture` to
//! see them.

use std::sync::LazyLock;
use std::time::Instant;

use num_bigint::BigUint;

use pcubed_core::combinat::{
    count_by_enumeration, count_by_recurrence, count_nondegenerate, count_reps, visit_multvecs,
    SuffixCounts,
};
use pcubed_core::cyclo::OddPrime;
use pcubed_core::groups::{make_group, GroupFamily};
use pcubed_core::irreps::build_irreps;
use pcubed_core::solver::charp_mode;
use pcubed_core::verify::{sweep, IssueKind, SweepOptions, SweepReport, DEFAULT_SEED};

fn p3() -> OddPrime {
    OddPrime::new(3).unwrap()
}

fn p5() -> OddPrime {
    OddPrime::new(5).unwrap()
}

/// Literal streaming stays below this count; above it the addition-only
/// recurrence provides the independent route (the stream at p = 3,
/// n = 12 for an abelian family alone has ~2.7e9 entries).
const LITERAL_ENUM_CAP: u64 = 50_000_000;

/// The shared exact sweep behind criteria 3, 4, 6 and 7: every
/// multiplicity vector of degree <= 4 for all five families at p = 3,
/// plus 200 uniformly sampled vectors at each of n = 5 and n = 6, with
/// 100 seeded random combinations per all-singular check.
static SWEEP: LazyLock<SweepReport> = LazyLock::new(|| {
    let t = Instant::now();
    let report = sweep(
        p3(),
        &GroupFamily::ALL,
        &SweepOptions {
            nmax: 4,
            sampled: vec![(5, 200), (6, 200)],
            rank_samples: 100,
            seed: DEFAULT_SEED,
            check_counts: false,
        },
    )
    .expect("irrep construction verifies");
    println!(
        "[sweep] {} vectors solved exactly in {:.1?} (seed {})",
        report.total_vectors(),
        t.elapsed(),
        report.seed
    );
    report
});

fn issues_of(report: &SweepReport, kind: IssueKind) -> Vec<String> {
    report
        .issues_of_kind(kind)
        .map(|i| format!("k = {:?}: {}", i.k, i.detail))
        .collect()
}

#[test]
fn criterion_1_counting() {
    let t = Instant::now();
    let mut literal = 0usize;
    let mut recurrence = 0usize;
    for family in GroupFamily::ALL {
        for n in 0..=12u64 {
            let formula = count_reps(family, p3(), n);
            let oracle = if formula <= BigUint::from(LITERAL_ENUM_CAP) {
                literal += 1;
                count_by_enumeration(family, p3(), n)
            } else {
                recurrence += 1;
                count_by_recurrence(family, p3(), n)
            };
            assert_eq!(formula, oracle, "{family:?} p=3 n={n}");
        }
    }
    // Spot values.
    assert_eq!(count_reps(GroupFamily::Heis, p3(), 1), BigUint::from(9u32));
    assert_eq!(
        count_reps(GroupFamily::Heis, p3(), 3),
        BigUint::from(167u32)
    );
    assert_eq!(count_reps(GroupFamily::Zp3, p3(), 1), BigUint::from(27u32));
    // Non-abelian families at p = 5 (r = 29), full streamed enumeration.
    for family in [GroupFamily::Heis, GroupFamily::Gp] {
        for n in 0..=10u64 {
            assert_eq!(
                count_reps(family, p5(), n),
                count_by_enumeration(family, p5(), n),
                "{family:?} p=5 n={n}"
            );
        }
    }
    println!(
        "criterion 1 (counting): PASS - 65 formula/stream checks at p=3 \
         ({literal} streamed, {recurrence} by recurrence), 22 streamed at p=5, \
         spot values 9/167/27 confirmed, {:.1?}",
        t.elapsed()
    );
}

/// Multiplicity criterion on a raw vector in the frozen pair layout.
fn admits_raw(k: &[u64]) -> bool {
    k[1..].chunks(2).all(|pair| pair[0] == pair[1])
}

/// Independent route for the matched-multiplicity count: vectors with
/// `k_{2i} = k_{2i+1}` correspond to compositions over the collapsed
/// degree list `[1] ++ [2 d_i per pair]`, counted by the addition-only
/// recurrence.
fn paired_count(family: GroupFamily, p: OddPrime, n: u64) -> BigUint {
    let mut degrees = vec![1u64];
    for pair in family.degrees(p)[1..].chunks(2) {
        degrees.push(2 * pair[0]);
    }
    SuffixCounts::from_degrees(degrees, n).total().clone()
}

#[test]
fn criterion_2_nondegenerate_census() {
    let t = Instant::now();
    for family in GroupFamily::ALL {
        for n in 0..=12u64 {
            let formula = count_nondegenerate(family, p3(), n);
            let oracle = if count_reps(family, p3(), n) <= BigUint::from(LITERAL_ENUM_CAP) {
                let mut matched = 0u64;
                visit_multvecs(family, p3(), n, |k| {
                    if admits_raw(k) {
                        matched += 1;
                    }
                });
                BigUint::from(matched)
            } else {
                paired_count(family, p3(), n)
            };
            assert_eq!(formula, oracle, "{family:?} p=3 n={n}");
        }
    }
    // Spot values by both paths.
    assert_eq!(
        count_nondegenerate(GroupFamily::Heis, p3(), 2),
        BigUint::from(5u32)
    );
    assert_eq!(
        count_nondegenerate(GroupFamily::Zp3, p3(), 2),
        BigUint::from(14u32)
    );
    assert_eq!(paired_count(GroupFamily::Heis, p3(), 2), BigUint::from(5u32));
    assert_eq!(paired_count(GroupFamily::Zp3, p3(), 2), BigUint::from(14u32));
    println!(
        "criterion 2 (non-degenerate census): PASS - 65 filtered-enumeration \
         checks at p=3, spot values 5 and 14 by both paths, {:.1?}",
        t.elapsed()
    );
}

#[test]
fn criterion_3_dimension() {
    let report = &*SWEEP;
    let issues = issues_of(report, IssueKind::Dimension);
    assert!(issues.is_empty(), "dimension mismatches: {issues:?}");
    // Every vector with n <= 4 for all five families plus the samples.
    let mut expected = 0u64;
    for family in GroupFamily::ALL {
        for n in 1..=4u64 {
            expected += u64::try_from(count_reps(family, p3(), n)).expect("small count");
        }
        expected += 400;
    }
    assert_eq!(report.total_vectors(), expected);
    println!(
        "criterion 3 (dimension formula vs nullspace): PASS - {} vectors, \
         exact agreement",
        report.total_vectors()
    );
}

#[test]
fn criterion_4_symmetric_skew_split() {
    let report = &*SWEEP;
    let issues = issues_of(report, IssueKind::SymmetricSkew);
    assert!(issues.is_empty(), "split mismatches: {issues:?}");
    println!(
        "criterion 4 (symmetric/skew split): PASS - transpose-eigenspace \
         dimensions match both corollary formulas on all {} vectors",
        report.total_vectors()
    );
}

#[test]
fn criterion_5_character_theory() {
    let t = Instant::now();
    for p in [p3(), p5()] {
        for family in GroupFamily::ALL {
            let set = build_irreps(&make_group(family, p))
                .unwrap_or_else(|e| panic!("{family:?} p={p}: {e}"));
            // Construction already verified exact orthogonality, the
            // relation set and duality; re-check the headline facts
            // through the public surface.
            let dsum: u64 = set
                .irreps()
                .iter()
                .map(|i| (i.degree() * i.degree()) as u64)
                .sum();
            assert_eq!(dsum, p.cubed(), "{family:?} p={p}: sum d_i^2");
            let self_dual = (1..=set.count())
                .filter(|&i| set.dual_of(i) == i)
                .count();
            assert_eq!(self_dual, 1, "{family:?} p={p}: self-dual count");
            // Independent spot checks of the inner products.
            let r = set.count();
            for (i, j) in [(1, 1), (1, r), (2, 2), (2, 3), (r - 1, r), (r, r)] {
                let v = set.character_inner_product(i, j);
                assert_eq!(v.is_one(), i == j, "{family:?} p={p}: <{i},{j}>");
                assert_eq!(v.is_zero(), i != j, "{family:?} p={p}: <{i},{j}>");
            }
            if !family.is_abelian() {
                for i in (p.squared() as usize + 1)..=r {
                    assert_eq!(set.irrep(i).degree() as u64, p.get());
                    assert!(set.is_faithful(i), "{family:?} p={p}: irrep {i} faithful");
                    assert!(
                        set.trace_zero_off_center(i),
                        "{family:?} p={p}: irrep {i} trace"
                    );
                    assert!(
                        set.center_scalar_of_order_p(i),
                        "{family:?} p={p}: irrep {i} center scalar"
                    );
                }
            }
        }
    }
    println!(
        "criterion 5 (character theory): PASS - p in {{3,5}}, all families: \
         exact orthogonality, sum d^2 = p^3, one self-dual, degree-p irreps \
         faithful and trace-zero off-center, {:.1?}",
        t.elapsed()
    );
}

#[test]
fn criterion_6_nondegeneracy_soundness() {
    let report = &*SWEEP;
    let witness = issues_of(report, IssueKind::Witness);
    let singular = issues_of(report, IssueKind::Singularity);
    assert!(witness.is_empty(), "witness mismatches: {witness:?}");
    assert!(singular.is_empty(), "singularity violations: {singular:?}");
    println!(
        "criterion 6 (non-degeneracy soundness): PASS - witnesses exist \
         exactly on matched multiplicities; 100 seeded combinations per \
         unmatched space all singular (seed {})",
        report.seed
    );
}

#[test]
fn criterion_7_block_structure() {
    let report = &*SWEEP;
    let support = issues_of(report, IssueKind::BlockSupport);
    assert!(support.is_empty(), "support outside dual blocks: {support:?}");
    let shape = issues_of(report, IssueKind::AntiDiagonalShape);
    if !shape.is_empty() {
        println!("criterion 7 REPORT - anti-diagonal deviations: {shape:?}");
    }
    assert!(shape.is_empty(), "anti-diagonal deviations reported: {shape:?}");
    println!(
        "criterion 7 (block structure): PASS - basis support inside dual \
         pairs on all {} vectors; 0 anti-diagonal shape deviations reported",
        report.total_vectors()
    );
}

#[test]
fn criterion_8_characteristic_p_mode() {
    for n in 1..=10usize {
        let space = charp_mode(n);
        assert_eq!(space.dimension, n * n, "n = {n}");
        assert_eq!(space.basis.len(), n * n);
    }
    println!(
        "criterion 8 (characteristic-p mode): PASS - dimension n^2 for n = 1..10"
    );
}
