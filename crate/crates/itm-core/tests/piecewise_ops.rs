//! Geometric operations: attractor iteration, first return maps, trimming
//! and the collapse onto a rotation when a branch boundary falls in a gap.

use itm_core::interval::{Interval, IntervalSet};
use itm_core::piecewise::{Branch, Classification, PiecewiseError, PiecewiseTranslation};
use itm_core::scalar::{Rat, Scalar};

fn r(n: i64, d: i64) -> Rat {
    Rat::from_ratio(n, d)
}

fn pw(support: (Rat, Rat), branches: Vec<(Rat, Rat, Rat)>) -> PiecewiseTranslation<Rat> {
    PiecewiseTranslation::new(
        Interval::new(support.0, support.1),
        branches
            .into_iter()
            .map(|(lo, hi, shift)| Branch { domain: Interval::new(lo, hi), shift })
            .collect(),
    )
    .unwrap()
}

fn rotation(angle: Rat) -> PiecewiseTranslation<Rat> {
    let one = r(1, 1);
    pw(
        (r(0, 1), one.clone()),
        vec![
            (r(0, 1), one.clone() - angle.clone(), angle.clone()),
            (one.clone() - angle.clone(), one.clone(), angle - one),
        ],
    )
}

#[test]
fn construction_rejects_bad_partitions() {
    let support = Interval::new(r(0, 1), r(1, 1));
    // hole between the branches
    let err = PiecewiseTranslation::new(
        support.clone(),
        vec![
            Branch { domain: Interval::new(r(0, 1), r(1, 4)), shift: r(0, 1) },
            Branch { domain: Interval::new(r(1, 2), r(1, 1)), shift: r(-1, 2) },
        ],
    )
    .unwrap_err();
    assert!(matches!(err, PiecewiseError::InvalidBranches(_)));
    // image escapes the support
    let err = PiecewiseTranslation::new(
        support,
        vec![Branch { domain: Interval::new(r(0, 1), r(1, 1)), shift: r(1, 2) }],
    )
    .unwrap_err();
    assert!(matches!(err, PiecewiseError::InvalidBranches(_)));
}

#[test]
fn rotation_is_already_stable() {
    let t = rotation(r(2, 5));
    match t.attractor_classify(16, 64) {
        Classification::Finite { steps, attractor } => {
            assert_eq!(steps, 0);
            assert_eq!(attractor, IntervalSet::from_interval(Interval::new(r(0, 1), r(1, 1))));
        }
        other => panic!("expected finite, got {other:?}"),
    }
}

#[test]
fn contracting_map_stabilizes_after_one_step() {
    // both halves rotate by the same amount but only a third of the circle
    // stays covered
    let t = pw(
        (r(0, 1), r(1, 1)),
        vec![
            (r(0, 1), r(1, 3), r(2, 3)),
            (r(1, 3), r(2, 3), r(-1, 3)),
            (r(2, 3), r(1, 1), r(-2, 3)),
        ],
    );
    match t.attractor_classify(16, 64) {
        Classification::Finite { steps, attractor } => {
            assert_eq!(steps, 1);
            assert_eq!(
                attractor,
                IntervalSet::from_intervals(vec![
                    Interval::new(r(0, 1), r(1, 3)),
                    Interval::new(r(2, 3), r(1, 1)),
                ])
            );
        }
        other => panic!("expected finite, got {other:?}"),
    }
}

#[test]
fn classification_depends_only_on_budget() {
    // slow staircase: the image shrinks by 1/64 each iteration until the
    // left half [0, 1/2) is reached
    let t = pw(
        (r(0, 1), r(1, 1)),
        vec![
            (r(0, 1), r(1, 2), r(0, 1)),
            (r(1, 2), r(1, 1), r(-1, 64)),
        ],
    );
    let small = t.attractor_classify(3, 1024);
    assert!(matches!(small, Classification::Undetermined { .. }));
    let big = t.attractor_classify(1024, 1024);
    let Classification::Finite { steps, .. } = big else {
        panic!("expected the larger budget to classify, got {big:?}");
    };
    assert!(steps > 3);
}

#[test]
fn first_return_on_the_full_support_is_the_map() {
    let t = rotation(r(2, 5));
    let ret = t.first_return(Interval::new(r(0, 1), r(1, 1)), 8).unwrap();
    assert_eq!(*ret.map(), t);
    assert!(ret.pieces.iter().all(|p| p.time == 1));
}

#[test]
fn first_return_splits_at_base_pullbacks() {
    // worked three branch map; return to [0, 3/4)
    let t = pw(
        (r(0, 1), r(1, 1)),
        vec![
            (r(0, 1), r(1, 10), r(9, 10)),
            (r(1, 10), r(11, 20), r(1, 10)),
            (r(11, 20), r(1, 1), r(-11, 20)),
        ],
    );
    let ret = t.first_return(Interval::new(r(0, 1), r(3, 4)), 8).unwrap();
    let times: Vec<usize> = ret.pieces.iter().map(|p| p.time).collect();
    assert_eq!(times, vec![2, 1, 1]);
    assert_eq!(
        *ret.map(),
        pw(
            (r(0, 1), r(3, 4)),
            vec![
                (r(0, 1), r(1, 10), r(7, 20)),
                (r(1, 10), r(11, 20), r(1, 10)),
                (r(11, 20), r(3, 4), r(-11, 20)),
            ],
        )
    );
}

#[test]
fn first_return_detects_wandering_pieces() {
    // the right half falls into the left half, which is fixed pointwise
    let t = pw(
        (r(0, 1), r(1, 1)),
        vec![(r(0, 1), r(1, 2), r(0, 1)), (r(1, 2), r(1, 1), r(-1, 2))],
    );
    let err = t.first_return(Interval::new(r(1, 2), r(1, 1)), 16).unwrap_err();
    assert!(matches!(err, PiecewiseError::NonReturning(_, 16)));
}

#[test]
fn trimming_cuts_extremal_gaps_only() {
    // image misses [0, 1/5) forever, interior structure is preserved
    let t = pw(
        (r(0, 1), r(1, 1)),
        vec![(r(0, 1), r(4, 5), r(1, 5)), (r(4, 5), r(1, 1), r(-4, 5) + r(1, 5))],
    );
    let trimmed = t.trim_extremal_gaps(8).unwrap();
    assert_eq!(*trimmed.support(), Interval::new(r(1, 5), r(1, 1)));
    // already trimmed maps are fixed points
    assert_eq!(trimmed.trim_extremal_gaps(8).unwrap(), trimmed);
}

#[test]
fn trimming_respects_the_budget() {
    // every round shaves 1/64 off the right end
    let t = pw(
        (r(0, 1), r(1, 1)),
        vec![
            (r(0, 1), r(1, 2), r(0, 1)),
            (r(1, 2), r(1, 1), r(-1, 64)),
        ],
    );
    assert!(matches!(t.trim_extremal_gaps(2), Err(PiecewiseError::BudgetExceeded(2))));
    assert!(t.trim_extremal_gaps(64).is_ok());
}

#[test]
fn gap_singularity_collapses_to_a_rotation() {
    // singularity 2/5 sits inside the image gap [7/20, 3/5)
    let t = pw(
        (r(0, 1), r(1, 1)),
        vec![
            (r(0, 1), r(2, 5), r(3, 5)),
            (r(2, 5), r(7, 10), r(-2, 5)),
            (r(7, 10), r(1, 1), r(-13, 20)),
        ],
    );
    assert_eq!(t.gaps().pieces(), &[Interval::new(r(7, 20), r(3, 5))]);
    let report = t.reduce_if_singularity_in_gap(64).unwrap().expect("reducible");
    let map = &report.map;
    assert!(map.branches().len() <= 2);
    // exact bijection of its support: no gaps, no overlaps
    assert!(map.gaps().is_empty());
    assert!(map.overlaps().is_empty());
    assert_eq!(report.angle, map.branches()[0].shift);
    // rotation shape: second branch wraps by angle - length
    if map.branches().len() == 2 {
        let len = map.support().length();
        assert_eq!(map.branches()[1].shift, report.angle.clone() - len);
    }
}

#[test]
fn no_gap_singularity_means_no_reduction() {
    let t = pw(
        (r(0, 1), r(1, 1)),
        vec![
            (r(0, 1), r(1, 10), r(9, 10)),
            (r(1, 10), r(11, 20), r(1, 10)),
            (r(11, 20), r(1, 1), r(-11, 20)),
        ],
    );
    assert_eq!(t.reduce_if_singularity_in_gap(64).unwrap(), None);
    let two = rotation(r(2, 5));
    assert!(matches!(
        two.reduce_if_singularity_in_gap(64),
        Err(PiecewiseError::NotThreeBranches)
    ));
}

#[test]
fn flip_is_an_involution_and_preserves_structure() {
    let t = pw(
        (r(0, 1), r(1, 1)),
        vec![
            (r(0, 1), r(1, 10), r(9, 10)),
            (r(1, 10), r(11, 20), r(1, 10)),
            (r(11, 20), r(1, 1), r(-11, 20)),
        ],
    );
    let f = t.flipped();
    assert_eq!(f.flipped(), t);
    assert_eq!(f.gaps().total_length(), t.gaps().total_length());
    assert_eq!(f.overlaps().total_length(), t.overlaps().total_length());
    // interior points conjugate: flip(T(x)) == F(flip(x)) whenever both x
    // and flip(x) are branch interior points
    let x = r(3, 10);
    let edge = r(1, 1);
    let fx = edge.clone() - x.clone();
    // flip(x) must avoid landing exactly on a branch boundary
    assert_eq!(
        edge.clone() - t.evaluate(&x).unwrap(),
        f.evaluate(&fx).unwrap()
    );
}
