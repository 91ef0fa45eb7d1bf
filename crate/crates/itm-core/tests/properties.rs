//! Randomized invariants: every symbolic step must agree with the geometric
//! first return map, flips must conjugate everything, and the accelerated
//! step must match a finite burst of comparison steps.

use itm_core::double_rotation::DoubleRotation;
use itm_core::induction::{check_acceleration, oracle_check_step, r_step, StepOutcome};
use itm_core::interval::Interval;
use itm_core::itm3::{Itm3, Perm3};
use itm_core::perm::{split, ItmPermutation};
use itm_core::scalar::{Rat, Scalar};
use itm_core::seed_states;
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rat {
    Rat::from_ratio(n, d)
}

fn lengths_strategy() -> impl Strategy<Value = [Rat; 4]> {
    // positive rationals with a shared denominator keep totals small
    [1i64..200, 1i64..200, 1i64..200, 1i64..200]
        .prop_map(|ns| ns.map(|n| r(n, 600)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_step_matches_the_first_return((seed, lens) in (0usize..2, lengths_strategy())) {
        let words = seed_states()[seed];
        let mut state = ItmPermutation::new(words, lens).unwrap();
        for _ in 0..25 {
            match r_step(&state) {
                Ok(out) => {
                    oracle_check_step(&state, &out, 4096).unwrap();
                    match out {
                        StepOutcome::Continue { next, .. } => {
                            prop_assert!(next.total() < state.total());
                            state = next;
                        }
                        _ => break,
                    }
                }
                Err(_) => break,
            }
        }
    }

    #[test]
    fn flips_are_involutions_and_conjugacies((seed, lens) in (0usize..2, lengths_strategy())) {
        let p = ItmPermutation::new(seed_states()[seed], lens).unwrap();
        prop_assert_eq!(p.flipped().flipped(), p.clone());
        prop_assert_eq!(p.flipped().to_piecewise(), p.to_piecewise().flipped());
        let pw = p.to_piecewise();
        prop_assert_eq!(pw.flipped().flipped(), pw);
    }

    #[test]
    fn image_never_gains_measure((seed, lens) in (0usize..2, lengths_strategy())) {
        let pw = ItmPermutation::new(seed_states()[seed], lens).unwrap().to_piecewise();
        let full = itm_core::interval::IntervalSet::from_interval(pw.support().clone());
        let mut s = full.clone();
        for _ in 0..6 {
            let next = pw.image_set(&s);
            prop_assert!(next.is_subset_of(&s));
            s = next;
        }
    }

    #[test]
    fn circle_first_returns_are_exact(
        (an, bn, cn, qn, xn) in (1i64..48, 1i64..48, 1i64..47, 8i64..48, 0i64..997),
    ) {
        let dr = DoubleRotation::new(r(an, 48), r(bn, 48), r(cn, 48)).unwrap();
        let pw = dr.to_piecewise();
        let base = Interval::new(r(0, 1), r(qn, 48));
        let ret = match pw.first_return(base.clone(), 4096) {
            Ok(ret) => ret,
            Err(_) => return Ok(()),
        };
        let x = r(xn * qn, 997 * 48);
        prop_assert!(base.contains(&x));
        let mut z = pw.evaluate(&x).unwrap();
        let mut hops = 1usize;
        while !base.contains(&z) {
            z = pw.evaluate(&z).unwrap();
            hops += 1;
            prop_assert!(hops < 100000);
        }
        prop_assert_eq!(ret.map().evaluate(&x).unwrap(), z);
    }

    #[test]
    fn double_rotation_pipeline_steps_match_geometry(
        (an, bn, cn) in (1i64..256, 1i64..256, 1i64..255),
    ) {
        let dr = DoubleRotation::new(r(an, 256), r(bn, 256), r(cn, 255)).unwrap();
        if dr.is_rotation() {
            return Ok(());
        }
        let rep = match dr.to_itm3(4096) {
            Ok(rep) => rep,
            Err(_) => return Ok(()),
        };
        let mut state = match split(&rep.itm3) {
            Ok(s) => s,
            Err(_) => return Ok(()),
        };
        for _ in 0..25 {
            match r_step(&state) {
                Ok(out) => {
                    oracle_check_step(&state, &out, 4096).unwrap();
                    match out {
                        StepOutcome::Continue { next, .. } => state = next,
                        _ => break,
                    }
                }
                Err(_) => break,
            }
        }
    }

    #[test]
    fn accelerated_step_is_a_step_burst(
        (l1, l2, l3, tn, which) in (1i64..40, 1i64..40, 1i64..40, 0i64..120, 0usize..3),
    ) {
        let lam = [r(l1, 120), r(l2, 120), r(l3, 120)];
        let pi1 = [Perm3([2, 3, 1]), Perm3([3, 2, 1]), Perm3([3, 1, 2])][which];
        let m = match Itm3::new(Perm3::identity(), pi1, lam, r(tn, 120)) {
            Ok(m) => m,
            Err(_) => return Ok(()),
        };
        if split(&m).is_err() {
            return Ok(());
        }
        match check_acceleration(&m, 64, 4096) {
            Ok(rep) => prop_assert!(rep.steps >= 1),
            // rational data may tie or degenerate before matching; both stops
            // are honest, anything else is a real failure
            Err(itm_core::InductionError::TieDegenerate) => {}
            Err(itm_core::InductionError::OracleMismatch(msg)) => {
                prop_assert!(
                    msg.contains("degenerates to a rotation") || msg.contains("ties"),
                    "unexpected mismatch: {}", msg
                );
            }
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        }
    }
}
