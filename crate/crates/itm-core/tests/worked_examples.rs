//! Hand-computed reference values for the word representation, the
//! comparison induction and the accelerated step, all on one fully worked
//! five cell state.

use itm_core::induction::{
    check_acceleration, iterate, oracle_check_step, r_step, right_rauzy_step, z_step, PathEnd,
    Side, StepOutcome, ZWinner,
};
use itm_core::interval::Interval;
use itm_core::perm::{parse_word0, parse_word1, split, ItmPermutation, Letter, PermWords};
use itm_core::piecewise::{Branch, PiecewiseTranslation};
use itm_core::scalar::{Rat, Scalar};
use itm_core::Itm3;

fn r(n: i64, d: i64) -> Rat {
    Rat::from_ratio(n, d)
}

fn state(w0: &str, w1: &str, lens: [(i64, i64); 4]) -> ItmPermutation<Rat> {
    ItmPermutation::new(
        PermWords { w0: parse_word0(w0).unwrap(), w1: parse_word1(w1).unwrap() },
        [
            r(lens[0].0, lens[0].1),
            r(lens[1].0, lens[1].1),
            r(lens[2].0, lens[2].1),
            r(lens[3].0, lens[3].1),
        ],
    )
    .unwrap()
}

/// ADBCD over CDBD_A with lengths A=1/10, B=1/5, C=1/5, D=1/4.
fn worked_state() -> ItmPermutation<Rat> {
    state("ADBCD", "CDBD_A", [(1, 10), (1, 5), (1, 5), (1, 4)])
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

#[test]
fn evaluation_matches_prefix_sums() {
    let p = worked_state();
    assert_eq!(p.total(), r(1, 1));
    assert_eq!(p.evaluate(&r(0, 1)).unwrap(), r(9, 10));
    assert_eq!(p.evaluate(&r(3, 5)).unwrap(), r(1, 20));
    // second copy of the repeated letter lands on the overlap slot
    assert_eq!(p.evaluate(&r(3, 4)).unwrap(), r(1, 5));
    assert!(p.evaluate(&r(1, 1)).is_err());
}

#[test]
fn replay_as_piecewise_translation() {
    let p = worked_state();
    let expected = pw(
        (r(0, 1), r(1, 1)),
        vec![
            (r(0, 1), r(1, 10), r(9, 10)),
            (r(1, 10), r(11, 20), r(1, 10)),
            (r(11, 20), r(1, 1), r(-11, 20)),
        ],
    );
    assert_eq!(p.to_piecewise(), expected);
    // one overlap of length 1/4 and one gap of the same length
    let map = p.to_piecewise();
    assert_eq!(map.overlaps().pieces(), &[Interval::new(r(1, 5), r(9, 20))]);
    assert_eq!(map.gaps().pieces(), &[Interval::new(r(13, 20), r(9, 10))]);
}

#[test]
fn first_comparison_step_doubles_the_winner() {
    let p = worked_state();
    let out = right_rauzy_step(&p).unwrap();
    let StepOutcome::Continue { next, side, winner, loser, loser_is_gap } = &out else {
        panic!("expected a continuing step, got {out:?}");
    };
    assert_eq!(*side, Side::Right);
    assert_eq!(*winner, Letter::D);
    assert_eq!(*loser, Letter::A);
    assert!(!loser_is_gap);
    let expected = state("ADABC", "CDABA_", [(1, 10), (1, 5), (1, 5), (3, 20)]);
    assert_eq!(*next, expected);
    assert_eq!(next.total(), r(3, 4));
    oracle_check_step(&p, &out, 64).unwrap();
}

#[test]
fn second_step_beats_the_gap() {
    let p = state("ADABC", "CDABA_", [(1, 10), (1, 5), (1, 5), (3, 20)]);
    let out = right_rauzy_step(&p).unwrap();
    let StepOutcome::Continue { next, winner, loser, loser_is_gap, .. } = &out else {
        panic!("expected a continuing step, got {out:?}");
    };
    assert_eq!(*winner, Letter::C);
    assert_eq!(*loser, Letter::A);
    assert!(loser_is_gap);
    let expected = state("ADABC", "CA_DAB", [(1, 10), (1, 5), (1, 10), (3, 20)]);
    assert_eq!(*next, expected);
    assert_eq!(next.total(), r(13, 20));
    oracle_check_step(&p, &out, 64).unwrap();
}

#[test]
fn third_step_is_a_left_tie() {
    let p = state("ADABC", "CA_DAB", [(1, 10), (1, 5), (1, 10), (3, 20)]);
    assert_eq!(p.gap_index(), 1);
    assert_eq!(r_step(&p).unwrap(), StepOutcome::StopTie);
}

#[test]
fn iterate_records_the_whole_run() {
    let path = iterate(&worked_state(), 50);
    assert_eq!(path.steps.len(), 2);
    assert_eq!(path.end, PathEnd::StopTie);
    assert_eq!(path.steps[0].winner, Letter::D);
    assert_eq!(path.steps[1].winner, Letter::C);
    // replaying the rendered records from the start reproduces each state
    let rendered = path.render();
    assert!(rendered.contains("step=1 side=right winner=D loser=A loser_is_gap=false"));
    assert!(rendered.contains("step=2 side=right winner=C loser=A loser_is_gap=true"));
    assert!(rendered.ends_with("end=StopTie\n"));
}

#[test]
fn accelerated_step_equals_a_comparison_burst() {
    let p = worked_state();
    let m = Itm3::from_piecewise(&p.to_piecewise()).unwrap();
    // the split of the three branch map reproduces the words
    assert_eq!(split(&m).unwrap(), p);
    let z = z_step(&m, 64).unwrap();
    assert_eq!(z.winner, ZWinner::Top);
    assert!(!z.flipped);
    let expected = pw(
        (r(0, 1), r(13, 20)),
        vec![
            (r(0, 1), r(1, 10), r(7, 20)),
            (r(1, 10), r(11, 20), r(1, 10)),
            (r(11, 20), r(13, 20), r(-11, 20)),
        ],
    );
    assert_eq!(z.map, expected);
    let report = check_acceleration(&m, 64, 64).unwrap();
    assert_eq!(report.steps, 1);
    assert!(!report.tie);
}

#[test]
fn flip_conjugates_the_words() {
    let p = worked_state();
    assert_eq!(p.flipped().to_piecewise(), p.to_piecewise().flipped());
    assert_eq!(p.flipped().flipped(), p);
}

#[test]
fn serialization_round_trip() {
    let p = worked_state();
    let text = p.serialize();
    assert_eq!(text, "ADBCD\nCDBD_A\nA=1/10\nB=1/5\nC=1/5\nD=1/4\n");
    assert_eq!(ItmPermutation::<Rat>::parse(&text).unwrap(), p);
}
