//! Length comparison induction on the five cell word states, the accelerated
//! step on the three branch normal form, and the cross-check between them.

use crate::interval::Interval;
use crate::itm3::Itm3;
use crate::perm::{split, ItmPermutation, Letter, PermError, PermWords, Sym};
use crate::piecewise::{Branch, PiecewiseError, PiecewiseTranslation};
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InductionError {
    #[error("gap sits at bottom position {0}, no induction step is defined there")]
    GapPositionUnsupported(usize),
    #[error("word case not covered by the step rules: {0}")]
    UnsupportedCase(String),
    #[error("step disagrees with the geometric first return: {0}")]
    OracleMismatch(String),
    #[error("a branch boundary lies inside the image gap")]
    SingularityInGap,
    #[error("the compared lengths are equal, the accelerated step degenerates")]
    TieDegenerate,
    #[error("map shape not eligible for induction: {0}")]
    UnsupportedShape(String),
    #[error("no matching state within {0} comparison steps")]
    AccelFailure(usize),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Piecewise(#[from] PiecewiseError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// Result of one comparison step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StepOutcome<T> {
    Continue {
        next: ItmPermutation<T>,
        side: Side,
        winner: Letter,
        loser: Letter,
        loser_is_gap: bool,
    },
    /// The gap letter won; the state degenerates to a rotation.
    StopRotation { winner: Letter },
    /// The compared lengths are equal.
    StopTie,
}

/// Symbolic part of a right step, shared with the graph builder: given who
/// wins, rewrite the words. Lengths are not consulted here.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WinnerSide {
    Top,
    Bottom,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WordOutcome {
    Words {
        words: PermWords,
        winner: Letter,
        loser: Letter,
        loser_is_gap: bool,
    },
    Rotation { winner: Letter },
    Unsupported(String),
}

fn insert_after<S: Copy + PartialEq>(prefix: &[S], anchor: S, item: S) -> Option<[S; 5]> {
    let pos = prefix.iter().position(|&s| s == anchor)?;
    let mut out = Vec::with_capacity(5);
    out.extend_from_slice(&prefix[..=pos]);
    out.push(item);
    out.extend_from_slice(&prefix[pos + 1..]);
    out.try_into().ok()
}

/// Rewrites `(w0, w1)` for a right comparison step with the given winner.
/// Requires the gap in one of the two rightmost bottom slots.
pub fn right_step_words(words: &PermWords, winner_side: WinnerSide) -> WordOutcome {
    let w0 = words.w0;
    let w1 = words.w1;
    let repeated = words.repeated_letter();
    let top = w0[4];
    let bottom = w1[4];
    if top == bottom.letter() {
        return WordOutcome::Unsupported(
            "last letters agree on both rows, the comparison always ties".into(),
        );
    }
    match winner_side {
        WinnerSide::Top => {
            let a = top;
            match bottom {
                Sym::Gap(b) => {
                    // the winner letter appears once in the shortened bottom
                    let w1_new = insert_after(&w1[..4], Sym::Plain(a), Sym::Gap(b))
                        .expect("winner occurs in the bottom prefix");
                    WordOutcome::Words {
                        words: PermWords { w0, w1: w1_new },
                        winner: a,
                        loser: b,
                        loser_is_gap: true,
                    }
                }
                Sym::Plain(b) => {
                    if a == repeated {
                        // winner letter doubled on top: substitute a -> ab in
                        // both shortened rows and move the gap onto b
                        let w0_new = insert_after(&w0[..4], a, b)
                            .expect("one copy of the repeated letter remains on top");
                        let mut w1_short: Vec<Sym> = w1[..4]
                            .iter()
                            .filter(|s| !s.is_gap())
                            .copied()
                            .collect();
                        let pos = w1_short
                            .iter()
                            .position(|s| s.letter() == a)
                            .expect("winner occurs in the bottom prefix");
                        w1_short.insert(pos + 1, Sym::Plain(b));
                        w1_short.push(Sym::Gap(b));
                        let w1_new: [Sym; 5] =
                            w1_short.try_into().expect("five bottom symbols");
                        WordOutcome::Words {
                            words: PermWords { w0: w0_new, w1: w1_new },
                            winner: a,
                            loser: b,
                            loser_is_gap: false,
                        }
                    } else {
                        let w1_new = insert_after(&w1[..4], Sym::Plain(a), Sym::Plain(b))
                            .expect("winner occurs in the bottom prefix");
                        WordOutcome::Words {
                            words: PermWords { w0, w1: w1_new },
                            winner: a,
                            loser: b,
                            loser_is_gap: false,
                        }
                    }
                }
            }
        }
        WinnerSide::Bottom => match bottom {
            Sym::Gap(g) => WordOutcome::Rotation { winner: g },
            Sym::Plain(a) => {
                if a == repeated {
                    return WordOutcome::Unsupported(
                        "bottom winner doubled on top; this shape is out of scope".into(),
                    );
                }
                let b = top;
                let w0_new =
                    insert_after(&w0[..4], a, b).expect("winner occurs in the top prefix");
                WordOutcome::Words {
                    words: PermWords { w0: w0_new, w1 },
                    winner: a,
                    loser: b,
                    loser_is_gap: false,
                }
            }
        },
    }
}

/// One right comparison step: compares the lengths of the two rightmost
/// cells and shortens the winner by the loser.
pub fn right_rauzy_step<T: Scalar>(
    p: &ItmPermutation<T>,
) -> Result<StepOutcome<T>, InductionError> {
    let gpos = p.gap_index();
    if gpos < 3 {
        return Err(InductionError::GapPositionUnsupported(gpos));
    }
    let top = p.w0()[4];
    let bottom = p.w1()[4].letter();
    let lt = p.length_of(top).clone();
    let lb = p.length_of(bottom).clone();
    if lt == lb {
        return Ok(StepOutcome::StopTie);
    }
    let side = if lt > lb { WinnerSide::Top } else { WinnerSide::Bottom };
    match right_step_words(p.words(), side) {
        WordOutcome::Rotation { winner } => Ok(StepOutcome::StopRotation { winner }),
        WordOutcome::Unsupported(msg) => Err(InductionError::UnsupportedCase(msg)),
        WordOutcome::Words { words, winner, loser, loser_is_gap } => {
            let mut lengths = p.lengths().clone();
            let w = winner.index();
            lengths[w] = lengths[w].clone() - p.length_of(loser).clone();
            let next = ItmPermutation::new(words, lengths)?;
            Ok(StepOutcome::Continue { next, side: Side::Right, winner, loser, loser_is_gap })
        }
    }
}

/// Dispatching step: gap in the right half of the bottom word does a right
/// step, gap in the left half conjugates by the flip first. The middle slot
/// admits no step.
pub fn r_step<T: Scalar>(p: &ItmPermutation<T>) -> Result<StepOutcome<T>, InductionError> {
    match p.gap_index() {
        3 | 4 => right_rauzy_step(p),
        0 | 1 => {
            let q = p.flipped();
            match right_rauzy_step(&q)? {
                StepOutcome::Continue { next, winner, loser, loser_is_gap, .. } => {
                    Ok(StepOutcome::Continue {
                        next: next.flipped(),
                        side: Side::Left,
                        winner,
                        loser,
                        loser_is_gap,
                    })
                }
                stop => Ok(stop),
            }
        }
        pos => Err(InductionError::GapPositionUnsupported(pos)),
    }
}

/// Checks one `Continue` step against the geometric first return map of the
/// state it came from.
pub fn oracle_check_step<T: Scalar>(
    p: &ItmPermutation<T>,
    outcome: &StepOutcome<T>,
    transit_cap: usize,
) -> Result<(), InductionError> {
    let StepOutcome::Continue { next, side, .. } = outcome else {
        return Ok(());
    };
    let (map, target) = match side {
        Side::Right => (p.to_piecewise(), next.to_piecewise()),
        Side::Left => (p.to_piecewise().flipped(), next.to_piecewise().flipped()),
    };
    let base = Interval::new(T::zero(), next.total());
    let got = map.first_return(base, transit_cap)?;
    if *got.map() != target {
        return Err(InductionError::OracleMismatch(format!(
            "first return gives {:?}, step gives {:?}",
            got.map(),
            target
        )));
    }
    Ok(())
}

/// Why an induction run ended.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PathEnd {
    StopRotation { winner: Letter },
    StopTie,
    DepthReached,
    /// A state repeated after rescaling; only possible for irrational data,
    /// recorded for completeness.
    Periodic { first_seen: usize },
    GapUnsupported { position: usize },
    Unsupported(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StepRecord<T> {
    pub side: Side,
    pub winner: Letter,
    pub loser: Letter,
    pub loser_is_gap: bool,
    pub lengths_after: [T; 4],
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InductionPath<T> {
    pub start: ItmPermutation<T>,
    pub steps: Vec<StepRecord<T>>,
    pub end: PathEnd,
    pub final_state: ItmPermutation<T>,
}

impl<T: Scalar> InductionPath<T> {
    /// One line per step, replayable against `r_step`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            let lens = Letter::ALL
                .iter()
                .map(|l| format!("{l}:{}", s.lengths_after[l.index()]))
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!(
                "step={} side={} winner={} loser={} loser_is_gap={} lengths={}\n",
                i + 1,
                s.side,
                s.winner,
                s.loser,
                s.loser_is_gap,
                lens
            ));
        }
        out.push_str(&format!("end={:?}\n", self.end));
        out
    }
}

/// Runs `r_step` up to `depth` times, detecting exact repeats of the
/// rescaled state.
pub fn iterate<T: Scalar>(p: &ItmPermutation<T>, depth: usize) -> InductionPath<T> {
    let mut state = p.clone();
    let mut steps = Vec::new();
    // Brent style cycle detection on the rescaled state. Exact equality up
    // to rescaling is expensive, so a lossy float fingerprint filters first.
    let mut anchor = state.clone();
    let mut anchor_print = length_fingerprint(&anchor);
    let mut anchor_at = 0usize;
    let mut next_anchor = 1usize;
    for n in 0..depth {
        if n > anchor_at
            && state.words() == anchor.words()
            && length_fingerprint(&state) == anchor_print
            && states_match_up_to_scale(&anchor, &state)
        {
            return InductionPath {
                start: p.clone(),
                steps,
                end: PathEnd::Periodic { first_seen: anchor_at },
                final_state: state,
            };
        }
        if n == next_anchor {
            anchor = state.clone();
            anchor_print = length_fingerprint(&anchor);
            anchor_at = n;
            next_anchor *= 2;
        }
        match r_step(&state) {
            Ok(StepOutcome::Continue { next, side, winner, loser, loser_is_gap }) => {
                steps.push(StepRecord {
                    side,
                    winner,
                    loser,
                    loser_is_gap,
                    lengths_after: next.lengths().clone(),
                });
                state = next;
            }
            Ok(StepOutcome::StopRotation { winner }) => {
                return InductionPath {
                    start: p.clone(),
                    steps,
                    end: PathEnd::StopRotation { winner },
                    final_state: state,
                };
            }
            Ok(StepOutcome::StopTie) => {
                return InductionPath {
                    start: p.clone(),
                    steps,
                    end: PathEnd::StopTie,
                    final_state: state,
                };
            }
            Err(InductionError::GapPositionUnsupported(pos)) => {
                return InductionPath {
                    start: p.clone(),
                    steps,
                    end: PathEnd::GapUnsupported { position: pos },
                    final_state: state,
                };
            }
            Err(e) => {
                return InductionPath {
                    start: p.clone(),
                    steps,
                    end: PathEnd::Unsupported(e.to_string()),
                    final_state: state,
                };
            }
        }
    }
    InductionPath { start: p.clone(), steps, end: PathEnd::DepthReached, final_state: state }
}

/// Scale free lossy fingerprint of the lengths: float ratios to the first.
fn length_fingerprint<T: Scalar>(p: &ItmPermutation<T>) -> [u64; 3] {
    let l0 = p.lengths()[0].to_f64_lossy();
    std::array::from_fn(|i| (p.lengths()[i + 1].to_f64_lossy() / l0).to_bits())
}

/// Exact check that two states are equal after rescaling: same words and
/// proportional length vectors (compared by cross multiplication).
fn states_match_up_to_scale<T: Scalar>(a: &ItmPermutation<T>, b: &ItmPermutation<T>) -> bool {
    if a.words() != b.words() {
        return false;
    }
    let la = a.lengths();
    let lb = b.lengths();
    (1..4).all(|i| la[i].clone() * lb[0].clone() == lb[i].clone() * la[0].clone())
}


/// Who wins the accelerated comparison.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ZWinner {
    /// Rightmost domain branch is longer than the rightmost image interval.
    Top,
    /// Rightmost image interval is longer.
    Bottom,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZInduced<T: Scalar> {
    /// Induced map, trimmed, in the original orientation.
    pub map: PiecewiseTranslation<T>,
    pub winner: ZWinner,
    /// Whether the comparison ran on the flipped map because the overlap sat
    /// left of the gap.
    pub flipped: bool,
}

/// Accelerated step: compares the rightmost domain branch against the
/// rightmost image interval and takes one first return.
///
/// When the top wins the new base ends where the gap starts; when the bottom
/// wins the base drops exactly the rightmost domain branch.
pub fn z_step<T: Scalar>(m: &Itm3<T>, transit_cap: usize) -> Result<ZInduced<T>, InductionError> {
    let pw = m.to_piecewise();
    let gaps = pw.gaps();
    if gaps.pieces().len() != 1 {
        return Err(InductionError::UnsupportedShape(format!(
            "{} image gaps",
            gaps.pieces().len()
        )));
    }
    let overlaps = pw.overlaps();
    if overlaps.pieces().len() != 1 {
        return Err(InductionError::UnsupportedShape(format!(
            "{} overlap regions",
            overlaps.pieces().len()
        )));
    }
    if pw.singularities().iter().any(|s| gaps.contains(s)) {
        return Err(InductionError::SingularityInGap);
    }
    let flipped = gaps.pieces()[0].lo() < overlaps.pieces()[0].lo();
    let work = if flipped { pw.flipped() } else { pw.clone() };
    let gap = work.gaps().pieces()[0].clone();
    let total = work.support().hi().clone();
    let lam_top = work.branches().last().expect("three branches").domain.length();
    let lam_bottom = total.clone() - gap.hi().clone();
    if lam_top == lam_bottom {
        return Err(InductionError::TieDegenerate);
    }
    let (winner, base_hi) = if lam_top > lam_bottom {
        (ZWinner::Top, gap.lo().clone())
    } else {
        (ZWinner::Bottom, total - lam_top)
    };
    let base = Interval::new(T::zero(), base_hi);
    let ret = work.first_return(base, transit_cap)?;
    let trimmed = ret.map().trim_extremal_gaps(transit_cap)?;
    let map = if flipped { trimmed.flipped() } else { trimmed };
    Ok(ZInduced { map, winner, flipped })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AccelReport {
    /// Comparison steps needed to reach the accelerated state.
    pub steps: usize,
    /// True when both sides stopped on a tie instead of matching states.
    pub tie: bool,
    /// True when the match was found against the reflected state.
    pub flipped_match: bool,
}

/// Translates a map so its support starts at zero. Conjugating by a
/// translation leaves every branch shift unchanged, so states that differ
/// only by where trimming left the support become comparable.
fn rebased<T: Scalar>(map: &PiecewiseTranslation<T>) -> PiecewiseTranslation<T> {
    let s = map.support().lo().clone();
    if s == T::zero() {
        return map.clone();
    }
    let support = Interval::new(T::zero(), map.support().hi().clone() - s.clone());
    let branches = map
        .branches()
        .iter()
        .map(|b| Branch {
            domain: Interval::new(
                b.domain.lo().clone() - s.clone(),
                b.domain.hi().clone() - s.clone(),
            ),
            shift: b.shift.clone(),
        })
        .collect();
    PiecewiseTranslation::new(support, branches).expect("translation keeps the map valid")
}

/// Verifies that the accelerated step equals a finite burst of comparison
/// steps: runs `r_step` from the split of `m` and looks for the trimmed
/// state that matches the accelerated output up to translation.
pub fn check_acceleration<T: Scalar>(
    m: &Itm3<T>,
    cap: usize,
    transit_cap: usize,
) -> Result<AccelReport, InductionError> {
    let z = match z_step(m, transit_cap) {
        Ok(z) => Some(z),
        Err(InductionError::TieDegenerate) => None,
        Err(e) => return Err(e),
    };
    let target = z.as_ref().map(|z| rebased(&z.map));
    let mut state = split(m)?;
    for n in 1..=cap {
        match r_step(&state)? {
            StepOutcome::Continue { next, .. } => {
                if let Some(target) = &target {
                    let cand = next.to_piecewise().trim_extremal_gaps(transit_cap)?;
                    if rebased(&cand) == *target {
                        return Ok(AccelReport { steps: n, tie: false, flipped_match: false });
                    }
                    if rebased(&cand.flipped()) == *target {
                        return Ok(AccelReport { steps: n, tie: false, flipped_match: true });
                    }
                }
                state = next;
            }
            StepOutcome::StopTie => {
                if z.is_none() {
                    return Ok(AccelReport { steps: n, tie: true, flipped_match: false });
                }
                return Err(InductionError::OracleMismatch(
                    "comparison ties but the accelerated step does not".into(),
                ));
            }
            StepOutcome::StopRotation { .. } => {
                return Err(InductionError::OracleMismatch(
                    "comparison degenerates to a rotation before matching".into(),
                ));
            }
        }
    }
    Err(InductionError::AccelFailure(cap))
}
