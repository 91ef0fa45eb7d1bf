//! Single parameter classification used by every experiment.
//!
//! A double rotation is reduced to its three branch normal form, split into
//! the five cell word state, and driven through the comparison induction up
//! to a depth. The outcome says how the run ended.

use itm_core::{
    iterate, split, Classification, ConvertError, DoubleRotation, PathEnd, PermError, Scalar,
};

/// How deep the attractor iteration may go in the cross check.
pub const ATTRACTOR_PIECE_CAP: usize = 512;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Outcome {
    /// The map is (or collapses onto) a plain circle rotation before any
    /// induction step runs.
    Rotation,
    /// The induction stopped: some letter won everything, or the image
    /// intervals came apart, so the attractor is a finite union of arcs.
    Finite { steps: usize },
    /// The comparison tied; the map degenerates to a bijective exchange.
    Tie { steps: usize },
    /// Still running after the full depth.
    Survivor,
    /// The rescaled state repeated exactly. Impossible for a map whose
    /// attractor is finite, so this marks an infinite type orbit.
    Periodic { steps: usize },
    /// The induced map needed a move the five cell calculus does not cover
    /// (gap at the middle slot).
    GapMiddle { steps: usize },
    /// Conversion or arithmetic failure, recorded rather than panicking.
    Error(String),
}

impl Outcome {
    /// Short machine readable tag for CSV rows.
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Rotation => "rotation",
            Outcome::Finite { .. } => "finite",
            Outcome::Tie { .. } => "tie",
            Outcome::Survivor => "survivor",
            Outcome::Periodic { .. } => "periodic",
            Outcome::GapMiddle { .. } => "gap3",
            Outcome::Error(_) => "error",
        }
    }

    /// Induction steps consumed before the run ended. A survivor used the
    /// whole budget, which the caller knows as the depth.
    pub fn steps(&self, depth: usize) -> usize {
        match self {
            Outcome::Rotation | Outcome::Error(_) => 0,
            Outcome::Finite { steps }
            | Outcome::Tie { steps }
            | Outcome::Periodic { steps }
            | Outcome::GapMiddle { steps } => *steps,
            Outcome::Survivor => depth,
        }
    }

    /// True when the run has not stopped by step `d`. A periodic state
    /// never stops, so it survives every depth.
    pub fn survives(&self, d: usize, depth: usize) -> bool {
        matches!(self, Outcome::Periodic { .. }) || self.steps(depth) >= d
    }
}

/// Classifies one parameter triple by running the induction to `depth`.
///
/// `budget` bounds every auxiliary iteration: gap trimming, first return
/// transit counts, and the attractor reduction.
pub fn classify_one<T: Scalar>(dr: &DoubleRotation<T>, depth: usize, budget: usize) -> Outcome {
    if dr.is_rotation() {
        return Outcome::Rotation;
    }
    let rep = match dr.to_itm3(budget) {
        Ok(rep) => rep,
        Err(ConvertError::DegenerateRotation) | Err(ConvertError::Surjective) => {
            return Outcome::Rotation
        }
        Err(e) => return Outcome::Error(e.to_string()),
    };
    let state = match split(&rep.itm3) {
        Ok(state) => state,
        Err(PermError::NoOverlap) => {
            // Injective three branch map: images are pairwise disjoint, so
            // the attractor stabilizes immediately as a finite arc union.
            return Outcome::Finite { steps: 0 };
        }
        Err(PermError::SingularityInGap) => {
            // The map collapses onto a rotation of a finite arc union.
            return match rep.itm3.to_piecewise().reduce_if_singularity_in_gap(budget) {
                Ok(_) => Outcome::Finite { steps: 0 },
                Err(e) => Outcome::Error(e.to_string()),
            };
        }
        Err(e) => return Outcome::Error(e.to_string()),
    };
    let path = iterate(&state, depth);
    let steps = path.steps.len();
    match path.end {
        PathEnd::StopRotation { .. } => Outcome::Finite { steps },
        PathEnd::StopTie => Outcome::Tie { steps },
        PathEnd::DepthReached => Outcome::Survivor,
        PathEnd::Periodic { .. } => Outcome::Periodic { steps },
        PathEnd::GapUnsupported { position } => Outcome::GapMiddle {
            steps: steps.max(position),
        },
        PathEnd::Unsupported(msg) => Outcome::Error(msg),
    }
}

/// Result of running both the symbolic induction and the geometric
/// attractor iteration on the same parameter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrossCheck {
    pub outcome: Outcome,
    /// Steps the attractor iteration took to stabilize, if it did.
    pub attractor_steps: Option<usize>,
    /// A finite attractor together with a periodic induction state can
    /// never coexist; seeing both is a bug in one of the two engines.
    pub contradiction: bool,
}

/// Classifies and cross checks against direct attractor iteration.
pub fn classify_crosschecked<T: Scalar>(
    dr: &DoubleRotation<T>,
    depth: usize,
    budget: usize,
) -> CrossCheck {
    let outcome = classify_one(dr, depth, budget);
    let attractor_steps = match dr
        .to_piecewise()
        .attractor_classify(budget, ATTRACTOR_PIECE_CAP)
    {
        Classification::Finite { steps, .. } => Some(steps),
        Classification::Undetermined { .. } => None,
    };
    let contradiction =
        attractor_steps.is_some() && matches!(outcome, Outcome::Periodic { .. });
    CrossCheck {
        outcome,
        attractor_steps,
        contradiction,
    }
}
