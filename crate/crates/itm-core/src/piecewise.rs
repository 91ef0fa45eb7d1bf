//! Piecewise translations of a half-open interval into itself.
//!
//! The branch domains partition the support exactly and every branch image
//! stays inside the support, so forward iteration never escapes. Images may
//! overlap and may leave gaps; that is the whole point.

use crate::interval::{Interval, IntervalSet};
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PiecewiseError {
    #[error("branch domains do not partition the support: {0}")]
    InvalidBranches(String),
    #[error("point {0} is outside the support")]
    OutOfSupport(String),
    #[error("piece {0} never returns to the base within {1} steps")]
    NonReturning(String, usize),
    #[error("budget of {0} rounds exceeded")]
    BudgetExceeded(usize),
    #[error("map does not have exactly 3 branches")]
    NotThreeBranches,
    #[error("reduction did not terminate in a two branch bijection: {0}")]
    ReductionFailed(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Branch<T: Scalar> {
    pub domain: Interval<T>,
    pub shift: T,
}

impl<T: Scalar> Branch<T> {
    pub fn image(&self) -> Interval<T> {
        self.domain.translate(&self.shift)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PiecewiseTranslation<T: Scalar> {
    support: Interval<T>,
    branches: Vec<Branch<T>>,
}

impl<T: Scalar> std::fmt::Debug for PiecewiseTranslation<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "on {:?}:", self.support)?;
        for b in &self.branches {
            write!(f, " {:?}{}{}", b.domain, if b.shift >= T::zero() { "+" } else { "" }, b.shift)?;
        }
        Ok(())
    }
}

impl<T: Scalar> PiecewiseTranslation<T> {
    /// Sorts the branches, merges adjacent branches with equal shifts and
    /// checks the partition and self-mapping invariants.
    pub fn new(support: Interval<T>, mut branches: Vec<Branch<T>>) -> Result<Self, PiecewiseError> {
        branches.sort_by(|a, b| a.domain.lo().cmp(b.domain.lo()));
        let mut merged: Vec<Branch<T>> = Vec::with_capacity(branches.len());
        for b in branches {
            match merged.last_mut() {
                Some(last) if last.domain.hi() == b.domain.lo() && last.shift == b.shift => {
                    last.domain = Interval::new(last.domain.lo().clone(), b.domain.hi().clone());
                }
                _ => merged.push(b),
            }
        }
        let mut cursor = support.lo().clone();
        for b in &merged {
            if *b.domain.lo() != cursor {
                return Err(PiecewiseError::InvalidBranches(format!(
                    "expected a branch starting at {cursor}, found {:?}",
                    b.domain
                )));
            }
            cursor = b.domain.hi().clone();
            if !b.image().is_subset_of(&support) {
                return Err(PiecewiseError::InvalidBranches(format!(
                    "branch image {:?} leaves the support {:?}",
                    b.image(),
                    support
                )));
            }
        }
        if cursor != *support.hi() {
            return Err(PiecewiseError::InvalidBranches(format!(
                "branches stop at {cursor} before the end of {support:?}"
            )));
        }
        Ok(PiecewiseTranslation { support, branches: merged })
    }

    pub fn support(&self) -> &Interval<T> {
        &self.support
    }

    pub fn branches(&self) -> &[Branch<T>] {
        &self.branches
    }

    pub fn evaluate(&self, x: &T) -> Result<T, PiecewiseError> {
        for b in &self.branches {
            if b.domain.contains(x) {
                return Ok(x.clone() + b.shift.clone());
            }
        }
        Err(PiecewiseError::OutOfSupport(x.to_string()))
    }

    /// Forward image of a set under the map.
    pub fn image_set(&self, s: &IntervalSet<T>) -> IntervalSet<T> {
        let mut raw = Vec::new();
        for b in &self.branches {
            for p in s.intersect_interval(&b.domain).pieces() {
                raw.push(p.translate(&b.shift));
            }
        }
        IntervalSet::from_intervals(raw)
    }

    /// Image of the whole support.
    pub fn image(&self) -> IntervalSet<T> {
        IntervalSet::from_intervals(self.branches.iter().map(|b| b.image()).collect())
    }

    /// Uncovered part of the support.
    pub fn gaps(&self) -> IntervalSet<T> {
        IntervalSet::from_interval(self.support.clone()).subtract(&self.image())
    }

    /// Part of the support covered by at least two branch images.
    pub fn overlaps(&self) -> IntervalSet<T> {
        let mut raw = Vec::new();
        for (i, a) in self.branches.iter().enumerate() {
            for b in &self.branches[i + 1..] {
                if let Some(o) = a.image().intersect(&b.image()) {
                    raw.push(o);
                }
            }
        }
        IntervalSet::from_intervals(raw)
    }

    /// Interior branch boundaries.
    pub fn singularities(&self) -> Vec<T> {
        self.branches
            .iter()
            .skip(1)
            .map(|b| b.domain.lo().clone())
            .collect()
    }

    /// Reflection through the midpoint of the support. Branch order reverses
    /// and shifts negate; branch endpoint images are taken from the left, so
    /// this agrees with the true conjugation away from the finitely many
    /// branch boundaries.
    pub fn flipped(&self) -> PiecewiseTranslation<T> {
        let edge = self.support.lo().clone() + self.support.hi().clone();
        let branches = self
            .branches
            .iter()
            .map(|b| Branch {
                domain: Interval::new(
                    edge.clone() - b.domain.hi().clone(),
                    edge.clone() - b.domain.lo().clone(),
                ),
                shift: -b.shift.clone(),
            })
            .collect();
        PiecewiseTranslation::new(self.support.clone(), branches)
            .expect("flip preserves the partition")
    }

    /// Restriction to a subinterval that contains the image of the map, so
    /// the restriction still maps into itself.
    fn restrict_to(&self, sub: Interval<T>) -> PiecewiseTranslation<T> {
        let branches: Vec<Branch<T>> = self
            .branches
            .iter()
            .filter_map(|b| {
                b.domain.intersect(&sub).map(|domain| Branch { domain, shift: b.shift.clone() })
            })
            .collect();
        PiecewiseTranslation::new(sub, branches).expect("restriction keeps a partition")
    }

    /// Repeatedly restricts to the hull of the image until the image touches
    /// both ends of the support, removing extremal gaps.
    pub fn trim_extremal_gaps(&self, cap: usize) -> Result<PiecewiseTranslation<T>, PiecewiseError> {
        self.trim_extremal_gaps_until(cap, 0)
    }

    /// Like `trim_extremal_gaps`, but stops early (successfully) as soon as
    /// fewer than `min_branches` branches remain. Restriction never adds
    /// branches, so a caller that needs at least `min_branches` of them can
    /// bail out instead of chasing a slowly shrinking support.
    pub fn trim_extremal_gaps_until(
        &self,
        cap: usize,
        min_branches: usize,
    ) -> Result<PiecewiseTranslation<T>, PiecewiseError> {
        let mut cur = self.clone();
        for _ in 0..=cap {
            if cur.branches.len() < min_branches {
                return Ok(cur);
            }
            let hull = cur
                .image()
                .hull()
                .ok_or_else(|| PiecewiseError::InvalidBranches("empty image".into()))?;
            if hull == cur.support {
                return Ok(cur);
            }
            cur = cur.restrict_to(hull);
        }
        Err(PiecewiseError::BudgetExceeded(cap))
    }

    /// Iterates the image of the support until it stabilizes.
    pub fn attractor_classify(&self, max_steps: usize, max_pieces: usize) -> Classification<T> {
        let mut s = IntervalSet::from_interval(self.support.clone());
        for n in 0..max_steps {
            let next = self.image_set(&s);
            if next == s {
                return Classification::Finite { steps: n, attractor: s };
            }
            s = next;
            if s.pieces().len() > max_pieces {
                return Classification::Undetermined { steps: n + 1, last: s };
            }
        }
        Classification::Undetermined { steps: max_steps, last: s }
    }

    /// First return map to `base`, a subinterval of the support. Each return
    /// piece has a constant itinerary. Fails with `NonReturning` if any piece
    /// wanders outside the base for more than `transit_cap` steps.
    pub fn first_return(
        &self,
        base: Interval<T>,
        transit_cap: usize,
    ) -> Result<ReturnMap<T>, PiecewiseError> {
        assert!(
            base.is_subset_of(&self.support),
            "base {base:?} outside support {:?}",
            self.support
        );
        let mut done: Vec<ReturnPiece<T>> = Vec::new();
        // (domain piece of base, accumulated shift, steps taken)
        let mut work: Vec<(Interval<T>, T, usize)> = vec![(base.clone(), T::zero(), 0)];
        while let Some((dom, shift, steps)) = work.pop() {
            let cur = dom.translate(&shift);
            if steps > 0 && cur.is_subset_of(&base) {
                done.push(ReturnPiece { domain: dom, shift, time: steps });
                continue;
            }
            // Chop off the part already back in the base (possible when the
            // current position straddles a base endpoint).
            let mut outside: Vec<Interval<T>> = Vec::new();
            if steps > 0 {
                if let Some(inside) = cur.intersect(&base) {
                    done.push(ReturnPiece {
                        domain: inside.translate(&-shift.clone()),
                        shift: shift.clone(),
                        time: steps,
                    });
                    let rest = IntervalSet::from_interval(cur.clone())
                        .subtract(&IntervalSet::from_interval(inside));
                    outside.extend(rest.pieces().iter().cloned());
                } else {
                    outside.push(cur);
                }
            } else {
                outside.push(cur);
            }
            for piece in outside {
                if steps >= transit_cap {
                    return Err(PiecewiseError::NonReturning(
                        format!("{:?}", piece.translate(&-shift.clone())),
                        transit_cap,
                    ));
                }
                for b in &self.branches {
                    if let Some(hit) = piece.intersect(&b.domain) {
                        work.push((
                            hit.translate(&-shift.clone()),
                            shift.clone() + b.shift.clone(),
                            steps + 1,
                        ));
                    }
                }
            }
        }
        done.sort_by(|a, b| a.domain.lo().cmp(b.domain.lo()));
        // The pieces must tile the base exactly.
        let mut cursor = base.lo().clone();
        for p in &done {
            assert_eq!(*p.domain.lo(), cursor, "return pieces leave a hole");
            cursor = p.domain.hi().clone();
        }
        assert_eq!(cursor, *base.hi(), "return pieces stop early");
        let map = PiecewiseTranslation::new(
            base.clone(),
            done.iter()
                .map(|p| Branch { domain: p.domain.clone(), shift: p.shift.clone() })
                .collect(),
        )?;
        Ok(ReturnMap { base, pieces: done, map })
    }

    /// When an interior branch boundary sits inside a gap of the image, the
    /// map is known to collapse onto a rotation. Iterates the image until it
    /// stabilizes, then takes the first return to the leading surviving
    /// component, which must come out as a bijection with at most two
    /// branches.
    ///
    /// Returns `Ok(None)` when no singularity lies in a gap.
    pub fn reduce_if_singularity_in_gap(
        &self,
        cap: usize,
    ) -> Result<Option<RotationReport<T>>, PiecewiseError> {
        if self.branches.len() != 3 {
            return Err(PiecewiseError::NotThreeBranches);
        }
        let gaps = self.gaps();
        if !self.singularities().iter().any(|s| gaps.contains(s)) {
            return Ok(None);
        }
        let mut s = IntervalSet::from_interval(self.support.clone());
        let mut stable = false;
        for _ in 0..cap {
            let next = self.image_set(&s);
            if next == s {
                stable = true;
                break;
            }
            s = next;
        }
        if !stable {
            return Err(PiecewiseError::BudgetExceeded(cap));
        }
        let comp = s.pieces()[0].clone();
        let ret = self.first_return(comp.clone(), cap)?;
        // report in coordinates starting at zero
        let off = comp.lo().clone();
        let map = PiecewiseTranslation::new(
            comp.translate(&-off.clone()),
            ret.map()
                .branches()
                .iter()
                .map(|b| Branch { domain: b.domain.translate(&-off.clone()), shift: b.shift.clone() })
                .collect(),
        )?;
        if map.branches().len() > 2 || !map.gaps().is_empty() || !map.overlaps().is_empty() {
            return Err(PiecewiseError::ReductionFailed(format!(
                "return map {map:?} is not a rotation"
            )));
        }
        let angle = map.branches().first().map(|b| b.shift.clone()).unwrap_or_else(T::zero);
        Ok(Some(RotationReport { map, angle }))
    }
}

/// Outcome of attractor iteration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Classification<T: Scalar> {
    Finite { steps: usize, attractor: IntervalSet<T> },
    Undetermined { steps: usize, last: IntervalSet<T> },
}

/// One return piece with its return time.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReturnPiece<T: Scalar> {
    pub domain: Interval<T>,
    pub shift: T,
    pub time: usize,
}

/// First return map together with per piece return times.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReturnMap<T: Scalar> {
    pub base: Interval<T>,
    pub pieces: Vec<ReturnPiece<T>>,
    map: PiecewiseTranslation<T>,
}

impl<T: Scalar> ReturnMap<T> {
    /// The return map with adjacent equal-shift pieces merged.
    pub fn map(&self) -> &PiecewiseTranslation<T> {
        &self.map
    }

    pub fn into_map(self) -> PiecewiseTranslation<T> {
        self.map
    }
}

/// Rotation obtained by collapsing the surviving set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RotationReport<T: Scalar> {
    /// Two branch bijection of `[0, len)` (one branch when the angle is zero).
    pub map: PiecewiseTranslation<T>,
    pub angle: T,
}
