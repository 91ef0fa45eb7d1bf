//! Half-open intervals `[lo, hi)` and normalized finite unions of them.

use crate::scalar::Scalar;

/// Nonempty half-open interval `[lo, hi)` with `lo < hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Interval<T> {
    /// Panics if `lo >= hi`; empty intervals are never represented.
    pub fn new(lo: T, hi: T) -> Self {
        assert!(lo < hi, "empty interval [{lo}, {hi})");
        Interval { lo, hi }
    }

    pub fn try_new(lo: T, hi: T) -> Option<Self> {
        if lo < hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn length(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.lo <= *x && *x < self.hi
    }

    pub fn is_subset_of(&self, other: &Interval<T>) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersect(&self, other: &Interval<T>) -> Option<Interval<T>> {
        let lo = if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi <= other.hi { self.hi.clone() } else { other.hi.clone() };
        Interval::try_new(lo, hi)
    }

    pub fn translate(&self, shift: &T) -> Interval<T> {
        Interval {
            lo: self.lo.clone() + shift.clone(),
            hi: self.hi.clone() + shift.clone(),
        }
    }
}

impl<T: Scalar> std::fmt::Debug for Interval<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

impl<T: Scalar> std::fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

/// Finite union of half-open intervals, kept sorted, disjoint and with
/// adjacent pieces merged, so equality of sets is structural equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntervalSet<T> {
    pieces: Vec<Interval<T>>,
}

impl<T: Scalar> IntervalSet<T> {
    pub fn empty() -> Self {
        IntervalSet { pieces: Vec::new() }
    }

    pub fn from_interval(iv: Interval<T>) -> Self {
        IntervalSet { pieces: vec![iv] }
    }

    /// Builds a normalized set from arbitrary (possibly overlapping) pieces.
    pub fn from_intervals(mut raw: Vec<Interval<T>>) -> Self {
        raw.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut pieces: Vec<Interval<T>> = Vec::with_capacity(raw.len());
        for iv in raw {
            match pieces.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => pieces.push(iv),
            }
        }
        IntervalSet { pieces }
    }

    pub fn pieces(&self) -> &[Interval<T>] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn total_length(&self) -> T {
        let mut acc = T::zero();
        for p in &self.pieces {
            acc = acc + p.length();
        }
        acc
    }

    pub fn contains(&self, x: &T) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    /// Smallest interval containing the set, if nonempty.
    pub fn hull(&self) -> Option<Interval<T>> {
        let first = self.pieces.first()?;
        let last = self.pieces.last()?;
        Some(Interval::new(first.lo.clone(), last.hi.clone()))
    }

    pub fn union(&self, other: &IntervalSet<T>) -> IntervalSet<T> {
        let mut raw = self.pieces.clone();
        raw.extend(other.pieces.iter().cloned());
        IntervalSet::from_intervals(raw)
    }

    pub fn intersect_interval(&self, iv: &Interval<T>) -> IntervalSet<T> {
        let pieces = self
            .pieces
            .iter()
            .filter_map(|p| p.intersect(iv))
            .collect();
        IntervalSet { pieces }
    }

    pub fn intersect(&self, other: &IntervalSet<T>) -> IntervalSet<T> {
        let mut pieces = Vec::new();
        for q in &other.pieces {
            pieces.extend(self.intersect_interval(q).pieces);
        }
        IntervalSet::from_intervals(pieces)
    }

    /// Set difference `self \ other`.
    pub fn subtract(&self, other: &IntervalSet<T>) -> IntervalSet<T> {
        let mut pieces = Vec::new();
        for p in &self.pieces {
            let mut lo = p.lo.clone();
            for q in &other.pieces {
                if q.hi <= lo {
                    continue;
                }
                if q.lo >= p.hi {
                    break;
                }
                if q.lo > lo {
                    pieces.push(Interval::new(lo, q.lo.clone()));
                }
                lo = if q.hi > p.hi { p.hi.clone() } else { q.hi.clone() };
                if lo >= p.hi {
                    break;
                }
            }
            if lo < p.hi {
                pieces.push(Interval::new(lo, p.hi.clone()));
            }
        }
        IntervalSet { pieces }
    }

    pub fn translate(&self, shift: &T) -> IntervalSet<T> {
        IntervalSet {
            pieces: self.pieces.iter().map(|p| p.translate(shift)).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &IntervalSet<T>) -> bool {
        self.subtract(other).is_empty()
    }
}

impl<T: Scalar> std::fmt::Debug for IntervalSet<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{p:?}")?;
        }
        Ok(())
    }
}
