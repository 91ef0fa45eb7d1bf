//! Double rotations of the circle `[0, 1)` and their reduction to a three
//! branch normal form.

use crate::interval::{Interval, IntervalSet};
use crate::itm3::{Itm3, Itm3Error};
use crate::piecewise::{Branch, PiecewiseError, PiecewiseTranslation};
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConvertError {
    #[error("parameter {0} outside its range")]
    InvalidParameter(String),
    #[error("the map is a plain circle rotation")]
    DegenerateRotation,
    #[error("the circle map is a bijection, no gap to cut in")]
    Surjective,
    #[error("normal form is not an irreducible 3 branch map: {0}")]
    NotReducible(String),
    #[error(transparent)]
    Piecewise(#[from] PiecewiseError),
}

/// `x + alpha mod 1` on `[0, c)`, `x + beta mod 1` on `[c, 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DoubleRotation<T> {
    alpha: T,
    beta: T,
    c: T,
}

impl<T: Scalar> DoubleRotation<T> {
    /// Requires `0 <= alpha, beta < 1` and `0 <= c <= 1`. The boundary values
    /// `c = 0` and `c = 1` are accepted and classified as plain rotations.
    pub fn new(alpha: T, beta: T, c: T) -> Result<Self, ConvertError> {
        for (name, v) in [("alpha", &alpha), ("beta", &beta)] {
            if *v < T::zero() || *v >= T::one() {
                return Err(ConvertError::InvalidParameter(format!("{name}={v}")));
            }
        }
        if c < T::zero() || c > T::one() {
            return Err(ConvertError::InvalidParameter(format!("c={c}")));
        }
        Ok(DoubleRotation { alpha, beta, c })
    }

    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    pub fn beta(&self) -> &T {
        &self.beta
    }

    pub fn c(&self) -> &T {
        &self.c
    }

    pub fn is_rotation(&self) -> bool {
        self.alpha == self.beta || self.c == T::zero() || self.c == T::one()
    }

    /// The map as a piecewise translation of `[0, 1)`; each half contributes
    /// up to two branches when the rotation wraps.
    pub fn to_piecewise(&self) -> PiecewiseTranslation<T> {
        let one = T::one();
        let mut branches = Vec::new();
        let mut add = |lo: &T, hi: &T, angle: &T| {
            if lo >= hi {
                return;
            }
            let wrap = one.clone() - angle.clone();
            // split at the wrapping point 1 - angle
            if *angle > T::zero() && *lo < wrap {
                let mid = if *hi <= wrap { hi.clone() } else { wrap.clone() };
                branches.push(Branch {
                    domain: Interval::new(lo.clone(), mid),
                    shift: angle.clone(),
                });
            }
            if *hi > wrap && *angle > T::zero() {
                let mid = if *lo >= wrap { lo.clone() } else { wrap.clone() };
                branches.push(Branch {
                    domain: Interval::new(mid, hi.clone()),
                    shift: angle.clone() - one.clone(),
                });
            }
            if *angle == T::zero() {
                branches.push(Branch {
                    domain: Interval::new(lo.clone(), hi.clone()),
                    shift: T::zero(),
                });
            }
        };
        add(&T::zero(), &self.c, &self.alpha);
        add(&self.c, &one, &self.beta);
        PiecewiseTranslation::new(Interval::new(T::zero(), one), branches)
            .expect("double rotation branches tile the circle")
    }

    /// Cuts the circle at the end of the uncovered arc and takes the first
    /// return to the covered arc starting there. After trimming this yields a
    /// three branch map, reported rescaled to `[0, 1)` together with the cut
    /// data needed to replay the conjugacy.
    pub fn to_itm3(&self, trim_cap: usize) -> Result<Itm3Report<T>, ConvertError> {
        if self.is_rotation() {
            return Err(ConvertError::DegenerateRotation);
        }
        let pw = self.to_piecewise();
        let gaps = pw.gaps();
        if gaps.is_empty() {
            return Err(ConvertError::Surjective);
        }
        // On the circle the uncovered set is one arc; in [0, 1) coordinates
        // it may show up as two pieces hugging 0 and 1.
        let one = T::one();
        let pieces = gaps.pieces();
        let cut = match pieces.len() {
            1 => modulo_one(pieces[0].hi().clone()),
            2 if *pieces[0].lo() == T::zero() && *pieces[1].hi() == one => {
                pieces[0].hi().clone()
            }
            _ => {
                return Err(ConvertError::NotReducible(format!(
                    "uncovered set has {} circle arcs",
                    pieces.len()
                )))
            }
        };
        // Conjugate by u = z - cut mod 1 so no branch image crosses the cut.
        let unplaced = [T::zero(), self.c.clone()];
        let mut cuts: Vec<T> = unplaced
            .iter()
            .map(|z| modulo_one(z.clone() - cut.clone()))
            .filter(|u| *u != T::zero())
            .collect();
        cuts.sort();
        cuts.dedup();
        let mut branches = Vec::new();
        let mut lo = T::zero();
        let bounds = cuts.into_iter().chain(std::iter::once(one.clone()));
        for hi in bounds {
            let z_lo = modulo_one(lo.clone() + cut.clone());
            let angle = if Interval::new(T::zero(), self.c.clone()).contains(&z_lo) {
                self.alpha.clone()
            } else {
                self.beta.clone()
            };
            let u_img = modulo_one(z_lo.clone() + angle.clone() - cut.clone());
            branches.push(Branch {
                domain: Interval::new(lo.clone(), hi.clone()),
                shift: u_img - lo.clone(),
            });
            lo = hi;
        }
        let u_map = PiecewiseTranslation::new(Interval::new(T::zero(), one.clone()), branches)?;
        let trimmed = u_map.trim_extremal_gaps_until(trim_cap, 3)?;
        if trimmed.branches().len() < 3 {
            return Err(ConvertError::DegenerateRotation);
        }
        let base_len = trimmed.support().length();
        // rescale [0, base_len) to [0, 1)
        let rescaled = PiecewiseTranslation::new(
            Interval::new(T::zero(), one),
            trimmed
                .branches()
                .iter()
                .map(|b| Branch {
                    domain: Interval::new(
                        b.domain.lo().clone() / base_len.clone(),
                        b.domain.hi().clone() / base_len.clone(),
                    ),
                    shift: b.shift.clone() / base_len.clone(),
                })
                .collect(),
        )?;
        let itm3 = Itm3::from_piecewise(&rescaled).map_err(|e| match e {
            Itm3Error::Reducible(msg) => ConvertError::NotReducible(msg),
            other => ConvertError::NotReducible(other.to_string()),
        })?;
        Ok(Itm3Report { itm3, cut, base_len })
    }
}

fn modulo_one<T: Scalar>(x: T) -> T {
    let one = T::one();
    if x < T::zero() {
        x + one
    } else if x >= one {
        x - one
    } else {
        x
    }
}

/// Result of the normal form reduction, with the conjugacy bookkeeping.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Itm3Report<T> {
    /// Normal form on `[0, 1)`.
    pub itm3: Itm3<T>,
    /// Circle point where the uncovered arc ends; the return base starts here.
    pub cut: T,
    /// Length of the return base before rescaling to `[0, 1)`.
    pub base_len: T,
}

impl<T: Scalar> Itm3Report<T> {
    /// The return base as a subset of the circle, possibly wrapping.
    pub fn base_arcs(&self) -> IntervalSet<T> {
        let one = T::one();
        let end = self.cut.clone() + self.base_len.clone();
        if end <= one {
            IntervalSet::from_interval(Interval::new(self.cut.clone(), end))
        } else {
            IntervalSet::from_intervals(vec![
                Interval::new(T::zero(), end - one.clone()),
                Interval::new(self.cut.clone(), one),
            ])
        }
    }
}
