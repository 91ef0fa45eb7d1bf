//! Three branch interval translation maps in normal form.
//!
//! Branch `i` occupies the `pi0[i]`-th slot of the domain and its image the
//! `pi1[i]`-th slot counted from the left; the middle image slot starts at
//! the offset `t`. The first image slot starts at 0 and the last one ends at
//! the total length, so the map never has extremal gaps.

use crate::interval::Interval;
use crate::piecewise::{Branch, PiecewiseTranslation};
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Itm3Error {
    #[error("map does not have exactly 3 branches")]
    NotThreeBranches,
    #[error("{0}")]
    InvalidData(String),
    #[error("reducible slot permutation: {0}")]
    Reducible(String),
    #[error("image does not reach both ends of the support: {0}")]
    ExtremalGap(String),
}

/// Bijection from branches to slots `1..=3`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Perm3(pub [usize; 3]);

impl Perm3 {
    pub fn identity() -> Self {
        Perm3([1, 2, 3])
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = [false; 3];
        for &r in &self.0 {
            if r < 1 || r > 3 || seen[r - 1] {
                return false;
            }
            seen[r - 1] = true;
        }
        true
    }

    /// Branch index occupying slot `rank`.
    pub fn branch_at(&self, rank: usize) -> usize {
        self.0.iter().position(|&r| r == rank).expect("valid permutation")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Itm3<T> {
    pi0: Perm3,
    pi1: Perm3,
    lambda: [T; 3],
    t: T,
}

impl<T: Scalar> Itm3<T> {
    pub fn new(pi0: Perm3, pi1: Perm3, lambda: [T; 3], t: T) -> Result<Self, Itm3Error> {
        if !pi0.is_valid() || !pi1.is_valid() {
            return Err(Itm3Error::InvalidData("slot assignments are not bijections".into()));
        }
        for l in &lambda {
            if *l <= T::zero() {
                return Err(Itm3Error::InvalidData(format!("branch length {l} not positive")));
            }
        }
        let total = lambda[0].clone() + lambda[1].clone() + lambda[2].clone();
        let mid = lambda[pi1.branch_at(2)].clone();
        if t < T::zero() || t.clone() + mid > total {
            return Err(Itm3Error::InvalidData(format!("middle slot offset {t} out of range")));
        }
        // q = pi1 o pi0^{-1}: slot of the branch sitting in each domain slot
        let q = [
            pi1.0[pi0.branch_at(1)],
            pi1.0[pi0.branch_at(2)],
            pi1.0[pi0.branch_at(3)],
        ];
        if q[0] == 1 || (q[0] != 3 && q[1] != 3) {
            return Err(Itm3Error::Reducible(format!("{q:?} fixes a left subinterval")));
        }
        Ok(Itm3 { pi0, pi1, lambda, t })
    }

    pub fn pi0(&self) -> Perm3 {
        self.pi0
    }

    pub fn pi1(&self) -> Perm3 {
        self.pi1
    }

    pub fn lambda(&self) -> &[T; 3] {
        &self.lambda
    }

    pub fn t(&self) -> &T {
        &self.t
    }

    pub fn total(&self) -> T {
        self.lambda[0].clone() + self.lambda[1].clone() + self.lambda[2].clone()
    }

    /// Start of the image slot `rank`.
    fn slot_start(&self, rank: usize) -> T {
        match rank {
            1 => T::zero(),
            2 => self.t.clone(),
            3 => self.total() - self.lambda[self.pi1.branch_at(3)].clone(),
            _ => unreachable!(),
        }
    }

    pub fn to_piecewise(&self) -> PiecewiseTranslation<T> {
        let mut branches = Vec::with_capacity(3);
        let mut lo = T::zero();
        for rank in 1..=3 {
            let i = self.pi0.branch_at(rank);
            let hi = lo.clone() + self.lambda[i].clone();
            let shift = self.slot_start(self.pi1.0[i]) - lo.clone();
            branches.push(Branch { domain: Interval::new(lo, hi.clone()), shift });
            lo = hi;
        }
        PiecewiseTranslation::new(Interval::new(T::zero(), self.total()), branches)
            .expect("normal form branches tile the support")
    }

    /// Extracts the normal form from a three branch piecewise translation.
    /// The support may start anywhere; it is translated to 0 first.
    pub fn from_piecewise(pw: &PiecewiseTranslation<T>) -> Result<Self, Itm3Error> {
        if pw.branches().len() != 3 {
            return Err(Itm3Error::NotThreeBranches);
        }
        let off = pw.support().lo().clone();
        let total = pw.support().length();
        let lambda: [T; 3] = std::array::from_fn(|i| pw.branches()[i].domain.length());
        let img: Vec<Interval<T>> = pw
            .branches()
            .iter()
            .map(|b| b.image().translate(&-off.clone()))
            .collect();
        let starts_low: Vec<usize> =
            (0..3).filter(|&i| *img[i].lo() == T::zero()).collect();
        let ends_high: Vec<usize> =
            (0..3).filter(|&i| *img[i].hi() == total).collect();
        if starts_low.is_empty() || ends_high.is_empty() {
            return Err(Itm3Error::ExtremalGap(format!(
                "images {img:?} inside [0, {total})"
            )));
        }
        let mut first_err = None;
        for &r3 in &ends_high {
            for &r1 in &starts_low {
                if r1 == r3 {
                    continue;
                }
                let r2 = 3 - r1 - r3;
                let mut pi1 = Perm3([0; 3]);
                pi1.0[r1] = 1;
                pi1.0[r2] = 2;
                pi1.0[r3] = 3;
                let t = img[r2].lo().clone();
                match Itm3::new(Perm3::identity(), pi1, lambda.clone(), t) {
                    Ok(m) => return Ok(m),
                    Err(e) => first_err = first_err.or(Some(e)),
                }
            }
        }
        Err(first_err.unwrap_or_else(|| {
            Itm3Error::InvalidData("no slot assignment matches the geometry".into())
        }))
    }
}
