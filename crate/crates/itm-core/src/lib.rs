//! Exact-arithmetic interval translation maps.
//!
//! The crate models double rotations of the circle, reduces them to a three
//! branch normal form, runs the letter comparison induction on the five cell
//! word representation, cross-checks every symbolic step against geometric
//! first return maps, and analyzes the symbolic step graph.
//!
//! All arithmetic is exact rational; see [`scalar::Scalar`].

pub mod double_rotation;
pub mod induction;
pub mod interval;
pub mod itm3;
pub mod perm;
pub mod piecewise;
pub mod scalar;
pub mod simplicial;

pub use double_rotation::{ConvertError, DoubleRotation, Itm3Report};
pub use induction::{
    check_acceleration, iterate, oracle_check_step, r_step, right_rauzy_step, z_step,
    AccelReport, InductionError, InductionPath, PathEnd, Side, StepOutcome, StepRecord,
    ZInduced, ZWinner,
};
pub use interval::{Interval, IntervalSet};
pub use itm3::{Itm3, Itm3Error, Perm3};
pub use perm::{split, ItmPermutation, Letter, PermError, PermWords, Sym};
pub use piecewise::{
    Branch, Classification, PiecewiseError, PiecewiseTranslation, ReturnMap, ReturnPiece,
    RotationReport,
};
pub use scalar::{Rat, Rat128, Scalar};
pub use simplicial::{
    Edge, GraphError, Mat4, SimplicialSystem, Target, Verdict, VertexData, WinLoseReport,
};

/// The two word states every double rotation splits into, used as seeds for
/// the symbolic graph.
pub fn seed_states() -> [PermWords; 2] {
    use perm::{parse_word0, parse_word1};
    let s1 = PermWords {
        w0: parse_word0("ADBCD").expect("static seed"),
        w1: parse_word1("CDBD_A").expect("static seed"),
    };
    let s2 = PermWords {
        w0: parse_word0("ABCBD").expect("static seed"),
        w1: parse_word1("CBDB_A").expect("static seed"),
    };
    [s1, s2]
}
