//! Two-word representation of a three branch map with one overlap and one
//! gap.
//!
//! The overlap is cut out of the two branch images that share it, leaving
//! five domain cells over a four letter alphabet: the letter of the overlap
//! appears twice in the top word. The bottom word lists the image cells from
//! left to right with the gap marked by the overlap letter wearing an
//! underscore.

use crate::interval::{Interval, IntervalSet};
use crate::itm3::Itm3;
use crate::piecewise::{Branch, PiecewiseTranslation};
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
    D,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::C, Letter::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Letter {
        Letter::ALL[i]
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
            Letter::D => 'D',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'A' => Some(Letter::A),
            'B' => Some(Letter::B),
            'C' => Some(Letter::C),
            'D' => Some(Letter::D),
            _ => None,
        }
    }
}

impl std::fmt::Display for Letter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Bottom word symbol: an image cell or the gap.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sym {
    Plain(Letter),
    Gap(Letter),
}

impl Sym {
    pub fn letter(self) -> Letter {
        match self {
            Sym::Plain(l) | Sym::Gap(l) => l,
        }
    }

    pub fn is_gap(self) -> bool {
        matches!(self, Sym::Gap(_))
    }
}

impl std::fmt::Display for Sym {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sym::Plain(l) => write!(f, "{l}"),
            Sym::Gap(l) => write!(f, "{l}_"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("invalid word pair: {0}")]
    InvalidWords(String),
    #[error("length of {0} must be positive, got {1}")]
    InvalidLength(Letter, String),
    #[error("the three images are pairwise disjoint, nothing to split")]
    NoOverlap,
    #[error("a branch boundary lies inside the image gap")]
    SingularityInGap,
    #[error("cannot split this geometry: {0}")]
    UnsupportedShape(String),
    #[error("image does not reach both ends of the support")]
    ExtremalGap,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Word pair without lengths; also used as a graph vertex key.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PermWords {
    pub w0: [Letter; 5],
    pub w1: [Sym; 5],
}

impl PermWords {
    /// Checks the combinatorial invariants: exactly one letter repeated in
    /// the top word, every letter once in the bottom word plus a gap symbol
    /// carrying the repeated letter.
    pub fn validate(&self) -> Result<(), PermError> {
        let mut count0 = [0usize; 4];
        for l in self.w0 {
            count0[l.index()] += 1;
        }
        let repeated: Vec<Letter> = Letter::ALL.into_iter().filter(|l| count0[l.index()] == 2).collect();
        if repeated.len() != 1 || count0.iter().sum::<usize>() != 5 || count0.contains(&0) {
            return Err(PermError::InvalidWords(format!(
                "top word {} must use every letter with exactly one repeat",
                word0_string(&self.w0)
            )));
        }
        let mut plain = [0usize; 4];
        let mut gaps = Vec::new();
        for s in self.w1 {
            match s {
                Sym::Plain(l) => plain[l.index()] += 1,
                Sym::Gap(l) => gaps.push(l),
            }
        }
        if plain != [1, 1, 1, 1] || gaps.len() != 1 {
            return Err(PermError::InvalidWords(format!(
                "bottom word {} must use every letter once plus one gap",
                word1_string(&self.w1)
            )));
        }
        if gaps[0] != repeated[0] {
            return Err(PermError::InvalidWords(format!(
                "gap letter {} differs from the repeated letter {}",
                gaps[0], repeated[0]
            )));
        }
        Ok(())
    }

    pub fn repeated_letter(&self) -> Letter {
        let mut count = [0usize; 4];
        for l in self.w0 {
            count[l.index()] += 1;
        }
        Letter::ALL[count.iter().position(|&c| c == 2).expect("validated words")]
    }

    pub fn gap_index(&self) -> usize {
        self.w1.iter().position(|s| s.is_gap()).expect("validated words")
    }

    pub fn flipped(&self) -> PermWords {
        let mut w0 = self.w0;
        w0.reverse();
        let mut w1 = self.w1;
        w1.reverse();
        PermWords { w0, w1 }
    }
}

impl std::fmt::Display for PermWords {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} | {}", word0_string(&self.w0), word1_string(&self.w1))
    }
}

pub fn word0_string(w0: &[Letter; 5]) -> String {
    w0.iter().map(|l| l.as_char()).collect()
}

pub fn word1_string(w1: &[Sym; 5]) -> String {
    let mut s = String::new();
    for sym in w1 {
        s.push_str(&sym.to_string());
    }
    s
}

pub fn parse_word0(s: &str) -> Result<[Letter; 5], PermError> {
    let letters: Vec<Letter> = s
        .chars()
        .map(|c| Letter::from_char(c).ok_or_else(|| PermError::Parse(format!("bad letter {c}"))))
        .collect::<Result<_, _>>()?;
    letters
        .try_into()
        .map_err(|_| PermError::Parse(format!("top word {s} must have 5 letters")))
}

pub fn parse_word1(s: &str) -> Result<[Sym; 5], PermError> {
    let mut syms = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        let l = Letter::from_char(c).ok_or_else(|| PermError::Parse(format!("bad letter {c}")))?;
        if chars.peek() == Some(&'_') {
            chars.next();
            syms.push(Sym::Gap(l));
        } else {
            syms.push(Sym::Plain(l));
        }
    }
    syms.try_into()
        .map_err(|_| PermError::Parse(format!("bottom word {s} must have 5 symbols")))
}

/// Word pair plus one length per letter.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ItmPermutation<T> {
    words: PermWords,
    lengths: [T; 4],
}

impl<T: Scalar> ItmPermutation<T> {
    pub fn new(words: PermWords, lengths: [T; 4]) -> Result<Self, PermError> {
        words.validate()?;
        for (i, l) in lengths.iter().enumerate() {
            if *l <= T::zero() {
                return Err(PermError::InvalidLength(Letter::from_index(i), l.to_string()));
            }
        }
        Ok(ItmPermutation { words, lengths })
    }

    pub fn words(&self) -> &PermWords {
        &self.words
    }

    pub fn w0(&self) -> &[Letter; 5] {
        &self.words.w0
    }

    pub fn w1(&self) -> &[Sym; 5] {
        &self.words.w1
    }

    pub fn lengths(&self) -> &[T; 4] {
        &self.lengths
    }

    pub fn length_of(&self, l: Letter) -> &T {
        &self.lengths[l.index()]
    }

    pub fn gap_index(&self) -> usize {
        self.words.gap_index()
    }

    /// Total length: the top word counts the repeated letter twice.
    pub fn total(&self) -> T {
        let mut acc = T::zero();
        for l in self.words.w0 {
            acc = acc + self.lengths[l.index()].clone();
        }
        acc
    }

    fn cell_starts0(&self) -> [T; 5] {
        let mut acc = T::zero();
        std::array::from_fn(|k| {
            let start = acc.clone();
            acc = acc.clone() + self.lengths[self.words.w0[k].index()].clone();
            start
        })
    }

    fn cell_starts1(&self) -> [T; 5] {
        let mut acc = T::zero();
        std::array::from_fn(|k| {
            let start = acc.clone();
            acc = acc.clone() + self.lengths[self.words.w1[k].letter().index()].clone();
            start
        })
    }

    /// Position in the bottom word of the image of top cell `k`. Both copies
    /// of the repeated letter land on its plain slot: that slot is exactly
    /// the doubly covered overlap, while the gap slot only spaces the image
    /// row.
    fn sigma(&self, k: usize) -> usize {
        let letter = self.words.w0[k];
        self.words
            .w1
            .iter()
            .position(|s| s.letter() == letter && !s.is_gap())
            .expect("validated words")
    }

    pub fn evaluate(&self, x: &T) -> Result<T, PermError> {
        let starts0 = self.cell_starts0();
        let starts1 = self.cell_starts1();
        let total = self.total();
        if *x < T::zero() || *x >= total {
            return Err(PermError::Parse(format!("{x} outside [0, {total})")));
        }
        let mut k = 4;
        for i in 0..4 {
            if *x < starts0[i + 1] {
                k = i;
                break;
            }
        }
        Ok(x.clone() + starts1[self.sigma(k)].clone() - starts0[k].clone())
    }

    pub fn to_piecewise(&self) -> PiecewiseTranslation<T> {
        let starts0 = self.cell_starts0();
        let starts1 = self.cell_starts1();
        let total = self.total();
        let branches = (0..5)
            .map(|k| {
                let hi = if k == 4 { total.clone() } else { starts0[k + 1].clone() };
                Branch {
                    domain: Interval::new(starts0[k].clone(), hi),
                    shift: starts1[self.sigma(k)].clone() - starts0[k].clone(),
                }
            })
            .collect();
        PiecewiseTranslation::new(Interval::new(T::zero(), total), branches)
            .expect("cells tile the support")
    }

    pub fn flipped(&self) -> ItmPermutation<T> {
        ItmPermutation { words: self.words.flipped(), lengths: self.lengths.clone() }
    }

    /// Serializes as two word lines followed by one `letter=length` line per
    /// letter.
    pub fn serialize(&self) -> String {
        let mut out = format!("{}\n{}\n", word0_string(&self.words.w0), word1_string(&self.words.w1));
        for l in Letter::ALL {
            out.push_str(&format!("{l}={}\n", self.lengths[l.index()]));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, PermError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let w0 = parse_word0(lines.next().ok_or_else(|| PermError::Parse("missing top word".into()))?.trim())?;
        let w1 = parse_word1(lines.next().ok_or_else(|| PermError::Parse("missing bottom word".into()))?.trim())?;
        let mut lengths: [Option<T>; 4] = [None, None, None, None];
        for line in lines {
            let (name, value) = line
                .split_once('=')
                .ok_or_else(|| PermError::Parse(format!("bad length line {line}")))?;
            let letter = Letter::from_char(name.trim().chars().next().unwrap_or('?'))
                .ok_or_else(|| PermError::Parse(format!("bad letter in {line}")))?;
            let v = T::parse_ratio(value.trim())
                .ok_or_else(|| PermError::Parse(format!("bad rational in {line}")))?;
            lengths[letter.index()] = Some(v);
        }
        let lengths: [T; 4] = std::array::from_fn(|i| {
            lengths[i].clone().unwrap_or_else(T::zero)
        });
        ItmPermutation::new(PermWords { w0, w1 }, lengths)
    }
}

/// Cuts the overlap out of a three branch map, producing the five cell word
/// pair. Fails when the geometry is not one overlap plus one interior gap
/// with no branch boundary inside the gap.
pub fn split<T: Scalar>(m: &Itm3<T>) -> Result<ItmPermutation<T>, PermError> {
    let pw = m.to_piecewise();
    let branches = pw.branches();
    if branches.len() != 3 {
        return Err(PermError::UnsupportedShape(format!(
            "{} branches after normalization",
            branches.len()
        )));
    }
    let images: Vec<Interval<T>> = branches.iter().map(|b| b.image()).collect();
    let mut pairs = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            if let Some(o) = images[i].intersect(&images[j]) {
                pairs.push(((i, j), o));
            }
        }
    }
    if pairs.is_empty() {
        return Err(PermError::NoOverlap);
    }
    if pairs.len() > 1 {
        return Err(PermError::UnsupportedShape(format!(
            "{} overlapping image pairs",
            pairs.len()
        )));
    }
    let ((i, j), overlap) = pairs.pop().expect("nonempty");
    let gaps = pw.gaps();
    if gaps.pieces().len() != 1 {
        return Err(PermError::UnsupportedShape(format!(
            "{} image gaps",
            gaps.pieces().len()
        )));
    }
    let gap = gaps.pieces()[0].clone();
    if gap.lo() == pw.support().lo() || gap.hi() == pw.support().hi() {
        return Err(PermError::ExtremalGap);
    }
    if pw.singularities().iter().any(|s| gap.contains(s)) {
        return Err(PermError::SingularityInGap);
    }

    // Cut the two overlapping branches at the preimage of the overlap. The
    // two overlap cells share one letter class; every other cell (including
    // both remainders when the overlap is interior to one image) is its own
    // class.
    struct Cell<T> {
        domain: Interval<T>,
        shift: T,
        is_overlap: bool,
    }
    let mut cells: Vec<Cell<T>> = Vec::new();
    for (k, b) in branches.iter().enumerate() {
        if k == i || k == j {
            let pre = overlap.translate(&-b.shift.clone());
            if let Some(left) = Interval::try_new(b.domain.lo().clone(), pre.lo().clone()) {
                cells.push(Cell { domain: left, shift: b.shift.clone(), is_overlap: false });
            }
            cells.push(Cell { domain: pre.clone(), shift: b.shift.clone(), is_overlap: true });
            if let Some(right) = Interval::try_new(pre.hi().clone(), b.domain.hi().clone()) {
                cells.push(Cell { domain: right, shift: b.shift.clone(), is_overlap: false });
            }
        } else {
            cells.push(Cell { domain: b.domain.clone(), shift: b.shift.clone(), is_overlap: false });
        }
    }
    cells.sort_by(|a, b| a.domain.lo().cmp(b.domain.lo()));
    if cells.len() != 5 || cells.iter().filter(|c| c.is_overlap).count() != 2 {
        return Err(PermError::UnsupportedShape(format!("{} cells", cells.len())));
    }
    // class 0 = overlap, classes 1..=3 for the other cells in domain order
    let classes: Vec<usize> = {
        let mut next = 1;
        cells
            .iter()
            .map(|c| {
                if c.is_overlap {
                    0
                } else {
                    let id = next;
                    next += 1;
                    id
                }
            })
            .collect()
    };
    let class_of = |idx: usize| classes[idx];

    // Letter assignment: leftmost domain cell gets A, rightmost gets D, the
    // cell whose image starts at 0 gets C, the remaining class gets B. Ties
    // fall through to the next unused letter in alphabetical order.
    let mut letters: [Option<Letter>; 4] = [None; 4];
    let mut used = [false; 4];
    let assign = |class: usize, want: Letter, letters: &mut [Option<Letter>; 4], used: &mut [bool; 4]| {
        if letters[class].is_none() && !used[want.index()] {
            letters[class] = Some(want);
            used[want.index()] = true;
        }
    };
    let leftmost_image_class = class_of(
        cells
            .iter()
            .position(|c| *c.domain.translate(&c.shift).lo() == *pw.support().lo())
            .ok_or(PermError::ExtremalGap)?,
    );
    assign(class_of(0), Letter::A, &mut letters, &mut used);
    assign(class_of(4), Letter::D, &mut letters, &mut used);
    assign(leftmost_image_class, Letter::C, &mut letters, &mut used);
    for class in 0..4 {
        if letters[class].is_none() {
            let next = Letter::ALL
                .into_iter()
                .find(|l| !used[l.index()])
                .expect("four letters for four classes");
            letters[class] = Some(next);
            used[next.index()] = true;
        }
    }

    let w0: [Letter; 5] = std::array::from_fn(|k| letters[class_of(k)].unwrap());
    let overlap_letter = letters[0].unwrap();

    // Image cells: the overlap appears once, plus the gap slot.
    let mut image_cells: Vec<(T, Sym)> = vec![
        (overlap.lo().clone(), Sym::Plain(overlap_letter)),
        (gap.lo().clone(), Sym::Gap(overlap_letter)),
    ];
    for (k, c) in cells.iter().enumerate() {
        if !c.is_overlap {
            image_cells.push((
                c.domain.translate(&c.shift).lo().clone(),
                Sym::Plain(letters[class_of(k)].unwrap()),
            ));
        }
    }
    image_cells.sort_by(|a, b| a.0.cmp(&b.0));
    if image_cells.len() != 5 {
        return Err(PermError::UnsupportedShape(format!(
            "{} image cells",
            image_cells.len()
        )));
    }
    let w1: [Sym; 5] = std::array::from_fn(|k| image_cells[k].1);

    let mut lengths: [T; 4] = std::array::from_fn(|_| T::zero());
    for (k, c) in cells.iter().enumerate() {
        lengths[letters[class_of(k)].unwrap().index()] = c.domain.length();
    }
    let perm = ItmPermutation::new(PermWords { w0, w1 }, lengths)?;
    // The words must replay to the same geometry.
    debug_assert_eq!(perm.to_piecewise(), pw.clone());
    Ok(perm)
}

/// Support minus image as a set, for callers that need the gap of a word
/// state without rebuilding the map.
pub fn gap_of<T: Scalar>(p: &ItmPermutation<T>) -> IntervalSet<T> {
    p.to_piecewise().gaps()
}
