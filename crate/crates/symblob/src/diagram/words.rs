//! Decoration words over the two blob letters and their straightening.
//!
//! On a line the rewrites are LL -> deltaL L, RR -> deltaR R, LRL -> kLR L,
//! RLR -> kLR R, so a reduced word has length at most two. On a closed loop
//! the same rules apply cyclically and the surviving loop is removed as a
//! scalar: empty -> delta, L -> kappaL, R -> kappaR, LR -> kappaLR.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, ParameterSet};

/// A single blob: `L` (left, drawn filled) or `R` (right, drawn open).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Blob {
    L,
    R,
}

impl Blob {
    pub fn flip(self) -> Blob {
        match self {
            Blob::L => Blob::R,
            Blob::R => Blob::L,
        }
    }
}

impl fmt::Display for Blob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Blob::L => write!(f, "L"),
            Blob::R => write!(f, "R"),
        }
    }
}

/// A reduced decoration word: no factor LL, RR, LRL or RLR, hence one of the
/// five words below.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ReducedWord {
    Empty,
    L,
    R,
    LR,
    RL,
}

impl ReducedWord {
    pub fn letters(self) -> &'static [Blob] {
        match self {
            ReducedWord::Empty => &[],
            ReducedWord::L => &[Blob::L],
            ReducedWord::R => &[Blob::R],
            ReducedWord::LR => &[Blob::L, Blob::R],
            ReducedWord::RL => &[Blob::R, Blob::L],
        }
    }

    pub fn from_letters(letters: &[Blob]) -> Option<ReducedWord> {
        match letters {
            [] => Some(ReducedWord::Empty),
            [Blob::L] => Some(ReducedWord::L),
            [Blob::R] => Some(ReducedWord::R),
            [Blob::L, Blob::R] => Some(ReducedWord::LR),
            [Blob::R, Blob::L] => Some(ReducedWord::RL),
            _ => None,
        }
    }

    pub fn reversed(self) -> ReducedWord {
        match self {
            ReducedWord::LR => ReducedWord::RL,
            ReducedWord::RL => ReducedWord::LR,
            other => other,
        }
    }

    pub fn len(self) -> usize {
        self.letters().len()
    }

    pub fn is_empty(self) -> bool {
        self == ReducedWord::Empty
    }

    pub fn contains(self, blob: Blob) -> bool {
        self.letters().contains(&blob)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        for b in self.letters() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

pub fn parse_letters(text: &str) -> Result<Vec<Blob>> {
    if text == "-" {
        return Ok(Vec::new());
    }
    text.chars()
        .map(|c| match c {
            'L' => Ok(Blob::L),
            'R' => Ok(Blob::R),
            other => Err(Error::Parse(format!("bad blob letter `{other}`"))),
        })
        .collect()
}

/// One leftmost rewrite step on a linear word, if any rule applies.
fn step<F: Field>(word: &mut Vec<Blob>, params: &ParameterSet<F>) -> Option<F> {
    for i in 0..word.len().saturating_sub(1) {
        if word[i] == word[i + 1] {
            let scalar = match word[i] {
                Blob::L => params.delta_l.clone(),
                Blob::R => params.delta_r.clone(),
            };
            word.remove(i + 1);
            return Some(scalar);
        }
        if i + 2 < word.len() && word[i] == word[i + 2] && word[i] != word[i + 1] {
            let scalar = match word[i] {
                Blob::L => params.k_l().clone(),
                Blob::R => params.k_r().clone(),
            };
            word.drain(i + 1..i + 3);
            return Some(scalar);
        }
    }
    None
}

/// Straightens a linear decoration word, returning the accumulated scalar and
/// the reduced word. The result is independent of the rewrite order; the
/// deterministic strategy here is leftmost-first.
pub fn reduce_word<F: Field>(letters: &[Blob], params: &ParameterSet<F>) -> (F, ReducedWord) {
    let mut word = letters.to_vec();
    let mut scalar = F::one();
    while let Some(s) = step(&mut word, params) {
        scalar = scalar.mul(&s);
    }
    let reduced = ReducedWord::from_letters(&word).expect("rewriting terminates on a reduced word");
    (scalar, reduced)
}

/// Least rotation of the word or of the reversed word: loops are unoriented
/// closed curves, so both directions encode the same object.
pub fn canonical_cycle(letters: &[Blob]) -> Vec<Blob> {
    if letters.is_empty() {
        return Vec::new();
    }
    let mut best: Option<Vec<Blob>> = None;
    let reversed: Vec<Blob> = letters.iter().rev().copied().collect();
    for base in [letters, reversed.as_slice()] {
        for start in 0..base.len() {
            let rotated: Vec<Blob> = base[start..]
                .iter()
                .chain(base[..start].iter())
                .copied()
                .collect();
            if best.as_ref().map_or(true, |b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap()
}

/// One doubled-letter contraction on the cycle, if an adjacent equal pair
/// exists.
fn cyclic_pair_step<F: Field>(word: &mut Vec<Blob>, params: &ParameterSet<F>) -> Option<F> {
    let len = word.len();
    if len < 2 {
        return None;
    }
    for i in 0..len {
        if word[i] == word[(i + 1) % len] {
            let scalar = match word[i] {
                Blob::L => params.delta_l.clone(),
                Blob::R => params.delta_r.clone(),
            };
            word.remove((i + 1) % len);
            return Some(scalar);
        }
    }
    None
}

/// Value of a closed loop carrying the given cyclic word.
///
/// Doubled letters contract first (the unambiguous local rule); what remains
/// is an alternating cycle, and each of its LR windings contributes a factor
/// kLR before the final plain loop is removed as delta. Contracting an
/// alternating triple ACROSS a doubled pair is not a legal picture move: the
/// multiplicativity of diagram concatenation pins the value of, say, the
/// cyclic word LLR to deltaL * kLR, never kLR * kappaL.
pub fn loop_value<F: Field>(cycle: &[Blob], params: &ParameterSet<F>) -> F {
    let mut word = canonical_cycle(cycle);
    let mut scalar = F::one();
    while let Some(s) = cyclic_pair_step(&mut word, params) {
        scalar = scalar.mul(&s);
    }
    // The remaining cycle is alternating: empty, a single letter, or (LR)^k.
    match word.as_slice() {
        [] => scalar.mul(&params.delta),
        [Blob::L] => scalar.mul(&params.kappa_l),
        [Blob::R] => scalar.mul(&params.kappa_r),
        rest => {
            debug_assert!(rest.len() % 2 == 0);
            for _ in 0..rest.len() / 2 {
                scalar = scalar.mul(&params.kappa_lr);
            }
            scalar
        }
    }
}
