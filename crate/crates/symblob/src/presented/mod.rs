//! Words in the generators E_0, ..., E_n up to commutation.
//!
//! Generators at distance greater than one commute; a word is considered up
//! to that equivalence, decided through its unique normal form: the block
//! factorization into maximal sets of commuting letters, each block being the
//! left descent set of the remaining suffix.

pub mod enumerate;
pub mod rewrite;
pub mod structure;

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Whether E_i and E_j commute in the ambient monoid.
pub fn commutes(i: u8, j: u8) -> bool {
    (i as i16 - j as i16).abs() > 1
}

/// A set of generators, packed as a bitmask over 0..=n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct GenSet(pub u64);

impl GenSet {
    pub fn contains(self, g: u8) -> bool {
        self.0 >> g & 1 == 1
    }
    pub fn insert(&mut self, g: u8) {
        self.0 |= 1 << g;
    }
    pub fn iter(self) -> impl Iterator<Item = u8> {
        (0..64u8).filter(move |g| self.contains(*g))
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    /// All letters pairwise commute (distinct letters at distance > 1).
    pub fn pairwise_commuting(self) -> bool {
        let letters: Vec<u8> = self.iter().collect();
        letters
            .iter()
            .enumerate()
            .all(|(k, &a)| letters[k + 1..].iter().all(|&b| commutes(a, b)))
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, g) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "E{g}")?;
        }
        write!(f, "}}")
    }
}

/// A word over E_0..E_n. Two words compare equal exactly when they are
/// commutation equivalent; equality and hashing go through the normal form.
#[derive(Clone, Debug)]
pub struct TraceWord {
    n: u16,
    letters: Vec<u8>,
}

impl TraceWord {
    pub fn new(n: u16, letters: Vec<u8>) -> Result<TraceWord> {
        for &l in &letters {
            if l as u16 > n {
                return Err(Error::LetterOutOfRange(l, n));
            }
        }
        Ok(TraceWord { n, letters })
    }

    pub fn empty(n: u16) -> TraceWord {
        TraceWord {
            n,
            letters: Vec::new(),
        }
    }

    pub(crate) fn from_raw(n: u16, letters: Vec<u8>) -> TraceWord {
        TraceWord { n, letters }
    }

    pub fn n(&self) -> u16 {
        self.n
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&self, g: u8) -> Result<TraceWord> {
        if g as u16 > self.n {
            return Err(Error::LetterOutOfRange(g, self.n));
        }
        let mut letters = self.letters.clone();
        letters.push(g);
        Ok(TraceWord { n: self.n, letters })
    }

    pub fn concat(&self, other: &TraceWord) -> Result<TraceWord> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(TraceWord { n: self.n, letters })
    }

    /// Parses whitespace-separated tokens such as "E1 E0 E1"; "1" or the
    /// empty string denote the identity.
    pub fn parse(n: u16, text: &str) -> Result<TraceWord> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(TraceWord::empty(n));
        }
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let idx = token
                .strip_prefix('E')
                .or_else(|| token.strip_prefix('e'))
                .and_then(|v| v.parse::<u8>().ok())
                .ok_or_else(|| Error::Parse(format!("bad generator token `{token}`")))?;
            letters.push(idx);
        }
        TraceWord::new(n, letters)
    }

    pub fn left_descent(&self) -> GenSet {
        GenSet(descent_mask(&self.letters))
    }

    pub fn right_descent(&self) -> GenSet {
        let reversed: Vec<u8> = self.letters.iter().rev().copied().collect();
        GenSet(descent_mask(&reversed))
    }

    pub fn cartier_foata(&self) -> CfForm {
        let mut rest = self.letters.clone();
        let mut blocks = Vec::new();
        while !rest.is_empty() {
            let mask = descent_mask(&rest);
            blocks.push(mask);
            let mut need = mask;
            rest.retain(|&a| {
                if need >> a & 1 == 1 {
                    need &= !(1u64 << a);
                    false
                } else {
                    true
                }
            });
        }
        CfForm { n: self.n, blocks }
    }

    /// The canonical representative of the commutation class: normal-form
    /// blocks, letters ascending within each block.
    pub fn canonical(&self) -> TraceWord {
        self.cartier_foata().linearize()
    }

    pub fn occurrences(&self, g: u8) -> usize {
        self.letters.iter().filter(|&&a| a == g).count()
    }
}

impl PartialEq for TraceWord {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.cartier_foata() == other.cartier_foata()
    }
}

impl Eq for TraceWord {}

impl Hash for TraceWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.cartier_foata().hash(state);
    }
}

impl fmt::Display for TraceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "E{l}")?;
        }
        Ok(())
    }
}

/// Letters whose first occurrence is preceded only by letters commuting with
/// them: the possible initial letters across the commutation class.
fn descent_mask(letters: &[u8]) -> u64 {
    let mut seen: u64 = 0;
    let mut out: u64 = 0;
    for (k, &a) in letters.iter().enumerate() {
        if seen >> a & 1 == 1 {
            continue;
        }
        seen |= 1 << a;
        if letters[..k].iter().all(|&b| commutes(a, b)) {
            out |= 1 << a;
        }
    }
    out
}

/// The normal form: blocks of pairwise-commuting generators, each block
/// forced to be the set of possible initial letters of what remains.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CfForm {
    pub n: u16,
    pub blocks: Vec<u64>,
}

impl CfForm {
    pub fn block_sets(&self) -> Vec<GenSet> {
        self.blocks.iter().map(|&b| GenSet(b)).collect()
    }

    pub fn linearize(&self) -> TraceWord {
        let mut letters = Vec::new();
        for &block in &self.blocks {
            letters.extend(GenSet(block).iter());
        }
        TraceWord { n: self.n, letters }
    }

    /// Both defining conditions: blocks commute internally, and every letter
    /// of a block is "held back" by the previous block.
    pub fn is_valid(&self) -> bool {
        for &b in &self.blocks {
            if b == 0 || !GenSet(b).pairwise_commuting() {
                return false;
            }
        }
        for w in self.blocks.windows(2) {
            let (prev, next) = (GenSet(w[0]), GenSet(w[1]));
            for t in next.iter() {
                let held = prev.iter().any(|s| !commutes(s, t) || s == t);
                if !held {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for CfForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "[]");
        }
        for (k, &b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", GenSet(b))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: u16, text: &str) -> TraceWord {
        TraceWord::parse(n, text).unwrap()
    }

    #[test]
    fn commutation_rule() {
        assert!(commutes(0, 2));
        assert!(!commutes(3, 4));
        assert!(!commutes(5, 5));
    }

    #[test]
    fn descent_sets_match_hand_computation() {
        let w = word(5, "E1 E2 E4 E0 E1");
        assert_eq!(w.left_descent(), GenSet(1 << 1 | 1 << 4));
        let w = word(2, "E0 E2 E1");
        assert_eq!(w.left_descent(), GenSet(1 << 0 | 1 << 2));
        assert_eq!(w.right_descent(), GenSet(1 << 1));
        let w = word(4, "E3");
        assert_eq!(w.left_descent(), GenSet(1 << 3));
        assert_eq!(w.right_descent(), GenSet(1 << 3));
    }

    #[test]
    fn normal_form_blocks() {
        let w = word(5, "E1 E2 E4 E0 E1");
        let cf = w.cartier_foata();
        assert_eq!(cf.blocks, vec![1 << 1 | 1 << 4, 1 << 0 | 1 << 2, 1 << 1]);
        assert!(cf.is_valid());
        let w = word(2, "E0 E2 E1");
        assert_eq!(w.cartier_foata().blocks, vec![1 << 0 | 1 << 2, 1 << 1]);
        assert!(word(3, "").cartier_foata().blocks.is_empty());
    }

    #[test]
    fn equality_is_commutation_equivalence() {
        assert_eq!(word(4, "E0 E2"), word(4, "E2 E0"));
        assert_eq!(word(4, "E1 E3 E0"), word(4, "E3 E1 E0"));
        assert_ne!(word(4, "E0 E1"), word(4, "E1 E0"));
        assert_eq!(word(5, "E1 E2 E4 E0 E1"), word(5, "E1 E4 E2 E0 E1"));
    }

    #[test]
    fn canonical_form_recombines_to_the_same_class() {
        let w = word(5, "E1 E2 E4 E0 E1");
        let c = w.canonical();
        assert_eq!(c.letters(), &[1, 4, 0, 2, 1]);
        assert_eq!(w, c);
    }

    #[test]
    fn class_enumeration_agrees_with_descents() {
        // Brute-force the commutation class by adjacent swaps and compare the
        // initial/terminal letters with the computed descent sets.
        fn class_members(w: &TraceWord) -> Vec<Vec<u8>> {
            let mut seen = std::collections::HashSet::new();
            let mut queue = vec![w.letters().to_vec()];
            seen.insert(w.letters().to_vec());
            while let Some(cur) = queue.pop() {
                for i in 0..cur.len().saturating_sub(1) {
                    if commutes(cur[i], cur[i + 1]) {
                        let mut next = cur.clone();
                        next.swap(i, i + 1);
                        if seen.insert(next.clone()) {
                            queue.push(next);
                        }
                    }
                }
            }
            seen.into_iter().collect()
        }
        for text in ["E1 E2 E4 E0 E1", "E0 E2 E1", "E3 E1 E4 E2 E0"] {
            let w = word(5, text);
            let members = class_members(&w);
            let mut initials = GenSet::default();
            let mut terminals = GenSet::default();
            for m in &members {
                initials.insert(m[0]);
                terminals.insert(*m.last().unwrap());
            }
            assert_eq!(w.left_descent(), initials, "word {text}");
            assert_eq!(w.right_descent(), terminals, "word {text}");
            for m in members {
                assert_eq!(TraceWord::from_raw(5, m), w);
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        let w = word(3, "E0 E1 E3");
        assert_eq!(w.to_string(), "E0 E1 E3");
        assert_eq!(word(3, "1"), TraceWord::empty(3));
        assert!(TraceWord::parse(2, "E3").is_err());
        assert!(TraceWord::parse(2, "X1").is_err());
    }
}
