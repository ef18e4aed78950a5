//! Scalar-weighted rewriting of generator words to reduced form.
//!
//! Rules, all length-decreasing:
//!   E_i E_i           -> square scalar * E_i
//!   E_1 E_0 E_1       -> kappaL E_1
//!   E_i E_{i+1} E_i   -> E_i          (1 <= i <= n-2)
//!   E_{i+1} E_i E_{i+1} -> E_{i+1}    (1 <= i <= n-2)
//!   E_{n-1} E_n E_{n-1} -> kappaR E_{n-1}
//!   I J I             -> kappaLR I
//!   J I J             -> kappaLR J
//! with I and J the products of the odd and even generators. A rule fires
//! when its left-hand side occurs as a factor of some commutation-equivalent
//! word; occurrence is decided on the dependence order of letter positions,
//! never by raw subword scans.

use crate::error::{Error, Result};
use crate::scalar::{Field, ParameterSet};

use super::{commutes, GenSet, TraceWord};

/// The rewriting system for a fixed size and parameter point.
pub struct RuleSet<F: Field> {
    pub n: u16,
    pub params: ParameterSet<F>,
    odd: Vec<u8>,
    even: Vec<u8>,
}

/// Classification of a reduced word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reducibility {
    /// Commutation equivalent to s t v with s, t non-commuting and t not a
    /// boundary generator.
    LeftVia(u8),
    /// Mirror image: commutation equivalent to v t s.
    RightVia(u8),
    /// A product of pairwise commuting generators.
    CommutingProduct,
    IrreducibleIJ,
    IrreducibleJI,
}

impl<F: Field> RuleSet<F> {
    pub fn new(n: u16, params: &ParameterSet<F>) -> Result<RuleSet<F>> {
        if n == 1 && !(params.kappa_l == params.kappa_lr && params.kappa_r == params.kappa_lr) {
            return Err(Error::CollapsedParametersRequired);
        }
        Ok(RuleSet {
            n,
            params: params.clone(),
            odd: (0..=n as u8).filter(|i| i % 2 == 1).collect(),
            even: (0..=n as u8).filter(|i| i % 2 == 0).collect(),
        })
    }

    /// The word I (product of odd generators, ascending).
    pub fn word_i(&self) -> Vec<u8> {
        self.odd.clone()
    }

    /// The word J (product of even generators, ascending).
    pub fn word_j(&self) -> Vec<u8> {
        self.even.clone()
    }

    /// Scalar of the rule `outer middle outer -> scalar * outer`, if that
    /// triple is a relation at this size.
    pub(crate) fn triple_scalar(&self, outer: u8, middle: u8) -> Option<F> {
        let n = self.n as i32;
        let (o, m) = (outer as i32, middle as i32);
        if (o - m).abs() != 1 {
            return None;
        }
        if o == 1 && m == 0 {
            return Some(self.params.kappa_l.clone());
        }
        if o == n - 1 && m == n {
            return Some(self.params.kappa_r.clone());
        }
        if m == o + 1 && o >= 1 && o <= n - 2 {
            return Some(F::one());
        }
        if m == o - 1 && o >= 2 && o <= n - 1 {
            return Some(F::one());
        }
        None
    }

    /// Repeatedly applies the shortest applicable rule (leftmost occurrence
    /// first) until the word is reduced. Input and output are canonicalized,
    /// so the result depends only on the commutation class.
    pub fn rewrite(&self, w: &TraceWord) -> (F, TraceWord) {
        let mut word = w.canonical().letters().to_vec();
        let mut scalar = F::one();
        loop {
            if let Some((keep, drop, s)) = self.find_square(&word) {
                debug_assert!(keep < drop);
                word.remove(drop);
                scalar = scalar.mul(&s);
                continue;
            }
            if let Some((mid, last, s)) = self.find_triple(&word) {
                word.remove(last);
                word.remove(mid);
                scalar = scalar.mul(&s);
                continue;
            }
            if let Some(next) = self.find_sandwich(&word, true) {
                word = next;
                scalar = scalar.mul(&self.params.kappa_lr);
                continue;
            }
            if let Some(next) = self.find_sandwich(&word, false) {
                word = next;
                scalar = scalar.mul(&self.params.kappa_lr);
                continue;
            }
            break;
        }
        let reduced = TraceWord::from_raw(self.n, word).canonical();
        (scalar, reduced)
    }

    pub fn is_reduced(&self, w: &TraceWord) -> bool {
        self.rewrite(w).1.len() == w.len()
    }

    /// Two consecutive occurrences of a letter with everything between
    /// commuting with it; returns (first, second, scalar).
    fn find_square(&self, w: &[u8]) -> Option<(usize, usize, F)> {
        for k in 0..w.len() {
            let a = w[k];
            let Some(j) = (0..k).rev().find(|&j| w[j] == a) else {
                continue;
            };
            if w[j + 1..k].iter().all(|&b| commutes(a, b)) {
                return Some((j, k, self.params.square_scalar(a, self.n)));
            }
        }
        None
    }

    /// Consecutive occurrences of a letter with exactly one non-commuting
    /// letter between them, matching a triple rule; returns the positions of
    /// the middle letter and the second outer letter.
    fn find_triple(&self, w: &[u8]) -> Option<(usize, usize, F)> {
        for k in 0..w.len() {
            let a = w[k];
            let Some(j) = (0..k).rev().find(|&j| w[j] == a) else {
                continue;
            };
            let blockers: Vec<usize> = (j + 1..k).filter(|&m| !commutes(a, w[m])).collect();
            if let [m] = blockers.as_slice() {
                if let Some(s) = self.triple_scalar(a, w[*m]) {
                    return Some((*m, k, s));
                }
            }
        }
        None
    }

    /// Occurrence of IJI (outer_odd) or JIJ as a factor of some
    /// commutation-equivalent word, replaced by the single middle-free block.
    /// The factor is located as a convex, label-isomorphic subset of the
    /// dependence order on letter positions.
    fn find_sandwich(&self, w: &[u8], outer_odd: bool) -> Option<Vec<u8>> {
        let outer: &[u8] = if outer_odd { &self.odd } else { &self.even };
        let inner: &[u8] = if outer_odd { &self.even } else { &self.odd };
        // Occurrence lists; cheap rejection on counts.
        let mut occ: Vec<Vec<usize>> = vec![Vec::new(); self.n as usize + 1];
        for (p, &a) in w.iter().enumerate() {
            occ[a as usize].push(p);
        }
        if outer.iter().any(|&o| occ[o as usize].len() < 2)
            || inner.iter().any(|&e| occ[e as usize].len() < 1)
        {
            return None;
        }
        assert!(
            w.len() <= 64,
            "rewriting words longer than 64 letters is unsupported"
        );
        let after = dependence_after(w);

        // Choose a consecutive occurrence pair for each outer letter.
        let mut pairs: Vec<(usize, usize)> = vec![(0, 0); outer.len()];
        self.choose_pairs(w, outer, inner, &occ, &after, 0, &mut pairs)
    }

    fn choose_pairs(
        &self,
        w: &[u8],
        outer: &[u8],
        inner: &[u8],
        occ: &[Vec<usize>],
        after: &[u64],
        k: usize,
        pairs: &mut Vec<(usize, usize)>,
    ) -> Option<Vec<u8>> {
        if k == outer.len() {
            return self.choose_inner(w, outer, inner, occ, after, pairs, 0, &mut Vec::new());
        }
        let list = &occ[outer[k] as usize];
        for t in 0..list.len() - 1 {
            pairs[k] = (list[t], list[t + 1]);
            if let Some(result) = self.choose_pairs(w, outer, inner, occ, after, k + 1, pairs) {
                return Some(result);
            }
        }
        None
    }

    #[allow(clippy::too_many_arguments)]
    fn choose_inner(
        &self,
        w: &[u8],
        outer: &[u8],
        inner: &[u8],
        occ: &[Vec<usize>],
        after: &[u64],
        pairs: &[(usize, usize)],
        k: usize,
        chosen: &mut Vec<usize>,
    ) -> Option<Vec<u8>> {
        if k == inner.len() {
            return self.check_candidate(w, outer, pairs, chosen, after);
        }
        let letter = inner[k];
        // The inner occurrence must sit between both adjacent outer pairs.
        let mut lo = 0usize;
        let mut hi = usize::MAX;
        for (idx, &o) in outer.iter().enumerate() {
            if (o as i16 - letter as i16).abs() == 1 {
                lo = lo.max(pairs[idx].0);
                hi = hi.min(pairs[idx].1);
            }
        }
        for &y in &occ[letter as usize] {
            if y > lo && y < hi {
                chosen.push(y);
                if let Some(res) =
                    self.choose_inner(w, outer, inner, occ, after, pairs, k + 1, chosen)
                {
                    return Some(res);
                }
                chosen.pop();
            }
        }
        None
    }

    fn check_candidate(
        &self,
        w: &[u8],
        outer: &[u8],
        pairs: &[(usize, usize)],
        inner_pos: &[usize],
        after: &[u64],
    ) -> Option<Vec<u8>> {
        let mut members: u64 = 0;
        for &(a, b) in pairs {
            members |= 1 << a;
            members |= 1 << b;
        }
        for &y in inner_pos {
            members |= 1 << y;
        }
        // Convexity: nothing outside the set sits strictly between two
        // members in the dependence order.
        for z in 0..w.len() {
            if members >> z & 1 == 1 {
                continue;
            }
            let above = (0..w.len()).any(|f| members >> f & 1 == 1 && after[f] >> z & 1 == 1);
            let below = after[z] & members != 0;
            if above && below {
                return None;
            }
        }
        // Replace the factor by a single outer block: members strictly below
        // the factor keep their order, then the outer letters, then the rest.
        let mut below_set: u64 = 0;
        for z in 0..w.len() {
            if members >> z & 1 == 0 && after[z] & members != 0 {
                below_set |= 1 << z;
            }
        }
        let mut next = Vec::with_capacity(w.len() - outer.len() - inner_pos.len());
        for (z, &a) in w.iter().enumerate() {
            if below_set >> z & 1 == 1 {
                next.push(a);
            }
        }
        next.extend(outer.iter().copied());
        for (z, &a) in w.iter().enumerate() {
            if below_set >> z & 1 == 0 && members >> z & 1 == 0 {
                next.push(a);
            }
        }
        Some(next)
    }

    /// Every single-rule application available on the class of `w`, for
    /// invariance testing: each result is (scalar, word after one rule).
    pub fn single_applications(&self, w: &TraceWord) -> Vec<(F, TraceWord)> {
        let word = w.canonical().letters().to_vec();
        let mut out = Vec::new();
        for k in 0..word.len() {
            let a = word[k];
            let Some(j) = (0..k).rev().find(|&j| word[j] == a) else {
                continue;
            };
            let blockers: Vec<usize> = (j + 1..k).filter(|&m| !commutes(a, word[m])).collect();
            if blockers.is_empty() {
                let mut next = word.clone();
                next.remove(k);
                out.push((
                    self.params.square_scalar(a, self.n),
                    TraceWord::from_raw(self.n, next),
                ));
            } else if let [m] = blockers.as_slice() {
                if let Some(s) = self.triple_scalar(a, word[*m]) {
                    let mut next = word.clone();
                    next.remove(k);
                    next.remove(*m);
                    out.push((s, TraceWord::from_raw(self.n, next)));
                }
            }
        }
        for outer_odd in [true, false] {
            if let Some(next) = self.find_sandwich(&word, outer_odd) {
                out.push((
                    self.params.kappa_lr.clone(),
                    TraceWord::from_raw(self.n, next),
                ));
            }
        }
        out
    }

    /// Classification of a reduced word: reducible on one side, or one of the
    /// irreducible shapes. Any other outcome is an error.
    pub fn reducibility(&self, w: &TraceWord) -> Result<Reducibility> {
        debug_assert!(self.is_reduced(w));
        let n = self.n as u8;
        let canonical = w.canonical();
        let letters = canonical.letters();
        for s in w.left_descent().iter() {
            let rest = remove_first(letters, s);
            for t in GenSet(super::descent_mask(&rest)).iter() {
                if !commutes(s, t) && t != 0 && t != n {
                    return Ok(Reducibility::LeftVia(s));
                }
            }
        }
        let reversed: Vec<u8> = letters.iter().rev().copied().collect();
        for s in w.right_descent().iter() {
            let rest = remove_first(&reversed, s);
            for t in GenSet(super::descent_mask(&rest)).iter() {
                if !commutes(s, t) && t != 0 && t != n {
                    return Ok(Reducibility::RightVia(s));
                }
            }
        }
        let cf = w.cartier_foata();
        if cf.blocks.len() <= 1 {
            return Ok(Reducibility::CommutingProduct);
        }
        let odd_mask = self.odd.iter().fold(0u64, |m, &g| m | 1 << g);
        let even_mask = self.even.iter().fold(0u64, |m, &g| m | 1 << g);
        if cf.blocks.len() == 2 {
            if cf.blocks[0] == odd_mask && cf.blocks[1] == even_mask {
                return Ok(Reducibility::IrreducibleIJ);
            }
            if cf.blocks[0] == even_mask && cf.blocks[1] == odd_mask {
                return Ok(Reducibility::IrreducibleJI);
            }
        }
        Err(Error::TrichotomyViolation(w.to_string()))
    }
}

fn remove_first(letters: &[u8], g: u8) -> Vec<u8> {
    let mut out = Vec::with_capacity(letters.len().saturating_sub(1));
    let mut removed = false;
    for &a in letters {
        if !removed && a == g {
            removed = true;
        } else {
            out.push(a);
        }
    }
    out
}

/// Transitive closure of the dependence order: bit `j` of `after[i]` is set
/// when position i precedes position j in every commutation-equivalent word.
fn dependence_after(w: &[u8]) -> Vec<u64> {
    let len = w.len();
    let mut after = vec![0u64; len];
    for i in (0..len).rev() {
        let mut acc = 0u64;
        for j in i + 1..len {
            if !commutes(w[i], w[j]) {
                acc |= 1 << j;
                acc |= after[j];
            }
        }
        after[i] = acc;
    }
    after
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn rules(n: u16) -> RuleSet<Rat> {
        RuleSet::new(n, &ParameterSet::default_point()).unwrap()
    }

    fn word(n: u16, text: &str) -> TraceWord {
        TraceWord::parse(n, text).unwrap()
    }

    #[test]
    fn basic_relations() {
        let r = rules(2);
        let (s, t) = r.rewrite(&word(2, "E1 E0 E1"));
        assert_eq!((s, t), (Rat::new(7, 1), word(2, "E1")));
        let (s, t) = r.rewrite(&word(2, "E1 E2 E1"));
        assert_eq!((s, t), (Rat::new(11, 1), word(2, "E1")));
        let (s, t) = r.rewrite(&word(2, "E0 E0"));
        assert_eq!((s, t), (Rat::new(3, 1), word(2, "E0")));
        let (s, t) = r.rewrite(&word(2, "E2 E2"));
        assert_eq!((s, t), (Rat::new(5, 1), word(2, "E2")));
        let (s, t) = r.rewrite(&word(2, "E1 E1"));
        assert_eq!((s, t), (Rat::new(2, 1), word(2, "E1")));
    }

    #[test]
    fn braid_like_triples_have_unit_scalar() {
        let r = rules(3);
        let (s, t) = r.rewrite(&word(3, "E1 E2 E1"));
        assert_eq!((s, t), (Rat::new(1, 1), word(3, "E1")));
        let (s, t) = r.rewrite(&word(3, "E2 E1 E2"));
        assert_eq!((s, t), (Rat::new(1, 1), word(3, "E2")));
        // E_n E_{n-1} E_n is not a relation.
        assert!(r.is_reduced(&word(3, "E3 E2 E3")));
        assert!(rules(2).is_reduced(&word(2, "E2 E1 E2")));
    }

    #[test]
    fn hidden_triple_found_through_commutation() {
        // E1 E2 E3 E1 ~ E1 E2 E1 E3 -> E1 E3.
        let r = rules(4);
        let (s, t) = r.rewrite(&word(4, "E1 E2 E3 E1"));
        assert_eq!(s, Rat::new(1, 1));
        assert_eq!(t, word(4, "E1 E3"));
    }

    #[test]
    fn sandwich_rules_at_n2() {
        let r = rules(2);
        // I J I with I = E1, J = E0 E2.
        let (s, t) = r.rewrite(&word(2, "E1 E0 E2 E1"));
        assert_eq!((s, t), (Rat::new(13, 1), word(2, "E1")));
        let (s, t) = r.rewrite(&word(2, "E0 E2 E1 E0 E2"));
        assert_eq!(s, Rat::new(13, 1));
        assert_eq!(t, word(2, "E0 E2"));
    }

    #[test]
    fn sandwich_needs_the_full_blocks() {
        let r = rules(2);
        assert!(r.is_reduced(&word(2, "E1 E0 E2")));
        assert!(r.is_reduced(&word(2, "E0 E1 E0")));
        assert!(r.is_reduced(&word(2, "E0 E2 E1 E0")));
        let r3 = rules(3);
        // At n = 3 the odd block is E1 E3, so E1 E0 E2 E1 is reduced.
        assert!(r3.is_reduced(&word(3, "E1 E0 E2 E1")));
        let (s, t) = r3.rewrite(&word(3, "E1 E3 E0 E2 E1 E3"));
        assert_eq!((s, t), (Rat::new(13, 1), word(3, "E1 E3")));
    }

    #[test]
    fn spec_reducibility_examples() {
        let r5 = rules(5);
        assert!(!r5.is_reduced(&word(5, "E4 E2 E1 E3 E4 E2 E0")));
        // The same letters at n = 4 leave no applicable rule.
        let r4 = rules(4);
        assert!(r4.is_reduced(&word(4, "E4 E2 E1 E3 E4 E2 E0")));
        assert!(rules(2).is_reduced(&word(2, "E0 E1 E0")));
        assert!(rules(2).is_reduced(&TraceWord::empty(2)));
    }

    #[test]
    fn reducibility_classification() {
        let r = rules(2);
        assert_eq!(
            r.reducibility(&word(2, "E1 E0 E2")).unwrap(),
            Reducibility::IrreducibleIJ
        );
        assert_eq!(
            r.reducibility(&word(2, "E0 E2 E1")).unwrap(),
            Reducibility::IrreducibleJI
        );
        assert_eq!(
            r.reducibility(&word(2, "E0 E2")).unwrap(),
            Reducibility::CommutingProduct
        );
        assert_eq!(
            r.reducibility(&word(2, "E0 E1")).unwrap(),
            Reducibility::LeftVia(0)
        );
        assert_eq!(
            r.reducibility(&word(2, "E1 E0")).unwrap(),
            Reducibility::RightVia(0)
        );
        assert_eq!(
            r.reducibility(&TraceWord::empty(2)).unwrap(),
            Reducibility::CommutingProduct
        );
    }

    #[test]
    fn rewrite_is_class_invariant() {
        let r = rules(3);
        let a = word(3, "E0 E2 E1 E3 E0");
        let b = word(3, "E2 E0 E3 E1 E0");
        assert_eq!(a, b);
        assert_eq!(r.rewrite(&a), r.rewrite(&b));
    }

    #[test]
    fn collapsed_parameters_required_at_n1() {
        assert!(RuleSet::<Rat>::new(1, &ParameterSet::default_point()).is_err());
        let collapsed = ParameterSet::new(
            Rat::new(2, 1),
            Rat::new(3, 1),
            Rat::new(5, 1),
            Rat::new(13, 1),
            Rat::new(13, 1),
            Rat::new(13, 1),
        )
        .unwrap();
        let r = RuleSet::new(1, &collapsed).unwrap();
        // I = E1, J = E0: both kappaL and the sandwich rule send E1 E0 E1 to
        // 13 E1, consistently.
        let (s, t) = r.rewrite(&word(1, "E1 E0 E1"));
        assert_eq!((s, t), (Rat::new(13, 1), word(1, "E1")));
    }
}
