//! Enumeration of reduced classes, the presented structure table, and an
//! independent word-span dimension oracle.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scalar::{Field, ParameterSet};

use super::rewrite::RuleSet;
use super::{CfForm, TraceWord};

/// Default length cap for the reduced-class closure.
pub fn default_cap(n: u16) -> usize {
    ((n as usize) + 2) * ((n as usize) + 2)
}

/// The reduced commutation classes at size n, discovered by breadth-first
/// closure under right multiplication by generators.
pub struct ReducedClasses {
    pub n: u16,
    /// Canonical representatives, sorted by length then letters.
    pub reps: Vec<TraceWord>,
    index: HashMap<CfForm, u32>,
}

impl ReducedClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn index_of(&self, w: &TraceWord) -> Option<u32> {
        self.index.get(&w.cartier_foata()).copied()
    }

    pub fn max_length(&self) -> usize {
        self.reps.iter().map(|w| w.len()).max().unwrap_or(0)
    }
}

/// Breadth-first closure: start from the empty word, right-multiply every
/// known class by each generator and rewrite. Errors out if a reduced word
/// ever exceeds the cap.
pub fn enumerate_reduced<F: Field>(rules: &RuleSet<F>, cap: usize) -> Result<ReducedClasses> {
    let n = rules.n;
    let mut reps: Vec<TraceWord> = vec![TraceWord::empty(n)];
    let mut index: HashMap<CfForm, u32> = HashMap::new();
    index.insert(TraceWord::empty(n).cartier_foata(), 0);
    let mut head = 0usize;
    while head < reps.len() {
        let current = reps[head].clone();
        head += 1;
        for g in 0..=n as u8 {
            let candidate = current.push(g)?;
            let (_, reduced) = rules.rewrite(&candidate);
            if reduced.len() > cap {
                return Err(Error::CapExceeded { n, cap });
            }
            let key = reduced.cartier_foata();
            if !index.contains_key(&key) {
                index.insert(key, reps.len() as u32);
                reps.push(reduced);
            }
        }
    }
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by_key(|&i| (reps[i].len(), reps[i].letters().to_vec()));
    let reps: Vec<TraceWord> = order.into_iter().map(|i| reps[i].clone()).collect();
    let mut index = HashMap::new();
    for (i, w) in reps.iter().enumerate() {
        index.insert(w.cartier_foata(), i as u32);
    }
    Ok(ReducedClasses { n, reps, index })
}

/// The presented algebra on the reduced-class basis: products are computed by
/// concatenation followed by rewriting.
pub struct PresentedAlgebra<F: Field> {
    pub rules: RuleSet<F>,
    pub classes: ReducedClasses,
}

impl<F: Field> PresentedAlgebra<F> {
    pub fn build(n: u16, params: &ParameterSet<F>, cap: usize) -> Result<PresentedAlgebra<F>> {
        let rules = RuleSet::new(n, params)?;
        let classes = enumerate_reduced(&rules, cap)?;
        Ok(PresentedAlgebra { rules, classes })
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// Index of the class of an arbitrary word, with the scalar produced by
    /// reduction.
    pub fn reduce_to_class(&self, w: &TraceWord) -> Result<(F, u32)> {
        let (scalar, reduced) = self.rules.rewrite(w);
        let idx = self.classes.index_of(&reduced).ok_or_else(|| {
            Error::QuotientInconsistent(format!("reduced word {reduced} missing from the closure"))
        })?;
        Ok((scalar, idx))
    }

    /// Structure constants: representative i times representative j.
    pub fn mul(&self, i: usize, j: usize) -> Result<(F, u32)> {
        let product = self.classes.reps[i].concat(&self.classes.reps[j])?;
        self.reduce_to_class(&product)
    }
}

/// Dimension of the span of all words up to a length cap, modulo the defining
/// relations, computed independently of the trace machinery: words are plain
/// strings, commutations are explicit two-term relations, and rule matching
/// is literal. All relations are binomial, so row reduction of the relation
/// closure is a ratio-weighted union-find over packed words.
pub fn word_span_dimension<F: Field>(
    n: u16,
    params: &ParameterSet<F>,
    cap: usize,
) -> Result<usize> {
    let rules = RuleSet::new(n, params)?;
    let radix = (n as u64) + 2;
    let letters_count = n as usize + 1;
    let mut total: usize = 1;
    let mut layer = 1usize;
    for _ in 0..cap {
        layer = layer.saturating_mul(letters_count);
        total = total.saturating_add(layer);
        if total > 12_000_000 {
            return Err(Error::OracleTooLarge(total));
        }
    }

    let pack = |w: &[u8]| -> u64 { w.iter().fold(0u64, |k, &a| k * radix + (a as u64 + 1)) };

    struct Uf<F> {
        parent: Vec<u32>,
        ratio: Vec<F>,
        dead: Vec<bool>,
        min_len: Vec<u8>,
    }
    impl<F: Field> Uf<F> {
        fn find(&mut self, x: u32) -> (u32, F) {
            let mut chain = Vec::new();
            let mut cur = x;
            while self.parent[cur as usize] != cur {
                chain.push(cur);
                cur = self.parent[cur as usize];
            }
            let root = cur;
            let mut acc = F::one();
            for &node in chain.iter().rev() {
                acc = self.ratio[node as usize].mul(&acc);
                self.parent[node as usize] = root;
                self.ratio[node as usize] = acc.clone();
            }
            let r = if x == root {
                F::one()
            } else {
                self.ratio[x as usize].clone()
            };
            (root, r)
        }
        /// e_a = rho e_b
        fn union(&mut self, a: u32, b: u32, rho: F) {
            let (ra, ta) = self.find(a);
            let (rb, tb) = self.find(b);
            if ra == rb {
                if ta != rho.mul(&tb) {
                    self.dead[ra as usize] = true;
                }
                return;
            }
            let link = ta.inv().expect("invertible").mul(&rho).mul(&tb);
            self.parent[ra as usize] = rb;
            self.ratio[ra as usize] = link;
            let dead = self.dead[ra as usize] || self.dead[rb as usize];
            self.dead[rb as usize] = dead;
            let ml = self.min_len[ra as usize].min(self.min_len[rb as usize]);
            self.min_len[rb as usize] = ml;
        }
    }

    let mut ids: HashMap<u64, u32> = HashMap::with_capacity(total);
    let mut uf: Uf<F> = Uf {
        parent: Vec::new(),
        ratio: Vec::new(),
        dead: Vec::new(),
        min_len: Vec::new(),
    };
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    let mut intern = |w: &[u8], uf: &mut Uf<F>| -> u32 {
        let key = pack(w);
        if let Some(&id) = ids.get(&key) {
            return id;
        }
        let id = uf.parent.len() as u32;
        ids.insert(key, id);
        uf.parent.push(id);
        uf.ratio.push(F::one());
        uf.dead.push(false);
        uf.min_len.push(w.len() as u8);
        id
    };

    let empty_id = intern(&[], &mut uf);
    debug_assert_eq!(empty_id, 0);
    let mut head = 0usize;
    let i_word = rules.word_i();
    let j_word = rules.word_j();
    let iji: Vec<u8> = [i_word.as_slice(), j_word.as_slice(), i_word.as_slice()].concat();
    let jij: Vec<u8> = [j_word.as_slice(), i_word.as_slice(), j_word.as_slice()].concat();
    while head < words.len() {
        let w = words[head].clone();
        head += 1;
        let id = intern(&w, &mut uf);
        // Relations with w on the long side.
        for k in 0..w.len() {
            // commutation swaps
            if k + 1 < w.len() && w[k] != w[k + 1] && super::commutes(w[k], w[k + 1]) {
                let mut other = w.clone();
                other.swap(k, k + 1);
                let oid = intern(&other, &mut uf);
                uf.union(id, oid, F::one());
            }
            // squares
            if k + 1 < w.len() && w[k] == w[k + 1] {
                let mut short = w.clone();
                short.remove(k + 1);
                let sid = intern(&short, &mut uf);
                uf.union(id, sid, params.square_scalar(w[k], n));
            }
            // literal triples
            if k + 2 < w.len() && w[k] == w[k + 2] && w[k] != w[k + 1] {
                if let Some(s) = rules.triple_scalar(w[k], w[k + 1]) {
                    let mut short = w.clone();
                    short.remove(k + 2);
                    short.remove(k + 1);
                    let sid = intern(&short, &mut uf);
                    uf.union(id, sid, s);
                }
            }
            // literal sandwich factors
            for (lhs, rhs) in [(&iji, &i_word), (&jij, &j_word)] {
                if w[k..].starts_with(lhs) {
                    let mut short = Vec::with_capacity(w.len() - lhs.len() + rhs.len());
                    short.extend_from_slice(&w[..k]);
                    short.extend_from_slice(rhs);
                    short.extend_from_slice(&w[k + lhs.len()..]);
                    let sid = intern(&short, &mut uf);
                    uf.union(id, sid, params.kappa_lr.clone());
                }
            }
        }
        // extend the word list
        if w.len() < cap {
            for g in 0..=n as u8 {
                let mut next = w.clone();
                next.push(g);
                let len_before = uf.parent.len();
                let nid = intern(&next, &mut uf);
                if nid as usize == len_before {
                    words.push(next);
                }
            }
        }
    }

    // Count live classes, and live classes already present one length
    // earlier, to decide stabilization.
    let node_count = uf.parent.len();
    let mut full = 0usize;
    let mut shorter = 0usize;
    let mut seen_roots: HashMap<u32, ()> = HashMap::new();
    for x in 0..node_count as u32 {
        let (root, _) = uf.find(x);
        if uf.dead[root as usize] {
            continue;
        }
        if seen_roots.insert(root, ()).is_none() {
            full += 1;
            if (uf.min_len[root as usize] as usize) < cap {
                shorter += 1;
            }
        }
    }
    if full != shorter {
        return Err(Error::NotStabilized(cap.saturating_sub(1), cap));
    }
    Ok(full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn params() -> ParameterSet<Rat> {
        ParameterSet::default_point()
    }

    #[test]
    fn closure_at_n2_matches_hand_count() {
        let rules = RuleSet::new(2, &params()).unwrap();
        let classes = enumerate_reduced(&rules, default_cap(2)).unwrap();
        // Words with at most one E1, boundary letters at most twice, and the
        // two-sided sandwich excluded: 19 classes.
        assert_eq!(classes.len(), 19);
        assert!(classes
            .index_of(&TraceWord::parse(2, "E0 E1 E0").unwrap())
            .is_some());
        for rep in &classes.reps {
            assert!(rules.is_reduced(rep));
        }
    }

    #[test]
    fn products_through_the_table() {
        let p = params();
        let alg = PresentedAlgebra::build(2, &p, default_cap(2)).unwrap();
        let id = alg.classes.index_of(&TraceWord::empty(2)).unwrap() as usize;
        for i in 0..alg.dim() {
            assert_eq!(alg.mul(id, i).unwrap(), (Rat::new(1, 1), i as u32));
            assert_eq!(alg.mul(i, id).unwrap(), (Rat::new(1, 1), i as u32));
        }
        let e0 = alg
            .classes
            .index_of(&TraceWord::parse(2, "E0").unwrap())
            .unwrap() as usize;
        assert_eq!(alg.mul(e0, e0).unwrap(), (Rat::new(3, 1), e0 as u32));
        // (E0 E2) * E1 * (E0 E2) chained through the table gives kLR * (E0 E2).
        let j = alg
            .classes
            .index_of(&TraceWord::parse(2, "E0 E2").unwrap())
            .unwrap() as usize;
        let e1 = alg
            .classes
            .index_of(&TraceWord::parse(2, "E1").unwrap())
            .unwrap() as usize;
        let (s1, k1) = alg.mul(j, e1).unwrap();
        let (s2, k2) = alg.mul(k1 as usize, j).unwrap();
        assert_eq!(s1.mul(&s2), Rat::new(13, 1));
        assert_eq!(k2, j as u32);
    }

    #[test]
    fn word_span_oracle_at_n2() {
        let p = params();
        let dim = word_span_dimension(2, &p, 7).unwrap();
        assert_eq!(dim, 19);
    }

    #[test]
    fn word_span_oracle_detects_unstable_cap() {
        let p = params();
        assert!(matches!(
            word_span_dimension(2, &p, 1),
            Err(Error::NotStabilized(0, 1))
        ));
    }

    #[test]
    fn word_span_oracle_at_collapsed_n1() {
        let collapsed = ParameterSet::new(
            Rat::new(2, 1),
            Rat::new(3, 1),
            Rat::new(5, 1),
            Rat::new(13, 1),
            Rat::new(13, 1),
            Rat::new(13, 1),
        )
        .unwrap();
        let dim = word_span_dimension(1, &collapsed, 6).unwrap();
        let alg = PresentedAlgebra::build(1, &collapsed, default_cap(1)).unwrap();
        assert_eq!(dim, alg.dim());
    }
}
