//! Executable checks tying diagram features of images to word combinatorics:
//! descent-set biconditionals, the shape of reduced-word images, boundary
//! factorizations, and the features preserved by single rewrite steps.

use crate::diagram::words::reduce_word;
use crate::diagram::{Blob, Diagram, PseudoDiagram};
use crate::error::Result;
use crate::presented::TraceWord;
use crate::scalar::{Field, ParameterSet};

use super::Context;

/// The four feature families invariant under applying relations: being
/// L-decorated at a point, being R-decorated at a point, and adjacent top or
/// bottom points joined by an undecorated edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Features {
    pub l_at: Vec<bool>,
    pub r_at: Vec<bool>,
    pub top_plain_pair: Vec<bool>,
    pub bottom_plain_pair: Vec<bool>,
}

fn features_from_edges(n: u16, edges: &[(u16, u16, Vec<Blob>)]) -> Features {
    let m = 2 * n as usize;
    let mut l_at = vec![false; m];
    let mut r_at = vec![false; m];
    let mut joined_plain = vec![vec![false; m]; m];
    for (a, b, word) in edges {
        if let Some(first) = word.first() {
            match first {
                Blob::L => l_at[*a as usize] = true,
                Blob::R => r_at[*a as usize] = true,
            }
        }
        if let Some(last) = word.last() {
            match last {
                Blob::L => l_at[*b as usize] = true,
                Blob::R => r_at[*b as usize] = true,
            }
        }
        if word.is_empty() {
            joined_plain[*a as usize][*b as usize] = true;
        }
    }
    // Top pair (i, i+1) sits at positions (i-1, i); bottom pair (i', (i+1)')
    // at positions (2n-i-1, 2n-i).
    let top_plain_pair = (1..n)
        .map(|i| joined_plain[i as usize - 1][i as usize])
        .collect();
    let bottom_plain_pair = (1..n)
        .map(|i| joined_plain[m - i as usize - 1][m - i as usize])
        .collect();
    Features {
        l_at,
        r_at,
        top_plain_pair,
        bottom_plain_pair,
    }
}

pub fn diagram_features(d: &Diagram) -> Features {
    let edges: Vec<(u16, u16, Vec<Blob>)> = d
        .edges()
        .iter()
        .map(|e| (e.a, e.b, e.word.letters().to_vec()))
        .collect();
    features_from_edges(d.n(), &edges)
}

pub fn pseudo_features(p: &PseudoDiagram) -> Features {
    features_from_edges(p.n, &p.edges)
}

/// The six descent biconditionals for a reduced word `w` with image diagram
/// `d`: boundary blobs at the corners match the boundary generators in the
/// descent sets, and undecorated adjacent pairs match the inner generators.
pub fn check_descent_features(w: &TraceWord, d: &Diagram) -> std::result::Result<(), String> {
    let n = w.n();
    let left = w.left_descent();
    let right = w.right_descent();
    let expect = |claim: bool, fact: bool, what: &str| -> std::result::Result<(), String> {
        if claim != fact {
            return Err(format!(
                "word {w}: {what}: diagram says {claim}, descents say {fact}"
            ));
        }
        Ok(())
    };
    expect(
        d.decorated_at(0, Blob::L),
        left.contains(0),
        "L-decorated at 1 vs E0 on the left",
    )?;
    expect(
        d.decorated_at(2 * n - 1, Blob::L),
        right.contains(0),
        "L-decorated at 1' vs E0 on the right",
    )?;
    expect(
        d.decorated_at(n - 1, Blob::R),
        left.contains(n as u8),
        "R-decorated at n vs En on the left",
    )?;
    expect(
        d.decorated_at(n, Blob::R),
        right.contains(n as u8),
        "R-decorated at n' vs En on the right",
    )?;
    for i in 1..n {
        expect(
            d.undecorated_edge_between(i - 1, i),
            left.contains(i as u8),
            &format!("top pair ({i}, {}) vs E{i} on the left", i + 1),
        )?;
        expect(
            d.undecorated_edge_between(2 * n - i - 1, 2 * n - i),
            right.contains(i as u8),
            &format!("bottom pair ({i}', {}') vs E{i} on the right", i + 1),
        )?;
    }
    Ok(())
}

/// A reduced word must land on a basis diagram with scalar one, and its image
/// carries at most one line with more than one decoration.
pub fn check_reduced_image<F: Field>(
    ctx: &Context<F>,
    w: &TraceWord,
) -> Result<std::result::Result<(), String>> {
    let (scalar, d) = ctx.phi(w)?;
    if !scalar.is_one() {
        return Ok(Err(format!("word {w} maps with scalar {scalar}")));
    }
    let multi = d.edges().iter().filter(|e| e.word.len() > 1).count();
    if multi > 1 {
        return Ok(Err(format!(
            "word {w} image has {multi} multiply decorated lines"
        )));
    }
    // Re-validate the canonical diagram from scratch: no forbidden features,
    // exposure and the simultaneous wall layout.
    let edges: Vec<_> = d.edges().iter().map(|e| (e.a, e.b, e.word)).collect();
    if let Err(e) = Diagram::new(d.n(), edges) {
        return Ok(Err(format!("word {w} image fails validation: {e}")));
    }
    Ok(Ok(()))
}

/// Boundary factorization: when points 1 and 2 are joined by an edge carrying
/// L but not R, the word starts (up to the relations) with E0 E1; mirrored on
/// the right side and for the other boundary.
pub fn check_boundary_factorization(w: &TraceWord, d: &Diagram) -> std::result::Result<(), String> {
    let n = w.n();
    if n < 2 {
        return Ok(());
    }
    let letters = w.canonical();
    let cases: [(u16, u16, Blob, u8, u8, bool); 4] = [
        (0, 1, Blob::L, 0, 1, true),
        (2 * n - 1, 2 * n - 2, Blob::L, 0, 1, false),
        (n - 1, n - 2, Blob::R, n as u8, n as u8 - 1, true),
        (n, n + 1, Blob::R, n as u8, n as u8 - 1, false),
    ];
    for (p, q, blob, first, second, from_left) in cases {
        let edge = d
            .edges()
            .iter()
            .find(|e| e.a == p.min(q) && e.b == p.max(q))
            .map(|e| e.word);
        let Some(word) = edge else { continue };
        if !(word.contains(blob) && !word.contains(blob.flip())) {
            continue;
        }
        let seq: Vec<u8> = if from_left {
            letters.letters().to_vec()
        } else {
            letters.letters().iter().rev().copied().collect()
        };
        let head = TraceWord::from_raw(n, seq.clone());
        if !head.left_descent().contains(first) {
            return Err(format!(
                "word {w}: expected E{first} leading the {from_left} side"
            ));
        }
        let mut rest = seq;
        let pos = rest.iter().position(|&a| a == first).unwrap();
        rest.remove(pos);
        if !TraceWord::from_raw(n, rest).left_descent().contains(second) {
            return Err(format!(
                "word {w}: expected E{second} after peeling E{first} ({from_left})"
            ));
        }
    }
    Ok(())
}

/// One straightening step applied to a pseudo-diagram: either one word rule
/// on one edge, or one loop removed. Returns all possibilities.
pub fn pseudo_single_steps<F: Field>(
    p: &PseudoDiagram,
    params: &ParameterSet<F>,
) -> Vec<(F, PseudoDiagram)> {
    let mut out = Vec::new();
    for (idx, (_, _, word)) in p.edges.iter().enumerate() {
        for k in 0..word.len() {
            // doubled letter
            if k + 1 < word.len() && word[k] == word[k + 1] {
                let mut next = p.clone();
                next.edges[idx].2.remove(k + 1);
                let s = match word[k] {
                    Blob::L => params.delta_l.clone(),
                    Blob::R => params.delta_r.clone(),
                };
                out.push((s, next));
            }
            // alternating triple
            if k + 2 < word.len() && word[k] == word[k + 2] && word[k] != word[k + 1] {
                let mut next = p.clone();
                next.edges[idx].2.drain(k + 1..k + 3);
                out.push((params.kappa_lr.clone(), next));
            }
        }
    }
    for (idx, cycle) in p.loops.iter().enumerate() {
        let mut next = p.clone();
        next.loops.remove(idx);
        out.push((crate::diagram::words::loop_value(cycle, params), next));
    }
    out
}

/// Straightens an edge word fully (test helper for feature preservation).
pub fn straighten_pseudo_words<F: Field>(
    p: &PseudoDiagram,
    params: &ParameterSet<F>,
) -> (F, PseudoDiagram) {
    let mut scalar = F::one();
    let mut next = p.clone();
    for (_, _, word) in next.edges.iter_mut() {
        let (s, reduced) = reduce_word(word, params);
        scalar = scalar.mul(&s);
        *word = reduced.letters().to_vec();
    }
    (scalar, next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::generator_diagram;
    use crate::scalar::Rat;

    #[test]
    fn descent_features_of_single_generators() {
        let p: ParameterSet<Rat> = ParameterSet::default_point();
        let ctx = Context::build(3, &p).unwrap();
        for (text, _) in [("E0", 0), ("E1", 1), ("E3", 3)] {
            let w = TraceWord::parse(3, text).unwrap();
            let (_, d) = ctx.phi(&w).unwrap();
            check_descent_features(&w, &d).unwrap();
        }
        // E0: L-decorated at 1 and 1', both descent sets contain E0.
        let e0 = generator_diagram(0, 3).unwrap();
        assert!(e0.decorated_at(0, Blob::L));
        assert!(e0.decorated_at(5, Blob::L));
    }

    #[test]
    fn feature_mismatch_is_reported() {
        let w = TraceWord::parse(2, "E0").unwrap();
        let wrong = generator_diagram(1, 2).unwrap();
        assert!(check_descent_features(&w, &wrong).is_err());
    }

    #[test]
    fn quotient_identification_changes_bare_connectivity() {
        // The two sides of the quotient relation share every invariant
        // feature, but "points 1 and 2 joined by some edge" (without the
        // undecorated qualifier) differs: the identification cuts the
        // decorated cup open.
        let cupcap = Diagram::decode("n2|1-2:LR 2'-1':RL").unwrap();
        let lines = Diagram::decode("n2|1-1':L 2-2':R").unwrap();
        let fa = diagram_features(&cupcap);
        let fb = diagram_features(&lines);
        assert_eq!(fa.l_at, fb.l_at);
        assert_eq!(fa.r_at, fb.r_at);
        assert_eq!(fa.top_plain_pair, fb.top_plain_pair);
        let joined = |d: &Diagram| d.edges().iter().any(|e| e.a == 0 && e.b == 1);
        assert_ne!(joined(&cupcap), joined(&lines));
    }
}
