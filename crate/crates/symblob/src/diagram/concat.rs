//! Diagram multiplication: concatenation into a pseudo-diagram, then
//! straightening back into a scalar multiple of a canonical diagram.

use crate::error::{Error, Result};
use crate::scalar::{Field, ParameterSet};

use super::words::{canonical_cycle, loop_value, reduce_word, Blob};
use super::{Diagram, Edge, PseudoDiagram};

/// Which of the two stacked diagrams a walk position refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Layer {
    Top,
    Bottom,
}

/// Identifies the top diagram's bottom points with the bottom diagram's top
/// points and traces the composite arcs, concatenating decoration words in
/// traversal order. Closed circuits become loops with cyclic words.
pub fn concatenate(top: &Diagram, bottom: &Diagram) -> Result<PseudoDiagram> {
    if top.n() != bottom.n() {
        return Err(Error::SizeMismatch(top.n(), bottom.n()));
    }
    let n = top.n();
    let m = 2 * n;

    // position -> (edge index, entered-at-a?) for each layer
    let index = |d: &Diagram| {
        let mut at = vec![(0usize, false); m as usize];
        for (i, e) in d.edges().iter().enumerate() {
            at[e.a as usize] = (i, true);
            at[e.b as usize] = (i, false);
        }
        at
    };
    let at_top = index(top);
    let at_bottom = index(bottom);
    let edges_of = |layer: Layer| match layer {
        Layer::Top => top.edges(),
        Layer::Bottom => bottom.edges(),
    };
    let at_of = |layer: Layer| match layer {
        Layer::Top => &at_top,
        Layer::Bottom => &at_bottom,
    };

    let mut visited_top = vec![false; top.edges().len()];
    let mut visited_bottom = vec![false; bottom.edges().len()];

    // Walks from `pos` in `layer`, returning the letters collected and the
    // terminal (layer, position). Marks edges visited.
    fn walk(
        top: &Diagram,
        bottom: &Diagram,
        at_top: &[(usize, bool)],
        at_bottom: &[(usize, bool)],
        visited_top: &mut [bool],
        visited_bottom: &mut [bool],
        start_layer: Layer,
        start_pos: u16,
    ) -> (Vec<Blob>, Layer, u16) {
        let n = top.n();
        let m = 2 * n;
        let mut layer = start_layer;
        let mut pos = start_pos;
        let mut letters = Vec::new();
        loop {
            let (idx, at_a) = match layer {
                Layer::Top => at_top[pos as usize],
                Layer::Bottom => at_bottom[pos as usize],
            };
            let e = match layer {
                Layer::Top => {
                    visited_top[idx] = true;
                    &top.edges()[idx]
                }
                Layer::Bottom => {
                    visited_bottom[idx] = true;
                    &bottom.edges()[idx]
                }
            };
            if at_a {
                letters.extend(e.word.letters().iter().copied());
            } else {
                letters.extend(e.word.letters().iter().rev().copied());
            }
            let out = if at_a { e.b } else { e.a };
            match layer {
                Layer::Top => {
                    if out >= n {
                        // interface column j = 2n - out, continue at the
                        // bottom diagram's top point j (position j - 1)
                        pos = m - out - 1;
                        layer = Layer::Bottom;
                    } else {
                        return (letters, Layer::Top, out);
                    }
                }
                Layer::Bottom => {
                    if out < n {
                        // interface column j = out + 1, continue at the top
                        // diagram's bottom point j' (position 2n - j)
                        pos = m - out - 1;
                        layer = Layer::Top;
                    } else {
                        return (letters, Layer::Bottom, out);
                    }
                }
            }
        }
    }

    let mut edges: Vec<(u16, u16, Vec<Blob>)> = Vec::with_capacity(n as usize);
    // Arcs from the global top boundary.
    for p in 0..n {
        let (idx, _) = at_top[p as usize];
        if visited_top[idx] {
            continue;
        }
        let (letters, _, out) = walk(
            top,
            bottom,
            &at_top,
            &at_bottom,
            &mut visited_top,
            &mut visited_bottom,
            Layer::Top,
            p,
        );
        edges.push((p, out, letters));
    }
    // Arcs confined to the global bottom boundary.
    for p in n..m {
        let (idx, _) = at_bottom[p as usize];
        if visited_bottom[idx] {
            continue;
        }
        let (letters, layer, out) = walk(
            top,
            bottom,
            &at_top,
            &at_bottom,
            &mut visited_top,
            &mut visited_bottom,
            Layer::Bottom,
            p,
        );
        debug_assert_eq!(layer, Layer::Bottom);
        edges.push((p, out, letters));
    }

    // Anything left is a closed loop through the interface.
    let mut loops: Vec<Vec<Blob>> = Vec::new();
    for start in 0..top.edges().len() {
        if visited_top[start] {
            continue;
        }
        let mut letters = Vec::new();
        let mut layer = Layer::Top;
        let e0 = &top.edges()[start];
        let mut pos = e0.a;
        loop {
            let (idx, at_a) = at_of(layer)[pos as usize];
            let done = match layer {
                Layer::Top => {
                    let d = visited_top[idx];
                    visited_top[idx] = true;
                    d
                }
                Layer::Bottom => {
                    let d = visited_bottom[idx];
                    visited_bottom[idx] = true;
                    d
                }
            };
            if done {
                break;
            }
            let e = &edges_of(layer)[idx];
            if at_a {
                letters.extend(e.word.letters().iter().copied());
            } else {
                letters.extend(e.word.letters().iter().rev().copied());
            }
            let out = if at_a { e.b } else { e.a };
            pos = m - out - 1;
            layer = match layer {
                Layer::Top => Layer::Bottom,
                Layer::Bottom => Layer::Top,
            };
        }
        loops.push(canonical_cycle(&letters));
    }
    loops.sort();

    // Normalize arc endpoints to global positions with a < b and the word
    // read from a. Bottom endpoints keep their position values; an arc traced
    // from the bottom boundary stays within it.
    let mut normalized = Vec::with_capacity(edges.len());
    for (p, q, letters) in edges {
        if p < q {
            normalized.push((p, q, letters));
        } else {
            normalized.push((q, p, letters.into_iter().rev().collect()));
        }
    }
    normalized.sort_by_key(|e| e.0);
    Ok(PseudoDiagram {
        n,
        edges: normalized,
        loops,
    })
}

/// Applies the straightening rules: every loop is replaced by its scalar and
/// every edge word is reduced. The outcome is an element of the unquotiented
/// decorated-diagram algebra.
pub fn straighten<F: Field>(p: &PseudoDiagram, params: &ParameterSet<F>) -> (F, Diagram) {
    let mut scalar = F::one();
    for cycle in &p.loops {
        scalar = scalar.mul(&loop_value(cycle, params));
    }
    let mut edges = Vec::with_capacity(p.edges.len());
    for (a, b, letters) in &p.edges {
        let (s, word) = reduce_word(letters, params);
        scalar = scalar.mul(&s);
        edges.push(Edge { a: *a, b: *b, word });
    }
    (scalar, Diagram::from_canonical_parts(p.n, edges))
}

/// Concatenate then straighten.
pub fn multiply<F: Field>(
    a: &Diagram,
    b: &Diagram,
    params: &ParameterSet<F>,
) -> Result<(F, Diagram)> {
    let pseudo = concatenate(a, b)?;
    Ok(straighten(&pseudo, params))
}
