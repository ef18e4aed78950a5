//! Concrete pseudo-diagrams: the tiled stack of generator diagrams encoding a
//! word, with arcs kept as sequences of primitive segments. The shape of the
//! stack allows the word to be reconstructed, and oriented arcs expose the
//! direction-reversal structure that constrains reduced words.

use std::fmt;

use crate::diagram::{Blob, PseudoDiagram};
use crate::error::{Error, Result};
use crate::presented::TraceWord;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SegKind {
    /// Spans the tile vertically at the column.
    Vertical { col: u16 },
    /// Joins (left, left+1) on the tile's top boundary.
    Cup { left: u16 },
    /// Joins (left, left+1) on the tile's bottom boundary.
    Cap { left: u16 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Segment {
    pub tile: usize,
    pub kind: SegKind,
    pub blob: Option<Blob>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Endpoint {
    Top(u16),
    Bottom(u16),
}

/// One traversal step: a segment entered either at its first end (vertical:
/// top, cup/cap: left) or at its second end.
pub type Step = (usize, bool);

#[derive(Clone, Debug)]
pub struct ConcreteArc {
    pub steps: Vec<Step>,
    pub start: Endpoint,
    pub end: Endpoint,
}

#[derive(Clone, Debug)]
pub struct ConcreteDiagram {
    pub n: u16,
    pub word: Vec<u8>,
    pub segments: Vec<Segment>,
    pub arcs: Vec<ConcreteArc>,
    pub loops: Vec<Vec<Step>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    StartToEnd,
    EndToStart,
}

/// An arc with per-segment direction labels N, S, E, W under a chosen
/// orientation, carrying the blob of each segment for inspection.
#[derive(Clone, Debug)]
pub struct OrientedArc {
    pub labels: Vec<char>,
    pub blobs: Vec<Option<Blob>>,
    pub tiles: Vec<usize>,
    pub horizontals: Vec<bool>,
}

impl OrientedArc {
    pub fn label_string(&self) -> String {
        self.labels.iter().collect()
    }
}

impl fmt::Display for OrientedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label_string())
    }
}

/// Builds the tiled stack of a word without applying any straightening.
pub fn concrete(w: &TraceWord) -> ConcreteDiagram {
    let n = w.n();
    let m = w.len();
    let mut segments: Vec<Segment> = Vec::new();
    // node (boundary, col) -> incident (segment, end)
    let node = |bd: usize, col: u16| bd * n as usize + (col as usize - 1);
    let mut incidence: Vec<Vec<(usize, bool)>> = vec![Vec::new(); (m + 1) * n as usize];
    for (t, &letter) in w.letters().iter().enumerate() {
        let ell = letter as u16;
        if letter == 0 || ell == n {
            for col in 1..=n {
                let blob = if (letter == 0 && col == 1) || (ell == n && col == n) {
                    Some(if letter == 0 { Blob::L } else { Blob::R })
                } else {
                    None
                };
                let id = segments.len();
                segments.push(Segment {
                    tile: t,
                    kind: SegKind::Vertical { col },
                    blob,
                });
                incidence[node(t, col)].push((id, true));
                incidence[node(t + 1, col)].push((id, false));
            }
        } else {
            let id = segments.len();
            segments.push(Segment {
                tile: t,
                kind: SegKind::Cup { left: ell },
                blob: None,
            });
            incidence[node(t, ell)].push((id, true));
            incidence[node(t, ell + 1)].push((id, false));
            let id = segments.len();
            segments.push(Segment {
                tile: t,
                kind: SegKind::Cap { left: ell },
                blob: None,
            });
            incidence[node(t + 1, ell)].push((id, true));
            incidence[node(t + 1, ell + 1)].push((id, false));
            for col in 1..=n {
                if col != ell && col != ell + 1 {
                    let id = segments.len();
                    segments.push(Segment {
                        tile: t,
                        kind: SegKind::Vertical { col },
                        blob: None,
                    });
                    incidence[node(t, col)].push((id, true));
                    incidence[node(t + 1, col)].push((id, false));
                }
            }
        }
    }

    // The two nodes of a segment.
    let ends = |seg: usize| -> [(usize, u16); 2] {
        let s = &segments[seg];
        match s.kind {
            SegKind::Vertical { col } => [(s.tile, col), (s.tile + 1, col)],
            SegKind::Cup { left } => [(s.tile, left), (s.tile, left + 1)],
            SegKind::Cap { left } => [(s.tile + 1, left), (s.tile + 1, left + 1)],
        }
    };

    let mut visited = vec![false; segments.len()];
    let mut arcs = Vec::new();
    let trace = |start_bd: usize,
                 start_col: u16,
                 visited: &mut Vec<bool>|
     -> Option<(Vec<Step>, usize, u16)> {
        let first = incidence[node(start_bd, start_col)].first().copied()?;
        if visited[first.0] {
            return None;
        }
        let mut steps = Vec::new();
        let mut current = first;
        loop {
            let (seg, entered_first) = current;
            visited[seg] = true;
            steps.push((seg, entered_first));
            let [a, b] = ends(seg);
            let out = if entered_first { b } else { a };
            let (bd, col) = out;
            if bd == 0 || bd == m {
                // A boundary node has one incident segment; for m = 0 there
                // are no segments at all and we never get here.
                if incidence[node(bd, col)].len() == 1 {
                    return Some((steps, bd, col));
                }
            }
            let next = incidence[node(bd, col)]
                .iter()
                .copied()
                .find(|(s, _)| *s != seg)
                .expect("interior node has two incident segments");
            let [na, _] = ends(next.0);
            let entered = (na.0, na.1) == (bd, col);
            current = (next.0, entered);
        }
    };

    if m == 0 {
        for col in 1..=n {
            arcs.push(ConcreteArc {
                steps: Vec::new(),
                start: Endpoint::Top(col),
                end: Endpoint::Bottom(col),
            });
        }
        return ConcreteDiagram {
            n,
            word: Vec::new(),
            segments,
            arcs,
            loops: Vec::new(),
        };
    }

    for col in 1..=n {
        if let Some((steps, bd, end_col)) = trace(0, col, &mut visited) {
            let end = if bd == 0 {
                Endpoint::Top(end_col)
            } else {
                Endpoint::Bottom(end_col)
            };
            arcs.push(ConcreteArc {
                steps,
                start: Endpoint::Top(col),
                end,
            });
        }
    }
    for col in 1..=n {
        if let Some((steps, bd, end_col)) = trace(m, col, &mut visited) {
            debug_assert_eq!(bd, m);
            arcs.push(ConcreteArc {
                steps,
                start: Endpoint::Bottom(col),
                end: Endpoint::Bottom(end_col),
            });
        }
    }
    let mut loops = Vec::new();
    for seg in 0..segments.len() {
        if visited[seg] {
            continue;
        }
        // Walk the cycle from this segment's first end.
        let mut steps: Vec<Step> = Vec::new();
        let mut current = (seg, true);
        loop {
            let (s, entered_first) = current;
            if visited[s] {
                break;
            }
            visited[s] = true;
            steps.push((s, entered_first));
            let [a, b] = ends(s);
            let out = if entered_first { b } else { a };
            let next = incidence[node(out.0, out.1)]
                .iter()
                .copied()
                .find(|(t, _)| *t != s)
                .expect("loop node has two incident segments");
            let [na, _] = ends(next.0);
            let entered = (na.0, na.1) == (out.0, out.1);
            current = (next.0, entered);
        }
        loops.push(steps);
    }
    ConcreteDiagram {
        n,
        word: w.letters().to_vec(),
        segments,
        arcs,
        loops,
    }
}

impl ConcreteDiagram {
    /// Erases the tile boundaries: arcs become decorated edges and loops
    /// become cyclic words, producing the pre-straightening diagram.
    pub fn to_pseudo(&self) -> PseudoDiagram {
        let n = self.n;
        let position = |e: Endpoint| -> u16 {
            match e {
                Endpoint::Top(c) => c - 1,
                Endpoint::Bottom(c) => 2 * n - c,
            }
        };
        let mut edges = Vec::new();
        for arc in &self.arcs {
            let letters: Vec<Blob> = arc
                .steps
                .iter()
                .filter_map(|&(s, _)| self.segments[s].blob)
                .collect();
            let (p, q) = (position(arc.start), position(arc.end));
            if p <= q {
                edges.push((p, q, letters));
            } else {
                edges.push((q, p, letters.into_iter().rev().collect()));
            }
        }
        edges.sort_by_key(|e| e.0);
        let mut loops: Vec<Vec<Blob>> = self
            .loops
            .iter()
            .map(|steps| {
                let letters: Vec<Blob> = steps
                    .iter()
                    .filter_map(|&(s, _)| self.segments[s].blob)
                    .collect();
                crate::diagram::words::canonical_cycle(&letters)
            })
            .collect();
        loops.sort();
        PseudoDiagram { n, edges, loops }
    }

    /// Direction labels along an arc under the chosen orientation.
    pub fn orient_and_label(&self, arc: usize, orientation: Orientation) -> Result<OrientedArc> {
        let arc = self.arcs.get(arc).ok_or(Error::UnknownArc(arc))?;
        let mut labels = Vec::with_capacity(arc.steps.len());
        let mut blobs = Vec::with_capacity(arc.steps.len());
        let mut tiles = Vec::with_capacity(arc.steps.len());
        let mut horizontals = Vec::with_capacity(arc.steps.len());
        let steps: Vec<Step> = match orientation {
            Orientation::StartToEnd => arc.steps.clone(),
            Orientation::EndToStart => arc.steps.iter().rev().map(|&(s, e)| (s, !e)).collect(),
        };
        for (seg, entered_first) in steps {
            let s = &self.segments[seg];
            let (label, horizontal) = match s.kind {
                SegKind::Vertical { .. } => (if entered_first { 'S' } else { 'N' }, false),
                SegKind::Cup { .. } | SegKind::Cap { .. } => {
                    (if entered_first { 'E' } else { 'W' }, true)
                }
            };
            labels.push(label);
            blobs.push(s.blob);
            tiles.push(s.tile);
            horizontals.push(horizontal);
        }
        Ok(OrientedArc {
            labels,
            blobs,
            tiles,
            horizontals,
        })
    }
}

/// Counts of west-east and east-west direction reversals: transitions in the
/// run-collapsed sequence of horizontal labels.
pub fn reversals(arc: &OrientedArc) -> (usize, usize) {
    let horizontals: Vec<char> = arc
        .labels
        .iter()
        .copied()
        .filter(|c| *c == 'E' || *c == 'W')
        .collect();
    let mut west_east = 0;
    let mut east_west = 0;
    for w in horizontals.windows(2) {
        if w[0] == 'W' && w[1] == 'E' {
            west_east += 1;
        }
        if w[0] == 'E' && w[1] == 'W' {
            east_west += 1;
        }
    }
    (west_east, east_west)
}

#[derive(Clone, Debug)]
pub struct ReversalReport {
    pub arcs: usize,
    pub windows: usize,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Verifies the structure every direction reversal of a reduced word's stack
/// must have. For a west-east reversal: the minimal window is a cap-cup pair
/// of consecutive E_1 occurrences, the verticals between them share a
/// direction and exactly one carries a left blob, the verticals flanking the
/// window run the other way, and the first enclosing horizontals on both
/// sides are the cup and cap of a single E_2 occurrence. East-west reversals
/// mirror this with E_{n-1}, a right blob, and E_{n-2}.
pub fn check_reversal_structure(cd: &ConcreteDiagram) -> ReversalReport {
    let n = cd.n;
    let mut windows = 0usize;
    for arc_idx in 0..cd.arcs.len() {
        let arc = cd
            .orient_and_label(arc_idx, Orientation::StartToEnd)
            .expect("arc exists");
        for (open, close, inner_letter, blob, outer_letter) in [
            ('W', 'E', 1i32, Blob::L, 2i32),
            ('E', 'W', n as i32 - 1, Blob::R, n as i32 - 2),
        ] {
            // Minimal windows: an `open` horizontal followed by a `close`
            // horizontal with only verticals between.
            let len = arc.labels.len();
            for u in 0..len {
                if !(arc.horizontals[u] && arc.labels[u] == open) {
                    continue;
                }
                let Some(v) = (u + 1..len).find(|&v| arc.horizontals[v]) else {
                    continue;
                };
                if arc.labels[v] != close {
                    continue;
                }
                windows += 1;
                let fail = |msg: String| ReversalReport {
                    arcs: cd.arcs.len(),
                    windows,
                    pass: false,
                    witness: Some(format!(
                        "word {:?}, arc {arc_idx}, window {u}..{v}: {msg}",
                        cd.word
                    )),
                };
                // (d) the window pair comes from consecutive occurrences of
                // the inner letter.
                let (tu, tv) = (arc.tiles[u], arc.tiles[v]);
                if cd.word[tu] as i32 != inner_letter || cd.word[tv] as i32 != inner_letter {
                    return fail(format!("window pair is not two E{inner_letter} tiles"));
                }
                let (lo, hi) = (tu.min(tv), tu.max(tv));
                if (lo + 1..hi).any(|t| cd.word[t] as i32 == inner_letter) {
                    return fail("window occurrences are not consecutive".into());
                }
                // (c1) the verticals between share a direction and carry
                // exactly one blob of the expected kind.
                let between = &arc.labels[u + 1..v];
                if between.is_empty() {
                    return fail("no vertical between the window pair".into());
                }
                let p = between[0];
                if between.iter().any(|&c| c != p) {
                    return fail("mixed directions inside the window".into());
                }
                let blobs: Vec<Blob> = arc.blobs[u + 1..v].iter().flatten().copied().collect();
                if blobs != vec![blob] {
                    return fail(format!(
                        "expected exactly one {blob} blob inside the window, found {blobs:?}"
                    ));
                }
                let q = if p == 'S' { 'N' } else { 'S' };
                // (a)/(b)/(c2): walk outwards over verticals labeled q to the
                // enclosing horizontals.
                let mut x1 = None;
                for k in (0..u).rev() {
                    if arc.horizontals[k] {
                        x1 = Some(k);
                        break;
                    }
                    if arc.labels[k] != q {
                        return fail(format!("flanking vertical before the window is not {q}"));
                    }
                }
                let Some(x1) = x1 else {
                    return fail("no enclosing horizontal before the window".into());
                };
                let mut xk = None;
                for k in v + 1..len {
                    if arc.horizontals[k] {
                        xk = Some(k);
                        break;
                    }
                    if arc.labels[k] != q {
                        return fail(format!("flanking vertical after the window is not {q}"));
                    }
                }
                let Some(xk) = xk else {
                    return fail("no enclosing horizontal after the window".into());
                };
                if arc.labels[x1] != open || arc.labels[xk] != close {
                    return fail("enclosing horizontals run the wrong way".into());
                }
                // The enclosing pair is the cup and cap of one occurrence of
                // the outer letter.
                let (t1, tk) = (arc.tiles[x1], arc.tiles[xk]);
                if t1 != tk || cd.word[t1] as i32 != outer_letter {
                    return fail(format!(
                        "enclosing pair is not a single E{outer_letter} occurrence"
                    ));
                }
            }
        }
    }
    ReversalReport {
        arcs: cd.arcs.len(),
        windows,
        pass: true,
        witness: None,
    }
}
