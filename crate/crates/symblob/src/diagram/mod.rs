//! Decorated planar diagrams.
//!
//! Boundary points are linearized in the order 1, ..., n, n', ..., 1' with the
//! cut at the west wall, so point i sits at position i-1 and point j' at
//! position 2n-j. Planarity, exposure and all interval tests are stated
//! against this order (and its rotation by n, which cuts at the east wall).

pub mod concat;
pub mod enumerate;
pub mod quotient;
pub mod words;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use words::{loop_value, reduce_word, Blob, ReducedWord};

/// One edge of a diagram: boundary positions `a < b` and the reduced
/// decoration word read along the edge starting from `a`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Edge {
    pub a: u16,
    pub b: u16,
    pub word: ReducedWord,
}

/// A canonical left-right blob diagram on n top and n bottom points.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Diagram {
    n: u16,
    edges: Vec<Edge>,
}

/// Exposure flags for one edge.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Exposure {
    pub l_exposed: bool,
    pub r_exposed: bool,
}

pub(crate) fn west_interval(n: u16, a: u16, b: u16) -> (u16, u16) {
    debug_assert!(a < b && b < 2 * n);
    (a, b)
}

pub(crate) fn east_interval(n: u16, a: u16, b: u16) -> (u16, u16) {
    let m = 2 * n;
    let ea = (a + n) % m;
    let eb = (b + n) % m;
    (ea.min(eb), ea.max(eb))
}

fn encloses(outer: (u16, u16), inner: (u16, u16)) -> bool {
    outer.0 < inner.0 && inner.1 < outer.1
}

fn crossing(x: (u16, u16), y: (u16, u16)) -> bool {
    (x.0 < y.0 && y.0 < x.1 && x.1 < y.1) || (y.0 < x.0 && x.0 < y.1 && y.1 < x.1)
}

/// Exposure of the edge `(a, b)` within the full edge set, by pure interval
/// tests: an edge can be deformed to touch a wall exactly when no other edge
/// strictly encloses it in the linearization cut at that wall.
pub(crate) fn edge_exposure(n: u16, edges: &[(u16, u16)], idx: usize) -> Exposure {
    let me_w = west_interval(n, edges[idx].0, edges[idx].1);
    let me_e = east_interval(n, edges[idx].0, edges[idx].1);
    let mut l_exposed = true;
    let mut r_exposed = true;
    for (j, &(a, b)) in edges.iter().enumerate() {
        if j == idx {
            continue;
        }
        if encloses(west_interval(n, a, b), me_w) {
            l_exposed = false;
        }
        if encloses(east_interval(n, a, b), me_e) {
            r_exposed = false;
        }
    }
    Exposure {
        l_exposed,
        r_exposed,
    }
}

/// Decides whether every left blob can touch the west wall and every right
/// blob the east wall simultaneously, without crossings.
///
/// Each blob becomes a fresh vertex on its wall segment and each decorated
/// edge the path through its blob vertices in word order; the check searches
/// the finitely many relative orders of blob vertices along each wall for one
/// making the resulting chord system non-crossing on the boundary circle.
pub(crate) fn wall_layout_feasible(n: u16, edges: &[(u16, u16, ReducedWord)]) -> bool {
    #[derive(Clone, Copy)]
    struct BlobRef {
        edge: usize,
        seq: usize,
    }

    let decorated: Vec<usize> = (0..edges.len())
        .filter(|&i| !edges[i].2.is_empty())
        .collect();
    if decorated.is_empty() {
        return true;
    }

    // Cyclic coordinates: top points, east blobs (top to bottom), bottom
    // points, west blobs (bottom to top, continuing towards point 1).
    let coords_ok = |placed: &[usize], west: &[BlobRef], east: &[BlobRef]| -> bool {
        let n = n as u32;
        let circle = 2 * n + west.len() as u32 + east.len() as u32;
        let coord_of_point = |p: u16| -> u32 {
            let p = p as u32;
            if p < n {
                p
            } else {
                n + east.len() as u32 + (p - n)
            }
        };
        let blob_coord = |edge: usize, seq: usize| -> u32 {
            if let Some(k) = west.iter().position(|b| b.edge == edge && b.seq == seq) {
                2 * n + east.len() as u32 + k as u32
            } else {
                let k = east
                    .iter()
                    .position(|b| b.edge == edge && b.seq == seq)
                    .expect("blob placed on one of the walls");
                n + k as u32
            }
        };
        let mut chords: Vec<(u32, u32)> = Vec::new();
        for (i, &(a, b, word)) in edges.iter().enumerate() {
            let is_placed = word.is_empty() || placed.contains(&i);
            if !is_placed {
                continue;
            }
            let mut path = vec![coord_of_point(a)];
            for (seq, _) in word.letters().iter().enumerate() {
                path.push(blob_coord(i, seq));
            }
            path.push(coord_of_point(b));
            for w in path.windows(2) {
                chords.push((w[0], w[1]));
            }
        }
        let in_arc = |p: u32, q: u32, x: u32| -> bool {
            // x strictly inside the arc from p to q going forward around the circle
            let d_end = (q + circle - p) % circle;
            let d_x = (x + circle - p) % circle;
            d_x > 0 && d_x < d_end
        };
        for i in 0..chords.len() {
            for j in i + 1..chords.len() {
                let (p, q) = chords[i];
                let (r, s) = chords[j];
                if p == r || p == s || q == r || q == s {
                    continue;
                }
                if in_arc(p, q, r) != in_arc(p, q, s) {
                    return false;
                }
            }
        }
        true
    };

    fn search(
        k: usize,
        decorated: &[usize],
        edges: &[(u16, u16, ReducedWord)],
        west: &mut Vec<BlobRef>,
        east: &mut Vec<BlobRef>,
        coords_ok: &dyn Fn(&[usize], &[BlobRef], &[BlobRef]) -> bool,
    ) -> bool {
        if k == decorated.len() {
            return true;
        }
        let edge = decorated[k];
        let letters = edges[edge].2.letters();
        // Choose an insertion slot for each blob of this edge, west for L and
        // east for R, then check the partial layout before going deeper.
        let slots: Vec<(usize, Blob)> = letters.iter().copied().enumerate().collect();
        fn insert_all(
            slots: &[(usize, Blob)],
            edge: usize,
            k: usize,
            decorated: &[usize],
            edges: &[(u16, u16, ReducedWord)],
            west: &mut Vec<BlobRef>,
            east: &mut Vec<BlobRef>,
            coords_ok: &dyn Fn(&[usize], &[BlobRef], &[BlobRef]) -> bool,
        ) -> bool {
            match slots.split_first() {
                None => {
                    if !coords_ok(&decorated[..=k], west, east) {
                        return false;
                    }
                    search(k + 1, decorated, edges, west, east, coords_ok)
                }
                Some((&(seq, blob), rest)) => {
                    let wall = match blob {
                        Blob::L => &mut *west,
                        Blob::R => &mut *east,
                    };
                    let len = wall.len();
                    for pos in 0..=len {
                        match blob {
                            Blob::L => west.insert(pos, BlobRef { edge, seq }),
                            Blob::R => east.insert(pos, BlobRef { edge, seq }),
                        }
                        if insert_all(rest, edge, k, decorated, edges, west, east, coords_ok) {
                            return true;
                        }
                        match blob {
                            Blob::L => west.remove(pos),
                            Blob::R => east.remove(pos),
                        };
                    }
                    false
                }
            }
        }
        insert_all(&slots, edge, k, decorated, edges, west, east, coords_ok)
    }

    let mut west = Vec::new();
    let mut east = Vec::new();
    search(0, &decorated, edges, &mut west, &mut east, &coords_ok)
}

impl Diagram {
    /// Builds and fully validates a diagram. Edge words are read from the
    /// first named endpoint; endpoints are normalized so the word is stored
    /// read from the smaller boundary position.
    pub fn new(n: u16, edges: Vec<(u16, u16, ReducedWord)>) -> Result<Diagram> {
        if n == 0 {
            return Err(Error::InvalidDiagram("n must be at least 1".into()));
        }
        let mut normalized: Vec<Edge> = Vec::with_capacity(edges.len());
        for (p, q, word) in edges {
            if p == q || p >= 2 * n || q >= 2 * n {
                return Err(Error::InvalidDiagram(format!(
                    "bad edge endpoints ({p}, {q})"
                )));
            }
            let edge = if p < q {
                Edge { a: p, b: q, word }
            } else {
                Edge {
                    a: q,
                    b: p,
                    word: word.reversed(),
                }
            };
            normalized.push(edge);
        }
        normalized.sort_unstable();
        let mut seen = vec![false; 2 * n as usize];
        for e in &normalized {
            for p in [e.a, e.b] {
                if seen[p as usize] {
                    return Err(Error::InvalidDiagram(format!("point {p} used twice")));
                }
                seen[p as usize] = true;
            }
        }
        if normalized.len() != n as usize || seen.iter().any(|s| !s) {
            return Err(Error::InvalidDiagram(
                "edges are not a perfect matching".into(),
            ));
        }
        let d = Diagram {
            n,
            edges: normalized,
        };
        d.validate_planarity()?;
        d.validate_decorations()?;
        Ok(d)
    }

    /// Fast constructor for internally produced diagrams; full validation is
    /// deferred to tests and debug builds.
    pub(crate) fn from_canonical_parts(n: u16, mut edges: Vec<Edge>) -> Diagram {
        edges.sort_unstable();
        let d = Diagram { n, edges };
        debug_assert!(
            d.validate_planarity().is_ok(),
            "non-planar internal diagram"
        );
        d
    }

    fn validate_planarity(&self) -> Result<()> {
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                let x = (self.edges[i].a, self.edges[i].b);
                let y = (self.edges[j].a, self.edges[j].b);
                if crossing(x, y) {
                    return Err(Error::InvalidDiagram(format!(
                        "edges {x:?} and {y:?} cross"
                    )));
                }
            }
        }
        Ok(())
    }

    fn validate_decorations(&self) -> Result<()> {
        let pairs: Vec<(u16, u16)> = self.edges.iter().map(|e| (e.a, e.b)).collect();
        for (i, e) in self.edges.iter().enumerate() {
            let exp = edge_exposure(self.n, &pairs, i);
            if e.word.contains(Blob::L) && !exp.l_exposed {
                return Err(Error::InvalidDiagram(format!(
                    "edge ({}, {}) carries a left blob but is not L-exposed",
                    e.a, e.b
                )));
            }
            if e.word.contains(Blob::R) && !exp.r_exposed {
                return Err(Error::InvalidDiagram(format!(
                    "edge ({}, {}) carries a right blob but is not R-exposed",
                    e.a, e.b
                )));
            }
        }
        let triples: Vec<(u16, u16, ReducedWord)> =
            self.edges.iter().map(|e| (e.a, e.b, e.word)).collect();
        if !wall_layout_feasible(self.n, &triples) {
            return Err(Error::InvalidDiagram(
                "blobs cannot touch their walls simultaneously".into(),
            ));
        }
        Ok(())
    }

    pub fn n(&self) -> u16 {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The identity diagram: every point i joined to i' by an undecorated line.
    pub fn identity(n: u16) -> Diagram {
        let edges = (0..n)
            .map(|i| Edge {
                a: i,
                b: 2 * n - 1 - i,
                word: ReducedWord::Empty,
            })
            .collect();
        Diagram { n, edges }
    }

    /// Exposure flags of an edge given by its boundary positions.
    pub fn exposure(&self, a: u16, b: u16) -> Result<Exposure> {
        let (lo, hi) = (a.min(b), a.max(b));
        let idx = self
            .edges
            .iter()
            .position(|e| e.a == lo && e.b == hi)
            .ok_or(Error::UnknownEdge(a, b))?;
        let pairs: Vec<(u16, u16)> = self.edges.iter().map(|e| (e.a, e.b)).collect();
        Ok(edge_exposure(self.n, &pairs, idx))
    }

    /// True when the decorated diagram admits a simultaneous wall layout.
    pub fn simultaneity_check(&self) -> bool {
        let triples: Vec<(u16, u16, ReducedWord)> =
            self.edges.iter().map(|e| (e.a, e.b, e.word)).collect();
        wall_layout_feasible(self.n, &triples)
    }

    /// Number of lines joining a top point to a bottom point.
    pub fn propagating_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| e.a < self.n && e.b >= self.n)
            .count()
    }

    /// Total number of decoration letters.
    pub fn decoration_count(&self) -> usize {
        self.edges.iter().map(|e| e.word.len()).sum()
    }

    /// The ordering key used for basis enumeration and for picking quotient
    /// representatives: fewest decorations first, then the canonical encoding.
    pub fn basis_key(&self) -> (usize, Vec<(u16, u16, ReducedWord)>) {
        (
            self.decoration_count(),
            self.edges.iter().map(|e| (e.a, e.b, e.word)).collect(),
        )
    }

    /// The word on the edge at boundary position `p`, read starting from `p`.
    pub fn word_at(&self, p: u16) -> Option<(u16, ReducedWord)> {
        for e in &self.edges {
            if e.a == p {
                return Some((e.b, e.word));
            }
            if e.b == p {
                return Some((e.a, e.word.reversed()));
            }
        }
        None
    }

    /// True when the first decoration met when entering the edge at point `p`
    /// is of the given kind.
    pub fn decorated_at(&self, p: u16, blob: Blob) -> bool {
        match self.word_at(p) {
            Some((_, word)) => word.letters().first() == Some(&blob),
            None => false,
        }
    }

    /// True when boundary positions `p` and `q` are joined by an undecorated edge.
    pub fn undecorated_edge_between(&self, p: u16, q: u16) -> bool {
        let (lo, hi) = (p.min(q), p.max(q));
        self.edges
            .iter()
            .any(|e| e.a == lo && e.b == hi && e.word.is_empty())
    }

    pub fn point_name(n: u16, pos: u16) -> String {
        if pos < n {
            format!("{}", pos + 1)
        } else {
            format!("{}'", 2 * n - pos)
        }
    }

    pub fn encode(&self) -> String {
        let body: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                format!(
                    "{}-{}:{}",
                    Diagram::point_name(self.n, e.a),
                    Diagram::point_name(self.n, e.b),
                    e.word
                )
            })
            .collect();
        format!("n{}|{}", self.n, body.join(" "))
    }

    pub fn decode(text: &str) -> Result<Diagram> {
        let (head, body) = text
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("bad diagram encoding `{text}`")))?;
        let n: u16 = head
            .strip_prefix('n')
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad diagram size in `{text}`")))?;
        let parse_point = |token: &str| -> Result<u16> {
            if let Some(v) = token.strip_suffix('\'') {
                let j: u16 = v
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point `{token}`")))?;
                Ok(2 * n - j)
            } else {
                let i: u16 = token
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point `{token}`")))?;
                Ok(i - 1)
            }
        };
        let mut edges = Vec::new();
        for item in body.split_whitespace() {
            let (pts, word) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad edge `{item}`")))?;
            let (p, q) = pts
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("bad edge `{item}`")))?;
            let letters = words::parse_letters(word)?;
            let word = ReducedWord::from_letters(&letters)
                .ok_or_else(|| Error::Parse(format!("unreduced word in `{item}`")))?;
            edges.push((parse_point(p)?, parse_point(q)?, word));
        }
        Diagram::new(n, edges)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

impl FromStr for Diagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Diagram> {
        Diagram::decode(s)
    }
}

/// The generator diagrams: index 0 maps to the left-blobbed identity shape,
/// indices 1..n to the cup-cap diagrams, index n to the right-blobbed
/// identity shape.
pub fn generator_diagram(g: usize, n: u16) -> Result<Diagram> {
    if g > n as usize {
        return Err(Error::GeneratorOutOfRange(g, n));
    }
    let m = 2 * n;
    if g == 0 || g == n as usize {
        let mut edges: Vec<Edge> = (0..n)
            .map(|i| Edge {
                a: i,
                b: m - 1 - i,
                word: ReducedWord::Empty,
            })
            .collect();
        if g == 0 {
            edges[0].word = ReducedWord::L;
        } else {
            edges[n as usize - 1].word = ReducedWord::R;
        }
        Ok(Diagram::from_canonical_parts(n, edges))
    } else {
        let g = g as u16;
        let mut edges = vec![
            Edge {
                a: g - 1,
                b: g,
                word: ReducedWord::Empty,
            },
            Edge {
                a: m - g - 1,
                b: m - g,
                word: ReducedWord::Empty,
            },
        ];
        for j in 1..=n {
            if j != g && j != g + 1 {
                edges.push(Edge {
                    a: j - 1,
                    b: m - j,
                    word: ReducedWord::Empty,
                });
            }
        }
        Ok(Diagram::from_canonical_parts(n, edges))
    }
}

/// A diagram-shaped object before straightening: edge words may be unreduced
/// and closed loops (with cyclic words) may be present.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PseudoDiagram {
    pub n: u16,
    /// Endpoints normalized `a < b`, word read from `a`, possibly unreduced.
    pub edges: Vec<(u16, u16, Vec<Blob>)>,
    /// Cyclic words in canonical rotation (least over rotations and reversal).
    pub loops: Vec<Vec<Blob>>,
}

impl PseudoDiagram {
    /// Lifts a diagram (no loops, reduced words).
    pub fn from_diagram(d: &Diagram) -> PseudoDiagram {
        PseudoDiagram {
            n: d.n(),
            edges: d
                .edges()
                .iter()
                .map(|e| (e.a, e.b, e.word.letters().to_vec()))
                .collect(),
            loops: Vec::new(),
        }
    }
}
