//! Enumeration of diagram bases: plain planar matchings, one-boundary blob
//! diagrams, and the full two-boundary set.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{edge_exposure, wall_layout_feasible, Diagram, ReducedWord};

/// Algebra flavors. The first four have enumerable diagram bases; the last
/// two are built by their own constructors (quotient, presentation).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flavor {
    Tl,
    BlobL,
    BlobR,
    LrBlob,
    Symplectic,
    Presented,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Tl => "tl",
            Flavor::BlobL => "blob-l",
            Flavor::BlobR => "blob-r",
            Flavor::LrBlob => "lrblob",
            Flavor::Symplectic => "symplectic",
            Flavor::Presented => "presented",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Flavor> {
        match s.to_ascii_lowercase().as_str() {
            "tl" => Ok(Flavor::Tl),
            "blob-l" | "blobl" => Ok(Flavor::BlobL),
            "blob-r" | "blobr" => Ok(Flavor::BlobR),
            "lrblob" | "lr-blob" => Ok(Flavor::LrBlob),
            "symplectic" => Ok(Flavor::Symplectic),
            "presented" => Ok(Flavor::Presented),
            other => Err(Error::Parse(format!("unknown flavor `{other}`"))),
        }
    }
}

/// All non-crossing perfect matchings of the positions in `points`
/// (assumed sorted). The first point pairs with a partner at odd distance and
/// the two sides recurse independently, so crossings never arise.
fn matchings_of(points: &[u16]) -> Vec<Vec<(u16, u16)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let p = points[0];
    let mut i = 1;
    while i < points.len() {
        let q = points[i];
        for inner in matchings_of(&points[1..i]) {
            for outer in matchings_of(&points[i + 1..]) {
                let mut m = Vec::with_capacity(points.len() / 2);
                m.push((p, q));
                m.extend(inner.iter().copied());
                m.extend(outer.iter().copied());
                out.push(m);
            }
        }
        i += 2;
    }
    out
}

/// Non-crossing perfect matchings of the 2n boundary positions.
pub fn noncrossing_matchings(n: u16) -> Vec<Vec<(u16, u16)>> {
    let points: Vec<u16> = (0..2 * n).collect();
    matchings_of(&points)
}

/// Enumerates the diagram basis of the requested flavor in canonical order
/// (fewest decorations first, then lexicographic on the encoding).
pub fn enumerate_basis(n: u16, flavor: Flavor) -> Result<Vec<Diagram>> {
    let allowed_words = |l_exposed: bool, r_exposed: bool| -> Vec<ReducedWord> {
        let mut words = vec![ReducedWord::Empty];
        match flavor {
            Flavor::Tl => {}
            Flavor::BlobL => {
                if l_exposed {
                    words.push(ReducedWord::L);
                }
            }
            Flavor::BlobR => {
                if r_exposed {
                    words.push(ReducedWord::R);
                }
            }
            Flavor::LrBlob => {
                if l_exposed {
                    words.push(ReducedWord::L);
                }
                if r_exposed {
                    words.push(ReducedWord::R);
                }
                if l_exposed && r_exposed {
                    words.push(ReducedWord::LR);
                    words.push(ReducedWord::RL);
                }
            }
            Flavor::Symplectic | Flavor::Presented => unreachable!(),
        }
        words
    };
    if matches!(flavor, Flavor::Symplectic | Flavor::Presented) {
        return Err(Error::FlavorNotEnumerable(flavor.name().into()));
    }

    let mut out = Vec::new();
    for matching in noncrossing_matchings(n) {
        let options: Vec<Vec<ReducedWord>> = (0..matching.len())
            .map(|i| {
                let exp = edge_exposure(n, &matching, i);
                allowed_words(exp.l_exposed, exp.r_exposed)
            })
            .collect();
        // Depth-first assignment with wall-layout pruning: a partial
        // assignment that already fails cannot be completed.
        let mut assignment: Vec<(u16, u16, ReducedWord)> = matching
            .iter()
            .map(|&(a, b)| (a, b, ReducedWord::Empty))
            .collect();
        fn assign(
            k: usize,
            n: u16,
            options: &[Vec<ReducedWord>],
            assignment: &mut Vec<(u16, u16, ReducedWord)>,
            out: &mut Vec<Diagram>,
        ) {
            if k == options.len() {
                let edges = assignment.clone();
                out.push(
                    Diagram::new(n, edges).expect("filtered assignment forms a valid diagram"),
                );
                return;
            }
            for &word in &options[k] {
                assignment[k].2 = word;
                let check: Vec<_> = assignment[..=k]
                    .iter()
                    .copied()
                    .chain(
                        assignment[k + 1..]
                            .iter()
                            .map(|&(a, b, _)| (a, b, ReducedWord::Empty)),
                    )
                    .collect();
                if word.is_empty() || wall_layout_feasible(n, &check) {
                    assign(k + 1, n, options, assignment, out);
                }
            }
            assignment[k].2 = ReducedWord::Empty;
        }
        assign(0, n, &options, &mut assignment, &mut out);
    }
    out.sort_by(|a, b| a.basis_key().cmp(&b.basis_key()));
    Ok(out)
}
