//! ASCII and SVG rendering of generator stacks and diagrams. Left blobs are
//! drawn filled (`*`, black circles), right blobs open (`o`, white circles).

use std::str::FromStr;

use crate::diagram::{Blob, Diagram};
use crate::error::{Error, Result};
use crate::iso::concrete::{concrete, SegKind};
use crate::presented::TraceWord;

pub const MAX_TILES: usize = 40;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Ascii,
    Svg,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s.to_ascii_lowercase().as_str() {
            "ascii" | "txt" => Ok(Format::Ascii),
            "svg" => Ok(Format::Svg),
            other => Err(Error::Parse(format!("unknown format `{other}`"))),
        }
    }
}

fn blob_char(blob: Blob) -> char {
    match blob {
        Blob::L => '*',
        Blob::R => 'o',
    }
}

/// Renders the tiled stack of a word, one tile per letter, top to bottom.
pub fn render_word(w: &TraceWord, format: Format) -> Result<String> {
    if w.len() > MAX_TILES {
        return Err(Error::RenderTooLarge(format!(
            "{} tiles exceed the limit of {MAX_TILES}",
            w.len()
        )));
    }
    match format {
        Format::Ascii => Ok(word_ascii(w)),
        Format::Svg => Ok(word_svg(w)),
    }
}

fn word_ascii(w: &TraceWord) -> String {
    let n = w.n() as usize;
    let width = 4 * n - 3;
    let col_x = |c: usize| 4 * (c - 1);
    let mut lines: Vec<String> = Vec::new();
    let boundary = {
        let mut row = vec![' '; width];
        for c in 1..=n {
            row[col_x(c)] = '.';
        }
        row.iter().collect::<String>()
    };
    lines.push(boundary.clone());
    for &letter in w.letters() {
        let ell = letter as usize;
        let mut upper = vec![' '; width];
        let mut lower = vec![' '; width];
        for c in 1..=n {
            if letter != 0 && letter as u16 != w.n() && (c == ell || c == ell + 1) {
                continue;
            }
            upper[col_x(c)] = '|';
            lower[col_x(c)] = '|';
        }
        if letter == 0 {
            upper[col_x(1)] = blob_char(Blob::L);
        } else if letter as u16 == w.n() {
            upper[col_x(n)] = blob_char(Blob::R);
        } else {
            // cup on the upper row, cap on the lower row
            let (x0, x1) = (col_x(ell), col_x(ell + 1));
            upper[x0] = '\\';
            for x in x0 + 1..x1 {
                upper[x] = '_';
            }
            upper[x1] = '/';
            lower[x0] = '/';
            for x in x0 + 1..x1 {
                lower[x] = '-';
            }
            lower[x1] = '\\';
        }
        lines.push(upper.iter().collect());
        lines.push(lower.iter().collect());
        lines.push(boundary.clone());
    }
    lines.join("\n")
}

fn word_svg(w: &TraceWord) -> String {
    let n = w.n() as usize;
    let cd = concrete(w);
    let unit = 40.0;
    let margin = 30.0;
    let x = |col: u16| margin + (col as f64 - 1.0) * unit;
    let y = |bd: usize| margin + bd as f64 * unit;
    let width = margin * 2.0 + unit * (n.max(1) - 1) as f64;
    let height = margin * 2.0 + unit * w.len() as f64;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    out.push_str("<g stroke=\"black\" stroke-width=\"2\" fill=\"none\">\n");
    for seg in &cd.segments {
        match seg.kind {
            SegKind::Vertical { col } => {
                out.push_str(&format!(
                    "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n",
                    x(col),
                    y(seg.tile),
                    y(seg.tile + 1)
                ));
            }
            SegKind::Cup { left } => {
                let (x0, x1, yy) = (x(left), x(left + 1), y(seg.tile));
                out.push_str(&format!(
                    "<path d=\"M {x0} {yy} Q {} {} {x1} {yy}\"/>\n",
                    (x0 + x1) / 2.0,
                    yy + unit * 0.8,
                ));
            }
            SegKind::Cap { left } => {
                let (x0, x1, yy) = (x(left), x(left + 1), y(seg.tile + 1));
                out.push_str(&format!(
                    "<path d=\"M {x0} {yy} Q {} {} {x1} {yy}\"/>\n",
                    (x0 + x1) / 2.0,
                    yy - unit * 0.8,
                ));
            }
        }
    }
    out.push_str("</g>\n");
    for seg in &cd.segments {
        if let (Some(blob), SegKind::Vertical { col }) = (seg.blob, seg.kind) {
            let cy = (y(seg.tile) + y(seg.tile + 1)) / 2.0;
            let fill = match blob {
                Blob::L => "black",
                Blob::R => "white",
            };
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{cy}\" r=\"6\" fill=\"{fill}\" stroke=\"black\" \
                 stroke-width=\"2\"/>\n",
                x(col)
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Renders a single diagram: points 1..n on top, 1'..n' on the bottom.
pub fn render_diagram(d: &Diagram, format: Format) -> Result<String> {
    match format {
        Format::Ascii => Ok(diagram_ascii(d)),
        Format::Svg => Ok(diagram_svg(d)),
    }
}

fn diagram_ascii(d: &Diagram) -> String {
    let n = d.n() as usize;
    let width = 4 * n - 3;
    let height = 2 * n + 1;
    let mut grid = vec![vec![' '; width]; height];
    let col_of = |pos: u16| -> usize {
        let p = pos as usize;
        if p < n {
            4 * p
        } else {
            4 * (2 * n - 1 - p)
        }
    };
    // Nesting depth of an edge: how many other edges enclose it.
    let depth =
        |a: u16, b: u16| -> usize { d.edges().iter().filter(|e| e.a < a && b < e.b).count() };
    for e in d.edges() {
        let top_edge = (e.b as usize) < n;
        let bottom_edge = (e.a as usize) >= n;
        let (xa, xb) = (col_of(e.a), col_of(e.b));
        let (x0, x1) = (xa.min(xb), xa.max(xb));
        if top_edge {
            let dep = 1 + depth(e.a, e.b);
            for r in 0..dep {
                grid[r][xa] = '|';
                grid[r][xb] = '|';
            }
            for x in x0 + 1..x1 {
                grid[dep][x] = '_';
            }
            grid[dep][x0] = '\\';
            grid[dep][x1] = '/';
        } else if bottom_edge {
            let dep = 1 + depth(e.a, e.b);
            for r in 0..dep {
                grid[height - 1 - r][xa] = '|';
                grid[height - 1 - r][xb] = '|';
            }
            grid[height - 1 - dep][x0] = '/';
            grid[height - 1 - dep][x1] = '\\';
            for x in x0 + 1..x1 {
                grid[height - 1 - dep][x] = '-';
            }
        } else {
            // propagating line: vertical to the middle, horizontal, vertical
            let mid = n;
            for r in 0..mid {
                grid[r][xa] = '|';
            }
            for r in mid + 1..height {
                grid[r][xb] = '|';
            }
            if xa == xb {
                grid[mid][xa] = '|';
            } else {
                for x in x0..=x1 {
                    grid[mid][x] = '-';
                }
                grid[mid][xa] = '+';
                grid[mid][xb] = '+';
            }
        }
        // decorations: first letter near the a-end, second near the b-end
        let letters = e.word.letters();
        if let Some(&first) = letters.first() {
            let (r, x) = if (e.a as usize) < n {
                (0, xa)
            } else {
                (height - 1, xa)
            };
            grid[r][x] = blob_char(first);
        }
        if letters.len() == 2 {
            let (r, x) = if (e.b as usize) < n {
                (0, xb)
            } else {
                (height - 1, xb)
            };
            grid[r][x] = blob_char(letters[1]);
        }
    }
    grid.into_iter()
        .map(|row| row.into_iter().collect::<String>())
        .collect::<Vec<_>>()
        .join("\n")
}

fn diagram_svg(d: &Diagram) -> String {
    let n = d.n() as usize;
    let unit = 40.0;
    let margin = 30.0;
    let height_units = 4.0;
    let x_of = |pos: u16| -> f64 {
        let p = pos as usize;
        let col = if p < n { p } else { 2 * n - 1 - p };
        margin + col as f64 * unit
    };
    let y_of = |pos: u16| -> f64 {
        if (pos as usize) < n {
            margin
        } else {
            margin + height_units * unit
        }
    };
    let width = margin * 2.0 + unit * (n.max(1) - 1) as f64;
    let height = margin * 2.0 + unit * height_units;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n<g stroke=\"black\" stroke-width=\"2\" fill=\"none\">\n"
    ));
    let mut blobs: Vec<(f64, f64, Blob)> = Vec::new();
    for e in d.edges() {
        let (xa, ya) = (x_of(e.a), y_of(e.a));
        let (xb, yb) = (x_of(e.b), y_of(e.b));
        out.push_str(&format!(
            "<path d=\"M {xa} {ya} C {xa} {}, {xb} {}, {xb} {yb}\"/>\n",
            ya + if ya < height / 2.0 {
                unit * 1.5
            } else {
                -unit * 1.5
            },
            yb + if yb < height / 2.0 {
                unit * 1.5
            } else {
                -unit * 1.5
            },
        ));
        let letters = e.word.letters();
        let t_values: &[f64] = match letters.len() {
            1 => &[0.5],
            2 => &[0.3, 0.7],
            _ => &[],
        };
        for (k, &blob) in letters.iter().enumerate() {
            let t = t_values[k];
            // Point on the cubic at parameter t (control points as above).
            let c0y = ya
                + if ya < height / 2.0 {
                    unit * 1.5
                } else {
                    -unit * 1.5
                };
            let c1y = yb
                + if yb < height / 2.0 {
                    unit * 1.5
                } else {
                    -unit * 1.5
                };
            let mt = 1.0 - t;
            let px =
                mt * mt * mt * xa + 3.0 * mt * mt * t * xa + 3.0 * mt * t * t * xb + t * t * t * xb;
            let py = mt * mt * mt * ya
                + 3.0 * mt * mt * t * c0y
                + 3.0 * mt * t * t * c1y
                + t * t * t * yb;
            blobs.push((px, py, blob));
        }
    }
    out.push_str("</g>\n");
    for (cx, cy, blob) in blobs {
        let fill = match blob {
            Blob::L => "black",
            Blob::R => "white",
        };
        out.push_str(&format!(
            "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"6\" fill=\"{fill}\" stroke=\"black\" \
             stroke-width=\"2\"/>\n"
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::generator_diagram;

    #[test]
    fn cup_cap_tile_block() {
        let w = TraceWord::parse(2, "E1").unwrap();
        let art = render_word(&w, Format::Ascii).unwrap();
        assert!(art.contains("\\___/"));
        assert!(art.contains("/---\\"));
    }

    #[test]
    fn left_generator_has_filled_blob_on_line_one() {
        let w = TraceWord::parse(3, "E0").unwrap();
        let art = render_word(&w, Format::Ascii).unwrap();
        let blob_line = art.lines().nth(1).unwrap();
        assert!(blob_line.starts_with('*'));
        assert_eq!(blob_line.matches('|').count(), 2);
    }

    #[test]
    fn five_tile_stack_svg() {
        let w = TraceWord::parse(5, "E1 E2 E4 E0 E1").unwrap();
        let svg = render_word(&w, Format::Svg).unwrap();
        // one filled blob; four cup-cap tiles contribute eight arcs
        assert_eq!(svg.matches("fill=\"black\"").count(), 1);
        assert_eq!(svg.matches("<path").count(), 8);
        assert!(svg.starts_with("<svg"));
    }

    #[test]
    fn oversized_stack_is_rejected() {
        let letters = vec![1u8; MAX_TILES + 1];
        let w = TraceWord::new(2, letters).unwrap();
        assert!(matches!(
            render_word(&w, Format::Ascii),
            Err(Error::RenderTooLarge(_))
        ));
    }

    #[test]
    fn diagram_rendering_marks_decorations() {
        let d = generator_diagram(0, 2).unwrap();
        let art = render_diagram(&d, Format::Ascii).unwrap();
        assert!(art.contains('*'));
        let svg = render_diagram(&d, Format::Svg).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<path").count(), 2);
    }
}
