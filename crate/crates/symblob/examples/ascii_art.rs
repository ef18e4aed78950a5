//! Rendering stacks and diagrams as text (and SVG).
//!
//! Run with: cargo run --example ascii_art

use symblob::render::{render_diagram, render_word, Format};
use symblob::{generator_diagram, Diagram, TraceWord};

fn main() {
    println!("the generator with a filled blob on line 1 (n = 3):");
    let w = TraceWord::parse(3, "E0").unwrap();
    println!("{}\n", render_word(&w, Format::Ascii).unwrap());

    println!("a cup-cap generator (n = 3):");
    let w = TraceWord::parse(3, "E1").unwrap();
    println!("{}\n", render_word(&w, Format::Ascii).unwrap());

    println!("the five-tile stack of E1 E2 E4 E0 E1 (n = 5):");
    let w = TraceWord::parse(5, "E1 E2 E4 E0 E1").unwrap();
    println!("{}\n", render_word(&w, Format::Ascii).unwrap());

    println!("a decorated basis diagram at n = 2:");
    let d = Diagram::decode("n2|1-2:LR 2'-1':RL").unwrap();
    println!("{}\n", render_diagram(&d, Format::Ascii).unwrap());

    let e1 = generator_diagram(1, 2).unwrap();
    let svg = render_diagram(&e1, Format::Svg).unwrap();
    println!(
        "SVG output is one self-contained document ({} bytes for e1).",
        svg.len()
    );
}
