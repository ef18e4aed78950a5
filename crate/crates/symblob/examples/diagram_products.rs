//! Multiplying diagrams: concatenate, then straighten.
//!
//! Run with: cargo run --example diagram_products

use symblob::diagram::concat::{concatenate, multiply, straighten};
use symblob::{generator_diagram, Field, ParameterSet, Rat};

fn main() {
    let params: ParameterSet<Rat> = ParameterSet::default_point();
    let e = generator_diagram(0, 2).unwrap();
    let e1 = generator_diagram(1, 2).unwrap();
    let f = generator_diagram(2, 2).unwrap();
    println!("generators at n = 2:");
    println!("  e  = {}", e.encode());
    println!("  e1 = {}", e1.encode());
    println!("  f  = {}", f.encode());

    // A closed loop appears and is replaced by delta.
    let pseudo = concatenate(&e1, &e1).unwrap();
    println!(
        "\ne1 * e1 before straightening: {} loop(s)",
        pseudo.loops.len()
    );
    let (s, d) = straighten(&pseudo, &params);
    println!("e1 * e1 = {s} · {}", d.encode());

    // Two left blobs on one line contract to deltaL.
    let (s, d) = multiply(&e, &e, &params).unwrap();
    println!("e * e   = {s} · {}", d.encode());

    // The two-blob sandwich: a loop decorated with L and R forms and is
    // replaced by kappaLR.
    let (_, ef) = multiply(&e, &f, &params).unwrap();
    let (s1, x) = multiply(&e1, &ef, &params).unwrap();
    let (s2, d) = multiply(&x, &e1, &params).unwrap();
    println!("e1 * (e f) * e1 = {} · {}", s1.mul(&s2), d.encode());

    // Words ride along composite arcs in traversal order.
    let (_, d) = multiply(&ef, &e1, &params).unwrap();
    println!("(e f) * e1      = 1 · {}   (cup decorated LR)", d.encode());
}
