//! Word combinatorics: descents, commuting-block normal forms, rewriting to
//! reduced monomials, and the reducibility classification.
//!
//! Run with: cargo run --example normal_forms

use symblob::{ParameterSet, Rat, Reducibility, RuleSet, TraceWord};

fn main() {
    let params: ParameterSet<Rat> = ParameterSet::default_point();

    let w = TraceWord::parse(5, "E1 E2 E4 E0 E1").unwrap();
    println!("word: {w}");
    println!("  left descent set:  {}", w.left_descent());
    println!("  right descent set: {}", w.right_descent());
    println!("  block normal form: {}", w.cartier_foata());
    println!("  canonical representative: {}", w.canonical());

    println!("\nrewriting at n = 2:");
    let rules = RuleSet::new(2, &params).unwrap();
    for text in [
        "E1 E0 E1",
        "E1 E2 E1",
        "E0 E0",
        "E1 E0 E2 E1",
        "E0 E2 E1 E0 E2",
        "E0 E1 E0",
    ] {
        let w = TraceWord::parse(2, text).unwrap();
        let (scalar, reduced) = rules.rewrite(&w);
        let status = if reduced.len() == w.len() {
            "reduced"
        } else {
            "shortened"
        };
        println!("  {text:>16}  ->  {scalar} · {reduced}   [{status}]");
    }

    println!("\na hidden match found through commutation at n = 4:");
    let rules4 = RuleSet::new(4, &params).unwrap();
    let w = TraceWord::parse(4, "E1 E2 E3 E1").unwrap();
    let (scalar, reduced) = rules4.rewrite(&w);
    println!("  {w}  ->  {scalar} · {reduced}");

    println!("\nreducibility classification at n = 2:");
    for text in ["E0 E1", "E1 E0", "E0 E2", "E1 E0 E2", "E0 E2 E1"] {
        let w = TraceWord::parse(2, text).unwrap();
        let class = rules.reducibility(&w).unwrap();
        let shown = match class {
            Reducibility::LeftVia(s) => format!("left reducible via E{s}"),
            Reducibility::RightVia(s) => format!("right reducible via E{s}"),
            Reducibility::CommutingProduct => "irreducible: commuting product".into(),
            Reducibility::IrreducibleIJ => "irreducible: I J".into(),
            Reducibility::IrreducibleJI => "irreducible: J I".into(),
        };
        println!("  {text:>10}  ->  {shown}");
    }
}
