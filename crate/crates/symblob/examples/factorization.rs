//! Every basis diagram factors into generators: look the reduced word up,
//! map it back, and land on the same diagram with scalar one.
//!
//! Run with: cargo run --example factorization

use symblob::{Context, Field, ParameterSet, Rat};

fn main() {
    let params: ParameterSet<Rat> = ParameterSet::default_point();
    let ctx = Context::build(3, &params).unwrap();
    println!("basis diagrams of the quotient at n = 3 and their words:");
    for d in ctx.quotient.reps.iter().take(12) {
        let word = ctx.factorize(d).unwrap();
        let (scalar, image) = ctx.phi(&word).unwrap();
        assert!(scalar.is_one());
        assert_eq!(&image, d);
        println!("  {:<28}  <-  {}", d.encode(), word);
    }
    println!(
        "  ... ({} in total, every round trip exact)",
        ctx.quotient.dim()
    );
}
