//! Straightening decoration words and loops.
//!
//! Lines carry words of left (L) and right (R) blobs. Doubled letters and
//! alternating triples contract to scalars, so a reduced word has length at
//! most two; closed loops evaluate to scalars outright.
//!
//! Run with: cargo run --example straightening

use symblob::diagram::words::{loop_value, parse_letters, reduce_word};
use symblob::{ParameterSet, Rat};

fn main() {
    let params: ParameterSet<Rat> = ParameterSet::default_point();
    println!("parameter point:");
    for (name, value) in params.as_strings() {
        println!("  {name} = {value}");
    }

    println!("\nline words:");
    for text in ["LL", "RR", "LRL", "RLR", "RLRL", "LRLRLR", "LR"] {
        let letters = parse_letters(text).unwrap();
        let (scalar, reduced) = reduce_word(&letters, &params);
        println!("  {text:>8}  ->  {scalar} · {reduced}");
    }

    println!("\nloop words (cyclic):");
    for text in ["-", "L", "R", "LR", "LL", "LRLR", "LLR", "LLRR"] {
        let letters = if text == "-" {
            Vec::new()
        } else {
            parse_letters(text).unwrap()
        };
        let value = loop_value(&letters, &params);
        println!("  {text:>8}  ->  {value}");
    }
    println!("\nNote the cyclic word LLR: the doubled pair contracts first (deltaL),");
    println!("then the remaining LR winding evaluates to kappaLR: 3 * 13 = 39.");
}
