//! Enumerating diagram bases.
//!
//! Plain planar matchings grow like the Catalan numbers; one-boundary blob
//! diagrams like the central binomials; the two-boundary set is the basis of
//! the decorated-diagram algebra before the quotient.
//!
//! Run with: cargo run --example bases

use symblob::{enumerate_basis, Flavor};

fn main() {
    println!(
        "{:>4} {:>8} {:>8} {:>8} {:>8}",
        "n", "tl", "blob-l", "blob-r", "lrblob"
    );
    for n in 1..=5u16 {
        let counts: Vec<usize> = [Flavor::Tl, Flavor::BlobL, Flavor::BlobR, Flavor::LrBlob]
            .iter()
            .map(|&f| enumerate_basis(n, f).unwrap().len())
            .collect();
        println!(
            "{:>4} {:>8} {:>8} {:>8} {:>8}",
            n, counts[0], counts[1], counts[2], counts[3]
        );
    }

    println!("\nthe five decorated diagrams at n = 1:");
    for d in enumerate_basis(1, Flavor::LrBlob).unwrap() {
        println!("  {}", d.encode());
    }

    println!("\ntwo-boundary basis at n = 2 (canonical order):");
    for d in enumerate_basis(2, Flavor::LrBlob).unwrap() {
        println!("  {}", d.encode());
    }
}
