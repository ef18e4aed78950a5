//! Oriented arcs of a generator stack and their direction reversals.
//!
//! Run with: cargo run --example arc_labels

use symblob::iso::concrete::{check_reversal_structure, concrete, reversals, Orientation};
use symblob::TraceWord;

fn main() {
    let w = TraceWord::parse(5, "E1 E2 E4 E0 E1").unwrap();
    let cd = concrete(&w);
    println!(
        "stack of {w}: {} arcs, {} loops",
        cd.arcs.len(),
        cd.loops.len()
    );

    for i in 0..cd.arcs.len() {
        let fwd = cd.orient_and_label(i, Orientation::StartToEnd).unwrap();
        let (we, ew) = reversals(&fwd);
        let decorated = fwd.blobs.iter().filter(|b| b.is_some()).count();
        println!(
            "  arc {i}: {:>2} segments, labels {}, {we} west-east / {ew} east-west, {decorated} blob(s)",
            fwd.labels.len(),
            fwd.label_string(),
        );
    }

    let decorated = (0..cd.arcs.len())
        .find(|&i| {
            cd.arcs[i]
                .steps
                .iter()
                .any(|&(s, _)| cd.segments[s].blob.is_some())
        })
        .unwrap();
    let fwd = cd
        .orient_and_label(decorated, Orientation::StartToEnd)
        .unwrap();
    let bwd = cd
        .orient_and_label(decorated, Orientation::EndToStart)
        .unwrap();
    println!("\nthe decorated arc under both orientations:");
    println!("  {}", fwd.label_string());
    println!("  {}", bwd.label_string());
    println!("(the blob sits on the sixth letter one way and the eighth the other)");

    let report = check_reversal_structure(&cd);
    println!(
        "\nreversal structure: {} window(s) verified, pass = {}",
        report.windows, report.pass
    );
}
