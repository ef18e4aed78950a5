//! The quotient that distinguishes the symplectic blob algebra from the plain
//! two-boundary diagram algebra, and the dimension computed along three
//! independent routes.
//!
//! Run with: cargo run --example quotient

use symblob::{
    default_cap, word_span_dimension, Diagram, ParameterSet, PresentedAlgebra, Rat,
    SymplecticQuotient,
};

fn main() {
    let params: ParameterSet<Rat> = ParameterSet::default_point();

    println!("{:>4} {:>8} {:>8} {:>8}", "n", "b'_n", "b_n", "ideal");
    for n in 2..=6u16 {
        let q = SymplecticQuotient::build(n, &params).unwrap();
        println!(
            "{:>4} {:>8} {:>8} {:>8}",
            n,
            q.dim_bprime(),
            q.dim(),
            q.ideal_rank()
        );
    }
    println!("(the ideal vanishes at odd sizes: the extra relation already");
    println!(" holds in the diagram algebra there)");

    // The one identification at n = 2.
    let q = SymplecticQuotient::build(2, &params).unwrap();
    let cupcap = Diagram::decode("n2|1-2:LR 2'-1':RL").unwrap();
    let (ratio, idx) = q.project(&cupcap).unwrap().unwrap();
    println!("\nat n = 2 the decorated cup-cap diagram is not a basis element:");
    println!(
        "  {}  =  {} · {}",
        cupcap.encode(),
        ratio,
        q.reps[idx as usize].encode()
    );

    // Three routes to the dimension.
    println!("\ndimension of the quotient at n = 2, three ways:");
    println!("  ideal quotient:      {}", q.dim());
    let presented = PresentedAlgebra::build(2, &params, default_cap(2)).unwrap();
    println!("  reduced classes:     {}", presented.dim());
    println!(
        "  word-span oracle:    {}",
        word_span_dimension(2, &params, 7).unwrap()
    );
}
