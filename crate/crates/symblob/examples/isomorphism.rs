//! The flagship computation: certify that the presented algebra and the
//! diagram algebra are one and the same, clause by clause.
//!
//! Run with: cargo run --release --example isomorphism

use symblob::{verify_isomorphism, verify_negative_control, ParameterSet, Rat};

fn main() {
    let params: ParameterSet<Rat> = ParameterSet::default_point();
    for n in 2..=4u16 {
        let cert = verify_isomorphism(n, &params, true).unwrap();
        println!(
            "n = {n}: dims (b' = {}, b = {}, presented = {}), pass = {}",
            cert.dim_bprime,
            cert.dim_symplectic,
            cert.dim_presented,
            cert.pass()
        );
        for clause in &cert.clauses {
            println!(
                "    {:>20}: {}",
                clause.name,
                if clause.pass { "ok" } else { "FAIL" }
            );
        }
    }

    println!("\ncertificate document for n = 2:");
    let cert = verify_isomorphism(2, &params, false).unwrap();
    println!("{}", serde_json::to_string_pretty(&cert.to_json()).unwrap());

    println!("negative control: perturb kappaLR on the diagram side only");
    let perturbed = Rat::new(14, 1);
    let cert = verify_negative_control(2, &params, &perturbed).unwrap();
    let failing = cert.clauses.iter().find(|c| !c.pass).unwrap();
    println!(
        "  quotient collapses to dimension {} and clause `{}` reports:\n  {}",
        cert.dim_symplectic,
        failing.name,
        failing.witness.as_deref().unwrap_or("-")
    );
}
