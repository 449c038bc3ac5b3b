//! Certificates ruling out small symmetric subspace extensions of the
//! (2k+1)-matching polytope, plus the generic Farkas check.

use efforge::symcert::{build_certificate, class_surrogate, farkas_check, FarkasOutcome};

fn main() -> efforge::Result<()> {
    for k in 1..=3 {
        let cert = build_certificate(k, 4 * k + 2)?;
        let lambdas: Vec<String> = cert.classes.iter().map(|c| format!("{}", c.lambda)).collect();
        println!(
            "k = {k}: λ = ({}), slack equation {}, {} patterns, verdict {}",
            lambdas.join(", "),
            cert.slack_equation,
            cert.patterns.len(),
            cert.verdict
        );
    }

    let (rows, slacks) = class_surrogate(1)?;
    match farkas_check(&rows, &slacks)? {
        FarkasOutcome::Certificate(l) => println!("LP certificate for k = 1: {l:?}"),
        FarkasOutcome::Infeasible => println!("no certificate"),
    }
    Ok(())
}
