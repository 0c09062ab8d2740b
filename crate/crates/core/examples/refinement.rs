// Turning uncertainty about likelihoods into extra hypotheses, and
// detecting when that is impossible.

use uncertain_evidence::{check_uncorrelated, fixtures, refine, verify_refinement, Error};

fn main() {
    let coins = fixtures::alice_coins();
    let r = refine(&coins).unwrap();
    let names: Vec<String> = r.refined().hypotheses().iter().map(|h| h.to_string()).collect();
    println!("refined hypotheses: {}", names.join(", "));
    assert_eq!(names, ["(A,1)", "(A,2)", "(B,1)"]);
    assert!(verify_refinement(r.refined(), &coins, r.surjection()).unwrap().is_valid());

    let coordinated = fixtures::correlated_delta2();
    let check = check_uncorrelated(&coordinated);
    let witness = check.witness().unwrap();
    println!("coordinated coins are correlated; missing combination:");
    for (h, l) in coordinated.hypotheses().iter().zip(witness.likelihoods()) {
        let masses: Vec<String> = l.masses().iter().map(|v| v.to_string()).collect();
        println!("  {h}: {}", masses.join(" "));
    }
    assert_eq!(refine(&coordinated).unwrap_err(), Error::CorrelatedSpace);
}
