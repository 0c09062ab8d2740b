// Brute-force cross-checks: corner extensions of a prior on the refined
// model reproduce the generalized bounds.

use uncertain_evidence::oracle::{
    bound_formula_check, enumerate_corner_extensions, refined_bound_oracle, OracleConfig,
};
use uncertain_evidence::{fixtures, posterior_bounds, q, refine, Distribution};

fn main() {
    let coins = fixtures::alice_coins();
    let prior = Distribution::new(vec![q(1, 100), q(99, 100)]).unwrap();
    let r = refine(&coins).unwrap();

    let corners = enumerate_corner_extensions(&prior, r.surjection()).unwrap();
    for atom in &corners.atoms {
        let masses: Vec<String> = atom.masses().iter().map(|v| v.to_string()).collect();
        println!("corner: {}", masses.join(" "));
    }

    let oracle = refined_bound_oracle(&r, &prior, 0, 0, &OracleConfig::default()).unwrap();
    let direct = posterior_bounds(&coins, &prior, 0, 0).unwrap();
    println!(
        "A after heads: refined [{}, {}], generalized [{}, {}], {} sampled extensions, {} escapes",
        oracle.bounds.lower,
        oracle.bounds.upper,
        direct.lower,
        direct.upper,
        oracle.samples,
        oracle.escapes.len()
    );
    assert_eq!(oracle.bounds, direct);

    let report = bound_formula_check(&fixtures::three_way_strictness(), &Distribution::uniform(3)).unwrap();
    println!("three hypotheses: {} strict bound pairs", report.strict_entries().count());
    assert!(report.passed());
}
