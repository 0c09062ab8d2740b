// Posterior sets and their bounds when a hypothesis has several candidate
// likelihoods, compared with the closed-form bounds.

use uncertain_evidence::{bound_formula, fixtures, posterior_set, q, Distribution, Side};

fn main() {
    let coins = fixtures::alice_coins();
    let prior = Distribution::new(vec![q(1, 100), q(99, 100)]).unwrap();
    let set = posterior_set(&coins, &prior, 0).unwrap();
    println!("posterior of A after heads, one value per coin A might hold:");
    for value in set.values_of(&[0]) {
        println!("  {value}");
    }
    let b = set.bounds_of(&[0]);
    println!("bounds [{}, {}]", b.lower, b.upper);
    assert_eq!((b.lower.clone(), b.upper.clone()), (q(3, 201), q(2, 101)));

    // With two hypotheses the closed form is exact.
    let upper = bound_formula(&coins, &prior, 0, 0, Side::Upper).unwrap();
    assert_eq!(upper, b.upper);

    // With three it can be strictly loose.
    let def = fixtures::three_way_strictness();
    let uniform = Distribution::uniform(3);
    let b = posterior_set(&def, &uniform, 0).unwrap().bounds_of(&[0]);
    let lo = bound_formula(&def, &uniform, 0, 0, Side::Lower).unwrap();
    let hi = bound_formula(&def, &uniform, 0, 0, Side::Upper).unwrap();
    println!("D after X: enumerated [{}, {}], closed form [{lo}, {hi}]", b.lower, b.upper);
    assert!(lo < b.lower && b.upper < hi);
}
