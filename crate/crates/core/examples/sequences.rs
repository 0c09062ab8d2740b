// Combining several observations, with one mapping for the whole
// sequence or a fresh choice at every toss.

use uncertain_evidence::{
    fixtures, generalized_sequence_weight, q, sequence_weight, CombinationSemantics, Distribution, ObservationSequence,
    Rational,
};

fn main() {
    let coins = fixtures::two_coins();
    let hundred = ObservationSequence::new(vec![0; 100], 2).unwrap();
    let w = sequence_weight(&coins, &hundred).unwrap();
    let two = Rational::from_integer(2).pow(100);
    assert_eq!(*w.mass(0), two.clone() / (two + Rational::one()));
    println!("100 heads: weight of A = {}", w.mass(0));

    let g = fixtures::alice_coins();
    let hh = ObservationSequence::new(vec![0, 0], 2).unwrap();
    for sem in [CombinationSemantics::FixedMapping, CombinationSemantics::PerObservation] {
        let set = generalized_sequence_weight(&g, &hh, sem).unwrap();
        let rows: Vec<String> = set.members().iter().map(|d| format!("({}, {})", d.mass(0), d.mass(1))).collect();
        println!("{sem:?}: {}", rows.join(" "));
    }
    let fixed = generalized_sequence_weight(&g, &hh, CombinationSemantics::FixedMapping).unwrap();
    assert!(fixed.contains(&Distribution::new(vec![q(9, 13), q(4, 13)]).unwrap()));
}
