//! The coin and three-hypothesis instances used throughout the docs, tests
//! and examples. The JSON files under `fixtures/` describe the same spaces.

use crate::model::{EvidenceSpace, GeneralizedEvidenceSpace};
use crate::rational::{q, Rational};

fn coin(heads: Rational) -> Vec<Rational> {
    let tails = Rational::one() - &heads;
    vec![heads, tails]
}

/// Alice's double-headed coin (A) against Bob's fair coin (B).
pub fn two_coins() -> EvidenceSpace {
    EvidenceSpace::new(["A", "B"], ["heads", "tails"], vec![coin(q(1, 1)), coin(q(1, 2))]).expect("valid space")
}

/// Alice's coin split into the double-headed (A1) and the 3/4-biased (A2)
/// coin, with Bob's fair coin (B).
pub fn refined_alice_coins() -> EvidenceSpace {
    EvidenceSpace::new(["A1", "A2", "B"], ["heads", "tails"], vec![coin(q(1, 1)), coin(q(3, 4)), coin(q(1, 2))])
        .expect("valid space")
}

/// Alice holds two coins and hands over one of them; Bob has a fair coin.
pub fn alice_coins() -> GeneralizedEvidenceSpace {
    GeneralizedEvidenceSpace::new(
        ["A", "B"],
        ["heads", "tails"],
        vec![vec![coin(q(1, 1)), coin(q(1, 2))], vec![coin(q(3, 4)), coin(q(1, 2))]],
    )
    .expect("valid space")
}

/// Three hypotheses, each free to use either of two likelihoods
/// (1/3 or 2/3 on X): all eight combinations.
pub fn three_way_strictness() -> GeneralizedEvidenceSpace {
    let low = vec![q(1, 3), q(2, 3)];
    let high = vec![q(2, 3), q(1, 3)];
    let mut delta = Vec::new();
    for mask in 0..8u32 {
        delta.push((0..3).map(|h| if mask & (1 << (2 - h)) == 0 { low.clone() } else { high.clone() }).collect());
    }
    GeneralizedEvidenceSpace::new(["D", "E", "F"], ["X", "Y"], delta).expect("valid space")
}

/// Alice picks one of two coins and Bob picks one of two, independently.
pub fn correlated_delta1() -> GeneralizedEvidenceSpace {
    let (m1, m2, m3, m4) = four_coins();
    GeneralizedEvidenceSpace::new(
        ["A", "B"],
        ["heads", "tails"],
        vec![vec![m1.clone(), m3.clone()], vec![m1, m4.clone()], vec![m2.clone(), m3], vec![m2, m4]],
    )
    .expect("valid space")
}

/// Alice and Bob coordinate: double-headed with fair, or biased with biased.
pub fn correlated_delta2() -> GeneralizedEvidenceSpace {
    let (m1, m2, m3, m4) = four_coins();
    GeneralizedEvidenceSpace::new(["A", "B"], ["heads", "tails"], vec![vec![m1, m3], vec![m2, m4]])
        .expect("valid space")
}

fn four_coins() -> (Vec<Rational>, Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    (coin(q(1, 1)), coin(q(3, 4)), coin(q(1, 2)), coin(q(1, 3)))
}
