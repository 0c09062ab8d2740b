// Weight of evidence for the two-coin model, and upper/lower weights when
// one of the coins is uncertain.
//
// Run with `cargo run --example weights`.

use uncertain_evidence::{fixtures, q, upper_lower_weights, weight_of_evidence};

fn main() {
    let coins = fixtures::two_coins();
    let w = weight_of_evidence(&coins);
    println!("two coins: double-headed (A) and fair (B)");
    for (ob, id) in coins.observations().iter().enumerate() {
        println!("  {id:<6} A={:<4} B={}", w.get(ob, 0), w.get(ob, 1));
    }
    assert_eq!(*w.get(0, 0), q(2, 3));
    assert_eq!(*w.get(1, 1), q(1, 1));

    let refined = fixtures::refined_alice_coins();
    let w = weight_of_evidence(&refined);
    println!("three coins: A1, A2 (3/4 heads), B");
    for (ob, id) in refined.observations().iter().enumerate() {
        let row: Vec<String> = w.row(ob).masses().iter().map(|v| v.to_string()).collect();
        println!("  {id:<6} {}", row.join(" "));
    }

    let uncertain = fixtures::alice_coins();
    let t = upper_lower_weights(&uncertain);
    println!("A is one of two coins: weight of heads for A lies in [{}, {}]", t.lower.get(0, 0), t.upper.get(0, 0));
    assert_eq!((t.lower.get(0, 0), t.upper.get(0, 0)), (&q(3, 5), &q(2, 3)));
}
