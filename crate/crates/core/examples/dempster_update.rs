// Updating a prior with Dempster's rule, and the same posterior obtained
// by conditioning the joint distribution.

use uncertain_evidence::{
    bayes_posterior, dempster_combine, fixtures, q, update_direct, update_prior, weight_of_evidence, Distribution,
    JointDistribution,
};

fn main() {
    let coins = fixtures::two_coins();
    let w = weight_of_evidence(&coins);
    let prior = Distribution::new(vec![q(1, 100), q(99, 100)]).unwrap();

    let post = update_prior(&prior, &w, 0).unwrap();
    println!("P(A) = 1/100, after heads: {}", post.mass(0));

    let joint = JointDistribution::induced(&coins, &prior);
    let conditioned = bayes_posterior(&joint, 0, &[0]).unwrap();
    let direct = update_direct(&coins, &prior, 0, &[0]).unwrap();
    println!("conditioning gives {conditioned}, the direct sum gives {direct}");
    assert_eq!(post.mass(0), &conditioned);
    assert_eq!(conditioned, direct);

    // Treating A as a single coin with weight 7/9 on heads.
    let naive = Distribution::new(vec![q(7, 9), q(2, 9)]).unwrap();
    let naive_post = dempster_combine(&prior, &naive).unwrap();
    println!("with weight 7/9 for A: {}", naive_post.mass(0));
    assert_eq!(*naive_post.mass(0), q(7, 205));

    let mut after = prior.clone();
    for _ in 0..3 {
        after = update_prior(&after, &w, 0).unwrap();
    }
    println!("after three heads: {}", after.mass(0));
}
