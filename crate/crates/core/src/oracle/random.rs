//! Seeded generators for small random instances.
//!
//! Entries are small integers normalized to rationals, so instances stay
//! cheap to compute with exactly. Generators retry until the result passes
//! validation (for instance, every observation possible under some mapping).

use rand::seq::SliceRandom;
use rand::Rng;

use crate::generalized::Selections;
use crate::model::{Distribution, EvidenceSpace, GeneralizedEvidenceSpace};
use crate::rational::Rational;

fn ids(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn normalize(counts: &[u32]) -> Vec<Rational> {
    let total: u32 = counts.iter().sum();
    counts.iter().map(|&c| Rational::new(i64::from(c), i64::from(total))).collect()
}

fn counts<R: Rng>(rng: &mut R, n: usize, max: u32, allow_zero: bool) -> Vec<u32> {
    let low = u32::from(!allow_zero);
    loop {
        let c: Vec<u32> = (0..n).map(|_| rng.random_range(low..=max)).collect();
        if c.iter().any(|&x| x > 0) {
            return c;
        }
    }
}

/// A distribution over `n` points with masses proportional to integers in
/// `0..=max` (or `1..=max` when `allow_zero` is false).
pub fn distribution<R: Rng>(rng: &mut R, n: usize, max: u32, allow_zero: bool) -> Distribution {
    Distribution::new(normalize(&counts(rng, n, max, allow_zero))).expect("normalized")
}

/// A likelihood vector over `n` observations; zeros allowed.
pub fn likelihood<R: Rng>(rng: &mut R, n: usize, max: u32) -> Vec<Rational> {
    normalize(&counts(rng, n, max, true))
}

/// An evidence space with `2..=max_h` hypotheses and `1..=max_o`
/// observations.
pub fn space<R: Rng>(rng: &mut R, max_h: usize, max_o: usize) -> EvidenceSpace {
    loop {
        let nh = rng.random_range(2..=max_h.max(2));
        let no = rng.random_range(1..=max_o.max(1));
        let rows = (0..nh).map(|_| likelihood(rng, no, 5)).collect();
        if let Ok(e) = EvidenceSpace::new(ids("h", nh), ids("o", no), rows) {
            return e;
        }
    }
}

/// Per-hypothesis likelihood sets of size `1..=max_factor` each.
pub fn factor_sets<R: Rng>(rng: &mut R, nh: usize, no: usize, max_factor: usize) -> Vec<Vec<Vec<Rational>>> {
    (0..nh)
        .map(|_| {
            let k = rng.random_range(1..=max_factor.max(1));
            let mut set: Vec<Vec<Rational>> = (0..k).map(|_| likelihood(rng, no, 4)).collect();
            set.sort();
            set.dedup();
            set
        })
        .collect()
}

fn product(factors: &[Vec<Vec<Rational>>]) -> Vec<Vec<Vec<Rational>>> {
    Selections::new(factors.iter().map(Vec::len).collect())
        .map(|sel| sel.iter().enumerate().map(|(h, &i)| factors[h][i].clone()).collect())
        .collect()
}

fn build(nh: usize, no: usize, delta: Vec<Vec<Vec<Rational>>>) -> Option<GeneralizedEvidenceSpace> {
    GeneralizedEvidenceSpace::new(ids("h", nh), ids("o", no), delta).ok()
}

/// An uncorrelated space: the full product of random per-hypothesis sets.
pub fn uncorrelated<R: Rng>(rng: &mut R, nh: usize, no: usize, max_factor: usize) -> GeneralizedEvidenceSpace {
    loop {
        let factors = factor_sets(rng, nh, no, max_factor);
        if let Some(g) = build(nh, no, product(&factors)) {
            return g;
        }
    }
}

/// A random non-empty subset of a random product family. Correlated or
/// not, depending on the draw.
pub fn product_subset<R: Rng>(rng: &mut R, nh: usize, no: usize, max_factor: usize) -> GeneralizedEvidenceSpace {
    loop {
        let factors = factor_sets(rng, nh, no, max_factor);
        let mut all = product(&factors);
        all.shuffle(rng);
        let keep = rng.random_range(1..=all.len());
        all.truncate(keep);
        if let Some(g) = build(nh, no, all) {
            return g;
        }
    }
}

/// A generalized space with `size` independently drawn mappings.
pub fn generalized<R: Rng>(rng: &mut R, nh: usize, no: usize, size: usize) -> GeneralizedEvidenceSpace {
    loop {
        let delta = (0..size.max(1)).map(|_| (0..nh).map(|_| likelihood(rng, no, 4)).collect()).collect();
        if let Some(g) = build(nh, no, delta) {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generalized::check_uncorrelated;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_deterministic() {
        let a = uncorrelated(&mut ChaCha8Rng::seed_from_u64(3), 2, 2, 3);
        let b = uncorrelated(&mut ChaCha8Rng::seed_from_u64(3), 2, 2, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn products_are_uncorrelated() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert!(check_uncorrelated(&uncorrelated(&mut rng, 3, 2, 2)).is_uncorrelated());
        }
    }

    #[test]
    fn subsets_hit_both_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let verdicts: Vec<bool> =
            (0..40).map(|_| check_uncorrelated(&product_subset(&mut rng, 2, 2, 3)).is_uncorrelated()).collect();
        assert!(verdicts.contains(&true) && verdicts.contains(&false));
    }

    #[test]
    fn priors_can_be_strictly_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = distribution(&mut rng, 4, 3, false);
        assert!(p.masses().iter().all(Rational::is_positive));
    }
}
