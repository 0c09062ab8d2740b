//! Brute-force verifiers.
//!
//! These routines recompute posteriors straight from likelihoods and priors
//! (`prior(h) mu(h)(ob)` normalized) instead of going through weights of
//! evidence and Dempster's rule, so agreement with the main engine is a
//! meaningful check. They back the test suites and the `verify` command.

pub mod random;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{guarded_product, Error, Result};
use crate::evidence::{bayes_posterior, update_prior, weight_of_evidence, JointDistribution};
use crate::generalized::{
    bound_formula, check_uncorrelated, refine, upper_lower_from_likelihoods, upper_lower_weights, Bounds, Refinement,
    Selections, Side, WeightBounds,
};
use crate::model::{Distribution, EvidenceSpace, GeneralizedEvidenceSpace, LikelihoodMapping};
use crate::rational::Rational;

/// Sampling parameters for the interior-extension safety net.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub samples: usize,
    pub seed: u64,
    /// Block masses are split on multiples of `1 / grid`.
    pub grid: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { samples: 1000, seed: 42, grid: 1000 }
    }
}

/// The corner extensions of a prior to a refined hypothesis set: each
/// coarse hypothesis puts all of its mass on a single fine hypothesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionFamily {
    pub base_prior: Distribution,
    pub surjection: Vec<usize>,
    pub atoms: Vec<Distribution>,
}

fn blocks_of(surjection: &[usize], num_coarse: usize) -> Result<Vec<Vec<usize>>> {
    if let Some(&bad) = surjection.iter().find(|&&t| t >= num_coarse) {
        return Err(Error::InvalidSurjection(format!("target #{bad} out of range")));
    }
    let blocks: Vec<Vec<usize>> =
        (0..num_coarse).map(|h| (0..surjection.len()).filter(|&k| surjection[k] == h).collect()).collect();
    if let Some(h) = blocks.iter().position(Vec::is_empty) {
        return Err(Error::InvalidSurjection(format!("coarse hypothesis #{h} has no preimage")));
    }
    Ok(blocks)
}

/// Enumerates all corner extensions; there are `prod_h |g^-1(h)|` of them.
pub fn enumerate_corner_extensions(prior: &Distribution, surjection: &[usize]) -> Result<ExtensionFamily> {
    let blocks = blocks_of(surjection, prior.len())?;
    guarded_product("corner extensions", blocks.iter().map(Vec::len))?;
    let atoms = Selections::new(blocks.iter().map(Vec::len).collect())
        .map(|sel| {
            let mut masses = vec![Rational::zero(); surjection.len()];
            for (h, &i) in sel.iter().enumerate() {
                masses[blocks[h][i]] = prior.mass(h).clone();
            }
            Distribution::new(masses).expect("extension of a distribution")
        })
        .collect();
    Ok(ExtensionFamily { base_prior: prior.clone(), surjection: surjection.to_vec(), atoms })
}

/// Grid counts splitting each block: for fine hypothesis `k` in the block
/// of `h`, its share of `prior(h)` is `shares[k] / grid`.
fn block_shares<R: Rng>(rng: &mut R, blocks: &[Vec<usize>], num_fine: usize, grid: u32) -> Vec<u32> {
    let mut shares = vec![0; num_fine];
    for block in blocks {
        let mut cuts: Vec<u32> = (0..block.len() - 1).map(|_| rng.random_range(0..=grid)).collect();
        cuts.push(0);
        cuts.push(grid);
        cuts.sort_unstable();
        for (k, &fine) in block.iter().enumerate() {
            shares[fine] = cuts[k + 1] - cuts[k];
        }
    }
    shares
}

/// A random extension: each coarse mass is split across its block on a grid
/// of `1 / grid`.
pub fn random_extension<R: Rng>(
    rng: &mut R,
    prior: &Distribution,
    blocks: &[Vec<usize>],
    num_fine: usize,
    grid: u32,
) -> Distribution {
    let shares = block_shares(rng, blocks, num_fine, grid);
    let mut masses = vec![Rational::zero(); num_fine];
    for (h, block) in blocks.iter().enumerate() {
        for &fine in block {
            masses[fine] = prior.mass(h) * &Rational::new(shares[fine], grid);
        }
    }
    Distribution::new(masses).expect("extension of a distribution")
}

/// `sum_{h in block} p(h) mu(h)(ob) / sum_h p(h) mu(h)(ob)`, or `None` when
/// the denominator vanishes.
fn posterior_mass(mapping: &LikelihoodMapping, prior: &Distribution, ob: usize, block: &[usize]) -> Option<Rational> {
    let joint: Vec<Rational> = (0..prior.len()).map(|h| prior.mass(h) * mapping.prob(h, ob)).collect();
    let total: Rational = joint.iter().sum();
    if total.is_zero() {
        return None;
    }
    let part: Rational = block.iter().map(|&h| &joint[h]).sum();
    Some(part / total)
}

/// Posterior of a target block as a function of the grid shares of a random
/// extension.
///
/// With shares n_k the posterior is sum_T c_k n_k / sum_k c_k n_k, where
/// c_k = prior(g(k)) mu(k)(ob). Scaling every c_k by a common denominator
/// keeps the per-sample work in integers.
struct ScaledPosterior {
    scaled: Vec<BigInt>,
    in_target: Vec<bool>,
}

impl ScaledPosterior {
    fn new(refinement: &Refinement, prior: &Distribution, ob: usize, target: &[usize]) -> Self {
        let mapping = refinement.refined().mapping();
        let num_fine = refinement.refined().hypotheses().len();
        let coeffs: Vec<Rational> =
            (0..num_fine).map(|k| prior.mass(refinement.surjection()[k]) * mapping.prob(k, ob)).collect();
        let common: BigInt = coeffs.iter().map(|c| c.denom().clone()).product();
        let scaled = coeffs.iter().map(|c| c.numer() * (&common / c.denom())).collect();
        let in_target = (0..num_fine).map(|k| target.contains(&k)).collect();
        ScaledPosterior { scaled, in_target }
    }

    fn at(&self, shares: &[u32]) -> Option<Rational> {
        let mut part = BigInt::from(0);
        let mut total = BigInt::from(0);
        for (k, c) in self.scaled.iter().enumerate() {
            let term = c * shares[k];
            if self.in_target[k] {
                part += &term;
            }
            total += term;
        }
        (total != BigInt::from(0)).then(|| Rational::new(part, total))
    }
}

fn extremes(values: impl IntoIterator<Item = Rational>) -> Option<Bounds> {
    let mut it = values.into_iter();
    let first = it.next()?;
    let (lower, upper) = it
        .fold((first.clone(), first), |(lo, hi), v| (if v < lo { v.clone() } else { lo }, if v > hi { v } else { hi }));
    Some(Bounds { lower, upper })
}

/// Result of [`refined_bound_oracle`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleBounds {
    /// Extremes over the corner extensions.
    pub bounds: Bounds,
    pub corners: usize,
    /// Random interior extensions drawn, and how many gave a defined
    /// posterior.
    pub samples: usize,
    pub defined_samples: usize,
    /// Sampled posterior values outside `bounds` (expected: none).
    pub escapes: Vec<Rational>,
}

/// Lower and upper posterior probability of the block over coarse
/// hypothesis `h`, taken over all priors on the refined space that extend
/// `prior`.
///
/// The extremes are computed exactly over the corner extensions; random
/// interior extensions are then checked against them.
pub fn refined_bound_oracle(
    refinement: &Refinement,
    prior: &Distribution,
    ob: usize,
    h: usize,
    config: &OracleConfig,
) -> Result<OracleBounds> {
    let refined = refinement.refined();
    let blocks = blocks_of(refinement.surjection(), prior.len())?;
    let family = enumerate_corner_extensions(prior, refinement.surjection())?;
    let mapping = refined.mapping();
    let target = &blocks[h];
    let bounds = extremes(family.atoms.iter().filter_map(|atom| posterior_mass(mapping, atom, ob, target)))
        .ok_or(Error::EmptyPosteriorSet)?;

    let scaled = ScaledPosterior::new(refinement, prior, ob, target);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut escapes = Vec::new();
    let mut defined_samples = 0;
    for _ in 0..config.samples {
        let shares = block_shares(&mut rng, &blocks, refined.hypotheses().len(), config.grid);
        let Some(v) = scaled.at(&shares) else { continue };
        defined_samples += 1;
        if v < bounds.lower || v > bounds.upper {
            escapes.push(v);
        }
    }
    Ok(OracleBounds { bounds, corners: family.atoms.len(), samples: config.samples, defined_samples, escapes })
}

/// Outcome of checking the correspondence between mappings and corner
/// extensions in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerCorrespondence {
    /// Mappings with no corner extension reproducing their posteriors.
    pub unmatched_mappings: Vec<usize>,
    /// Corner extensions with no mapping reproducing their posteriors.
    pub unmatched_corners: Vec<usize>,
}

impl CornerCorrespondence {
    pub fn holds(&self) -> bool {
        self.unmatched_mappings.is_empty() && self.unmatched_corners.is_empty()
    }
}

/// For a refinement of `g`, pairs every mapping of `g` with a corner
/// extension giving the same posterior of every coarse hypothesis for every
/// observation, and vice versa. Undefined posteriors must match as
/// undefined.
pub fn corner_correspondence(
    g: &GeneralizedEvidenceSpace,
    refinement: &Refinement,
    prior: &Distribution,
) -> Result<CornerCorrespondence> {
    let blocks = blocks_of(refinement.surjection(), prior.len())?;
    let family = enumerate_corner_extensions(prior, refinement.surjection())?;
    let singletons: Vec<Vec<usize>> = (0..prior.len()).map(|h| vec![h]).collect();
    let profile = |mapping: &LikelihoodMapping, p: &Distribution, groups: &[Vec<usize>]| {
        (0..g.num_observations())
            .map(|ob| groups.iter().map(|grp| posterior_mass(mapping, p, ob, grp)).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    };
    let coarse: Vec<_> = g.delta().iter().map(|m| profile(m, prior, &singletons)).collect();
    let fine: Vec<_> = family.atoms.iter().map(|a| profile(refinement.refined().mapping(), a, &blocks)).collect();
    Ok(CornerCorrespondence {
        unmatched_mappings: (0..coarse.len()).filter(|&i| !fine.contains(&coarse[i])).collect(),
        unmatched_corners: (0..fine.len()).filter(|&i| !coarse.contains(&fine[i])).collect(),
    })
}

/// A disagreement between Dempster updating and Bayesian conditioning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditioningViolation {
    pub trial: usize,
    pub hypothesis: usize,
    pub observation: usize,
    pub dempster: Option<Rational>,
    pub bayes: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConditioningReport {
    pub trials: usize,
    /// Number of (hypothesis, observation) pairs compared.
    pub checks: usize,
    pub violations: Vec<ConditioningViolation>,
}

impl ConditioningReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares `prior (+) w(ob, .)` with conditioning the induced joint
/// `P(h, ob) = prior(h) mu_h(ob)` on `ob`, for every pair with
/// `P(ob) > 0`. Trial 0 uses `prior`; each further trial draws a fresh
/// prior from `seed`.
pub fn bayes_agreement_check(
    space: &EvidenceSpace,
    prior: &Distribution,
    trials: usize,
    seed: u64,
) -> ConditioningReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = weight_of_evidence(space);
    let nh = space.hypotheses().len();
    let mut report = ConditioningReport::default();
    for trial in 0..trials.max(1) {
        let p = if trial == 0 { prior.clone() } else { random::distribution(&mut rng, nh, 6, true) };
        report.trials += 1;
        let joint = JointDistribution::induced(space, &p);
        for ob in 0..space.observations().len() {
            if joint.observation_marginal(ob).is_zero() {
                // Conditioning is undefined; so must the combination be.
                if update_prior(&p, &w, ob).is_ok() {
                    report.violations.push(ConditioningViolation {
                        trial,
                        hypothesis: 0,
                        observation: ob,
                        dempster: update_prior(&p, &w, ob).ok().map(|d| d.mass(0).clone()),
                        bayes: None,
                    });
                }
                continue;
            }
            let post = update_prior(&p, &w, ob).ok();
            for h in 0..nh {
                report.checks += 1;
                let dempster = post.as_ref().map(|d| d.mass(h).clone());
                let bayes = bayes_posterior(&joint, ob, &[h]).ok();
                if dempster != bayes {
                    report.violations.push(ConditioningViolation {
                        trial,
                        hypothesis: h,
                        observation: ob,
                        dempster,
                        bayes,
                    });
                }
            }
        }
    }
    report
}

/// How an enumerated interval compares with the closed-form interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gap {
    /// Both sides equal.
    Tight,
    /// Formula strictly looser on at least one side, never tighter.
    Strict,
    /// Enumerated interval escapes the formula interval.
    Violated,
    /// Comparison not made; the reason is given.
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheckEntry {
    pub observation: usize,
    pub hypothesis: usize,
    pub enumerated: Option<Bounds>,
    pub formula: Option<Bounds>,
    pub gap: Gap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheckReport {
    pub uncorrelated: bool,
    pub two_hypotheses: bool,
    pub entries: Vec<BoundCheckEntry>,
    /// Brute-force weight extremes equal the per-cell table extremes.
    pub extremes_agree: bool,
    /// Likelihood-derived tables equal the brute-force weight extremes;
    /// `None` when the space is correlated.
    pub likelihood_tables_agree: Option<bool>,
}

impl BoundCheckReport {
    pub fn passed(&self) -> bool {
        let sandwich = self.entries.iter().all(|e| e.gap != Gap::Violated);
        let tight = !(self.uncorrelated && self.two_hypotheses) || self.entries.iter().all(|e| e.gap != Gap::Strict);
        sandwich && tight && self.extremes_agree && self.likelihood_tables_agree.unwrap_or(true)
    }

    pub fn strict_entries(&self) -> impl Iterator<Item = &BoundCheckEntry> {
        self.entries.iter().filter(|e| e.gap == Gap::Strict)
    }
}

/// Brute-force weight extremes: for every mapping compute
/// `mu(h)(ob) / sum_h' mu(h')(ob)` and keep per-cell max and min.
fn brute_weight_extremes(g: &GeneralizedEvidenceSpace) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let (nh, no) = (g.num_hypotheses(), g.num_observations());
    let mut upper = vec![vec![Rational::zero(); nh]; no];
    let mut lower = vec![vec![Rational::one(); nh]; no];
    for m in g.delta() {
        for ob in 0..no {
            let total: Rational = (0..nh).map(|h| m.prob(h, ob)).sum();
            for h in 0..nh {
                let v = m.prob(h, ob) / &total;
                if v > upper[ob][h] {
                    upper[ob][h] = v.clone();
                }
                if v < lower[ob][h] {
                    lower[ob][h] = v;
                }
            }
        }
    }
    (upper, lower)
}

fn tables_equal(t: &WeightBounds, upper: &[Vec<Rational>], lower: &[Vec<Rational>]) -> bool {
    t.upper.rows() == upper && t.lower.rows() == lower
}

/// Checks the closed-form posterior bounds and the likelihood-based weight
/// tables against brute-force enumeration over the mapping set.
pub fn bound_formula_check(g: &GeneralizedEvidenceSpace, prior: &Distribution) -> Result<BoundCheckReport> {
    if prior.len() != g.num_hypotheses() {
        return Err(Error::DimensionMismatch {
            context: "prior".to_string(),
            expected: g.num_hypotheses(),
            found: prior.len(),
        });
    }
    let uncorrelated = check_uncorrelated(g).is_uncorrelated();
    let (brute_upper, brute_lower) = brute_weight_extremes(g);
    let extremes_agree = tables_equal(&upper_lower_weights(g), &brute_upper, &brute_lower);
    let likelihood_tables_agree = if uncorrelated {
        Some(upper_lower_from_likelihoods(g).map(|t| tables_equal(&t, &brute_upper, &brute_lower)).unwrap_or(false))
    } else {
        None
    };

    let mut entries = Vec::new();
    for ob in 0..g.num_observations() {
        for h in 0..g.num_hypotheses() {
            let enumerated = extremes(g.delta().iter().filter_map(|m| posterior_mass(m, prior, ob, &[h])));
            let formula =
                match (bound_formula(g, prior, ob, h, Side::Lower), bound_formula(g, prior, ob, h, Side::Upper)) {
                    (Ok(lower), Ok(upper)) => Ok(Bounds { lower, upper }),
                    (Err(e), _) | (_, Err(e)) => Err(e),
                };
            let gap = match (&enumerated, &formula) {
                _ if !uncorrelated => Gap::Skipped("correlated".to_string()),
                (None, _) => Gap::Skipped("empty posterior set".to_string()),
                (_, Err(e)) => Gap::Skipped(e.to_string()),
                (Some(en), Ok(f)) => {
                    if en.upper > f.upper || en.lower < f.lower {
                        Gap::Violated
                    } else if en == f {
                        Gap::Tight
                    } else {
                        Gap::Strict
                    }
                }
            };
            entries.push(BoundCheckEntry { observation: ob, hypothesis: h, enumerated, formula: formula.ok(), gap });
        }
    }
    Ok(BoundCheckReport {
        uncorrelated,
        two_hypotheses: g.num_hypotheses() == 2,
        entries,
        extremes_agree,
        likelihood_tables_agree,
    })
}

/// One comparison of enumerated generalized bounds with the refined-side
/// oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedComparison {
    pub observation: usize,
    pub hypothesis: usize,
    pub generalized: Option<Bounds>,
    pub refined: Option<OracleBounds>,
}

impl RefinedComparison {
    pub fn agrees(&self) -> bool {
        match (&self.generalized, &self.refined) {
            (Some(g), Some(r)) => *g == r.bounds && r.escapes.is_empty(),
            (None, None) => true,
            _ => false,
        }
    }
}

/// Compares `generalized::posterior_bounds` on `g` with
/// [`refined_bound_oracle`] on the canonical refinement of `g`, for every
/// observation and hypothesis. Requires an uncorrelated space.
pub fn refined_cross_check(
    g: &GeneralizedEvidenceSpace,
    prior: &Distribution,
    config: &OracleConfig,
) -> Result<Vec<RefinedComparison>> {
    let refinement = refine(g)?;
    let mut out = Vec::new();
    for ob in 0..g.num_observations() {
        let set = crate::generalized::posterior_set(g, prior, ob);
        for h in 0..g.num_hypotheses() {
            let generalized = match &set {
                Ok(s) => Some(s.bounds_of(&[h])),
                Err(Error::EmptyPosteriorSet) => None,
                Err(e) => return Err(e.clone()),
            };
            let refined = match refined_bound_oracle(&refinement, prior, ob, h, config) {
                Ok(r) => Some(r),
                Err(Error::EmptyPosteriorSet) => None,
                Err(e) => return Err(e),
            };
            out.push(RefinedComparison { observation: ob, hypothesis: h, generalized, refined });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generalized::posterior_bounds;
    use crate::rational::q;

    fn prior2(a: Rational) -> Distribution {
        let b = Rational::one() - &a;
        Distribution::new(vec![a, b]).unwrap()
    }

    #[test]
    fn corners_of_the_alice_refinement() {
        let fam = enumerate_corner_extensions(&prior2(q(1, 100)), &[0, 0, 1]).unwrap();
        let want = vec![
            Distribution::new(vec![q(1, 100), q(0, 1), q(99, 100)]).unwrap(),
            Distribution::new(vec![q(0, 1), q(1, 100), q(99, 100)]).unwrap(),
        ];
        assert_eq!(fam.atoms, want);
    }

    #[test]
    fn identity_surjection_has_one_corner() {
        let p = Distribution::new(vec![q(1, 6), q(1, 3), q(1, 2)]).unwrap();
        let fam = enumerate_corner_extensions(&p, &[0, 1, 2]).unwrap();
        assert_eq!(fam.atoms, vec![p]);
    }

    #[test]
    fn random_extensions_extend_the_prior() {
        let prior = Distribution::new(vec![q(1, 3), q(2, 3)]).unwrap();
        let blocks = vec![vec![0, 2], vec![1]];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let ext = random_extension(&mut rng, &prior, &blocks, 3, 1000);
            assert_eq!(ext.mass_of(&[0, 2]), q(1, 3));
            assert_eq!(ext.mass(1), &q(2, 3));
        }
    }

    #[test]
    fn integer_sampler_matches_rational_posteriors() {
        let refinement = refine(&fixtures::alice_coins()).unwrap();
        let prior = Distribution::new(vec![q(3, 7), q(4, 7)]).unwrap();
        let blocks = blocks_of(refinement.surjection(), 2).unwrap();
        let num_fine = refinement.refined().hypotheses().len();
        for ob in 0..2 {
            let scaled = ScaledPosterior::new(&refinement, &prior, ob, &blocks[0]);
            let mut a = ChaCha8Rng::seed_from_u64(9);
            let mut b = ChaCha8Rng::seed_from_u64(9);
            for _ in 0..200 {
                let fast = scaled.at(&block_shares(&mut a, &blocks, num_fine, 1000));
                let ext = random_extension(&mut b, &prior, &blocks, num_fine, 1000);
                assert_eq!(fast, posterior_mass(refinement.refined().mapping(), &ext, ob, &blocks[0]));
            }
        }
    }

    #[test]
    fn corner_counts_multiply() {
        let p = Distribution::uniform(3);
        let fam = enumerate_corner_extensions(&p, &[0, 0, 1, 1, 2]).unwrap();
        assert_eq!(fam.atoms.len(), 4);
        assert!(enumerate_corner_extensions(&p, &[0, 0, 1]).is_err());
    }

    #[test]
    fn corner_explosion_is_guarded() {
        // 2^20 corners
        let p = Distribution::uniform(20);
        let surjection: Vec<usize> = (0..40).map(|i| i / 2).collect();
        assert!(matches!(enumerate_corner_extensions(&p, &surjection), Err(Error::ExplosionGuard { .. })));
    }

    #[test]
    fn alice_refined_oracle() {
        let g = fixtures::alice_coins();
        let r = refine(&g).unwrap();
        let prior = prior2(q(1, 100));
        let out = refined_bound_oracle(&r, &prior, 0, 0, &OracleConfig::default()).unwrap();
        assert_eq!(out.bounds, Bounds { lower: q(3, 201), upper: q(2, 101) });
        assert_eq!(out.bounds, posterior_bounds(&g, &prior, 0, 0).unwrap());
        assert!(out.escapes.is_empty());
        assert_eq!(out.samples, 1000);
    }

    #[test]
    fn identity_refinement_collapses() {
        let e = fixtures::two_coins();
        let r = refine(&e.to_generalized()).unwrap();
        let out = refined_bound_oracle(&r, &prior2(q(1, 3)), 0, 0, &OracleConfig::default()).unwrap();
        assert_eq!(out.bounds.lower, out.bounds.upper);
        assert_eq!(out.corners, 1);
    }

    #[test]
    fn strictness_refined_oracle() {
        let g = fixtures::three_way_strictness();
        let r = refine(&g).unwrap();
        let out = refined_bound_oracle(&r, &Distribution::uniform(3), 0, 0, &OracleConfig::default()).unwrap();
        assert_eq!(out.bounds, Bounds { lower: q(1, 5), upper: q(1, 2) });
        assert!(out.escapes.is_empty());
    }

    #[test]
    fn corner_correspondence_holds_for_refinements() {
        for g in [fixtures::alice_coins(), fixtures::correlated_delta1(), fixtures::three_way_strictness()] {
            let r = refine(&g).unwrap();
            let p = Distribution::uniform(g.num_hypotheses());
            assert!(corner_correspondence(&g, &r, &p).unwrap().holds());
        }
    }

    #[test]
    fn bayes_agreement_on_two_coins() {
        let e = fixtures::two_coins();
        let report = bayes_agreement_check(&e, &Distribution::uniform(2), 1, 42);
        assert!(report.passed());
        assert_eq!(report.checks, 4);
        let joint = JointDistribution::induced(&e, &Distribution::uniform(2));
        assert_eq!(bayes_posterior(&joint, 0, &[0]).unwrap(), q(2, 3));

        let point = bayes_agreement_check(&e, &Distribution::point_mass(2, 1), 20, 7);
        assert!(point.passed());
        assert_eq!(point.trials, 20);
    }

    #[test]
    fn bound_formula_strict_with_three_hypotheses() {
        let g = fixtures::three_way_strictness();
        let report = bound_formula_check(&g, &Distribution::uniform(3)).unwrap();
        assert!(report.passed());
        let x_d = &report.entries[0];
        assert_eq!(x_d.gap, Gap::Strict);
        assert_eq!(x_d.enumerated, Some(Bounds { lower: q(1, 5), upper: q(1, 2) }));
        assert_eq!(x_d.formula, Some(Bounds { lower: q(1, 6), upper: q(5, 9) }));
        assert_eq!(report.strict_entries().count(), 6);
    }

    #[test]
    fn bound_formula_tight_with_two_hypotheses() {
        let report = bound_formula_check(&fixtures::alice_coins(), &prior2(q(1, 100))).unwrap();
        assert!(report.passed());
        assert!(report.entries.iter().all(|e| e.gap == Gap::Tight));
        assert_eq!(report.likelihood_tables_agree, Some(true));
    }

    #[test]
    fn bound_formula_singleton_and_correlated() {
        let e = fixtures::two_coins().to_generalized();
        let report = bound_formula_check(&e, &prior2(q(1, 4))).unwrap();
        assert!(report.passed());
        for entry in &report.entries {
            let en = entry.enumerated.as_ref().unwrap();
            assert_eq!(en.lower, en.upper);
            assert_eq!(entry.formula.as_ref(), Some(en));
        }
        let c = bound_formula_check(&fixtures::correlated_delta2(), &prior2(q(1, 2))).unwrap();
        assert!(!c.uncorrelated);
        assert!(c.entries.iter().all(|e| matches!(e.gap, Gap::Skipped(_))));
        assert_eq!(c.likelihood_tables_agree, None);
    }

    #[test]
    fn cross_check_fixtures() {
        let cfg = OracleConfig { samples: 200, ..OracleConfig::default() };
        for g in [fixtures::alice_coins(), fixtures::correlated_delta1(), fixtures::three_way_strictness()] {
            let p = Distribution::uniform(g.num_hypotheses());
            assert!(refined_cross_check(&g, &p, &cfg).unwrap().iter().all(RefinedComparison::agrees));
        }
        assert_eq!(
            refined_cross_check(&fixtures::correlated_delta2(), &Distribution::uniform(2), &cfg),
            Err(Error::CorrelatedSpace)
        );
    }
}
