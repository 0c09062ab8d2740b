//! Evidence when each hypothesis has a set of candidate likelihoods.
//!
//! A generalized space carries a finite set of likelihood mappings. Its
//! weight of evidence is the set of classical weights of the member spaces,
//! and updating a prior yields a set of posteriors whose extremes are the
//! lower and upper posterior probabilities. When the mapping set is a full
//! product of per-hypothesis likelihood sets ("uncorrelated"), the space is
//! equivalent to a classical space over a finer hypothesis set, and the
//! extremes of the weights follow from the extremes of the likelihoods.

use std::collections::HashSet;

use crate::error::{guarded_product, Error, Result};
use crate::evidence::{dempster_combine, weight_of_evidence};
use crate::model::{
    Distribution, EvidenceSpace, GeneralizedEvidenceSpace, Hypothesis, Likelihood, LikelihoodMapping, WeightFunction,
    WeightTable,
};
use crate::rational::Rational;

/// One classical evidence space per likelihood mapping.
pub fn member_spaces(g: &GeneralizedEvidenceSpace) -> Vec<EvidenceSpace> {
    (0..g.delta().len()).map(|i| g.member(i)).collect()
}

/// The set of weight functions induced by the member spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedWeight {
    members: Vec<WeightFunction>,
}

impl GeneralizedWeight {
    pub fn members(&self) -> &[WeightFunction] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Distinct values `w(ob, h)` over the members, ascending.
    pub fn values(&self, ob: usize, h: usize) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.members.iter().map(|w| w.get(ob, h).clone()).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Weight of evidence of every member space, with identical tables merged.
pub fn generalized_weight(g: &GeneralizedEvidenceSpace) -> GeneralizedWeight {
    let mut seen = HashSet::new();
    let members = member_spaces(g).iter().map(weight_of_evidence).filter(|w| seen.insert(w.clone())).collect();
    GeneralizedWeight { members }
}

/// The posteriors reachable from one prior and one piece of evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosteriorSet {
    members: Vec<Distribution>,
    prior: Distribution,
    observations: Vec<usize>,
    defined: usize,
    excluded: usize,
}

impl PosteriorSet {
    /// Keeps the defined combinations (deduplicated, first occurrence
    /// first) and counts the undefined ones.
    pub(crate) fn collect(
        prior: &Distribution,
        observations: Vec<usize>,
        combinations: impl IntoIterator<Item = Result<Distribution>>,
    ) -> Result<Self> {
        let mut members = Vec::new();
        let mut seen = HashSet::new();
        let (mut defined, mut excluded) = (0, 0);
        for c in combinations {
            match c {
                Ok(d) => {
                    defined += 1;
                    if seen.insert(d.clone()) {
                        members.push(d);
                    }
                }
                Err(Error::UndefinedCombination) => excluded += 1,
                Err(e) => return Err(e),
            }
        }
        if members.is_empty() {
            return Err(Error::EmptyPosteriorSet);
        }
        Ok(PosteriorSet { members, prior: prior.clone(), observations, defined, excluded })
    }

    pub fn members(&self) -> &[Distribution] {
        &self.members
    }

    pub fn prior(&self) -> &Distribution {
        &self.prior
    }

    /// Observation positions the posteriors condition on (one for a single
    /// observation, several for a sequence).
    pub fn observations(&self) -> &[usize] {
        &self.observations
    }

    /// How many weights combined with the prior (before deduplication).
    pub fn defined(&self) -> usize {
        self.defined
    }

    /// How many weights were dropped because the combination was undefined.
    pub fn excluded(&self) -> usize {
        self.excluded
    }

    /// Lower and upper posterior probability of a set of hypotheses.
    pub fn bounds_of(&self, subset: &[usize]) -> Bounds {
        let values = self.members.iter().map(|d| d.mass_of(subset));
        let (mut lower, mut upper) = (None::<Rational>, None::<Rational>);
        for v in values {
            if lower.as_ref().is_none_or(|l| v < *l) {
                lower = Some(v.clone());
            }
            if upper.as_ref().is_none_or(|u| v > *u) {
                upper = Some(v);
            }
        }
        Bounds {
            lower: lower.expect("posterior sets are non-empty"),
            upper: upper.expect("posterior sets are non-empty"),
        }
    }

    /// Distinct posterior values of a set of hypotheses, ascending.
    pub fn values_of(&self, subset: &[usize]) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.members.iter().map(|d| d.mass_of(subset)).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// `{prior (+) w(ob, .) | w in w_G}`, dropping undefined combinations.
pub fn posterior_set(g: &GeneralizedEvidenceSpace, prior: &Distribution, ob: usize) -> Result<PosteriorSet> {
    check_prior(g, prior)?;
    check_observation(g, ob)?;
    let weights = generalized_weight(g);
    PosteriorSet::collect(prior, vec![ob], weights.members().iter().map(|w| dempster_combine(prior, w.row(ob))))
}

pub(crate) fn check_prior(g: &GeneralizedEvidenceSpace, prior: &Distribution) -> Result<()> {
    if prior.len() != g.num_hypotheses() {
        return Err(Error::DimensionMismatch {
            context: "prior".to_string(),
            expected: g.num_hypotheses(),
            found: prior.len(),
        });
    }
    Ok(())
}

pub(crate) fn check_observation(g: &GeneralizedEvidenceSpace, ob: usize) -> Result<()> {
    if ob >= g.num_observations() {
        return Err(Error::UnknownId { kind: "observation", id: format!("#{ob}") });
    }
    Ok(())
}

/// A closed interval of probabilities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub lower: Rational,
    pub upper: Rational,
}

/// Exact lower and upper posterior probability of hypothesis `h`.
pub fn posterior_bounds(g: &GeneralizedEvidenceSpace, prior: &Distribution, ob: usize, h: usize) -> Result<Bounds> {
    Ok(posterior_set(g, prior, ob)?.bounds_of(&[h]))
}

/// Per-cell maximum and minimum of the generalized weight. The tables need
/// not be row-normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightBounds {
    pub upper: WeightTable,
    pub lower: WeightTable,
}

pub fn upper_lower_weights(g: &GeneralizedEvidenceSpace) -> WeightBounds {
    let weights = generalized_weight(g);
    let (nh, no) = (g.num_hypotheses(), g.num_observations());
    let mut upper = vec![vec![Rational::zero(); nh]; no];
    let mut lower = vec![vec![Rational::one(); nh]; no];
    for w in weights.members() {
        for ob in 0..no {
            for h in 0..nh {
                let v = w.get(ob, h);
                if *v > upper[ob][h] {
                    upper[ob][h] = v.clone();
                }
                if *v < lower[ob][h] {
                    lower[ob][h] = v.clone();
                }
            }
        }
    }
    WeightBounds { upper: WeightTable::new(upper), lower: WeightTable::new(lower) }
}

/// Which side of the posterior interval a closed-form bound estimates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Upper,
    Lower,
}

/// Closed-form bound on the posterior of `h` from the upper and lower
/// weights:
///
/// ```text
/// upper: W(ob,h) p(h) / (W(ob,h) p(h) + sum_{h' != h} w(ob,h') p(h'))
/// lower: w(ob,h) p(h) / (w(ob,h) p(h) + sum_{h' != h} W(ob,h') p(h'))
/// ```
///
/// where `W` is the upper and `w` the lower weight. The result bounds the
/// enumerated posterior only for uncorrelated spaces, and matches it exactly
/// with two hypotheses; this function does not check correlation.
pub fn bound_formula(
    g: &GeneralizedEvidenceSpace,
    prior: &Distribution,
    ob: usize,
    h: usize,
    side: Side,
) -> Result<Rational> {
    check_prior(g, prior)?;
    check_observation(g, ob)?;
    let tables = upper_lower_weights(g);
    let (own, others) = match side {
        Side::Upper => (&tables.upper, &tables.lower),
        Side::Lower => (&tables.lower, &tables.upper),
    };
    let numerator = own.get(ob, h) * prior.mass(h);
    let rest: Rational = (0..g.num_hypotheses()).filter(|&k| k != h).map(|k| others.get(ob, k) * prior.mass(k)).sum();
    let denominator = &numerator + &rest;
    if denominator.is_zero() {
        return Err(Error::ZeroDenominator {
            observation: g.observations()[ob].to_string(),
            hypothesis: g.hypotheses()[h].to_string(),
        });
    }
    Ok(numerator / denominator)
}

/// Per-hypothesis likelihood sets `{mu(h) | mu in delta}`, each sorted in
/// descending lexicographic order of the likelihood vectors.
pub fn projection_factors(g: &GeneralizedEvidenceSpace) -> Vec<Vec<Likelihood>> {
    (0..g.num_hypotheses())
        .map(|h| {
            let mut set: Vec<Likelihood> = g.delta().iter().map(|m| m.get(h).clone()).collect();
            set.sort_by(|a, b| b.cmp(a));
            set.dedup();
            set
        })
        .collect()
}

/// Outcome of the product-factorization test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Uncorrelatedness {
    projections: Vec<Vec<Likelihood>>,
    witness: Option<LikelihoodMapping>,
}

impl Uncorrelatedness {
    pub fn is_uncorrelated(&self) -> bool {
        self.witness.is_none()
    }

    /// The factor sets, present only when the mapping set is their product.
    pub fn factors(&self) -> Option<&[Vec<Likelihood>]> {
        self.is_uncorrelated().then_some(self.projections.as_slice())
    }

    /// Per-hypothesis projections, whatever the outcome.
    pub fn projections(&self) -> &[Vec<Likelihood>] {
        &self.projections
    }

    /// The first product mapping (in factor order) missing from the set.
    pub fn witness(&self) -> Option<&LikelihoodMapping> {
        self.witness.as_ref()
    }
}

/// Iterates over all selections `(i_0, .., i_n)` with `i_k < sizes[k]`, the
/// first coordinate varying slowest.
pub(crate) struct Selections {
    sizes: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Selections {
    pub(crate) fn new(sizes: Vec<usize>) -> Self {
        let next = (!sizes.contains(&0)).then(|| vec![0; sizes.len()]);
        Selections { sizes, next }
    }
}

impl Iterator for Selections {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for k in (0..succ.len()).rev() {
            succ[k] += 1;
            if succ[k] < self.sizes[k] {
                self.next = Some(succ);
                return Some(current);
            }
            succ[k] = 0;
        }
        Some(current)
    }
}

/// Tests whether the mapping set equals the product of its projections.
///
/// Every mapping lies in that product, so the sizes decide the answer; when
/// they differ, the first absent product mapping is reported as a witness.
pub fn check_uncorrelated(g: &GeneralizedEvidenceSpace) -> Uncorrelatedness {
    let projections = projection_factors(g);
    let product_size = projections.iter().try_fold(1u128, |acc, p| acc.checked_mul(p.len() as u128));
    if product_size == Some(g.delta().len() as u128) {
        return Uncorrelatedness { projections, witness: None };
    }
    let members: HashSet<&LikelihoodMapping> = g.delta().iter().collect();
    let witness = Selections::new(projections.iter().map(Vec::len).collect())
        .map(|sel| LikelihoodMapping::new(sel.iter().enumerate().map(|(h, &i)| projections[h][i].clone()).collect()))
        .find(|m| !members.contains(m))
        .expect("a strictly larger product has a mapping outside the set");
    Uncorrelatedness { projections, witness: Some(witness) }
}

/// Upper and lower weights computed from the per-hypothesis likelihood
/// extremes; requires an uncorrelated space.
pub fn upper_lower_from_likelihoods(g: &GeneralizedEvidenceSpace) -> Result<WeightBounds> {
    let check = check_uncorrelated(g);
    let factors = check.factors().ok_or(Error::CorrelatedSpace)?;
    let (nh, no) = (g.num_hypotheses(), g.num_observations());
    let mut upper = Vec::with_capacity(no);
    let mut lower = Vec::with_capacity(no);
    for ob in 0..no {
        let hi: Vec<Rational> =
            factors.iter().map(|p| p.iter().map(|l| l.prob(ob)).max().expect("non-empty factor").clone()).collect();
        let lo: Vec<Rational> =
            factors.iter().map(|p| p.iter().map(|l| l.prob(ob)).min().expect("non-empty factor").clone()).collect();
        let mut up_row = Vec::with_capacity(nh);
        let mut low_row = Vec::with_capacity(nh);
        for h in 0..nh {
            let lo_rest: Rational = (0..nh).filter(|&k| k != h).map(|k| &lo[k]).sum();
            let hi_rest: Rational = (0..nh).filter(|&k| k != h).map(|k| &hi[k]).sum();
            let zero = || Error::ZeroDenominator {
                observation: g.observations()[ob].to_string(),
                hypothesis: g.hypotheses()[h].to_string(),
            };
            let up_den = &hi[h] + &lo_rest;
            let low_den = &lo[h] + &hi_rest;
            if up_den.is_zero() || low_den.is_zero() {
                return Err(zero());
            }
            up_row.push(&hi[h] / &up_den);
            low_row.push(&lo[h] / &low_den);
        }
        upper.push(up_row);
        lower.push(low_row);
    }
    Ok(WeightBounds { upper: WeightTable::new(upper), lower: WeightTable::new(lower) })
}

/// A classical space over finer hypotheses, with the map sending each fine
/// hypothesis to the coarse one it refines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    refined: EvidenceSpace,
    surjection: Vec<usize>,
    coarse: Vec<Hypothesis>,
}

impl Refinement {
    /// `surjection[h']` is the coarse hypothesis position of fine hypothesis
    /// `h'`.
    pub fn new(refined: EvidenceSpace, surjection: Vec<usize>, coarse: Vec<Hypothesis>) -> Result<Self> {
        if surjection.len() != refined.hypotheses().len() {
            return Err(Error::InvalidSurjection(format!(
                "{} targets for {} refined hypotheses",
                surjection.len(),
                refined.hypotheses().len()
            )));
        }
        if let Some(&bad) = surjection.iter().find(|&&t| t >= coarse.len()) {
            return Err(Error::InvalidSurjection(format!("target #{bad} out of range")));
        }
        if let Some(missing) = (0..coarse.len()).find(|c| !surjection.contains(c)) {
            return Err(Error::InvalidSurjection(format!("{} has no preimage", coarse[missing])));
        }
        Ok(Refinement { refined, surjection, coarse })
    }

    pub fn refined(&self) -> &EvidenceSpace {
        &self.refined
    }

    pub fn surjection(&self) -> &[usize] {
        &self.surjection
    }

    pub fn coarse_hypotheses(&self) -> &[Hypothesis] {
        &self.coarse
    }

    /// Fine hypotheses mapped onto coarse hypothesis `h`.
    pub fn block(&self, h: usize) -> Vec<usize> {
        (0..self.surjection.len()).filter(|&k| self.surjection[k] == h).collect()
    }

    /// The generalized space this refinement induces: every way of picking,
    /// for each coarse hypothesis, the likelihood of one of its fine
    /// hypotheses.
    pub fn induced_space(&self) -> Result<GeneralizedEvidenceSpace> {
        let blocks: Vec<Vec<usize>> = (0..self.coarse.len()).map(|h| self.block(h)).collect();
        guarded_product("refinement selections", blocks.iter().map(Vec::len))?;
        let mapping = self.refined.mapping();
        let mappings = Selections::new(blocks.iter().map(Vec::len).collect())
            .map(|sel| {
                LikelihoodMapping::new(
                    sel.iter().enumerate().map(|(h, &i)| mapping.get(blocks[h][i]).clone()).collect(),
                )
            })
            .collect();
        GeneralizedEvidenceSpace::from_mappings(self.coarse.clone(), self.refined.observations().to_vec(), mappings)
    }
}

/// Builds the canonical refinement of an uncorrelated space: fine
/// hypotheses `(h,k)` carry the k-th likelihood (1-based, in the order of
/// [`projection_factors`]) of coarse hypothesis `h`.
pub fn refine(g: &GeneralizedEvidenceSpace) -> Result<Refinement> {
    let check = check_uncorrelated(g);
    let factors = check.factors().ok_or(Error::CorrelatedSpace)?;
    let mut ids = Vec::new();
    let mut likelihoods = Vec::new();
    let mut surjection = Vec::new();
    for (h, factor) in factors.iter().enumerate() {
        for (k, l) in factor.iter().enumerate() {
            ids.push(format!("({},{})", g.hypotheses()[h], k + 1));
            likelihoods.push(l.masses().to_vec());
            surjection.push(h);
        }
    }
    let observations: Vec<String> = g.observations().iter().map(|o| o.to_string()).collect();
    let refined = EvidenceSpace::new(ids, observations, likelihoods)?;
    Refinement::new(refined, surjection, g.hypotheses().to_vec())
}

/// Why a candidate refinement fails, or that it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefinementVerdict {
    Valid,
    /// Coarse hypothesis with no fine hypothesis mapped onto it.
    NotSurjective {
        hypothesis: Hypothesis,
    },
    /// A selection produces a mapping outside the set.
    ExtraMapping {
        mapping: LikelihoodMapping,
    },
    /// A mapping in the set that no selection produces.
    MissingMapping {
        mapping: LikelihoodMapping,
    },
}

impl RefinementVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, RefinementVerdict::Valid)
    }

    pub fn reason(&self) -> &'static str {
        match self {
            RefinementVerdict::Valid => "Valid",
            RefinementVerdict::NotSurjective { .. } => "NotSurjective",
            RefinementVerdict::ExtraMapping { .. } => "ExtraMapping",
            RefinementVerdict::MissingMapping { .. } => "MissingMapping",
        }
    }
}

/// Checks that `e` refines `g` via `surjection`: the map is onto, and the
/// mappings obtained by choosing one fine hypothesis per coarse hypothesis
/// are exactly the mappings of `g`.
pub fn verify_refinement(
    e: &EvidenceSpace,
    g: &GeneralizedEvidenceSpace,
    surjection: &[usize],
) -> Result<RefinementVerdict> {
    if surjection.len() != e.hypotheses().len() {
        return Err(Error::InvalidSurjection(format!(
            "{} targets for {} refined hypotheses",
            surjection.len(),
            e.hypotheses().len()
        )));
    }
    if let Some(&bad) = surjection.iter().find(|&&t| t >= g.num_hypotheses()) {
        return Err(Error::InvalidSurjection(format!("target #{bad} out of range")));
    }
    if e.observations() != g.observations() {
        return Err(Error::InvalidSurjection("refined and coarse spaces have different observations".to_string()));
    }
    let blocks: Vec<Vec<usize>> =
        (0..g.num_hypotheses()).map(|h| (0..surjection.len()).filter(|&k| surjection[k] == h).collect()).collect();
    if let Some(h) = blocks.iter().position(Vec::is_empty) {
        return Ok(RefinementVerdict::NotSurjective { hypothesis: g.hypotheses()[h].clone() });
    }
    guarded_product("refinement selections", blocks.iter().map(Vec::len))?;
    let members: HashSet<&LikelihoodMapping> = g.delta().iter().collect();
    let mut produced = HashSet::new();
    for sel in Selections::new(blocks.iter().map(Vec::len).collect()) {
        let mapping = LikelihoodMapping::new(
            sel.iter().enumerate().map(|(h, &i)| e.mapping().get(blocks[h][i]).clone()).collect(),
        );
        if !members.contains(&mapping) {
            return Ok(RefinementVerdict::ExtraMapping { mapping });
        }
        produced.insert(mapping);
    }
    if let Some(missing) = g.delta().iter().find(|m| !produced.contains(m)) {
        return Ok(RefinementVerdict::MissingMapping { mapping: missing.clone() });
    }
    Ok(RefinementVerdict::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::q;

    fn prior2(a: Rational) -> Distribution {
        let b = Rational::one() - &a;
        Distribution::new(vec![a, b]).unwrap()
    }

    #[test]
    fn member_space_counts() {
        assert_eq!(member_spaces(&fixtures::alice_coins()).len(), 2);
        assert_eq!(member_spaces(&fixtures::two_coins().to_generalized()).len(), 1);
        assert_eq!(member_spaces(&fixtures::correlated_delta1()).len(), 4);
    }

    #[test]
    fn alice_generalized_weight() {
        let w = generalized_weight(&fixtures::alice_coins());
        assert_eq!(w.len(), 2);
        assert_eq!(w.values(0, 0), vec![q(3, 5), q(2, 3)]);
    }

    #[test]
    fn singleton_generalized_weight_is_classical() {
        let e = fixtures::two_coins();
        let w = generalized_weight(&e.to_generalized());
        assert_eq!(w.members(), &[weight_of_evidence(&e)]);
    }

    #[test]
    fn strictness_weight_values() {
        let g = fixtures::three_way_strictness();
        let w = generalized_weight(&g);
        // All-low and all-high both give the uniform table.
        assert_eq!(w.len(), 7);
        for ob in 0..2 {
            for h in 0..3 {
                assert_eq!(w.values(ob, h), vec![q(1, 5), q(1, 4), q(1, 3), q(2, 5), q(1, 2)]);
            }
        }
    }

    #[test]
    fn alice_posterior_set() {
        let g = fixtures::alice_coins();
        let set = posterior_set(&g, &prior2(q(1, 2)), 0).unwrap();
        assert_eq!(set.values_of(&[0]), vec![q(3, 5), q(2, 3)]);
        assert_eq!(set.excluded(), 0);
        let b = posterior_bounds(&g, &prior2(q(1, 100)), 0, 0).unwrap();
        assert_eq!(b, Bounds { lower: q(3, 201), upper: q(2, 101) });
    }

    #[test]
    fn uniform_prior_posteriors_are_the_weight_rows() {
        let g = fixtures::three_way_strictness();
        let set = posterior_set(&g, &Distribution::uniform(3), 0).unwrap();
        let w = generalized_weight(&g);
        let rows: HashSet<Distribution> = w.members().iter().map(|m| m.row(0).clone()).collect();
        let got: HashSet<Distribution> = set.members().iter().cloned().collect();
        assert_eq!(got, rows);
        let b = posterior_bounds(&g, &Distribution::uniform(3), 0, 0).unwrap();
        assert_eq!(b, Bounds { lower: q(1, 5), upper: q(1, 2) });
    }

    #[test]
    fn point_mass_prior_stays_put() {
        let g = fixtures::correlated_delta1();
        let set = posterior_set(&g, &Distribution::point_mass(2, 0), 0).unwrap();
        assert_eq!(set.members(), &[Distribution::point_mass(2, 0)]);
    }

    #[test]
    fn undefined_combinations_are_excluded_and_counted() {
        // B's second likelihood rules heads out entirely.
        let g = GeneralizedEvidenceSpace::new(
            ["A", "B"],
            ["heads", "tails"],
            vec![
                vec![vec![q(1, 1), q(0, 1)], vec![q(1, 2), q(1, 2)]],
                vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]],
            ],
        )
        .unwrap();
        let prior = Distribution::point_mass(2, 1);
        let set = posterior_set(&g, &prior, 0).unwrap();
        assert_eq!(set.members(), &[Distribution::point_mass(2, 1)]);
        assert_eq!((set.defined(), set.excluded()), (1, 1));
        assert_eq!(posterior_set(&g, &Distribution::point_mass(2, 0), 1), Err(Error::EmptyPosteriorSet));
        assert!(matches!(bound_formula(&g, &prior, 0, 0, Side::Upper), Err(Error::ZeroDenominator { .. })));
    }

    #[test]
    fn singleton_bounds_collapse() {
        let g = fixtures::two_coins().to_generalized();
        let b = posterior_bounds(&g, &prior2(q(1, 3)), 0, 0).unwrap();
        assert_eq!(b.lower, b.upper);
        let t = upper_lower_weights(&g);
        assert_eq!(t.upper, t.lower);
        assert_eq!(t, upper_lower_from_likelihoods(&g).unwrap());
    }

    #[test]
    fn strictness_tables_and_formula() {
        let g = fixtures::three_way_strictness();
        let t = upper_lower_weights(&g);
        for ob in 0..2 {
            assert!(t.upper.row(ob).iter().all(|v| *v == q(1, 2)));
            assert!(t.lower.row(ob).iter().all(|v| *v == q(1, 5)));
        }
        assert_eq!(upper_lower_from_likelihoods(&g).unwrap(), t);
        let u = Distribution::uniform(3);
        assert_eq!(bound_formula(&g, &u, 0, 0, Side::Upper).unwrap(), q(5, 9));
        assert_eq!(bound_formula(&g, &u, 0, 0, Side::Lower).unwrap(), q(1, 6));
    }

    #[test]
    fn alice_upper_lower() {
        let g = fixtures::alice_coins();
        let t = upper_lower_weights(&g);
        assert_eq!(t.upper.get(0, 0), &q(2, 3));
        assert_eq!(t.lower.get(0, 0), &q(3, 5));
        let from_l = upper_lower_from_likelihoods(&g).unwrap();
        assert_eq!(from_l.upper.get(0, 0), &q(2, 3));
        let p = prior2(q(1, 100));
        assert_eq!(bound_formula(&g, &p, 0, 0, Side::Upper).unwrap(), q(2, 101));
        assert_eq!(bound_formula(&g, &p, 0, 0, Side::Lower).unwrap(), q(3, 201));
    }

    #[test]
    fn correlation_checks() {
        let c1 = check_uncorrelated(&fixtures::correlated_delta1());
        assert!(c1.is_uncorrelated());
        let f = c1.factors().unwrap();
        assert_eq!((f[0].len(), f[1].len()), (2, 2));

        let g2 = fixtures::correlated_delta2();
        let c2 = check_uncorrelated(&g2);
        assert!(!c2.is_uncorrelated());
        assert!(c2.factors().is_none());
        let w = c2.witness().unwrap();
        // (double-headed, Bob's 1/3 coin)
        assert_eq!(w.prob(0, 0), &q(1, 1));
        assert_eq!(w.prob(1, 0), &q(1, 3));
        assert_eq!(upper_lower_from_likelihoods(&g2), Err(Error::CorrelatedSpace));

        assert!(check_uncorrelated(&fixtures::two_coins().to_generalized()).is_uncorrelated());
    }

    #[test]
    fn projections_of_a_correlated_set_overshoot() {
        let g2 = fixtures::correlated_delta2();
        let p = projection_factors(&g2);
        assert_eq!(p[0].len() * p[1].len(), 4);
        assert_eq!(g2.delta().len(), 2);
        let alice = projection_factors(&fixtures::alice_coins());
        assert_eq!(alice[0].len(), 2);
        assert_eq!(alice[1].len(), 1);
    }

    #[test]
    fn refine_alice() {
        let g = fixtures::alice_coins();
        let r = refine(&g).unwrap();
        let names: Vec<&str> = r.refined().hypotheses().iter().map(|h| h.as_str()).collect();
        assert_eq!(names, ["(A,1)", "(A,2)", "(B,1)"]);
        let heads: Vec<Rational> = (0..3).map(|h| r.refined().likelihood(h, 0).clone()).collect();
        assert_eq!(heads, vec![q(1, 1), q(3, 4), q(1, 2)]);
        assert_eq!(r.surjection(), &[0, 0, 1]);
        assert!(verify_refinement(r.refined(), &g, r.surjection()).unwrap().is_valid());
        assert_eq!(r.induced_space().unwrap().delta().len(), 2);
    }

    #[test]
    fn refine_rejects_correlated() {
        assert_eq!(refine(&fixtures::correlated_delta2()), Err(Error::CorrelatedSpace));
    }

    #[test]
    fn refine_singleton_is_isomorphic() {
        let e = fixtures::two_coins();
        let r = refine(&e.to_generalized()).unwrap();
        assert_eq!(r.refined().mapping(), e.mapping());
        assert_eq!(r.surjection(), &[0, 1]);
    }

    #[test]
    fn verify_refinement_cases() {
        let g = fixtures::alice_coins();
        let e = fixtures::refined_alice_coins();
        assert!(verify_refinement(&e, &g, &[0, 0, 1]).unwrap().is_valid());
        let bad = verify_refinement(&e, &g, &[0, 1, 1]).unwrap();
        assert_eq!(bad.reason(), "ExtraMapping");
        let missing = verify_refinement(&e, &g, &[1, 1, 1]).unwrap();
        assert_eq!(missing.reason(), "NotSurjective");

        // The refined space of the first mapping only misses the second.
        let narrow =
            EvidenceSpace::new(["A1", "B"], ["heads", "tails"], vec![vec![q(1, 1), q(0, 1)], vec![q(1, 2), q(1, 2)]])
                .unwrap();
        assert_eq!(verify_refinement(&narrow, &g, &[0, 1]).unwrap().reason(), "MissingMapping");

        let two = fixtures::two_coins();
        assert!(verify_refinement(&two, &two.to_generalized(), &[0, 1]).unwrap().is_valid());
        assert!(verify_refinement(&two, &two.to_generalized(), &[0]).is_err());
    }

    #[test]
    fn selections_enumerate_in_order() {
        let all: Vec<Vec<usize>> = Selections::new(vec![2, 1, 3]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 0, 0]);
        assert_eq!(all[1], vec![0, 0, 1]);
        assert_eq!(all[5], vec![1, 0, 2]);
        assert_eq!(Selections::new(vec![2, 0]).count(), 0);
        assert_eq!(Selections::new(vec![]).count(), 1);
    }
}
