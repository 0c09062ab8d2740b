//! Classical evidence: one likelihood function per hypothesis.
//!
//! The weight of evidence normalizes the likelihoods of an observation across
//! hypotheses; Dempster's rule multiplies two mass functions pointwise and
//! renormalizes; updating a prior is combining it with a row of the weight.

use crate::error::{Error, Result};
use crate::model::{Distribution, EvidenceSpace, WeightFunction};
use crate::rational::Rational;

/// `w(ob, h) = mu_h(ob) / sum_h' mu_h'(ob)` for every cell.
pub fn weight_of_evidence(space: &EvidenceSpace) -> WeightFunction {
    let num_h = space.hypotheses().len();
    let rows = (0..space.observations().len())
        .map(|ob| {
            let column: Vec<Rational> = (0..num_h).map(|h| space.likelihood(h, ob).clone()).collect();
            // A validated space makes every observation possible.
            Distribution::normalized(column).expect("observation with zero total likelihood")
        })
        .collect();
    WeightFunction::new(rows).expect("rows share the hypothesis count")
}

/// Dempster's rule on point mass functions over the same hypotheses.
///
/// Fails with [`Error::UndefinedCombination`] when the pointwise product is
/// zero everywhere.
pub fn dempster_combine(m1: &Distribution, m2: &Distribution) -> Result<Distribution> {
    if m1.len() != m2.len() {
        return Err(Error::DimensionMismatch {
            context: "dempster_combine".to_string(),
            expected: m1.len(),
            found: m2.len(),
        });
    }
    let products = m1.masses().iter().zip(m2.masses()).map(|(a, b)| a * b).collect();
    Distribution::normalized(products).ok_or(Error::UndefinedCombination)
}

/// Posterior after observing `ob`: `prior (+) w(ob, .)`.
pub fn update_prior(prior: &Distribution, w: &WeightFunction, ob: usize) -> Result<Distribution> {
    dempster_combine(prior, w.row(ob))
}

/// Posterior mass of `subset` computed straight from the likelihoods:
/// `sum_{h in H} prior(h) mu_h(ob) / sum_h prior(h) mu_h(ob)`.
pub fn update_direct(space: &EvidenceSpace, prior: &Distribution, ob: usize, subset: &[usize]) -> Result<Rational> {
    let joint: Vec<Rational> = (0..space.hypotheses().len()).map(|h| prior.mass(h) * space.likelihood(h, ob)).collect();
    let total: Rational = joint.iter().sum();
    if total.is_zero() {
        return Err(Error::UndefinedCombination);
    }
    let mut hs: Vec<usize> = subset.to_vec();
    hs.sort_unstable();
    hs.dedup();
    let part: Rational = hs.iter().map(|&h| &joint[h]).sum();
    Ok(part / total)
}

/// A probability over hypothesis/observation pairs, `cells[h][ob]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDistribution {
    cells: Vec<Vec<Rational>>,
}

impl JointDistribution {
    /// Entries in [0, 1], rectangular, summing to 1.
    pub fn new(cells: Vec<Vec<Rational>>) -> Result<Self> {
        let width = cells.first().map_or(0, Vec::len);
        if cells.is_empty() || width == 0 {
            return Err(Error::EmptyDomain("joint cells"));
        }
        if let Some(row) = cells.iter().find(|r| r.len() != width) {
            return Err(Error::DimensionMismatch {
                context: "joint distribution row".to_string(),
                expected: width,
                found: row.len(),
            });
        }
        if let Some(bad) = cells.iter().flatten().find(|c| !c.is_probability()) {
            return Err(Error::ProbabilityOutOfRange { context: "joint distribution".to_string(), value: bad.clone() });
        }
        let sum: Rational = cells.iter().flatten().sum();
        if !sum.is_one() {
            return Err(Error::NonNormalizedDistribution { context: "joint distribution".to_string(), sum });
        }
        Ok(JointDistribution { cells })
    }

    /// The joint `P(h, ob) = prior(h) * mu_h(ob)` induced by a prior and a
    /// space.
    pub fn induced(space: &EvidenceSpace, prior: &Distribution) -> Self {
        let cells = (0..space.hypotheses().len())
            .map(|h| (0..space.observations().len()).map(|ob| prior.mass(h) * space.likelihood(h, ob)).collect())
            .collect();
        JointDistribution { cells }
    }

    pub fn cell(&self, h: usize, ob: usize) -> &Rational {
        &self.cells[h][ob]
    }

    /// `P({h} x O)`.
    pub fn hypothesis_marginal(&self, h: usize) -> Rational {
        self.cells[h].iter().sum()
    }

    /// `P(H x {ob})`.
    pub fn observation_marginal(&self, ob: usize) -> Rational {
        self.cells.iter().map(|row| &row[ob]).sum()
    }

    pub fn num_hypotheses(&self) -> usize {
        self.cells.len()
    }

    pub fn num_observations(&self) -> usize {
        self.cells[0].len()
    }
}

/// `P(subset x O | H x {ob})` by direct summation over the joint.
pub fn bayes_posterior(joint: &JointDistribution, ob: usize, subset: &[usize]) -> Result<Rational> {
    let evidence = joint.observation_marginal(ob);
    if evidence.is_zero() {
        return Err(Error::ConditioningOnNull { observation: format!("#{ob}") });
    }
    let mut hs: Vec<usize> = subset.to_vec();
    hs.sort_unstable();
    hs.dedup();
    let part: Rational = hs.iter().map(|&h| joint.cell(h, ob)).sum();
    Ok(part / evidence)
}
