//! Combining the evidence of several observations.
//!
//! Observations are independent given the hypothesis (and, for generalized
//! spaces, given the likelihood mapping in force), so the likelihood of a
//! sequence is the product of per-step likelihoods. Equivalently, the weight
//! of a sequence is the Dempster combination of the per-step weights.

use std::collections::HashSet;

use crate::error::{guarded_product, Error, Result};
use crate::evidence::{dempster_combine, weight_of_evidence};
use crate::generalized::{check_prior, generalized_weight, PosteriorSet, Selections};
use crate::model::{Distribution, EvidenceSpace, GeneralizedEvidenceSpace, LikelihoodMapping};
use crate::rational::Rational;

/// A non-empty sequence of observation positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ObservationSequence(Vec<usize>);

impl ObservationSequence {
    /// `num_observations` is the size of the governing observation set.
    pub fn new(items: Vec<usize>, num_observations: usize) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(&bad) = items.iter().find(|&&ob| ob >= num_observations) {
            return Err(Error::UnknownId { kind: "observation", id: format!("#{bad}") });
        }
        Ok(ObservationSequence(items))
    }

    /// Resolves observation ids against a list of known ids.
    pub fn from_ids<S: AsRef<str>>(ids: &[S], known: &[crate::model::Observation]) -> Result<Self> {
        let items = ids
            .iter()
            .map(|id| {
                known
                    .iter()
                    .position(|o| o.as_str() == id.as_ref())
                    .ok_or_else(|| Error::UnknownId { kind: "observation", id: id.as_ref().to_string() })
            })
            .collect::<Result<Vec<_>>>()?;
        ObservationSequence::new(items, known.len())
    }

    pub fn items(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// How the likelihood mapping may vary along a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CombinationSemantics {
    /// One mapping governs every observation of the sequence.
    FixedMapping,
    /// Each observation may be governed by a different mapping.
    PerObservation,
}

fn check_sequence(seq: &ObservationSequence, num_observations: usize) -> Result<()> {
    ObservationSequence::new(seq.0.clone(), num_observations).map(|_| ())
}

fn product_likelihood(mapping: &LikelihoodMapping, h: usize, seq: &ObservationSequence) -> Rational {
    seq.items().iter().map(|&ob| mapping.prob(h, ob)).product()
}

/// Sequence weight via product likelihoods, normalized across hypotheses.
pub fn sequence_weight_by_products(space: &EvidenceSpace, seq: &ObservationSequence) -> Result<Distribution> {
    check_sequence(seq, space.observations().len())?;
    let products = (0..space.hypotheses().len()).map(|h| product_likelihood(space.mapping(), h, seq)).collect();
    Distribution::normalized(products).ok_or(Error::ImpossibleSequence)
}

/// Sequence weight as the left fold of Dempster's rule over per-step
/// weights.
pub fn sequence_weight_by_combination(space: &EvidenceSpace, seq: &ObservationSequence) -> Result<Distribution> {
    check_sequence(seq, space.observations().len())?;
    let w = weight_of_evidence(space);
    let (first, rest) = seq.items().split_first().expect("non-empty sequence");
    rest.iter().try_fold(w.row(*first).clone(), |acc, &ob| dempster_combine(&acc, w.row(ob)))
}

/// Weight of evidence of a whole sequence.
///
/// The product and the fold routes are computed and must agree; an
/// impossible sequence is reported as [`Error::ImpossibleSequence`] (the
/// fold is undefined in exactly that case).
pub fn sequence_weight(space: &EvidenceSpace, seq: &ObservationSequence) -> Result<Distribution> {
    let by_products = sequence_weight_by_products(space, seq)?;
    let by_fold = sequence_weight_by_combination(space, seq)?;
    debug_assert_eq!(by_products, by_fold, "product and fold routes disagree");
    Ok(by_products)
}

/// Distinct sequence weights and how many enumerated combinations were
/// undefined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceWeights {
    members: Vec<Distribution>,
    excluded: usize,
}

impl SequenceWeights {
    pub fn members(&self) -> &[Distribution] {
        &self.members
    }

    pub fn excluded(&self) -> usize {
        self.excluded
    }

    pub fn contains(&self, d: &Distribution) -> bool {
        self.members.contains(d)
    }
}

/// Generalized weight of a sequence.
///
/// With [`CombinationSemantics::FixedMapping`] there is one candidate per
/// mapping; with [`CombinationSemantics::PerObservation`] one per choice of
/// mapping at each position, i.e. `|delta|^len` candidates, guarded by
/// [`crate::error::ENUMERATION_LIMIT`]. Identical results are merged.
pub fn generalized_sequence_weight(
    g: &GeneralizedEvidenceSpace,
    seq: &ObservationSequence,
    semantics: CombinationSemantics,
) -> Result<SequenceWeights> {
    check_sequence(seq, g.num_observations())?;
    let mut members = Vec::new();
    let mut seen = HashSet::new();
    let mut excluded = 0;
    let mut push = |r: Result<Distribution>| -> Result<()> {
        match r {
            Ok(d) => {
                if seen.insert(d.clone()) {
                    members.push(d);
                }
                Ok(())
            }
            Err(Error::UndefinedCombination) | Err(Error::ImpossibleSequence) => {
                excluded += 1;
                Ok(())
            }
            Err(e) => Err(e),
        }
    };
    match semantics {
        CombinationSemantics::FixedMapping => {
            for i in 0..g.delta().len() {
                push(sequence_weight(&g.member(i), seq))?;
            }
        }
        CombinationSemantics::PerObservation => {
            let n = g.delta().len();
            guarded_product("per-observation mapping choices", std::iter::repeat_n(n, seq.len()))?;
            let weights: Vec<_> = (0..n).map(|i| weight_of_evidence(&g.member(i))).collect();
            for choice in Selections::new(vec![n; seq.len()]) {
                let mut steps = choice.iter().zip(seq.items()).map(|(&i, &ob)| weights[i].row(ob));
                let first = steps.next().expect("non-empty sequence").clone();
                push(steps.try_fold(first, |acc, row| dempster_combine(&acc, row)))?;
            }
        }
    }
    if members.is_empty() {
        return Err(Error::EmptyResult);
    }
    Ok(SequenceWeights { members, excluded })
}

/// Posterior set after a sequence: the prior combined with every member of
/// the generalized sequence weight.
pub fn update_with_sequence(
    g: &GeneralizedEvidenceSpace,
    prior: &Distribution,
    seq: &ObservationSequence,
    semantics: CombinationSemantics,
) -> Result<PosteriorSet> {
    check_prior(g, prior)?;
    let weights = match generalized_sequence_weight(g, seq, semantics) {
        Ok(w) => w,
        Err(Error::EmptyResult) => return Err(Error::EmptyPosteriorSet),
        Err(e) => return Err(e),
    };
    PosteriorSet::collect(prior, seq.items().to_vec(), weights.members().iter().map(|w| dempster_combine(prior, w)))
}

/// Single-observation generalized weight rows, for comparison with
/// length-one sequences.
pub fn weight_rows(g: &GeneralizedEvidenceSpace, ob: usize) -> Vec<Distribution> {
    let mut seen = HashSet::new();
    generalized_weight(g).members().iter().map(|w| w.row(ob).clone()).filter(|r| seen.insert(r.clone())).collect()
}
