//! Exact weight-of-evidence reasoning over finite hypothesis spaces.
//!
//! An [`EvidenceSpace`] assigns each hypothesis a likelihood over
//! observations. Its [`weight_of_evidence`] normalizes those likelihoods per
//! observation, and a prior is updated by combining it with a weight row
//! under Dempster's rule ([`update_prior`]). When the likelihoods themselves
//! are uncertain, a [`GeneralizedEvidenceSpace`] carries a finite set of
//! likelihood mappings and updating yields a set of posteriors, summarized by
//! exact lower and upper bounds.
//!
//! All arithmetic is exact ([`Rational`]).
//!
//! ```
//! use uncertain_evidence::{fixtures, q, update_prior, weight_of_evidence, Distribution};
//!
//! let coins = fixtures::two_coins();
//! let w = weight_of_evidence(&coins);
//! assert_eq!(*w.get(0, 0), q(2, 3));
//!
//! let prior = Distribution::new(vec![q(1, 100), q(99, 100)]).unwrap();
//! let post = update_prior(&prior, &w, 0).unwrap();
//! assert_eq!(*post.mass(0), q(2, 101));
//! ```

pub mod cli;
pub mod error;
pub mod evidence;
pub mod fixtures;
pub mod generalized;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod sequence;

pub use error::{Error, Result, ENUMERATION_LIMIT};
pub use evidence::{
    bayes_posterior, dempster_combine, update_direct, update_prior, weight_of_evidence, JointDistribution,
};
pub use generalized::{
    bound_formula, check_uncorrelated, generalized_weight, posterior_bounds, posterior_set, refine,
    upper_lower_from_likelihoods, upper_lower_weights, verify_refinement, Bounds, GeneralizedWeight, PosteriorSet,
    Refinement, RefinementVerdict, Side, Uncorrelatedness, WeightBounds,
};
pub use model::{
    validate_space, Distribution, EvidenceSpace, GeneralizedEvidenceSpace, Hypothesis, Likelihood, LikelihoodMapping,
    Observation, SpaceDescription, ValidatedSpace, WeightFunction, WeightTable,
};
pub use rational::{q, Rational};
pub use sequence::{
    generalized_sequence_weight, sequence_weight, update_with_sequence, CombinationSemantics, ObservationSequence,
    SequenceWeights,
};
