//! Domain types shared by every computation: hypotheses, observations,
//! likelihood functions and mappings, evidence spaces, distributions and
//! weight tables.
//!
//! All types are immutable once constructed. Constructors validate; nothing
//! downstream re-checks normalization or the requirement that every
//! observation be possible under every likelihood mapping.

use std::collections::HashSet;
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

macro_rules! id_type {
    ($name:ident, $kind:literal) => {
        #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Result<Self> {
                let id = id.into();
                if id.is_empty() {
                    return Err(Error::EmptyId { kind: $kind });
                }
                Ok($name(id))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.pad(&self.0)
            }
        }

        impl AsRef<str> for $name {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }
    };
}

id_type!(Hypothesis, "hypothesis");
id_type!(Observation, "observation");

fn build_ids<T, S: Into<String>>(
    raw: impl IntoIterator<Item = S>,
    kind: &'static str,
    plural: &'static str,
    make: impl Fn(String) -> Result<T>,
) -> Result<Vec<T>> {
    let raw: Vec<String> = raw.into_iter().map(Into::into).collect();
    if raw.is_empty() {
        return Err(Error::EmptyDomain(plural));
    }
    let mut seen = HashSet::new();
    for id in &raw {
        if !seen.insert(id.as_str()) {
            return Err(Error::DuplicateId { kind, id: id.clone() });
        }
    }
    raw.into_iter().map(make).collect()
}

/// A probability over observations (one entry per observation, in the
/// space's observation order).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Likelihood(Vec<Rational>);

impl Likelihood {
    /// Validates range and exact normalization. `context` names the entry in
    /// error messages.
    pub fn new(masses: Vec<Rational>, context: &str) -> Result<Self> {
        check_range(&masses, context)?;
        let sum: Rational = masses.iter().sum();
        if !sum.is_one() {
            return Err(Error::NonNormalizedLikelihood { context: context.to_string(), sum });
        }
        Ok(Likelihood(masses))
    }

    pub fn prob(&self, ob: usize) -> &Rational {
        &self.0[ob]
    }

    pub fn masses(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn check_range(masses: &[Rational], context: &str) -> Result<()> {
    if let Some(bad) = masses.iter().find(|m| !m.is_probability()) {
        return Err(Error::ProbabilityOutOfRange { context: context.to_string(), value: bad.clone() });
    }
    Ok(())
}

/// Assigns one likelihood function to every hypothesis (indexed by
/// hypothesis position).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LikelihoodMapping(Vec<Likelihood>);

impl LikelihoodMapping {
    pub fn new(per_hypothesis: Vec<Likelihood>) -> Self {
        LikelihoodMapping(per_hypothesis)
    }

    pub fn get(&self, h: usize) -> &Likelihood {
        &self.0[h]
    }

    /// `mu(h)(ob)`.
    pub fn prob(&self, h: usize, ob: usize) -> &Rational {
        self.0[h].prob(ob)
    }

    pub fn likelihoods(&self) -> &[Likelihood] {
        &self.0
    }

    pub fn num_hypotheses(&self) -> usize {
        self.0.len()
    }

    /// Index of the first observation that every hypothesis rules out.
    pub fn impossible_observation(&self) -> Option<usize> {
        let num_obs = self.0.first().map_or(0, Likelihood::len);
        (0..num_obs).find(|&ob| self.0.iter().all(|l| l.prob(ob).is_zero()))
    }
}

fn build_mapping(
    raw: Vec<Vec<Rational>>,
    hypotheses: &[Hypothesis],
    observations: &[Observation],
    index: usize,
) -> Result<LikelihoodMapping> {
    if raw.len() != hypotheses.len() {
        return Err(Error::DimensionMismatch {
            context: format!("likelihood mapping #{}", index + 1),
            expected: hypotheses.len(),
            found: raw.len(),
        });
    }
    let mut per_h = Vec::with_capacity(raw.len());
    for (h, masses) in hypotheses.iter().zip(raw) {
        let context = format!("delta[{index}].{h}");
        if masses.len() != observations.len() {
            return Err(Error::DimensionMismatch { context, expected: observations.len(), found: masses.len() });
        }
        per_h.push(Likelihood::new(masses, &context)?);
    }
    let mapping = LikelihoodMapping(per_h);
    if let Some(ob) = mapping.impossible_observation() {
        return Err(Error::ImpossibleObservation { mapping: index + 1, observation: observations[ob].to_string() });
    }
    Ok(mapping)
}

fn position<T: AsRef<str>>(ids: &[T], id: &str, kind: &'static str) -> Result<usize> {
    ids.iter().position(|x| x.as_ref() == id).ok_or_else(|| Error::UnknownId { kind, id: id.to_string() })
}

/// A classical evidence space: one likelihood function per hypothesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvidenceSpace {
    hypotheses: Vec<Hypothesis>,
    observations: Vec<Observation>,
    mapping: LikelihoodMapping,
}

impl EvidenceSpace {
    /// `likelihoods[h][ob]` is the probability of observation `ob` under
    /// hypothesis `h`.
    pub fn new<H, O>(
        hypotheses: impl IntoIterator<Item = H>,
        observations: impl IntoIterator<Item = O>,
        likelihoods: Vec<Vec<Rational>>,
    ) -> Result<Self>
    where
        H: Into<String>,
        O: Into<String>,
    {
        let hypotheses = build_ids(hypotheses, "hypothesis", "hypotheses", Hypothesis::new)?;
        let observations = build_ids(observations, "observation", "observations", Observation::new)?;
        let mapping = build_mapping(likelihoods, &hypotheses, &observations, 0)?;
        Ok(EvidenceSpace { hypotheses, observations, mapping })
    }

    pub(crate) fn from_parts(
        hypotheses: Vec<Hypothesis>,
        observations: Vec<Observation>,
        mapping: LikelihoodMapping,
    ) -> Self {
        EvidenceSpace { hypotheses, observations, mapping }
    }

    pub fn hypotheses(&self) -> &[Hypothesis] {
        &self.hypotheses
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    pub fn mapping(&self) -> &LikelihoodMapping {
        &self.mapping
    }

    /// `mu_h(ob)` by position.
    pub fn likelihood(&self, h: usize, ob: usize) -> &Rational {
        self.mapping.prob(h, ob)
    }

    pub fn hypothesis_index(&self, id: &str) -> Result<usize> {
        position(&self.hypotheses, id, "hypothesis")
    }

    pub fn observation_index(&self, id: &str) -> Result<usize> {
        position(&self.observations, id, "observation")
    }

    /// The same space viewed as a generalized space with a single mapping.
    pub fn to_generalized(&self) -> GeneralizedEvidenceSpace {
        GeneralizedEvidenceSpace {
            hypotheses: self.hypotheses.clone(),
            observations: self.observations.clone(),
            delta: vec![self.mapping.clone()],
        }
    }
}

/// A generalized evidence space: a finite, non-empty set of likelihood
/// mappings over the same hypotheses and observations.
///
/// Duplicate mappings are removed at construction; the remaining ones keep
/// their first-occurrence order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedEvidenceSpace {
    hypotheses: Vec<Hypothesis>,
    observations: Vec<Observation>,
    delta: Vec<LikelihoodMapping>,
}

impl GeneralizedEvidenceSpace {
    /// `delta[i][h][ob]` is the probability of `ob` under hypothesis `h` in
    /// the i-th likelihood mapping.
    pub fn new<H, O>(
        hypotheses: impl IntoIterator<Item = H>,
        observations: impl IntoIterator<Item = O>,
        delta: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self>
    where
        H: Into<String>,
        O: Into<String>,
    {
        let hypotheses = build_ids(hypotheses, "hypothesis", "hypotheses", Hypothesis::new)?;
        let observations = build_ids(observations, "observation", "observations", Observation::new)?;
        if delta.is_empty() {
            return Err(Error::EmptyDelta);
        }
        let mappings = delta
            .into_iter()
            .enumerate()
            .map(|(i, raw)| build_mapping(raw, &hypotheses, &observations, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(hypotheses, observations, mappings))
    }

    /// Assembles a space from already validated mappings, deduplicating.
    pub(crate) fn from_parts(
        hypotheses: Vec<Hypothesis>,
        observations: Vec<Observation>,
        mappings: Vec<LikelihoodMapping>,
    ) -> Self {
        let mut seen = HashSet::new();
        let delta = mappings.into_iter().filter(|m| seen.insert(m.clone())).collect();
        GeneralizedEvidenceSpace { hypotheses, observations, delta }
    }

    /// Builds a space from mappings that each satisfy the per-mapping
    /// invariants; checks dimensions and possibility again.
    pub fn from_mappings(
        hypotheses: Vec<Hypothesis>,
        observations: Vec<Observation>,
        mappings: Vec<LikelihoodMapping>,
    ) -> Result<Self> {
        if mappings.is_empty() {
            return Err(Error::EmptyDelta);
        }
        for (i, m) in mappings.iter().enumerate() {
            let raw = m.likelihoods().iter().map(|l| l.masses().to_vec()).collect();
            build_mapping(raw, &hypotheses, &observations, i)?;
        }
        Ok(Self::from_parts(hypotheses, observations, mappings))
    }

    pub fn hypotheses(&self) -> &[Hypothesis] {
        &self.hypotheses
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    pub fn delta(&self) -> &[LikelihoodMapping] {
        &self.delta
    }

    pub fn num_hypotheses(&self) -> usize {
        self.hypotheses.len()
    }

    pub fn num_observations(&self) -> usize {
        self.observations.len()
    }

    pub fn hypothesis_index(&self, id: &str) -> Result<usize> {
        position(&self.hypotheses, id, "hypothesis")
    }

    pub fn observation_index(&self, id: &str) -> Result<usize> {
        position(&self.observations, id, "observation")
    }

    /// The classical space for one element of the mapping set.
    pub fn member(&self, index: usize) -> EvidenceSpace {
        EvidenceSpace::from_parts(self.hypotheses.clone(), self.observations.clone(), self.delta[index].clone())
    }
}

/// A probability mass function over hypotheses (by position).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distribution(Vec<Rational>);

impl Distribution {
    /// Entries must lie in [0, 1] and sum to exactly 1.
    pub fn new(masses: Vec<Rational>) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::EmptyDomain("hypotheses"));
        }
        check_range(&masses, "distribution")?;
        let sum: Rational = masses.iter().sum();
        if !sum.is_one() {
            return Err(Error::NonNormalizedDistribution { context: "distribution".to_string(), sum });
        }
        Ok(Distribution(masses))
    }

    /// Normalizes a non-negative vector; `None` when it sums to zero.
    pub(crate) fn normalized(weights: Vec<Rational>) -> Option<Self> {
        let total: Rational = weights.iter().sum();
        if total.is_zero() {
            return None;
        }
        Some(Distribution(weights.into_iter().map(|w| w / &total).collect()))
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution over nothing");
        Distribution(vec![Rational::new(1, n as i64); n])
    }

    pub fn point_mass(n: usize, at: usize) -> Self {
        assert!(at < n);
        let mut v = vec![Rational::zero(); n];
        v[at] = Rational::one();
        Distribution(v)
    }

    /// Looks masses up by hypothesis id; every hypothesis must be named once.
    pub fn from_named<S: AsRef<str>>(
        hypotheses: &[Hypothesis],
        entries: impl IntoIterator<Item = (S, Rational)>,
    ) -> Result<Self> {
        let mut masses: Vec<Option<Rational>> = vec![None; hypotheses.len()];
        for (id, value) in entries {
            let i = position(hypotheses, id.as_ref(), "hypothesis")?;
            if masses[i].replace(value).is_some() {
                return Err(Error::DuplicateId { kind: "hypothesis", id: id.as_ref().to_string() });
            }
        }
        let masses = masses
            .into_iter()
            .zip(hypotheses)
            .map(|(m, h)| {
                m.ok_or_else(|| Error::MissingEntry {
                    context: "prior".to_string(),
                    kind: "hypothesis",
                    id: h.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Distribution::new(masses)
    }

    pub fn mass(&self, h: usize) -> &Rational {
        &self.0[h]
    }

    /// Total mass of a set of hypotheses; repeated indices count once.
    pub fn mass_of(&self, subset: &[usize]) -> Rational {
        let set: std::collections::BTreeSet<usize> = subset.iter().copied().collect();
        set.into_iter().map(|h| &self.0[h]).sum()
    }

    pub fn masses(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl AsRef<[Rational]> for Distribution {
    fn as_ref(&self) -> &[Rational] {
        &self.0
    }
}

/// A weight of evidence: for each observation, a normalized row over
/// hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightFunction {
    rows: Vec<Distribution>,
}

impl WeightFunction {
    /// Every row must be a distribution of the same length.
    pub fn new(rows: Vec<Distribution>) -> Result<Self> {
        if let Some(first) = rows.first() {
            if let Some(bad) = rows.iter().find(|r| r.len() != first.len()) {
                return Err(Error::DimensionMismatch {
                    context: "weight function row".to_string(),
                    expected: first.len(),
                    found: bad.len(),
                });
            }
        }
        Ok(WeightFunction { rows })
    }

    /// `w(ob, h)`.
    pub fn get(&self, ob: usize, h: usize) -> &Rational {
        self.rows[ob].mass(h)
    }

    /// `w(ob, .)`.
    pub fn row(&self, ob: usize) -> &Distribution {
        &self.rows[ob]
    }

    pub fn rows(&self) -> &[Distribution] {
        &self.rows
    }

    pub fn num_observations(&self) -> usize {
        self.rows.len()
    }

    pub fn num_hypotheses(&self) -> usize {
        self.rows.first().map_or(0, Distribution::len)
    }
}

/// An observation-by-hypothesis table that need not be row-normalized
/// (upper and lower weights).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    rows: Vec<Vec<Rational>>,
}

impl WeightTable {
    pub fn new(rows: Vec<Vec<Rational>>) -> Self {
        WeightTable { rows }
    }

    pub fn get(&self, ob: usize, h: usize) -> &Rational {
        &self.rows[ob][h]
    }

    pub fn row(&self, ob: usize) -> &[Rational] {
        &self.rows[ob]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }
}

/// An id-keyed, unvalidated description of a space: what a model file
/// carries before validation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpaceDescription {
    pub hypotheses: Vec<String>,
    pub observations: Vec<String>,
    /// One entry per likelihood mapping: hypothesis id -> observation id ->
    /// probability.
    pub delta: Vec<IndexMap<String, IndexMap<String, Rational>>>,
}

/// Result of [`validate_space`]: a single mapping yields a classical space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidatedSpace {
    Classical(EvidenceSpace),
    Generalized(GeneralizedEvidenceSpace),
}

impl ValidatedSpace {
    pub fn into_generalized(self) -> GeneralizedEvidenceSpace {
        match self {
            ValidatedSpace::Classical(e) => e.to_generalized(),
            ValidatedSpace::Generalized(g) => g,
        }
    }
}

/// Checks a raw description and builds the corresponding space. After
/// deduplication a single remaining mapping gives a classical space.
pub fn validate_space(desc: &SpaceDescription) -> Result<ValidatedSpace> {
    let hypotheses = build_ids(desc.hypotheses.iter().cloned(), "hypothesis", "hypotheses", Hypothesis::new)?;
    let observations = build_ids(desc.observations.iter().cloned(), "observation", "observations", Observation::new)?;
    if desc.delta.is_empty() {
        return Err(Error::EmptyDelta);
    }
    let mut mappings = Vec::with_capacity(desc.delta.len());
    for (i, entry) in desc.delta.iter().enumerate() {
        for h in entry.keys() {
            position(&hypotheses, h, "hypothesis")?;
        }
        let mut raw = Vec::with_capacity(hypotheses.len());
        for h in &hypotheses {
            let table = entry.get(h.as_str()).ok_or_else(|| Error::MissingEntry {
                context: format!("delta[{i}]"),
                kind: "hypothesis",
                id: h.to_string(),
            })?;
            for ob in table.keys() {
                position(&observations, ob, "observation")?;
            }
            let row = observations
                .iter()
                .map(|ob| {
                    table.get(ob.as_str()).cloned().ok_or_else(|| Error::MissingEntry {
                        context: format!("delta[{i}].{h}"),
                        kind: "observation",
                        id: ob.to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            raw.push(row);
        }
        mappings.push(build_mapping(raw, &hypotheses, &observations, i)?);
    }
    let g = GeneralizedEvidenceSpace::from_parts(hypotheses, observations, mappings);
    if g.delta.len() == 1 {
        Ok(ValidatedSpace::Classical(g.member(0)))
    } else {
        Ok(ValidatedSpace::Generalized(g))
    }
}

/// The description a validated space was (or could have been) built from.
pub fn describe(g: &GeneralizedEvidenceSpace) -> SpaceDescription {
    SpaceDescription {
        hypotheses: g.hypotheses.iter().map(|h| h.to_string()).collect(),
        observations: g.observations.iter().map(|o| o.to_string()).collect(),
        delta: g
            .delta
            .iter()
            .map(|m| {
                g.hypotheses
                    .iter()
                    .enumerate()
                    .map(|(h, hid)| {
                        let row = g
                            .observations
                            .iter()
                            .enumerate()
                            .map(|(ob, oid)| (oid.to_string(), m.prob(h, ob).clone()))
                            .collect();
                        (hid.to_string(), row)
                    })
                    .collect()
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn xam0_description() -> SpaceDescription {
        let mut a = IndexMap::new();
        a.insert("heads".to_string(), r("1"));
        a.insert("tails".to_string(), r("0"));
        let mut b = IndexMap::new();
        b.insert("heads".to_string(), r("1/2"));
        b.insert("tails".to_string(), r("1/2"));
        let mut m = IndexMap::new();
        m.insert("A".to_string(), a);
        m.insert("B".to_string(), b);
        SpaceDescription {
            hypotheses: vec!["A".into(), "B".into()],
            observations: vec!["heads".into(), "tails".into()],
            delta: vec![m],
        }
    }

    #[test]
    fn two_coin_table_is_a_valid_classical_space() {
        let v = validate_space(&xam0_description()).unwrap();
        let ValidatedSpace::Classical(e) = v else {
            panic!("expected a classical space");
        };
        assert_eq!(e.likelihood(1, 0), &q(1, 2));
        assert_eq!(e.hypothesis_index("B").unwrap(), 1);
    }

    #[test]
    fn single_uniform_hypothesis_is_valid() {
        let e = EvidenceSpace::new(["h"], ["x", "y", "z"], vec![vec![q(1, 3); 3]]).unwrap();
        assert_eq!(e.hypotheses().len(), 1);
    }

    #[test]
    fn observation_impossible_everywhere_is_rejected() {
        let err =
            EvidenceSpace::new(["A", "B"], ["heads", "tails"], vec![vec![q(0, 1), q(1, 1)], vec![q(0, 1), q(1, 1)]])
                .unwrap_err();
        assert_eq!(err, Error::ImpossibleObservation { mapping: 1, observation: "heads".into() });
    }

    #[test]
    fn normalization_and_range_errors() {
        let err = EvidenceSpace::new(["A"], ["x", "y"], vec![vec![q(1, 2), q(2, 5)]]).unwrap_err();
        assert!(matches!(err, Error::NonNormalizedLikelihood { ref sum, .. } if *sum == q(9, 10)));
        let err = EvidenceSpace::new(["A"], ["x", "y"], vec![vec![q(3, 2), q(-1, 2)]]).unwrap_err();
        assert!(matches!(err, Error::ProbabilityOutOfRange { .. }));
    }

    #[test]
    fn duplicate_and_empty_ids() {
        let err = EvidenceSpace::new(["A", "A"], ["x"], vec![vec![q(1, 1)], vec![q(1, 1)]]).unwrap_err();
        assert!(matches!(err, Error::DuplicateId { kind: "hypothesis", .. }));
        let err = EvidenceSpace::new(Vec::<String>::new(), ["x"], vec![]).unwrap_err();
        assert_eq!(err, Error::EmptyDomain("hypotheses"));
        let err = GeneralizedEvidenceSpace::new(["A"], ["x"], vec![]).unwrap_err();
        assert_eq!(err, Error::EmptyDelta);
        let err = EvidenceSpace::new([""], ["x"], vec![vec![q(1, 1)]]).unwrap_err();
        assert!(matches!(err, Error::EmptyId { .. }));
    }

    #[test]
    fn duplicate_mappings_collapse() {
        let m = vec![vec![q(1, 1), q(0, 1)], vec![q(1, 2), q(1, 2)]];
        let g = GeneralizedEvidenceSpace::new(["A", "B"], ["h", "t"], vec![m.clone(), m]).unwrap();
        assert_eq!(g.delta().len(), 1);
    }

    #[test]
    fn validation_is_idempotent() {
        let g = validate_space(&xam0_description()).unwrap().into_generalized();
        let again = validate_space(&describe(&g)).unwrap().into_generalized();
        assert_eq!(g, again);
    }

    #[test]
    fn description_errors_name_the_field() {
        let mut d = xam0_description();
        d.delta[0].get_mut("B").unwrap().shift_remove("tails");
        let err = validate_space(&d).unwrap_err();
        assert!(err.to_string().contains("delta[0].B"), "{err}");
        let mut d = xam0_description();
        d.delta[0].get_mut("A").unwrap().insert("edge".into(), r("0"));
        assert!(matches!(validate_space(&d), Err(Error::UnknownId { kind: "observation", .. })));
    }

    #[test]
    fn distributions() {
        assert!(Distribution::new(vec![q(1, 3), q(1, 3)]).is_err());
        let d = Distribution::new(vec![q(1, 4), q(3, 4)]).unwrap();
        assert_eq!(d.mass_of(&[0, 1, 1]), Rational::one());
        assert_eq!(d.mass_of(&[]), Rational::zero());
        let hyps = vec![Hypothesis::new("A").unwrap(), Hypothesis::new("B").unwrap()];
        let n = Distribution::from_named(&hyps, [("B", q(3, 4)), ("A", q(1, 4))]).unwrap();
        assert_eq!(n, d);
        assert!(Distribution::from_named(&hyps, [("A", q(1, 1))]).is_err());
    }
}
