//! Model documents: the JSON files the command line reads and writes.

use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::generalized::Refinement;
use crate::model::{describe, validate_space, Distribution, GeneralizedEvidenceSpace, Hypothesis, SpaceDescription};
use crate::rational::Rational;

use super::CliError;

/// hypothesis id -> observation id -> probability
pub type MappingEntry = IndexMap<String, IndexMap<String, Rational>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub hypotheses: Vec<String>,
    pub observations: Vec<String>,
    pub delta: Vec<MappingEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prior: Option<IndexMap<String, Rational>>,
    /// Present on refined documents: refined hypothesis id -> coarse id.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surjection: Option<IndexMap<String, String>>,
}

impl ModelDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::parse(format!("invalid model document: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::parse(&read(path)?)
    }

    pub fn description(&self) -> SpaceDescription {
        SpaceDescription {
            hypotheses: self.hypotheses.clone(),
            observations: self.observations.clone(),
            delta: self.delta.clone(),
        }
    }

    pub fn space(&self) -> Result<GeneralizedEvidenceSpace, CliError> {
        Ok(validate_space(&self.description())?.into_generalized())
    }

    /// The prior stored in the document, if any.
    pub fn prior_for(&self, g: &GeneralizedEvidenceSpace) -> Result<Option<Distribution>, CliError> {
        self.prior
            .as_ref()
            .map(|p| complete_prior(g.hypotheses(), p.iter().map(|(k, v)| (k.clone(), v.clone())).collect()))
            .transpose()
    }

    /// The document a validated space is emitted as: duplicate mappings
    /// removed, entries in hypothesis and observation order, rationals in
    /// lowest terms. Prior and surjection entries follow the same order.
    pub fn canonical(&self) -> Result<Self, CliError> {
        let g = self.space()?;
        let prior = self.prior_for(&g)?.map(|p| named(g.hypotheses(), p.masses()));
        let surjection = match &self.surjection {
            None => None,
            Some(s) => {
                let mut ordered = IndexMap::new();
                for h in &self.hypotheses {
                    let target = s.get(h).ok_or_else(|| Error::MissingEntry {
                        context: "surjection".to_string(),
                        kind: "hypothesis",
                        id: h.clone(),
                    })?;
                    ordered.insert(h.clone(), target.clone());
                }
                if let Some(extra) = s.keys().find(|k| !ordered.contains_key(*k)) {
                    return Err(Error::UnknownId { kind: "hypothesis", id: extra.clone() }.into());
                }
                Some(ordered)
            }
        };
        Ok(Self::from_space(&g, prior, surjection))
    }

    pub fn from_space(
        g: &GeneralizedEvidenceSpace,
        prior: Option<IndexMap<String, Rational>>,
        surjection: Option<IndexMap<String, String>>,
    ) -> Self {
        let SpaceDescription { hypotheses, observations, delta } = describe(g);
        ModelDocument { hypotheses, observations, delta, prior, surjection }
    }

    /// The refined model as a document, carrying its surjection.
    pub fn from_refinement(r: &Refinement) -> Self {
        let refined = r.refined();
        let surjection = refined
            .hypotheses()
            .iter()
            .zip(r.surjection())
            .map(|(h, &t)| (h.to_string(), r.coarse_hypotheses()[t].to_string()))
            .collect();
        Self::from_space(&refined.to_generalized(), None, Some(surjection))
    }

    /// Pretty JSON with a trailing newline.
    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

fn named(hypotheses: &[Hypothesis], masses: &[Rational]) -> IndexMap<String, Rational> {
    hypotheses.iter().map(|h| h.to_string()).zip(masses.iter().cloned()).collect()
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))
}

/// Fills in a prior given as `(id, mass)` pairs. At most one hypothesis may
/// be left out; it receives the remaining mass.
pub fn complete_prior(hypotheses: &[Hypothesis], given: Vec<(String, Rational)>) -> Result<Distribution, CliError> {
    let mut entries = given;
    let missing: Vec<&Hypothesis> =
        hypotheses.iter().filter(|h| !entries.iter().any(|(k, _)| k == h.as_str())).collect();
    if missing.len() == 1 {
        let rest = Rational::one() - entries.iter().map(|(_, v)| v).sum::<Rational>();
        entries.push((missing[0].to_string(), rest));
    }
    Ok(Distribution::from_named(hypotheses, entries)?)
}

/// Parses `--prior`: either inline `A=1/100,B=99/100` or the path of a JSON
/// object mapping hypothesis ids to rational strings.
pub fn parse_prior(arg: &str, hypotheses: &[Hypothesis]) -> Result<Distribution, CliError> {
    let pairs = if arg.contains('=') {
        arg.split(',')
            .map(|item| {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| CliError::parse(format!("prior entry {item:?} is not of the form id=p/q")))?;
                let value =
                    v.trim().parse::<Rational>().map_err(|e| CliError::parse(format!("prior entry {item:?}: {e}")))?;
                Ok((k.trim().to_string(), value))
            })
            .collect::<Result<Vec<_>, CliError>>()?
    } else {
        let text = read(Path::new(arg))?;
        let map: IndexMap<String, Rational> =
            serde_json::from_str(&text).map_err(|e| CliError::parse(format!("invalid prior file {arg}: {e}")))?;
        map.into_iter().collect()
    };
    complete_prior(hypotheses, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    const XAM0: &str = r#"{
        "hypotheses": ["A", "B"],
        "observations": ["heads", "tails"],
        "delta": [
            {"A": {"heads": "1", "tails": "0"}, "B": {"tails": "2/4", "heads": "1/2"}},
            {"B": {"heads": "1/2", "tails": "1/2"}, "A": {"heads": "1", "tails": "0"}}
        ],
        "prior": {"B": "99/100", "A": "1/100"}
    }"#;

    #[test]
    fn canonical_form_orders_and_dedupes() {
        let doc = ModelDocument::parse(XAM0).unwrap().canonical().unwrap();
        assert_eq!(doc.delta.len(), 1);
        let b: Vec<_> = doc.delta[0]["B"].iter().map(|(k, v)| (k.as_str(), v.to_string())).collect();
        assert_eq!(b, [("heads", "1/2".to_string()), ("tails", "1/2".to_string())]);
        assert_eq!(doc.prior.as_ref().unwrap().keys().collect::<Vec<_>>(), ["A", "B"]);
        let again = ModelDocument::parse(&doc.emit()).unwrap().canonical().unwrap();
        assert_eq!(again.emit(), doc.emit());
    }

    #[test]
    fn unknown_keys_and_decimals_are_parse_errors() {
        let extra = XAM0.replacen("\"prior\"", "\"priors\"", 1);
        assert_eq!(ModelDocument::parse(&extra).unwrap_err().code, 2);
        let decimal = XAM0.replacen("\"1/100\"", "\"0.01\"", 1);
        assert_eq!(ModelDocument::parse(&decimal).unwrap_err().code, 2);
    }

    #[test]
    fn inline_priors() {
        let hs = vec![Hypothesis::new("A").unwrap(), Hypothesis::new("B").unwrap()];
        let p = parse_prior("A=1/100,B=99/100", &hs).unwrap();
        assert_eq!(p.masses(), &[q(1, 100), q(99, 100)]);
        assert_eq!(parse_prior("A=1/100", &hs).unwrap(), p);
        assert_eq!(parse_prior("A=0.01", &hs).unwrap_err().code, 2);
        assert_eq!(parse_prior("A=1/2,B=1/3", &hs).unwrap_err().code, 3);
        assert_eq!(parse_prior("A=3/2", &hs).unwrap_err().code, 3);
        assert_eq!(parse_prior("C=1", &hs).unwrap_err().code, 3);
    }
}
