use std::path::Path;

use serde_json::{json, Value};

use crate::error::Error;
use crate::evidence::weight_of_evidence;
use crate::generalized::{
    bound_formula, check_uncorrelated, posterior_set, refine, upper_lower_from_likelihoods, upper_lower_weights,
    Bounds, PosteriorSet, Side,
};
use crate::model::{Distribution, GeneralizedEvidenceSpace, Likelihood};
use crate::oracle::{
    bayes_agreement_check, bound_formula_check, corner_correspondence, refined_cross_check, Gap, OracleConfig,
};
use crate::sequence::{generalized_sequence_weight, update_with_sequence, CombinationSemantics, ObservationSequence};

use super::document::{parse_prior, ModelDocument};
use super::render::{self, header, row, table, weight_rows};
use super::{Cli, CliError, Command, Outcome};

pub(crate) fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Weights { model } => weights(&load(model)?.1),
        Command::Update { model, prior, obs, semantics } => {
            let (doc, g) = load(model)?;
            let prior = require_prior(&doc, &g, prior.as_deref())?;
            update(&g, &prior, obs, (*semantics).into())
        }
        Command::Bounds { model, prior, obs } => {
            let (doc, g) = load(model)?;
            let prior = require_prior(&doc, &g, prior.as_deref())?;
            bounds(&g, &prior, obs)
        }
        Command::CheckUncorrelated { model } => Ok(check(&load(model)?.1)),
        Command::Refine { model, output } => refine_model(&load(model)?.1, output.as_deref()),
        Command::Combine { model, obs, semantics } => combine(&load(model)?.1, obs, (*semantics).into()),
        Command::Verify { model, prior, trials, samples } => {
            let (doc, g) = load(model)?;
            let prior = match prior {
                Some(p) => parse_prior(p, g.hypotheses())?,
                None => doc.prior_for(&g)?.unwrap_or_else(|| Distribution::uniform(g.num_hypotheses())),
            };
            let config = OracleConfig { samples: *samples, seed: cli.seed, ..OracleConfig::default() };
            verify(&g, &prior, *trials, &config)
        }
    }
}

fn load(path: &Path) -> Result<(ModelDocument, GeneralizedEvidenceSpace), CliError> {
    let doc = ModelDocument::load(path)?;
    let g = doc.space()?;
    Ok((doc, g))
}

fn require_prior(
    doc: &ModelDocument,
    g: &GeneralizedEvidenceSpace,
    arg: Option<&str>,
) -> Result<Distribution, CliError> {
    match arg {
        Some(p) => parse_prior(p, g.hypotheses()),
        None => doc
            .prior_for(g)?
            .ok_or_else(|| CliError::validation("no prior: pass --prior or add \"prior\" to the model")),
    }
}

fn observation_indices(g: &GeneralizedEvidenceSpace, ids: &[String]) -> Result<Vec<usize>, CliError> {
    ids.iter().map(|id| g.observation_index(id.trim()).map_err(CliError::from)).collect()
}

fn semantics_name(s: CombinationSemantics) -> &'static str {
    match s {
        CombinationSemantics::FixedMapping => "fixed",
        CombinationSemantics::PerObservation => "per-observation",
    }
}

fn weights(g: &GeneralizedEvidenceSpace) -> Result<Outcome, CliError> {
    let hyps = g.hypotheses();
    let obs = g.observations();
    let members: Vec<_> = (0..g.delta().len()).map(|i| weight_of_evidence(&g.member(i))).collect();
    let mut text = String::new();
    let mut json_members = Vec::new();
    for (i, w) in members.iter().enumerate() {
        if members.len() > 1 {
            text.push_str(&format!("mapping {}\n", i + 1));
        } else {
            text.push_str("weights\n");
        }
        text.push_str(&table(&header("ob", hyps), &weight_rows(obs, w.rows())));
        json_members.push(render::weight_table(hyps, obs, w.rows()));
    }
    let mut json = render::object(vec![
        ("hypotheses", render::strings(hyps)),
        ("observations", render::strings(obs)),
        ("members", Value::Array(json_members)),
    ]);
    if members.len() > 1 {
        let mut distinct = members.clone();
        distinct.sort();
        distinct.dedup();
        let t = upper_lower_weights(g);
        text.push_str(&format!("distinct weight functions: {}\n", distinct.len()));
        text.push_str("upper weights\n");
        text.push_str(&table(&header("ob", hyps), &weight_rows(obs, t.upper.rows())));
        text.push_str("lower weights\n");
        text.push_str(&table(&header("ob", hyps), &weight_rows(obs, t.lower.rows())));
        let map = json.as_object_mut().expect("object");
        map.insert("distinct".into(), json!(distinct.len()));
        map.insert("upper".into(), render::weight_table(hyps, obs, t.upper.rows()));
        map.insert("lower".into(), render::weight_table(hyps, obs, t.lower.rows()));
    }
    Ok(Outcome { text, json, code: 0 })
}

fn bounds_rows(g: &GeneralizedEvidenceSpace, set: &PosteriorSet) -> (Vec<Vec<String>>, Value) {
    let mut rows = Vec::new();
    let mut json = serde_json::Map::new();
    for (h, id) in g.hypotheses().iter().enumerate() {
        let b = set.bounds_of(&[h]);
        rows.push(vec![id.to_string(), b.lower.to_string(), b.upper.to_string()]);
        json.insert(id.to_string(), bounds_json(&b));
    }
    (rows, Value::Object(json))
}

fn bounds_json(b: &Bounds) -> Value {
    render::object(vec![("lower", render::rational(&b.lower)), ("upper", render::rational(&b.upper))])
}

fn bounds_header() -> Vec<String> {
    ["hypothesis", "lower", "upper"].map(String::from).to_vec()
}

fn update(
    g: &GeneralizedEvidenceSpace,
    prior: &Distribution,
    obs: &[String],
    semantics: CombinationSemantics,
) -> Result<Outcome, CliError> {
    let hyps = g.hypotheses();
    let indices = observation_indices(g, obs)?;
    let set = if indices.len() == 1 {
        posterior_set(g, prior, indices[0])?
    } else {
        let seq = ObservationSequence::new(indices, g.num_observations())?;
        update_with_sequence(g, prior, &seq, semantics)?
    };
    let names: Vec<&str> = obs.iter().map(|s| s.trim()).collect();
    let mut text = table(&header("hypothesis", hyps), &[row("prior", prior.masses())]);
    let title = if names.len() == 1 {
        format!("posteriors after {}\n", names[0])
    } else {
        format!("posteriors after {} ({} mapping)\n", names.join(", "), semantics_name(semantics))
    };
    text.push_str(&title);
    let rows: Vec<_> = set.members().iter().enumerate().map(|(i, d)| row(i + 1, d.masses())).collect();
    text.push_str(&table(&header("#", hyps), &rows));
    let (brows, bjson) = bounds_rows(g, &set);
    text.push_str("bounds\n");
    text.push_str(&table(&bounds_header(), &brows));
    text.push_str(&format!("defined: {}  excluded: {}\n", set.defined(), set.excluded()));
    let json = render::object(vec![
        ("observations", render::strings(&names)),
        ("semantics", json!(semantics_name(semantics))),
        ("prior", render::distribution(hyps, prior)),
        ("posteriors", Value::Array(set.members().iter().map(|d| render::distribution(hyps, d)).collect())),
        ("bounds", bjson),
        ("defined", json!(set.defined())),
        ("excluded", json!(set.excluded())),
    ]);
    Ok(Outcome { text, json, code: 0 })
}

fn gap_label(enumerated: &Bounds, formula: &Bounds) -> &'static str {
    if enumerated.upper > formula.upper || enumerated.lower < formula.lower {
        "VIOLATED"
    } else if enumerated == formula {
        "TIGHT"
    } else {
        "STRICT"
    }
}

fn bounds(g: &GeneralizedEvidenceSpace, prior: &Distribution, obs: &[String]) -> Result<Outcome, CliError> {
    let hyps = g.hypotheses();
    let indices = if obs.is_empty() { (0..g.num_observations()).collect() } else { observation_indices(g, obs)? };
    let uncorrelated = check_uncorrelated(g).is_uncorrelated();
    let mut text = String::new();
    let mut json_obs = serde_json::Map::new();
    for &ob in &indices {
        let set = posterior_set(g, prior, ob)?;
        let name = g.observations()[ob].to_string();
        text.push_str(&format!("observation {name}\n"));
        let mut rows = Vec::new();
        let mut entries = serde_json::Map::new();
        for (h, id) in hyps.iter().enumerate() {
            let en = set.bounds_of(&[h]);
            let mut cells = vec![id.to_string(), en.lower.to_string(), en.upper.to_string()];
            let mut entry = vec![("enumerated", bounds_json(&en))];
            if uncorrelated {
                let formula = Bounds {
                    lower: bound_formula(g, prior, ob, h, Side::Lower)?,
                    upper: bound_formula(g, prior, ob, h, Side::Upper)?,
                };
                let gap = gap_label(&en, &formula);
                cells.extend([formula.lower.to_string(), formula.upper.to_string(), gap.to_string()]);
                entry.push(("formula", bounds_json(&formula)));
                entry.push(("gap", json!(gap)));
            }
            rows.push(cells);
            entries.insert(id.to_string(), render::object(entry));
        }
        let mut head = bounds_header();
        if uncorrelated {
            head.extend(["formula-lower", "formula-upper", "gap"].map(String::from));
        }
        text.push_str(&table(&head, &rows));
        if !uncorrelated {
            text.push_str("formula: correlated: skipped\n");
        }
        json_obs.insert(name, Value::Object(entries));
    }
    let likelihood_tables = if uncorrelated {
        let t = upper_lower_from_likelihoods(g)?;
        let obs_ids = g.observations();
        text.push_str("upper weights from likelihoods\n");
        text.push_str(&table(&header("ob", hyps), &weight_rows(obs_ids, t.upper.rows())));
        text.push_str("lower weights from likelihoods\n");
        text.push_str(&table(&header("ob", hyps), &weight_rows(obs_ids, t.lower.rows())));
        render::object(vec![
            ("upper", render::weight_table(hyps, obs_ids, t.upper.rows())),
            ("lower", render::weight_table(hyps, obs_ids, t.lower.rows())),
        ])
    } else {
        text.push_str("weights from likelihoods: correlated: skipped\n");
        json!("correlated: skipped")
    };
    let json = render::object(vec![
        ("prior", render::distribution(hyps, prior)),
        ("uncorrelated", json!(uncorrelated)),
        ("observations", Value::Object(json_obs)),
        ("likelihood_weights", likelihood_tables),
    ]);
    Ok(Outcome { text, json, code: 0 })
}

fn likelihood_rows(ls: &[&Likelihood]) -> Vec<Vec<String>> {
    ls.iter().enumerate().map(|(i, l)| row(i + 1, l.masses())).collect()
}

fn likelihood_json(g: &GeneralizedEvidenceSpace, l: &Likelihood) -> Value {
    Value::Object(g.observations().iter().zip(l.masses()).map(|(o, v)| (o.to_string(), render::rational(v))).collect())
}

fn check(g: &GeneralizedEvidenceSpace) -> Outcome {
    let result = check_uncorrelated(g);
    let obs_header: Vec<String> =
        std::iter::once("#".to_string()).chain(g.observations().iter().map(|o| o.to_string())).collect();
    let mut text = String::from(if result.is_uncorrelated() { "uncorrelated\n" } else { "correlated\n" });
    let mut factors = serde_json::Map::new();
    for (h, set) in result.projections().iter().enumerate() {
        let id = g.hypotheses()[h].to_string();
        text.push_str(&format!("likelihoods of {id}\n"));
        text.push_str(&table(&obs_header, &likelihood_rows(&set.iter().collect::<Vec<_>>())));
        factors.insert(id, Value::Array(set.iter().map(|l| likelihood_json(g, l)).collect()));
    }
    let witness = match result.witness() {
        None => Value::Null,
        Some(m) => {
            let mut head = vec!["hypothesis".to_string()];
            head.extend(g.observations().iter().map(|o| o.to_string()));
            let rows: Vec<_> = g.hypotheses().iter().zip(m.likelihoods()).map(|(h, l)| row(h, l.masses())).collect();
            text.push_str("witness: product mapping missing from the set\n");
            text.push_str(&table(&head, &rows));
            Value::Object(
                g.hypotheses()
                    .iter()
                    .zip(m.likelihoods())
                    .map(|(h, l)| (h.to_string(), likelihood_json(g, l)))
                    .collect(),
            )
        }
    };
    let json = render::object(vec![
        ("uncorrelated", json!(result.is_uncorrelated())),
        ("factors", Value::Object(factors)),
        ("witness", witness),
    ]);
    Outcome { text, json, code: 0 }
}

fn refine_model(g: &GeneralizedEvidenceSpace, output: Option<&Path>) -> Result<Outcome, CliError> {
    let r = refine(g)?;
    let doc = ModelDocument::from_refinement(&r);
    let emitted = doc.emit();
    let json = serde_json::to_value(&doc).expect("documents serialize");
    match output {
        None => Ok(Outcome { text: emitted, json, code: 0 }),
        Some(path) => {
            std::fs::write(path, &emitted)
                .map_err(|e| CliError::parse(format!("cannot write {}: {e}", path.display())))?;
            let rows: Vec<_> =
                doc.surjection.iter().flatten().map(|(fine, coarse)| vec![fine.clone(), coarse.clone()]).collect();
            let mut text = format!("wrote {}\n", path.display());
            text.push_str(&table(&["refined".to_string(), "coarse".to_string()], &rows));
            Ok(Outcome {
                text,
                json: render::object(vec![("output", json!(path.display().to_string())), ("document", json)]),
                code: 0,
            })
        }
    }
}

fn combine(g: &GeneralizedEvidenceSpace, obs: &[String], semantics: CombinationSemantics) -> Result<Outcome, CliError> {
    let hyps = g.hypotheses();
    let seq = ObservationSequence::new(observation_indices(g, obs)?, g.num_observations())?;
    let weights = generalized_sequence_weight(g, &seq, semantics)?;
    let names: Vec<&str> = obs.iter().map(|s| s.trim()).collect();
    let mut text = format!("sequence {} ({} mapping)\n", names.join(", "), semantics_name(semantics));
    let rows: Vec<_> = weights.members().iter().enumerate().map(|(i, d)| row(i + 1, d.masses())).collect();
    text.push_str(&table(&header("#", hyps), &rows));
    text.push_str(&format!("excluded: {}\n", weights.excluded()));
    let json = render::object(vec![
        ("observations", render::strings(&names)),
        ("semantics", json!(semantics_name(semantics))),
        ("weights", Value::Array(weights.members().iter().map(|d| render::distribution(hyps, d)).collect())),
        ("excluded", json!(weights.excluded())),
    ]);
    Ok(Outcome { text, json, code: 0 })
}

struct CheckLine {
    check: &'static str,
    scope: String,
    result: &'static str,
    detail: String,
}

fn verify(
    g: &GeneralizedEvidenceSpace,
    prior: &Distribution,
    trials: usize,
    config: &OracleConfig,
) -> Result<Outcome, CliError> {
    let hyps = g.hypotheses();
    let mut lines = Vec::new();
    let pass = |ok: bool| if ok { "PASS" } else { "FAIL" };

    for i in 0..g.delta().len() {
        let report = bayes_agreement_check(&g.member(i), prior, trials, config.seed.wrapping_add(i as u64));
        lines.push(CheckLine {
            check: "bayes-agreement",
            scope: format!("mapping {}", i + 1),
            result: pass(report.passed()),
            detail: format!(
                "{} comparisons over {} priors, {} violations",
                report.checks,
                report.trials,
                report.violations.len()
            ),
        });
    }

    let bc = bound_formula_check(g, prior)?;
    lines.push(CheckLine {
        check: "weight-extremes",
        scope: "all".into(),
        result: pass(bc.extremes_agree),
        detail: "per-cell max/min against per-mapping weights".into(),
    });
    lines.push(CheckLine {
        check: "likelihood-weights",
        scope: "all".into(),
        result: match bc.likelihood_tables_agree {
            None => "SKIP",
            Some(ok) => pass(ok),
        },
        detail: if bc.uncorrelated { "tables from likelihood extremes".into() } else { "correlated".into() },
    });
    for e in &bc.entries {
        let scope = format!("{}/{}", g.observations()[e.observation], hyps[e.hypothesis]);
        let (result, detail) = match &e.gap {
            Gap::Skipped(why) => ("SKIP", why.clone()),
            Gap::Violated => ("FAIL", "enumerated bounds outside the formula".to_string()),
            Gap::Strict if bc.two_hypotheses => ("FAIL", "formula not tight with two hypotheses".to_string()),
            Gap::Strict => ("PASS", "strict".to_string()),
            Gap::Tight => ("PASS", "tight".to_string()),
        };
        lines.push(CheckLine { check: "bound-formula", scope, result, detail });
    }

    match refine(g) {
        Ok(r) => {
            let corr = corner_correspondence(g, &r, prior)?;
            lines.push(CheckLine {
                check: "corner-correspondence",
                scope: "all".into(),
                result: pass(corr.holds()),
                detail: format!(
                    "{} unmatched mappings, {} unmatched corners",
                    corr.unmatched_mappings.len(),
                    corr.unmatched_corners.len()
                ),
            });
            for c in refined_cross_check(g, prior, config)? {
                let scope = format!("{}/{}", g.observations()[c.observation], hyps[c.hypothesis]);
                let detail = match &c.refined {
                    Some(o) => format!("{} corners, {} samples, {} escapes", o.corners, o.samples, o.escapes.len()),
                    None => "no defined posterior".to_string(),
                };
                lines.push(CheckLine { check: "refined-bounds", scope, result: pass(c.agrees()), detail });
            }
        }
        Err(Error::CorrelatedSpace) => {
            for check in ["corner-correspondence", "refined-bounds"] {
                lines.push(CheckLine { check, scope: "all".into(), result: "SKIP", detail: "correlated".into() });
            }
        }
        Err(e) => return Err(e.into()),
    }

    Ok(summarize(&lines, config.seed))
}

/// Renders the check list; any failed line makes the exit code 1.
fn summarize(lines: &[CheckLine], seed: u64) -> Outcome {
    let passed = lines.iter().all(|l| l.result != "FAIL");
    let head = ["check", "scope", "result", "detail"].map(String::from).to_vec();
    let rows: Vec<_> = lines
        .iter()
        .map(|l| vec![l.check.to_string(), l.scope.clone(), l.result.to_string(), l.detail.clone()])
        .collect();
    let mut text = table(&head, &rows);
    text.push_str(if passed { "all checks passed\n" } else { "violations found\n" });
    let json = render::object(vec![
        ("passed", json!(passed)),
        ("seed", json!(seed)),
        (
            "checks",
            Value::Array(
                lines
                    .iter()
                    .map(|l| json!({"check": l.check, "scope": l.scope, "result": l.result, "detail": l.detail}))
                    .collect(),
            ),
        ),
    ]);
    Outcome { text, json, code: if passed { 0 } else { 1 } }
}
