//! Subcommand implementations.
//!
//! Each command takes already-loaded document text, runs the decision
//! procedure, and returns a [`CommandOutcome`]: the report to print plus
//! the process exit code. Validation problems surface as [`CliError`]
//! values (exit `2`); failed internal consistency guards — a certificate
//! that does not recheck, a fuzz counterexample — use exit `3`.

use std::io::Read;

use gradext_core::differentials::{kaehler_module, nontrivial_class};
use gradext_core::galois::{dual_basis, is_galois};
use gradext_core::gallery::{replay_trial, run_fuzz, BaseChoice, FuzzConfig, TheoremLane};
use gradext_core::homology::{graded_tor, group_cohomology, tensor_self_nonzero, tor, GModule};
use gradext_core::module::PresentedModule;
use gradext_core::separable::{
    concentrate_idempotent, degree_zero_regular, is_separability_idempotent,
    separability_idempotent, ConcentrationOutcome,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::document::{DocumentError, InstanceDocument, ModuleDocument, MODULE_FORMAT};
use crate::report::ReportDocument;

/// Environment variable bounding resolution length for `tor`, `graded-tor`,
/// and `group-cohomology`.
pub const RESOLUTION_CAP_VAR: &str = "GRADEXT_RESOLUTION_CAP";
/// Default bound when the variable is unset.
pub const DEFAULT_RESOLUTION_CAP: usize = 6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Document(#[from] DocumentError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 3,
            _ => 2,
        }
    }
}

/// What a command produced: either a structured report or raw text to
/// print verbatim (gallery emits instance documents, not reports).
#[derive(Debug)]
pub enum Output {
    Report(ReportDocument),
    Raw(String),
}

#[derive(Debug)]
pub struct CommandOutcome {
    pub output: Output,
    pub exit: i32,
}

impl CommandOutcome {
    fn report(command: &str, payload: Value, exit: i32) -> CommandOutcome {
        CommandOutcome {
            output: Output::Report(ReportDocument::new(command, payload)),
            exit,
        }
    }
}

/// Read a document from a path, `-` meaning standard input.
pub fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_string(),
            source,
        })
    }
}

pub fn resolution_cap() -> Result<usize, CliError> {
    match std::env::var(RESOLUTION_CAP_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_RESOLUTION_CAP),
        Err(e) => Err(CliError::Usage(format!("{RESOLUTION_CAP_VAR}: {e}"))),
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("{RESOLUTION_CAP_VAR}={s:?} is not a number"))),
    }
}

fn check_cap(what: &str, value: usize, cap: usize) -> Result<(), CliError> {
    if value > cap {
        return Err(CliError::Usage(format!(
            "{what}={value} exceeds the resolution cap {cap} (raise {RESOLUTION_CAP_VAR} to allow it)"
        )));
    }
    Ok(())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("core reports serialize")
}

fn realize_instance(
    text: &str,
) -> Result<
    (
        gradext_core::algebra::GradedAlgebra,
        Option<gradext_core::group::GroupAction>,
    ),
    CliError,
> {
    let doc = InstanceDocument::parse(text)?;
    Ok(doc.realize()?)
}

fn require_action(
    pair: (
        gradext_core::algebra::GradedAlgebra,
        Option<gradext_core::group::GroupAction>,
    ),
    command: &str,
) -> Result<
    (
        gradext_core::algebra::GradedAlgebra,
        gradext_core::group::GroupAction,
    ),
    CliError,
> {
    match pair.1 {
        Some(action) => Ok((pair.0, action)),
        None => Err(CliError::Usage(format!(
            "{command} needs an instance with a group action (`group` and `action` fields)"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Galois commands
// ---------------------------------------------------------------------------

pub fn cmd_check_galois(instance_text: &str) -> Result<CommandOutcome, CliError> {
    let (algebra, action) = require_action(realize_instance(instance_text)?, "check-galois")?;
    let report = is_galois(&algebra, &action).map_err(|e| CliError::Usage(e.to_string()))?;
    if report.is_galois && report.certificate.is_none() {
        return Err(CliError::Internal(
            "positive Galois verdict without a certificate".into(),
        ));
    }
    if !report.is_galois && report.failure.is_none() {
        return Err(CliError::Internal(
            "negative Galois verdict without a failure diagnostic".into(),
        ));
    }
    let payload = json!({
        "verdict": report.is_galois,
        "group_order": action.order(),
        "galois": to_value(&report),
    });
    Ok(CommandOutcome::report("check-galois", payload, 0))
}

pub fn cmd_dual_basis(instance_text: &str) -> Result<CommandOutcome, CliError> {
    let (algebra, action) = require_action(realize_instance(instance_text)?, "dual-basis")?;
    let report = is_galois(&algebra, &action).map_err(|e| CliError::Usage(e.to_string()))?;
    if !report.is_galois {
        let payload = json!({
            "verdict": false,
            "galois": false,
            "failure": report.failure,
            "dual_basis": Value::Null,
        });
        return Ok(CommandOutcome::report("dual-basis", payload, 0));
    }
    let cert = report.certificate.as_ref().ok_or_else(|| {
        CliError::Internal("positive Galois verdict without a certificate".into())
    })?;
    let basis = dual_basis(&algebra, &action, cert).map_err(|e| CliError::Internal(e.to_string()))?;
    let basis = basis.ok_or_else(|| {
        CliError::Internal("certified Galois extension yielded no dual basis".into())
    })?;
    let payload = json!({
        "verdict": true,
        "galois": true,
        "dual_basis": to_value(&basis),
    });
    Ok(CommandOutcome::report("dual-basis", payload, 0))
}

// ---------------------------------------------------------------------------
// Separability commands
// ---------------------------------------------------------------------------

pub fn cmd_check_separable(instance_text: &str) -> Result<CommandOutcome, CliError> {
    let (algebra, _) = realize_instance(instance_text)?;
    let report = separability_idempotent(&algebra);
    if let Some(e) = &report.idempotent {
        if !is_separability_idempotent(&algebra, e) {
            return Err(CliError::Internal(
                "claimed separability idempotent failed its recheck".into(),
            ));
        }
    } else if report.separable {
        return Err(CliError::Internal(
            "positive separability verdict without an idempotent".into(),
        ));
    }
    let payload = json!({
        "verdict": report.separable,
        "separability": to_value(&report),
    });
    Ok(CommandOutcome::report("check-separable", payload, 0))
}

pub fn cmd_concentrate(instance_text: &str) -> Result<CommandOutcome, CliError> {
    let (algebra, _) = realize_instance(instance_text)?;
    let sep = separability_idempotent(&algebra);
    let regularity = degree_zero_regular(&algebra);
    let Some(e) = &sep.idempotent else {
        let payload = json!({
            "verdict": false,
            "separable": false,
            "outcome": Value::Null,
            "regularity": to_value(&regularity),
        });
        return Ok(CommandOutcome::report("concentrate", payload, 0));
    };
    let outcome = concentrate_idempotent(&algebra, e).map_err(|err| CliError::Internal(err.to_string()))?;
    match &outcome {
        ConcentrationOutcome::Concentrated { idempotent } => {
            if !is_separability_idempotent(&algebra, idempotent) {
                return Err(CliError::Internal(
                    "concentrated idempotent failed its recheck".into(),
                ));
            }
        }
        ConcentrationOutcome::Stuck { witness } => {
            if !witness.product_is_zero {
                return Err(CliError::Internal(
                    "zero-divisor witness failed its recheck".into(),
                ));
            }
        }
        ConcentrationOutcome::Unchanged { .. } => {}
    }
    let concentrated = matches!(outcome, ConcentrationOutcome::Concentrated { .. });
    let payload = json!({
        "verdict": concentrated,
        "separable": true,
        "outcome": to_value(&outcome),
        "regularity": to_value(&regularity),
    });
    Ok(CommandOutcome::report("concentrate", payload, 0))
}

// ---------------------------------------------------------------------------
// Differentials commands
// ---------------------------------------------------------------------------

pub fn cmd_kaehler(instance_text: &str) -> Result<CommandOutcome, CliError> {
    let (algebra, _) = realize_instance(instance_text)?;
    let km = kaehler_module(&algebra).map_err(|e| CliError::Usage(e.to_string()))?;
    let payload = json!({
        "verdict": !km.module.is_zero(),
        "module": to_value(&km.module),
        "invariant_factors": to_value(&km.module.invariant_factors()),
        "ideal_generators": to_value(&km.ideal.generators),
        "ideal_degrees": km.ideal.degrees,
        "derivation": to_value(&km.derivation),
    });
    Ok(CommandOutcome::report("kaehler", payload, 0))
}

pub fn cmd_hh1(instance_text: &str) -> Result<CommandOutcome, CliError> {
    let (algebra, _) = realize_instance(instance_text)?;
    let witness = nontrivial_class(&algebra).map_err(|e| CliError::Usage(e.to_string()))?;
    let payload = json!({
        "verdict": witness.is_some(),
        "witness": witness.as_ref().map(to_value),
    });
    Ok(CommandOutcome::report("hh1", payload, 0))
}

// ---------------------------------------------------------------------------
// Homology commands
// ---------------------------------------------------------------------------

fn realize_module(text: &str) -> Result<ModuleDocument, CliError> {
    Ok(ModuleDocument::parse(text)?)
}

pub fn cmd_tor(m_text: &str, n_text: &str, p: usize) -> Result<CommandOutcome, CliError> {
    check_cap("p", p, resolution_cap()?)?;
    let m = realize_module(m_text)?.realize()?;
    let n = realize_module(n_text)?.realize()?;
    let module = tor(&m, &n, p).map_err(|e| CliError::Usage(e.to_string()))?;
    let payload = json!({
        "p": p,
        "verdict": !module.is_zero(),
        "module": to_value(&module),
        "invariant_factors": to_value(&module.invariant_factors()),
    });
    Ok(CommandOutcome::report("tor", payload, 0))
}

pub fn cmd_graded_tor(m_text: &str, n_text: &str, p: usize) -> Result<CommandOutcome, CliError> {
    check_cap("p", p, resolution_cap()?)?;
    let m = realize_module(m_text)?.realize()?;
    let n = realize_module(n_text)?.realize()?;
    let pieces = graded_tor(&m, &n, p).map_err(|e| CliError::Usage(e.to_string()))?;
    let rendered: Vec<Value> = pieces
        .iter()
        .map(|piece| {
            json!({
                "degree": piece.degree,
                "module": to_value(&piece.module),
                "invariant_factors": to_value(&piece.module.invariant_factors()),
                "summands": to_value(&piece.summands),
            })
        })
        .collect();
    let payload = json!({
        "p": p,
        "verdict": pieces.iter().any(|piece| !piece.module.is_zero()),
        "pieces": rendered,
    });
    Ok(CommandOutcome::report("graded-tor", payload, 0))
}

/// Accepts either an instance document with an action (the algebra becomes
/// the module, graded by its basis degrees) or a module document carrying
/// `group` and `action` fields.
pub fn cmd_group_cohomology(text: &str, s: usize) -> Result<CommandOutcome, CliError> {
    check_cap("s", s, resolution_cap()?)?;
    let sniff: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Document(DocumentError::Parse(e.to_string())))?;
    let format = sniff.get("format").and_then(Value::as_str).unwrap_or("");
    let gm = if format == MODULE_FORMAT {
        let doc = realize_module(text)?;
        let module = doc.realize()?;
        let Some((group, matrices)) = doc.realize_action()? else {
            return Err(CliError::Usage(
                "group-cohomology needs a module document with `group` and `action` fields".into(),
            ));
        };
        GModule::validate(group, module, matrices).map_err(|e| CliError::Usage(e.to_string()))?
    } else {
        let (algebra, action) = require_action(realize_instance(text)?, "group-cohomology")?;
        let degrees: Vec<i64> = (0..algebra.rank()).map(|i| algebra.degree(i)).collect();
        let module = PresentedModule::free(algebra.base().clone(), degrees);
        GModule::validate(action.group.clone(), module, action.matrices.clone())
            .map_err(|e| CliError::Usage(e.to_string()))?
    };
    let module = group_cohomology(&gm, s).map_err(|e| CliError::Usage(e.to_string()))?;
    let payload = json!({
        "s": s,
        "group_order": gm.group.order(),
        "verdict": !module.is_zero(),
        "module": to_value(&module),
        "invariant_factors": to_value(&module.invariant_factors()),
    });
    Ok(CommandOutcome::report("group-cohomology", payload, 0))
}

pub fn cmd_tensor_self(module_text: &str) -> Result<CommandOutcome, CliError> {
    let m = realize_module(module_text)?.realize()?;
    let (nonzero, fingerprint) =
        tensor_self_nonzero(&m).map_err(|e| CliError::Usage(e.to_string()))?;
    let payload = json!({
        "verdict": nonzero,
        "invariant_factors": to_value(&fingerprint),
    });
    Ok(CommandOutcome::report("tensor-self", payload, 0))
}

// ---------------------------------------------------------------------------
// Gallery
// ---------------------------------------------------------------------------

pub use gradext_core::gallery::EXAMPLE_NAMES as GALLERY_NAMES;

/// Build a named example instance and return its document text.
pub fn gallery_document(name: &str) -> Result<String, CliError> {
    let (algebra, action) = gradext_core::gallery::named_example(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown gallery name {name:?}; available: {}",
            GALLERY_NAMES.join(", ")
        ))
    })?;
    Ok(InstanceDocument::from_algebra(&algebra, action.as_ref()).to_json())
}

pub fn cmd_gallery(name: &str) -> Result<CommandOutcome, CliError> {
    Ok(CommandOutcome {
        output: Output::Raw(gallery_document(name)?),
        exit: 0,
    })
}

// ---------------------------------------------------------------------------
// Fuzz
// ---------------------------------------------------------------------------

pub fn parse_base_choice(s: &str) -> Result<BaseChoice, String> {
    if s == "mixed" {
        Ok(BaseChoice::Mixed)
    } else if s == "integers" {
        Ok(BaseChoice::Integers)
    } else if let Some(n) = s.strip_prefix("mod:") {
        let n: u64 = n
            .parse()
            .map_err(|_| format!("bad modulus in base choice {s:?}"))?;
        if n < 2 {
            return Err(format!("modulus must be at least 2, got {n}"));
        }
        Ok(BaseChoice::Modular { n })
    } else if let Some(p) = s.strip_prefix("fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| format!("bad prime in base choice {s:?}"))?;
        Ok(BaseChoice::PrimeField { p })
    } else {
        Err(format!(
            "unknown base choice {s:?}; use mixed, integers, mod:<n>, or fp:<p>"
        ))
    }
}

pub fn parse_degree_range(s: &str) -> Result<(i64, i64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("degree range must be `lo,hi`, got {s:?}"));
    }
    let lo: i64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound in degree range {s:?}"))?;
    let hi: i64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound in degree range {s:?}"))?;
    if lo > hi {
        return Err(format!("empty degree range {s:?}"));
    }
    Ok((lo, hi))
}

fn parse_lane(token: &str) -> Result<TheoremLane, CliError> {
    TheoremLane::parse(token).ok_or_else(|| {
        let all: Vec<&str> = TheoremLane::all().iter().map(|l| l.token()).collect();
        CliError::Usage(format!(
            "unknown fuzz lane {token:?}; available: {}",
            all.join(", ")
        ))
    })
}

fn record_is_counterexample(record: &gradext_core::gallery::TrialRecord) -> bool {
    record.hypotheses_met && record.conclusion_holds == Some(false)
}

pub fn cmd_fuzz(
    lane_token: &str,
    cfg: FuzzConfig,
    instance_seed: Option<u64>,
) -> Result<CommandOutcome, CliError> {
    let lane = parse_lane(lane_token)?;
    if let Some(seed) = instance_seed {
        let record = replay_trial(lane, seed, &cfg);
        let exit = if record_is_counterexample(&record) { 3 } else { 0 };
        let payload = json!({
            "lane": lane.token(),
            "instance_seed": seed,
            "verdict": !record_is_counterexample(&record),
            "record": to_value(&record),
        });
        return Ok(CommandOutcome::report("fuzz", payload, exit));
    }
    let report = run_fuzz(lane, &cfg);
    let exit = if report.counterexamples.is_empty() { 0 } else { 3 };
    let payload = json!({
        "lane": lane.token(),
        "config": to_value(&cfg),
        "verdict": report.counterexamples.is_empty(),
        "report": to_value(&report),
    });
    Ok(CommandOutcome::report("fuzz", payload, exit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use gradext_core::ring::BaseRing;

    fn payload(outcome: &CommandOutcome) -> &Value {
        match &outcome.output {
            Output::Report(report) => &report.payload,
            Output::Raw(_) => panic!("expected a report"),
        }
    }

    #[test]
    fn gallery_documents_parse_and_are_stable() {
        for name in GALLERY_NAMES {
            let text = gallery_document(name).unwrap();
            assert_eq!(text, gallery_document(name).unwrap(), "{name} not stable");
            let doc = InstanceDocument::parse(&text).unwrap();
            doc.realize().unwrap();
        }
        assert!(matches!(
            gallery_document("no-such"),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn check_galois_accepts_gallery_fixture() {
        let text = gallery_document("f4").unwrap();
        let outcome = cmd_check_galois(&text).unwrap();
        assert_eq!(outcome.exit, 0);
        assert_eq!(payload(&outcome)["verdict"], Value::Bool(true));

        let dual = cmd_dual_basis(&text).unwrap();
        assert_eq!(dual.exit, 0);
        assert_eq!(payload(&dual)["verdict"], Value::Bool(true));
    }

    #[test]
    fn action_is_required_where_it_matters() {
        let text = gallery_document("matrix-4-6").unwrap();
        let err = cmd_check_galois(&text).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn separability_verdicts_match_known_examples() {
        let sep = cmd_check_separable(&gallery_document("axa").unwrap()).unwrap();
        assert_eq!(payload(&sep)["verdict"], Value::Bool(true));
        let not_sep = cmd_check_separable(&gallery_document("dual-numbers").unwrap()).unwrap();
        assert_eq!(not_sep.exit, 0);
        assert_eq!(payload(&not_sep)["verdict"], Value::Bool(false));
    }

    #[test]
    fn resolution_cap_rejects_large_degrees() {
        let m = PresentedModule::cyclic(BaseRing::integers(), 2);
        let text = ModuleDocument::from_module(&m).to_json();
        let err = cmd_tor(&text, &text, 99).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains(RESOLUTION_CAP_VAR));
    }

    #[test]
    fn fuzz_replay_reproduces_batch_records() {
        let cfg = FuzzConfig {
            trials: 6,
            seed: 11,
            ..FuzzConfig::default()
        };
        let batch = cmd_fuzz("thm-3.2", cfg.clone(), None).unwrap();
        assert_eq!(batch.exit, 0);
        let records = payload(&batch)["report"]["records"].as_array().unwrap().clone();
        let picked = &records[3];
        let seed = picked["instance_seed"].as_u64().unwrap();
        let replay = cmd_fuzz("thm-3.2", cfg, Some(seed)).unwrap();
        let record = &payload(&replay)["record"];
        assert_eq!(record["construction"], picked["construction"]);
        assert_eq!(record["conclusion_holds"], picked["conclusion_holds"]);
        assert!(matches!(
            cmd_fuzz("thm-9.9", FuzzConfig::default(), None),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn degree_range_and_base_parsers_validate() {
        assert_eq!(parse_degree_range("-2,3").unwrap(), (-2, 3));
        assert!(parse_degree_range("3,-2").is_err());
        assert!(parse_degree_range("1").is_err());
        assert!(matches!(
            parse_base_choice("fp:5").unwrap(),
            BaseChoice::PrimeField { p: 5 }
        ));
        assert!(parse_base_choice("mod:1").is_err());
        assert!(parse_base_choice("nope").is_err());
    }
}
