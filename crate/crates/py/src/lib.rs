//! Python bindings for the workbench.
//!
//! Every function speaks JSON strings: instance and module documents go
//! in, report documents come out. The reports are byte-identical to what
//! the `gradext` command line prints for the same inputs (tool, version,
//! command, payload), so results are directly comparable across the two
//! entry points and a Python caller can reuse any fixture committed for
//! the CLI.
//!
//! Error mapping: malformed documents, axiom violations, and bad
//! parameters raise `ValueError`; an internal consistency failure — a
//! certificate that does not recheck — raises `RuntimeError`. Fuzz
//! counterexamples are *results*, not errors: the returned report carries
//! them in its `counterexamples` list and `verdict` field.

use gradext_cli::commands::{self, CliError, CommandOutcome, Output};
use gradext_cli::document::InstanceDocument;
use gradext_core::gallery::{BaseChoice, FuzzConfig, TheoremLane};
use gradext_core::matrix::Matrix;
use gradext_core::ring::BaseRing;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn convert(err: CliError) -> PyErr {
    match &err {
        CliError::Internal(_) => PyRuntimeError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

/// Render a command outcome as the same JSON text the CLI would print.
/// The process exit code is dropped: counterexample reports are returned,
/// not raised, and the caller reads the `verdict` field instead.
fn render(outcome: CommandOutcome) -> String {
    match outcome.output {
        Output::Report(report) => report.to_json(),
        Output::Raw(text) => text,
    }
}

/// Parse, fully validate, and canonically reserialize an instance
/// document. Returns the canonical text; raises `ValueError` if the
/// document is malformed or the algebra or action fails its axioms.
#[pyfunction]
fn validate_instance(text: &str) -> PyResult<String> {
    let doc = InstanceDocument::parse(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let (algebra, action) = doc
        .realize()
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(InstanceDocument::from_algebra(&algebra, action.as_ref()).to_json())
}

/// Decide whether the instance is a Galois extension of its degree-zero
/// invariants for its declared action; the report carries a certificate
/// or a failure diagnostic.
#[pyfunction]
fn check_galois(instance: &str) -> PyResult<String> {
    Ok(render(commands::cmd_check_galois(instance).map_err(convert)?))
}

/// Produce the trace-dual pair of bases behind a positive Galois verdict.
#[pyfunction]
fn dual_basis(instance: &str) -> PyResult<String> {
    Ok(render(commands::cmd_dual_basis(instance).map_err(convert)?))
}

/// Decide separability by searching the twisted tensor square for a
/// separability idempotent; the report carries the idempotent found.
#[pyfunction]
fn check_separable(instance: &str) -> PyResult<String> {
    Ok(render(commands::cmd_check_separable(instance).map_err(convert)?))
}

/// Try to move a separability idempotent into degree zero, reporting
/// either the concentrated idempotent or the zero-divisor obstruction.
#[pyfunction]
fn concentrate(instance: &str) -> PyResult<String> {
    Ok(render(commands::cmd_concentrate(instance).map_err(convert)?))
}

/// Present the module of relative differential forms with its universal
/// derivation and invariant factors.
#[pyfunction]
fn kaehler(instance: &str) -> PyResult<String> {
    Ok(render(commands::cmd_kaehler(instance).map_err(convert)?))
}

/// Look for a derivation class that no inner derivation matches; the
/// witness, when present, certifies a nonvanishing first cohomology.
#[pyfunction]
fn hh1(instance: &str) -> PyResult<String> {
    Ok(render(commands::cmd_hh1(instance).map_err(convert)?))
}

/// Torsion product of two presented modules in homological degree `p`.
#[pyfunction(signature = (m, n, p = 1))]
fn tor(m: &str, n: &str, p: usize) -> PyResult<String> {
    Ok(render(commands::cmd_tor(m, n, p).map_err(convert)?))
}

/// Degreewise torsion product: one piece per internal degree, each with
/// its own invariant factors.
#[pyfunction(signature = (m, n, p = 1))]
fn graded_tor(m: &str, n: &str, p: usize) -> PyResult<String> {
    Ok(render(commands::cmd_graded_tor(m, n, p).map_err(convert)?))
}

/// Group cohomology `H^s` of a module document with `group` and `action`
/// fields, or of an instance document (the algebra as a module over its
/// base, graded by basis degrees).
#[pyfunction(signature = (input, s = 1))]
fn group_cohomology(input: &str, s: usize) -> PyResult<String> {
    Ok(render(commands::cmd_group_cohomology(input, s).map_err(convert)?))
}

/// Decide whether `M (x) M` is nonzero for a presented module, with the
/// invariant-factor fingerprint of the tensor square.
#[pyfunction]
fn tensor_self(module: &str) -> PyResult<String> {
    Ok(render(commands::cmd_tensor_self(module).map_err(convert)?))
}

/// Instance document text for one of the named examples.
#[pyfunction]
fn gallery(name: &str) -> PyResult<String> {
    commands::gallery_document(name).map_err(convert)
}

/// Names accepted by `gallery`.
#[pyfunction]
fn gallery_names() -> Vec<String> {
    commands::GALLERY_NAMES.iter().map(|s| s.to_string()).collect()
}

/// Lane tokens accepted by `fuzz`.
#[pyfunction]
fn fuzz_lanes() -> Vec<String> {
    TheoremLane::all().iter().map(|l| l.token().to_string()).collect()
}

/// Property-test one lane on generated instances, or replay a single
/// trial when `instance_seed` is given. Counterexamples appear in the
/// returned report; they are never raised.
#[pyfunction(signature = (
    theorem,
    trials = 100,
    seed = 0,
    max_rank = 4,
    degree_range = "-2,3",
    base = "mixed",
    group_order = 4,
    jobs = 1,
    instance_seed = None,
))]
#[allow(clippy::too_many_arguments)]
fn fuzz(
    theorem: &str,
    trials: u64,
    seed: u64,
    max_rank: usize,
    degree_range: &str,
    base: &str,
    group_order: usize,
    jobs: usize,
    instance_seed: Option<u64>,
) -> PyResult<String> {
    let degree_range = commands::parse_degree_range(degree_range).map_err(PyValueError::new_err)?;
    let base: BaseChoice = commands::parse_base_choice(base).map_err(PyValueError::new_err)?;
    let cfg = FuzzConfig {
        trials,
        seed,
        max_rank,
        degree_range,
        base,
        group_order,
        jobs,
    };
    Ok(render(commands::cmd_fuzz(theorem, cfg, instance_seed).map_err(convert)?))
}

/// Smith normal form of an integer matrix, optionally over `Z/modulus`.
/// Returns `{"u": ..., "d": ..., "v": ..., "diagonal": ...}` with entries
/// as decimal strings; `u * m * v = d` with `u`, `v` invertible.
#[pyfunction(signature = (rows, modulus = None))]
fn smith_normal_form(rows: Vec<Vec<i64>>, modulus: Option<u64>) -> PyResult<String> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(PyValueError::new_err("matrix must be nonempty"));
    }
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(PyValueError::new_err("rows have unequal lengths"));
    }
    let ring = match modulus {
        None => BaseRing::integers(),
        Some(n) => BaseRing::integers_mod(n).map_err(|e| PyValueError::new_err(e.to_string()))?,
    };
    let borrowed: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let m = Matrix::from_i64_rows(&ring, &borrowed);
    let snf = m.smith_normal_form();
    let diagonal: Vec<String> = snf.diagonal().iter().map(|s| s.to_string()).collect();
    let doc = serde_json::json!({
        "u": snf.u,
        "d": snf.d,
        "v": snf.v,
        "diagonal": diagonal,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("matrices serialize");
    text.push('\n');
    Ok(text)
}

#[pymodule]
fn gradext_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(validate_instance, m)?)?;
    m.add_function(wrap_pyfunction!(check_galois, m)?)?;
    m.add_function(wrap_pyfunction!(dual_basis, m)?)?;
    m.add_function(wrap_pyfunction!(check_separable, m)?)?;
    m.add_function(wrap_pyfunction!(concentrate, m)?)?;
    m.add_function(wrap_pyfunction!(kaehler, m)?)?;
    m.add_function(wrap_pyfunction!(hh1, m)?)?;
    m.add_function(wrap_pyfunction!(tor, m)?)?;
    m.add_function(wrap_pyfunction!(graded_tor, m)?)?;
    m.add_function(wrap_pyfunction!(group_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_self, m)?)?;
    m.add_function(wrap_pyfunction!(gallery, m)?)?;
    m.add_function(wrap_pyfunction!(gallery_names, m)?)?;
    m.add_function(wrap_pyfunction!(fuzz_lanes, m)?)?;
    m.add_function(wrap_pyfunction!(fuzz, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    Ok(())
}
