//! Command implementations. Each returns a JSON report value; errors carry
//! the process exit code.

use crate::format::{
    emit_algebra, expr_string, load_algebra, load_envelope, load_form, load_morphism,
    load_targets, parse_element, parse_elements, FileError,
};
use homlie::algebra::{CentralizerMode, Limits};
use homlie::envelopes::{EnvelopeError, PEnvelope};
use homlie::gfp::VecFp;
use homlie::morphisms::{form_report, graph_check, pull_p, push_p, BilinearForm, MorphismError};
use homlie::oracle::{
    self, brute_restrictable, exhaustive_restricted_audit, suite, Construction, GenSpec,
};
use homlie::restricted::{
    enumerate_p_structures, is_restrictable, p_closure, restrict_p_structure, s_terms,
    synthesize_p_structure, verify_p_structure, PStructure, RestrictedError, VerifyMode,
};
use homlie::subspace::Subspace;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Process outcome: input errors exit 2, precondition violations exit 3,
/// internal obstructions exit 4.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Precondition(String),
    Obstruction(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Obstruction(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Precondition(m) | CliError::Obstruction(m) => m,
        }
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<RestrictedError> for CliError {
    fn from(e: RestrictedError) -> Self {
        match e {
            RestrictedError::InvalidTarget { .. }
            | RestrictedError::BudgetExceeded { .. }
            | RestrictedError::NotPClosed
            | RestrictedError::DifferentAlgebras => CliError::Precondition(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<MorphismError> for CliError {
    fn from(e: MorphismError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<EnvelopeError> for CliError {
    fn from(e: EnvelopeError) -> Self {
        match e {
            EnvelopeError::Obstruction { .. } | EnvelopeError::NotFound { .. } => {
                CliError::Obstruction(e.to_string())
            }
            other => CliError::Precondition(other.to_string()),
        }
    }
}

fn exprs(vectors: &[VecFp], names: &[String]) -> Vec<String> {
    vectors.iter().map(|v| expr_string(v, names)).collect()
}

fn subspace_json(s: &Subspace, names: &[String]) -> Value {
    json!({
        "dim": s.dim(),
        "basis": exprs(s.basis(), names),
    })
}

fn images_json(pmap: &PStructure) -> Value {
    let names = pmap.algebra().names();
    let items: Vec<Value> = (0..pmap.algebra().dim())
        .map(|j| json!({ "element": names[j], "image": expr_string(pmap.image(j), names) }))
        .collect();
    Value::Array(items)
}

fn write_or_err(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn cmd_validate(file: &Path, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_algebra(file, limits)?;
    let l = &parsed.algebra;
    let r = l.axiom_report();
    Ok(json!({
        "file": file.display().to_string(),
        "p": l.p(),
        "dim": l.dim(),
        "names": l.names(),
        "alternating": r.alternating,
        "hom_jacobi": r.hom_jacobi,
        "multiplicative": r.multiplicative,
        "pmap_present": parsed.pmap.is_some(),
        "validation": "ok",
    }))
}

pub fn cmd_props(file: &Path, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_algebra(file, limits)?;
    let l = &parsed.algebra;
    let r = l.axiom_report();
    let series = l.lower_central_series();
    let dims: Vec<usize> = series.terms.iter().map(|t| t.dim()).collect();
    Ok(json!({
        "file": file.display().to_string(),
        "p": l.p(),
        "dim": l.dim(),
        "names": l.names(),
        "alternating": r.alternating,
        "hom_jacobi": r.hom_jacobi,
        "multiplicative": r.multiplicative,
        "regular": r.regular,
        "involutive": r.involutive,
        "abelian": r.abelian,
        "series_dims": dims,
        "nilpotent": series.nilpotent,
        "nilpotency_class": series.class,
        "twisted_center_dim": l.center().dim(),
        "ordinary_center_dim": l.center_ordinary().dim(),
        "fixed_point_dim": l.fixed_point_set().dim(),
    }))
}

pub fn cmd_center(file: &Path, ordinary: bool, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_algebra(file, limits)?;
    let l = &parsed.algebra;
    let full = Subspace::full(l.p(), l.dim());
    let mode = if ordinary {
        CentralizerMode::Ordinary
    } else {
        CentralizerMode::AlphaTwisted
    };
    let center = l.centralizer(&full, mode);
    Ok(json!({
        "file": file.display().to_string(),
        "mode": if ordinary { "ordinary" } else { "twisted" },
        "center": subspace_json(&center, l.names()),
    }))
}

pub fn cmd_restrictable(
    file: &Path,
    witness_out: Option<&Path>,
    limits: Limits,
) -> Result<Value, CliError> {
    let parsed = load_algebra(file, limits)?;
    let cert = is_restrictable(&parsed.algebra);
    if let (Some(path), Some(witness)) = (witness_out, &cert.witness) {
        write_or_err(path, &emit_algebra(&parsed.algebra, Some(witness)))?;
    }
    Ok(json!({
        "file": file.display().to_string(),
        "restrictable": cert.decision,
        "failing_basis_index": cert.failing_basis_index,
        "failing_basis_name": cert
            .failing_basis_index
            .map(|i| parsed.algebra.names()[i].clone()),
        "witness": cert.witness.as_ref().map(images_json),
        "witness_written": witness_out
            .filter(|_| cert.witness.is_some())
            .map(|p| p.display().to_string()),
    }))
}

pub fn cmd_synthesize(
    file: &Path,
    targets: Option<&Path>,
    output: Option<&Path>,
    limits: Limits,
) -> Result<Value, CliError> {
    let parsed = load_algebra(file, limits)?;
    let l = &parsed.algebra;
    let target_vec = match targets {
        Some(path) => load_targets(path, l)?,
        None => Vec::new(),
    };
    match synthesize_p_structure(l, &target_vec) {
        Ok(pmap) => {
            let verified = verify_p_structure(&pmap, VerifyMode::Basis)
                .map_err(CliError::from)?
                .ok;
            if let Some(path) = output {
                write_or_err(path, &emit_algebra(l, Some(&pmap)))?;
            }
            Ok(json!({
                "file": file.display().to_string(),
                "restrictable": true,
                "images": images_json(&pmap),
                "verified_basis": verified,
                "written": output.map(|p| p.display().to_string()),
            }))
        }
        Err(RestrictedError::NotRestrictable { basis_index }) => Ok(json!({
            "file": file.display().to_string(),
            "restrictable": false,
            "failing_basis_index": basis_index,
            "failing_basis_name": l.names()[basis_index],
        })),
        Err(other) => Err(other.into()),
    }
}

pub fn cmd_verify_pmap(file: &Path, exhaustive: bool, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_algebra(file, limits)?;
    let pmap = parsed
        .pmap
        .ok_or_else(|| CliError::Input(format!("{}: no pmap section", file.display())))?;
    let basis = verify_p_structure(&pmap, VerifyMode::Basis).map_err(CliError::from)?;
    let mut report = json!({
        "file": file.display().to_string(),
        "basis_ok": basis.ok,
        "basis_violation": basis.violation.as_ref().map(|v| format!("{v:?}")),
    });
    if exhaustive {
        let full = verify_p_structure(&pmap, VerifyMode::Exhaustive).map_err(CliError::from)?;
        let audit = exhaustive_restricted_audit(&pmap, oracle::DESK_BUDGET)
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        let obj = report.as_object_mut().expect("object");
        obj.insert("exhaustive_ok".into(), json!(full.ok));
        obj.insert(
            "exhaustive_violation".into(),
            json!(full.violation.as_ref().map(|v| format!("{v:?}"))),
        );
        obj.insert("independent_audit_ok".into(), json!(audit.ok));
    }
    Ok(report)
}

pub fn cmd_count_pmaps(file: &Path, limit: u64, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_algebra(file, limits)?;
    let l = &parsed.algebra;
    let all = enumerate_p_structures(l, limit).map_err(CliError::from)?;
    let center_dim = l.center().dim();
    Ok(json!({
        "file": file.display().to_string(),
        "count": all.len(),
        "twisted_center_dim": center_dim,
        "center_size_to_dim": format!("{}^{}", homlie::gfp::element_count(l.p(), center_dim), l.dim()),
    }))
}

pub fn cmd_s_terms(file: &Path, x: &str, y: &str, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_algebra(file, limits)?;
    let l = &parsed.algebra;
    let xv = parse_element(x, l).map_err(CliError::Input)?;
    let yv = parse_element(y, l).map_err(CliError::Input)?;
    let terms = s_terms(l, &xv, &yv).map_err(CliError::from)?;
    let items: Vec<Value> = terms
        .terms()
        .iter()
        .enumerate()
        .map(|(i, t)| json!({ "i": i + 1, "term": expr_string(t, l.names()) }))
        .collect();
    Ok(json!({
        "file": file.display().to_string(),
        "x": expr_string(&xv, l.names()),
        "y": expr_string(&yv, l.names()),
        "terms": items,
        "sum": expr_string(&terms.sum(), l.names()),
    }))
}

pub fn cmd_peval(file: &Path, x: &str, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_algebra(file, limits)?;
    let l = &parsed.algebra;
    let pmap = parsed
        .pmap
        .ok_or_else(|| CliError::Input(format!("{}: no pmap section", file.display())))?;
    let xv = parse_element(x, l).map_err(CliError::Input)?;
    Ok(json!({
        "file": file.display().to_string(),
        "x": expr_string(&xv, l.names()),
        "value": expr_string(&pmap.eval(&xv), l.names()),
    }))
}

pub fn cmd_directsum(
    a: &Path,
    b: &Path,
    output: Option<&Path>,
    limits: Limits,
) -> Result<Option<Value>, CliError> {
    let left = load_algebra(a, limits)?;
    let right = load_algebra(b, limits)?;
    let sum = left
        .algebra
        .direct_sum(&right.algebra)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    let sum_pmap = match (&left.pmap, &right.pmap) {
        (Some(p), Some(q)) => {
            Some(homlie::restricted::direct_sum_p(p, q).map_err(CliError::from)?)
        }
        _ => None,
    };
    let text = emit_algebra(&sum, sum_pmap.as_ref());
    match output {
        Some(path) => {
            write_or_err(path, &text)?;
            Ok(Some(json!({
                "written": path.display().to_string(),
                "dim": sum.dim(),
                "pmap_included": sum_pmap.is_some(),
            })))
        }
        None => {
            print!("{text}");
            Ok(None)
        }
    }
}

pub fn cmd_quotient(
    file: &Path,
    ideal_expr: &str,
    output: Option<&Path>,
    limits: Limits,
) -> Result<Option<Value>, CliError> {
    let parsed = load_algebra(file, limits)?;
    let l = &parsed.algebra;
    let gens = parse_elements(ideal_expr, l).map_err(CliError::Input)?;
    let ideal = Subspace::span(l.p(), l.dim(), &gens);
    if !l.is_sub_or_ideal(&ideal).ideal {
        return Err(CliError::Precondition(format!(
            "span of `{ideal_expr}` is not an ideal"
        )));
    }
    let (quotient, _projection) = l
        .quotient(&ideal)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    let text = emit_algebra(&quotient, None);
    match output {
        Some(path) => {
            write_or_err(path, &text)?;
            Ok(Some(json!({
                "written": path.display().to_string(),
                "dim": quotient.dim(),
                "names": quotient.names(),
            })))
        }
        None => {
            print!("{text}");
            Ok(None)
        }
    }
}

pub fn cmd_pclosure(file: &Path, gens: &str, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_algebra(file, limits)?;
    let l = &parsed.algebra;
    let pmap = parsed
        .pmap
        .ok_or_else(|| CliError::Input(format!("{}: no pmap section", file.display())))?;
    let generators = parse_elements(gens, l).map_err(CliError::Input)?;
    let closure = p_closure(&pmap, &generators);
    Ok(json!({
        "file": file.display().to_string(),
        "generators": exprs(&generators, l.names()),
        "closure": subspace_json(&closure, l.names()),
    }))
}

pub fn cmd_morphism_check(
    mapfile: &Path,
    restricted: bool,
    limits: Limits,
) -> Result<Value, CliError> {
    let parsed = load_morphism(mapfile, limits)?;
    let f = &parsed.morphism;
    let plain = f.check(None);
    let mut report = json!({
        "file": mapfile.display().to_string(),
        "commutes_with_twists": plain.commutes_with_twists,
        "preserves_brackets": plain.preserves_brackets,
        "is_morphism": plain.is_morphism(),
        "bracket_witness": plain.bracket_witness.map(|(i, j)| json!([i, j])),
        "injective": f.is_injective(),
        "surjective": f.is_surjective(),
    });
    if restricted {
        let (Some(sp), Some(tp)) = (&parsed.source_pmap, &parsed.target_pmap) else {
            return Err(CliError::Input(
                "restricted check needs pmap sections in both source and target files".into(),
            ));
        };
        let full = f.check(Some((sp, tp)));
        let obj = report.as_object_mut().expect("object");
        let restricted_report = full.restricted.expect("requested restricted check");
        obj.insert(
            "restricted".into(),
            json!(restricted_report.is_restricted()),
        );
        if plain.is_morphism() {
            let graph = graph_check(f, sp, tp).map_err(CliError::from)?;
            obj.insert(
                "graph_is_p_subalgebra".into(),
                json!(graph.graph_is_p_subalgebra),
            );
            obj.insert("graph_agrees".into(), json!(graph.verdicts_agree));
        }
    }
    Ok(report)
}

pub fn cmd_push(mapfile: &Path, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_morphism(mapfile, limits)?;
    let pmap = parsed.source_pmap.as_ref().ok_or_else(|| {
        CliError::Input("push needs a pmap section in the source file".into())
    })?;
    let result = push_p(&parsed.morphism, pmap)?;
    let verified = verify_p_structure(&result.pushed, VerifyMode::Basis)
        .map_err(CliError::from)?
        .ok;
    Ok(json!({
        "file": mapfile.display().to_string(),
        "image": subspace_json(&result.image, parsed.morphism.target().names()),
        "pushed_images": images_json(&result.pushed),
        "verified_basis": verified,
    }))
}

pub fn cmd_pull(mapfile: &Path, sub: &str, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_morphism(mapfile, limits)?;
    let target = parsed.morphism.target();
    let gens = parse_elements(sub, target).map_err(CliError::Input)?;
    let sub_space = Subspace::span(target.p(), target.dim(), &gens);
    if !target.is_sub_or_ideal(&sub_space).subalgebra {
        return Err(CliError::Precondition(format!(
            "span of `{sub}` is not a subalgebra of the target"
        )));
    }
    // The structure on the subalgebra: restrict the target's pmap when
    // present (requires p-closedness), otherwise synthesize one.
    let q = match &parsed.target_pmap {
        Some(tp) => restrict_p_structure(tp, &sub_space).map_err(CliError::from)?,
        None => {
            let (sub_algebra, _) = target
                .restrict_to_subalgebra(&sub_space)
                .map_err(|e| CliError::Precondition(e.to_string()))?;
            match synthesize_p_structure(&sub_algebra, &[]) {
                Ok(pm) => pm,
                Err(RestrictedError::NotRestrictable { basis_index }) => {
                    return Err(CliError::Precondition(format!(
                        "the subalgebra admits no p-structure (fails at basis index {basis_index})"
                    )))
                }
                Err(other) => return Err(other.into()),
            }
        }
    };
    let result = pull_p(&parsed.morphism, &sub_space, &q)?;
    let verified = verify_p_structure(&result.pulled, VerifyMode::Basis)
        .map_err(CliError::from)?
        .ok;
    Ok(json!({
        "file": mapfile.display().to_string(),
        "subalgebra": subspace_json(&sub_space, target.names()),
        "preimage": subspace_json(&result.preimage, parsed.morphism.source().names()),
        "pulled_images": images_json(&result.pulled),
        "verified_basis": verified,
    }))
}

pub fn cmd_form(file: &Path, formfile: &Path, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_algebra(file, limits)?;
    let l = &parsed.algebra;
    let matrix = load_form(formfile, l)?;
    let form = BilinearForm::new(l, matrix)
        .map_err(|e| CliError::Input(format!("{}: {e}", formfile.display())))?;
    let report = form_report(l, &form, parsed.pmap.as_ref()).map_err(CliError::from)?;
    Ok(json!({
        "file": file.display().to_string(),
        "form_file": formfile.display().to_string(),
        "associative": report.associative,
        "associativity_witness": report.associativity_witness.map(|(i, j, k)| json!([i, j, k])),
        "nondegenerate": report.nondegenerate,
        "twisted_center_trivial": report.center_trivial,
        "forces_restrictable": report.forces_restrictable,
        "restrictable": report.restrictable,
        "supplied_pmap_ok": report.supplied_pmap_ok,
    }))
}

fn envelope_report_json(env: &PEnvelope, file: &Path) -> Value {
    let report = env.check();
    json!({
        "file": file.display().to_string(),
        "embedding_is_morphism": report.embedding_is_morphism,
        "embedding_injective": report.embedding_injective,
        "pmap_is_p_structure": report.pmap_is_p_structure,
        "closure_is_everything": report.closure_is_everything,
        "is_envelope": report.ok(),
    })
}

pub fn cmd_envelope_check(envfile: &Path, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_envelope(envfile, limits)?;
    Ok(envelope_report_json(&parsed.envelope, envfile))
}

pub fn cmd_envelope_minimal(envfile: &Path, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_envelope(envfile, limits)?;
    if !parsed.envelope.check().ok() {
        return Err(CliError::Precondition(
            "input does not satisfy the envelope conditions".into(),
        ));
    }
    let m = parsed.envelope.minimality();
    Ok(json!({
        "file": envfile.display().to_string(),
        "minimal": m.minimal,
        "base_involutive": m.base_involutive,
        "center_dim": m.center_dim,
        "advisory": if m.base_involutive { Value::Null } else {
            json!("the criterion is theory-backed only for involutive bases")
        },
    }))
}

pub fn cmd_envelope_minimize(envfile: &Path, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_envelope(envfile, limits)?;
    let minimized = parsed.envelope.minimize()?;
    let g = minimized.restricted().algebra();
    let algebra_lines: Vec<String> = emit_algebra(g, Some(minimized.restricted()))
        .lines()
        .map(str::to_string)
        .collect();
    Ok(json!({
        "file": envfile.display().to_string(),
        "original_dim": parsed.envelope.restricted().algebra().dim(),
        "minimized_dim": g.dim(),
        "minimal": minimized.minimality().minimal,
        "algebra": algebra_lines,
        "embedding": (0..minimized.base().dim())
            .map(|j| expr_string(&minimized.embedding().col(j), g.names()))
            .collect::<Vec<_>>(),
    }))
}

pub fn cmd_envelope_decompose(envfile: &Path, limits: Limits) -> Result<Value, CliError> {
    let parsed = load_envelope(envfile, limits)?;
    let g_names = parsed.envelope.restricted().algebra().names().to_vec();
    let d = parsed.envelope.decompose()?;
    Ok(json!({
        "file": envfile.display().to_string(),
        "part": subspace_json(&d.sub_space, &g_names),
        "ideal": subspace_json(&d.ideal, &g_names),
        "part_images": images_json(d.sub_envelope.restricted()),
        "part_is_envelope": d.sub_envelope.check().ok(),
        "part_minimal": d.sub_envelope.minimality().minimal,
    }))
}

pub fn cmd_oracle(
    file: &Path,
    suite_selection: Option<&str>,
    stable: bool,
    limits: Limits,
) -> Result<Value, CliError> {
    let parsed = load_algebra(file, limits)?;
    let l = &parsed.algebra;
    let started = Instant::now();
    let brute = brute_restrictable(l, oracle::DESK_BUDGET)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    let mut report = json!({
        "file": file.display().to_string(),
        "brute_restrictable": brute.decision,
        "checked_elements": brute.checked_elements,
        "failing_element": brute
            .failing_element
            .as_ref()
            .map(|v| expr_string(v, l.names())),
    });
    let obj = report.as_object_mut().expect("object");
    if let Some(pmap) = &parsed.pmap {
        let audit = exhaustive_restricted_audit(pmap, oracle::DESK_BUDGET)
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        obj.insert("audit_ok".into(), json!(audit.ok));
        obj.insert(
            "audit_violation".into(),
            json!(audit.violation.as_ref().map(|v| format!("{v:?}"))),
        );
    }
    if let Some(selection) = suite_selection {
        if selection != "all" {
            return Err(CliError::Input(format!(
                "unknown suite selection `{selection}` (expected `all`)"
            )));
        }
        let suite_report = suite::theorem_suite(&suite::default_corpus());
        let cases: Vec<Value> = suite_report
            .outcomes
            .iter()
            .map(|o| json!({ "case": o.id, "passed": o.passed, "detail": o.detail }))
            .collect();
        obj.insert("suite_all_passed".into(), json!(suite_report.all_passed()));
        obj.insert("suite".into(), Value::Array(cases));
    }
    if !stable {
        obj.insert(
            "elapsed_ms".into(),
            json!(started.elapsed().as_millis() as u64),
        );
    }
    Ok(report)
}

pub fn cmd_random(
    p: u32,
    dim: usize,
    seed: u64,
    construction: &str,
    output: Option<&Path>,
) -> Result<Option<Value>, CliError> {
    let construction = match construction {
        "yau-twist" => Construction::YauTwist,
        "random-multiplicative" => Construction::RandomMultiplicative,
        "nilpotent" => Construction::Nilpotent,
        "direct-sum" => Construction::DirectSum,
        other => {
            return Err(CliError::Input(format!(
                "unknown construction `{other}` (yau-twist, random-multiplicative, nilpotent, direct-sum)"
            )))
        }
    };
    let spec = GenSpec {
        p,
        dim,
        seed,
        construction,
        count: 1,
    };
    let instance = oracle::random_instance(&spec).map_err(|e| match e {
        oracle::OracleError::GenerationBudget { .. } => CliError::Obstruction(e.to_string()),
        other => CliError::Input(other.to_string()),
    })?;
    let text = emit_algebra(&instance.algebra, instance.pmap.as_ref());
    match output {
        Some(path) => {
            write_or_err(path, &text)?;
            Ok(Some(json!({
                "written": path.display().to_string(),
                "label": instance.label,
                "restrictable": instance.pmap.is_some(),
            })))
        }
        None => {
            print!("{text}");
            Ok(None)
        }
    }
}

pub fn output_path(path: &Option<PathBuf>) -> Option<&Path> {
    path.as_deref()
}
