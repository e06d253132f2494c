//! Command execution and JSON reports.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use tiltkit::builder::{build_block_extension, build_full_matrix, build_lambda, build_sigma, build_tiled_triangular, BuiltRing};
use tiltkit::decompose::AlgebraCtx;
use tiltkit::dimension::{
    block_dims, check_prop_4_12_hypotheses, cor_1_2_fd_from, cor_1_2_gld_from, cor_4_10, cor_4_11, cor_4_9_from, dim_report,
    is_row_pattern, is_self_injective, lambda_dims, lemma_4_3_triangular, thm_4_6_from, BlockDims, BoundCheck, Budget,
    CheckStatus, LambdaDims, Verdict,
};
use tiltkit::error::Error;
use tiltkit::field::{Field, FieldSpec, PrimeField, Rationals};
use tiltkit::tilting::{block_hom_vanishing, check_d_split, cokernel_modules, d_split_mutations, lambda_gamma_sequence, verify_theorem1};

use crate::format::SpecFile;
use crate::load::{load, Loaded};

pub const DEFAULT_DEPTH: usize = 20;
pub const DEFAULT_MAX_DIM: usize = 512;

pub const BOUND_NAMES: [&str; 8] =
    ["cor_1_2_fd", "cor_1_2_gld", "prop_4_8", "thm_4_6", "cor_4_9", "cor_4_10", "cor_4_11", "lemma_4_3_triangular"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BuildTarget {
    Lambda,
    Sigma,
    Gamma,
    Block,
    Tiled,
}

impl std::str::FromStr for BuildTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "lambda" => BuildTarget::Lambda,
            "sigma" => BuildTarget::Sigma,
            "gamma" => BuildTarget::Gamma,
            "block" => BuildTarget::Block,
            "tiled" => BuildTarget::Tiled,
            _ => return Err(format!("unknown build target `{s}` (lambda|sigma|gamma|block|tiled)")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Build(BuildTarget),
    Dims,
    VerifyThm1,
    /// Empty list: every check applicable to the file.
    VerifyBounds(Vec<String>),
    VerifyProp412,
    ReportAll,
}

impl Command {
    pub fn label(&self) -> String {
        match self {
            Command::Validate => "validate".into(),
            Command::Build(t) => format!("build {}", serde_json::to_value(t).unwrap().as_str().unwrap()),
            Command::Dims => "dims".into(),
            Command::VerifyThm1 => "verify-thm1".into(),
            Command::VerifyBounds(v) if v.is_empty() => "verify-bounds".into(),
            Command::VerifyBounds(v) => format!("verify-bounds {}", v.join(" ")),
            Command::VerifyProp412 => "verify-prop412".into(),
            Command::ReportAll => "report-all".into(),
        }
    }
}

/// Flag values; `None` falls back to the file's `options` and then to the defaults.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub depth: Option<usize>,
    pub budget: Option<(usize, usize, usize)>,
    pub seed: Option<u64>,
    pub field: Option<FieldSpec>,
    pub max_dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunOptions {
    pub depth: usize,
    pub budget: Budget,
    pub seed: u64,
    pub field: String,
    pub max_dim: usize,
}

impl RunOptions {
    pub fn resolve(file: &SpecFile, o: &Overrides) -> (Self, FieldSpec) {
        let seed = o.seed.or(file.options.seed).unwrap_or(0);
        let d = Budget::default();
        let (max_dim, samples, depth) = o.budget.or(file.options.budget).unwrap_or((d.max_dim, d.samples, d.depth));
        let field = o.field.unwrap_or(file.field);
        let opts = RunOptions {
            depth: o.depth.or(file.options.depth).unwrap_or(DEFAULT_DEPTH),
            budget: Budget { max_dim, samples, depth, seed },
            seed,
            field: field.to_string(),
            max_dim: o.max_dim.unwrap_or(DEFAULT_MAX_DIM),
        };
        (opts, field)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub values: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl CheckRecord {
    fn new(name: impl Into<String>, ok: bool, values: Value) -> Self {
        CheckRecord { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, values, message: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportFile {
    pub format_version: u32,
    pub tool_version: String,
    pub command: String,
    pub spec_name: String,
    pub input_digest: String,
    pub options: RunOptions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub exit_code: i32,
    pub wall_time_ms: u128,
}

impl ReportFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON without the wall-time field, for determinism comparisons.
    pub fn stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("wall_time_ms");
        serde_json::to_string_pretty(&v).unwrap()
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Input or validation problem: exit code 1. Validation records are kept for the report.
#[derive(Debug)]
struct InputError(String, Vec<CheckRecord>);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string(), Vec::new())
    }
}

type Out<T> = Result<T, InputError>;

pub fn input_digest(file: &SpecFile, opts: &RunOptions) -> String {
    let mut h = Sha256::new();
    h.update(file.to_text().as_bytes());
    h.update(serde_json::to_string(opts).unwrap().as_bytes());
    format!("{:x}", h.finalize())
}

pub fn run(cmd: &Command, file: &SpecFile, overrides: &Overrides) -> ReportFile {
    let start = Instant::now();
    let (opts, field) = RunOptions::resolve(file, overrides);
    let result = match field {
        FieldSpec::Rationals => run_typed(cmd, file, &opts, Rationals),
        FieldSpec::Prime(p) => match PrimeField::new(p) {
            Ok(f) => run_typed(cmd, file, &opts, f),
            Err(e) => Err(InputError(e.to_string(), Vec::new())),
        },
    };
    let (checks, error) = match result {
        Ok(c) => (c, None),
        Err(InputError(m, records)) => (records, Some(m)),
    };
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let summary = Summary { pass: count(Status::Pass), fail: count(Status::Fail), inconclusive: count(Status::Inconclusive) };
    let exit_code = if error.is_some() {
        1
    } else if summary.fail > 0 {
        2
    } else if summary.inconclusive > 0 {
        3
    } else {
        0
    };
    ReportFile {
        format_version: crate::format::FORMAT_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: cmd.label(),
        spec_name: file.name.clone(),
        input_digest: input_digest(file, &opts),
        options: opts,
        error,
        checks,
        summary,
        exit_code,
        wall_time_ms: start.elapsed().as_millis(),
    }
}

fn run_typed<F: Field>(cmd: &Command, file: &SpecFile, opts: &RunOptions, field: F) -> Out<Vec<CheckRecord>> {
    let loaded = load(file, field, opts.max_dim)?;
    let mut out = Vec::new();
    let validation = validate(&loaded);
    if let Some(bad) = validation.iter().find(|c| c.status == Status::Fail) {
        let msg = format!("{}: {}", bad.name, bad.message.clone().unwrap_or_default());
        return Err(InputError(msg, validation));
    }
    if *cmd == Command::Validate {
        return Ok(validation);
    }
    match cmd {
        Command::Validate => unreachable!(),
        Command::Build(t) => out.push(build_record(&loaded, *t, opts)?),
        Command::Dims => out.extend(dims(&loaded, opts)?),
        Command::VerifyThm1 => out.extend(thm1(&loaded, opts)?),
        Command::VerifyBounds(names) => out.extend(bounds(&loaded, names, opts)?),
        Command::VerifyProp412 => out.push(prop412(&loaded, opts)?),
        Command::ReportAll => {
            out.extend(validation);
            for t in available_targets(&loaded) {
                out.push(build_record(&loaded, t, opts)?);
            }
            out.extend(dims(&loaded, opts)?);
            if loaded.lambda.is_some() {
                out.extend(thm1(&loaded, opts)?);
            }
            out.extend(bounds(&loaded, &[], opts)?);
            if loaded.tiled.is_some() {
                out.push(prop412(&loaded, opts)?);
            }
        }
    }
    Ok(out)
}

fn available_targets<F: Field>(l: &Loaded<F>) -> Vec<BuildTarget> {
    let mut t = Vec::new();
    if l.lambda.is_some() {
        t.extend([BuildTarget::Lambda, BuildTarget::Sigma, BuildTarget::Gamma]);
    }
    if l.block.is_some() {
        t.push(BuildTarget::Block);
    }
    if l.tiled.is_some() {
        t.push(BuildTarget::Tiled);
    }
    t
}

fn validate<F: Field>(l: &Loaded<F>) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let ax = l.base.validate();
    let mut rec = CheckRecord::new(
        "validate.algebra",
        ax.is_valid(),
        json!({"dim": l.base.dim(), "associativity_failures": ax.associativity_failures.len(), "unit_failures": ax.unit_failures}),
    );
    if !ax.is_valid() {
        rec.message = Some(format!("algebra axioms fail: {:?}", ax.associativity_failures.first()));
    }
    out.push(rec);
    let mut push = |name: &str, failures: Vec<String>| {
        let mut r = CheckRecord::new(name, failures.is_empty(), json!({ "failures": failures }));
        if !failures.is_empty() {
            r.message = Some(failures.join("; "));
        }
        out.push(r);
    };
    if let Some(s) = &l.lambda {
        push("validate.lambda", s.validate().failures);
    }
    if let Some(s) = &l.block {
        push("validate.block", s.validate().failures);
    }
    if let Some(s) = &l.tiled {
        push("validate.tiled", s.validate().failures);
    }
    out
}

fn need<'a, T>(x: &'a Option<T>, what: &str) -> Out<&'a T> {
    x.as_ref().ok_or_else(|| InputError(format!("the spec file has no {what} section"), Vec::new()))
}

fn check_cap<F: Field>(r: &BuiltRing<F>, opts: &RunOptions) -> Out<()> {
    if r.algebra.dim() > opts.max_dim {
        return Err(InputError(format!("built ring has dimension {} > --max-dim {}", r.algebra.dim(), opts.max_dim), Vec::new()));
    }
    Ok(())
}

fn build_ring<F: Field>(l: &Loaded<F>, t: BuildTarget, opts: &RunOptions) -> Out<BuiltRing<F>> {
    let r = match t {
        BuildTarget::Lambda => build_lambda(need(&l.lambda, "lambda")?)?,
        BuildTarget::Sigma => build_sigma(need(&l.lambda, "lambda")?)?,
        BuildTarget::Gamma => {
            let n = need(&l.lambda, "lambda")?.n;
            if n * n * l.base.dim() > opts.max_dim {
                return Err(InputError(format!("M_{n}(A) has dimension {} > --max-dim {}", n * n * l.base.dim(), opts.max_dim), Vec::new()));
            }
            build_full_matrix(&l.base, n)?
        }
        BuildTarget::Block => build_block_extension(need(&l.block, "block")?)?,
        BuildTarget::Tiled => build_tiled_triangular(need(&l.tiled, "tiled")?)?,
    };
    check_cap(&r, opts)?;
    Ok(r)
}

fn structure_digest<F: Field>(r: &BuiltRing<F>) -> String {
    let a = &r.algebra;
    let mut h = Sha256::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            for (k, c) in a.structure(i, j) {
                h.update(format!("{i} {j} {k} {c}\n").as_bytes());
            }
        }
    }
    format!("{:x}", h.finalize())
}

fn build_record<F: Field>(l: &Loaded<F>, t: BuildTarget, opts: &RunOptions) -> Out<CheckRecord> {
    let r = build_ring(l, t, opts)?;
    let ax = r.algebra.validate();
    let mismatches = r.entry_mismatches();
    let name = format!("build.{}", serde_json::to_value(t).unwrap().as_str().unwrap());
    Ok(CheckRecord::new(
        name,
        ax.is_valid() && mismatches.is_empty(),
        json!({
            "dim": r.algebra.dim(),
            "n": r.n,
            "entry_dims": r.entry_dims(),
            "axioms_valid": ax.is_valid(),
            "entry_mismatches": mismatches,
            "structure_digest": structure_digest(&r),
        }),
    ))
}

fn dims_record<F: Field>(name: &str, ctx: &Arc<AlgebraCtx<F>>, opts: &RunOptions) -> CheckRecord {
    let rep = dim_report(ctx, &opts.budget);
    let status = if rep.gld_interval().cutoff { Status::Inconclusive } else { Status::Pass };
    CheckRecord {
        name: format!("dims.{name}"),
        status,
        values: json!({
            "dim": ctx.algebra.dim(),
            "gldim": rep.gldim.to_string(),
            "self_injective": rep.self_injective,
            "findim_lower": rep.findim_lower,
            "findim_upper": rep.findim_upper.map_or("unknown".to_string(), |p| p.to_string()),
            "fd_interval": rep.fd_interval().to_string(),
            "budget": rep.budget,
            "witness": rep.witness,
        }),
        message: None,
    }
}

fn dims<F: Field>(l: &Loaded<F>, opts: &RunOptions) -> Out<Vec<CheckRecord>> {
    let mut out = vec![dims_record("base", &AlgebraCtx::new(l.base.clone(), None)?, opts)];
    for t in available_targets(l) {
        if t == BuildTarget::Gamma {
            continue;
        }
        let r = build_ring(l, t, opts)?;
        let ctx = AlgebraCtx::new(r.algebra.clone(), Some(&r.idems))?;
        out.push(dims_record(serde_json::to_value(t).unwrap().as_str().unwrap(), &ctx, opts));
    }
    Ok(out)
}

fn thm1<F: Field>(l: &Loaded<F>, opts: &RunOptions) -> Out<Vec<CheckRecord>> {
    let spec = need(&l.lambda, "lambda")?;
    let lam = build_lambda(spec)?;
    check_cap(&lam, opts)?;
    let r = verify_theorem1(spec, opts.depth)?;
    let mut out = vec![
        CheckRecord::new(
            "thm1.dimensions",
            r.dim_end_t == r.dim_sigma,
            json!({"dim_lambda": r.dim_lambda, "dim_sigma": r.dim_sigma, "dim_end_t": r.dim_end_t, "end_block_dims": r.end_block_dims}),
        ),
        CheckRecord::new("thm1.certificate", r.certificate.is_valid(), serde_json::to_value(&r.certificate).unwrap()),
        CheckRecord::new("thm1.tilting", r.tilting.passes(), serde_json::to_value(&r.tilting).unwrap()),
        CheckRecord::new("thm1.hom_lattice", r.hom_lattice.holds(), serde_json::to_value(&r.hom_lattice).unwrap()),
        CheckRecord::new(
            "thm1.d_split",
            r.d_split.passes(),
            json!({"report": r.d_split, "failed": r.d_split.failed()}),
        ),
        CheckRecord::new("thm1.invariants", r.invariants.all_equal(), serde_json::to_value(&r.invariants).unwrap()),
    ];
    let bundle = cokernel_modules(spec)?;
    let inst = lambda_gamma_sequence(&bundle)?;
    let mut controls = Vec::new();
    let mut all_caught = true;
    for (name, m) in d_split_mutations(&inst) {
        let rep = check_d_split(&m)?;
        all_caught &= !rep.passes();
        controls.push(json!({"mutation": name, "failed": rep.failed()}));
    }
    out.push(CheckRecord::new("thm1.d_split_controls", all_caught, Value::Array(controls)));
    Ok(out)
}

fn bound_record(c: BoundCheck, explicit: bool) -> Option<CheckRecord> {
    let status = match c.status {
        CheckStatus::Holds | CheckStatus::Consistent => Status::Pass,
        CheckStatus::Fails => Status::Fail,
        CheckStatus::Inconclusive => Status::Inconclusive,
        CheckStatus::NotApplicable if explicit => Status::Inconclusive,
        CheckStatus::NotApplicable => return None,
    };
    let inputs: serde_json::Map<String, Value> = c.inputs.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    Some(CheckRecord {
        name: c.name.clone(),
        status,
        values: json!({
            "lhs": c.lhs.to_string(),
            "rhs": c.rhs.to_string(),
            "evaluation": c.status,
            "inputs": inputs,
            "note": c.note,
            "scope": "finitely generated modules; fd bracketed by budgeted witnesses and global dimension",
        }),
        message: None,
    })
}

fn bounds<F: Field>(l: &Loaded<F>, names: &[String], opts: &RunOptions) -> Out<Vec<CheckRecord>> {
    for n in names {
        if !BOUND_NAMES.contains(&n.as_str()) {
            return Err(InputError(format!("unknown bound `{n}`; known: {}", BOUND_NAMES.join(", ")), Vec::new()));
        }
    }
    let explicit = !names.is_empty();
    let wants = |n: &str| names.is_empty() || names.iter().any(|m| m == n);
    let budget = &opts.budget;
    let mut checks: Vec<(BoundCheck, bool)> = Vec::new();
    let mut extra = Vec::new();

    let lambda_names = ["cor_1_2_fd", "cor_1_2_gld", "prop_4_8", "cor_4_11", "lemma_4_3_triangular"];
    if lambda_names.iter().any(|n| wants(n)) {
        match &l.lambda {
            None if explicit && names.iter().any(|n| lambda_names.contains(&n.as_str())) => {
                return Err(InputError("the requested bounds need a lambda section".into(), Vec::new()))
            }
            None => {}
            Some(spec) => {
                check_cap(&build_lambda(spec)?, opts)?;
                let mut dims: Option<LambdaDims> = None;
                let get = |dims: &mut Option<LambdaDims>| -> Out<()> {
                    if dims.is_none() {
                        *dims = Some(lambda_dims(spec, budget)?);
                    }
                    Ok(())
                };
                if wants("cor_1_2_fd") {
                    get(&mut dims)?;
                    checks.extend(cor_1_2_fd_from(spec.n, dims.as_ref().unwrap()).into_iter().map(|c| (c, explicit)));
                }
                if wants("cor_1_2_gld") || wants("prop_4_8") {
                    get(&mut dims)?;
                    checks.extend(cor_1_2_gld_from(spec.n, dims.as_ref().unwrap()).into_iter().map(|c| (c, explicit)));
                }
                if wants("cor_4_11") && (explicit || is_row_pattern(spec)) {
                    checks.extend(cor_4_11(spec, budget)?.into_iter().map(|c| (c, explicit)));
                }
                if wants("lemma_4_3_triangular") {
                    let sigma = build_sigma(spec)?;
                    checks.extend(lemma_4_3_triangular(&sigma, spec.n - 1, budget)?.into_iter().map(|c| (c, explicit)));
                }
            }
        }
    }

    let block_names = ["thm_4_6", "cor_4_9", "cor_4_10"];
    if block_names.iter().any(|n| wants(n)) {
        match &l.block {
            None if explicit && names.iter().any(|n| block_names.contains(&n.as_str())) => {
                return Err(InputError("the requested bounds need a block section".into(), Vec::new()))
            }
            None => {}
            Some(spec) => {
                let ring = build_block_extension(spec)?;
                check_cap(&ring, opts)?;
                let mut dims: Option<BlockDims> = None;
                if wants("thm_4_6") || wants("cor_4_9") {
                    dims = Some(block_dims(spec, budget)?);
                }
                if wants("thm_4_6") {
                    checks.extend(thm_4_6_from(dims.as_ref().unwrap()).into_iter().map(|c| (c, explicit)));
                    let mut blocks = Vec::new();
                    let mut start = 0;
                    for (e, &size) in spec.idems.iter().zip(&spec.sizes) {
                        blocks.push((start, size, e.clone()));
                        start += size;
                    }
                    let v = block_hom_vanishing(&ring, &blocks)?;
                    extra.push(CheckRecord::new("thm_4_6.hom_vanishing", v.holds(), serde_json::to_value(&v).unwrap()));
                }
                if wants("cor_4_9") {
                    checks.push((cor_4_9_from(dims.as_ref().unwrap()), explicit));
                }
                if wants("cor_4_10") {
                    let qf = is_self_injective(&AlgebraCtx::new(spec.base.clone(), None)?);
                    if qf || explicit {
                        checks.push((cor_4_10(spec, budget)?, explicit));
                    }
                }
            }
        }
    }
    let mut out: Vec<CheckRecord> = checks.into_iter().filter_map(|(c, e)| bound_record(c, e)).collect();
    out.extend(extra);
    Ok(out)
}

fn prop412<F: Field>(l: &Loaded<F>, opts: &RunOptions) -> Out<CheckRecord> {
    let spec = need(&l.tiled, "tiled")?;
    check_cap(&build_tiled_triangular(spec)?, opts)?;
    let r = check_prop_4_12_hypotheses(spec, &opts.budget)?;
    let status = match r.verdict {
        Verdict::Verified if r.estimate_within_cap() => Status::Pass,
        Verdict::Verified | Verdict::Refuted => Status::Fail,
        Verdict::Inconclusive => Status::Inconclusive,
    };
    Ok(CheckRecord {
        name: "prop_4_12.hypotheses".into(),
        status,
        values: json!({
            "verdict": r.verdict,
            "pd_hypotheses": r.pd_hypotheses,
            "fd_a": r.fd_a.to_string(),
            "fd_quotients": r.fd_quotients.iter().map(|(i, f)| json!({"i": i, "fd": f.map_or("zero ring".to_string(), |x| x.to_string())})).collect::<Vec<_>>(),
            "phi_estimate": r.phi_estimate,
            "cap": r.cap,
            "estimate_within_cap": r.estimate_within_cap(),
        }),
        message: None,
    })
}
