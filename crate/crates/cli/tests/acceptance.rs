//! Acceptance gate: prints one PASS/FAIL line per criterion and exits nonzero if any fails.
//!
//! Pinned tolerances: every comparison is exact (integer or field equality); criterion 1
//! allows 30 s per instance, criterion 8 allows 600 s in total.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tiltkit::algebra::presets::{full_matrix, ground, lower_triangular, product_of_fields, truncated_poly};
use tiltkit::algebra::FdAlgebra;
use tiltkit::builder::{build_block_extension, build_lambda, build_sigma, build_tiled_triangular, BuiltRing, LambdaSpec};
use tiltkit::decompose::AlgebraCtx;
use tiltkit::dimension::{
    cor_1_2_gld_from, cor_4_10, cor_4_11, global_dimension, is_row_pattern, is_self_injective, lambda_dims, Budget,
    CheckStatus, DimReport, ExtInt, Interval,
};
use tiltkit::field::{Field, PrimeField, Rationals};
use tiltkit::linalg::{Matrix, Subspace};
use tiltkit::module::{ext_dim_from, hom_dim, minimal_resolution, resolution_stages, LeftModule, PdValue};
use tiltkit::tilting::{check_d_split, cokernel_modules, d_split_mutations, lambda_gamma_sequence, verify_theorem1, Theorem1Report};
use tiltkit_cli::corpus::corpus;
use tiltkit_cli::format::SpecFile;
use tiltkit_cli::load::{load, Loaded};

const MAX_DIM: usize = 512;
const PER_INSTANCE: Duration = Duration::from_secs(30);
const SUITE_LIMIT: Duration = Duration::from_secs(600);

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn line(id: &'static str, failures: &[String], ok_detail: String) -> Line {
    if failures.is_empty() {
        Line { id, pass: true, detail: ok_detail }
    } else {
        Line { id, pass: false, detail: failures.join("; ") }
    }
}

fn lambda_entries() -> Vec<(String, LambdaSpec<Rationals>)> {
    corpus()
        .into_iter()
        .filter(|s| s.lambda.is_some())
        .map(|s| {
            let l = load(&s, Rationals, MAX_DIM).expect("corpus entry loads");
            (s.name.clone(), l.lambda.expect("lambda present"))
        })
        .collect()
}

struct Thm1Run {
    name: String,
    report: Theorem1Report,
    elapsed: Duration,
    controls: Vec<(&'static str, Vec<&'static str>)>,
}

fn run_theorem(entries: &[(String, LambdaSpec<Rationals>)]) -> Vec<Thm1Run> {
    entries
        .iter()
        .map(|(name, spec)| {
            let t = Instant::now();
            let report = verify_theorem1(spec, 20).expect("theorem run");
            let elapsed = t.elapsed();
            let bundle = cokernel_modules(spec).expect("bundle");
            let inst = lambda_gamma_sequence(&bundle).expect("sequence");
            let controls = d_split_mutations(&inst)
                .into_iter()
                .map(|(m, i)| (m, check_d_split(&i).expect("control check").failed()))
                .collect();
            Thm1Run { name: name.clone(), report, elapsed, controls }
        })
        .collect()
}

fn criterion_1(runs: &[Thm1Run]) -> Line {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for r in runs {
        slowest = slowest.max(r.elapsed);
        if !r.report.certificate.is_valid() {
            bad.push(format!("{}: certificate invalid", r.name));
        }
        if r.report.dim_end_t != r.report.dim_sigma {
            bad.push(format!("{}: dim End T {} vs dim Sigma {}", r.name, r.report.dim_end_t, r.report.dim_sigma));
        }
        if r.elapsed > PER_INSTANCE {
            bad.push(format!("{}: {:?}", r.name, r.elapsed));
        }
    }
    if runs.len() < 6 {
        bad.push(format!("only {} instances", runs.len()));
    }
    line("1 isomorphism certificate", &bad, format!("{} instances, slowest {:.2?}", runs.len(), slowest))
}

fn criterion_2(runs: &[Thm1Run]) -> Line {
    let bad: Vec<String> =
        runs.iter().filter(|r| !r.report.tilting.passes()).map(|r| format!("{}: {:?}", r.name, r.report.tilting)).collect();
    line("2 tilting conditions", &bad, format!("pd T <= 1, Ext1(T,T) = 0, add(T)-resolutions on {} instances", runs.len()))
}

fn criterion_3(runs: &[Thm1Run]) -> Line {
    let bad: Vec<String> = runs.iter().filter(|r| !r.report.hom_lattice.holds()).map(|r| r.name.clone()).collect();
    line("3 hom lattice", &bad, format!("all (i, j) and the vanishing cases on {} instances", runs.len()))
}

fn criterion_4(runs: &[Thm1Run]) -> Line {
    let mut bad = Vec::new();
    for r in runs {
        if !r.report.d_split.passes() {
            bad.push(format!("{}: fails {:?}", r.name, r.report.d_split.failed()));
        }
        if r.controls.len() < 3 {
            bad.push(format!("{}: only {} controls", r.name, r.controls.len()));
        }
        for (m, failed) in &r.controls {
            if failed.is_empty() {
                bad.push(format!("{}: control {m} not caught", r.name));
            }
        }
    }
    line("4 D-split sequence", &bad, format!("{} instances, every mutation control rejected with a named condition", runs.len()))
}

fn criterion_5(runs: &[Thm1Run]) -> Line {
    let bad: Vec<String> = runs
        .iter()
        .filter(|r| !r.report.invariants.all_equal())
        .map(|r| format!("{}: {:?}", r.name, r.report.invariants))
        .collect();
    line("5 derived invariants", &bad, format!("simples, |det Cartan|, dim center equal on {} pairs", runs.len()))
}

fn all_exact(d: &Option<DimReport>) -> bool {
    d.as_ref().map_or(true, |r| matches!(r.gldim, PdValue::Exact(_) | PdValue::MinusInfinity))
}

fn criterion_6(entries: &[(String, LambdaSpec<Rationals>)]) -> Line {
    let budget = Budget::default();
    let mut bad = Vec::new();
    let mut finite = Vec::new();
    for (name, spec) in entries {
        let d = lambda_dims(spec, &budget).expect("lambda dims");
        let exact = all_exact(&d.a) && all_exact(&d.lambda) && d.ai_mod_ii.iter().chain(&d.a_mod_ii).all(all_exact);
        if !exact {
            continue;
        }
        finite.push(name.clone());
        let mut checks = cor_1_2_gld_from(spec.n, &d);
        if is_row_pattern(spec) {
            checks.extend(cor_4_11(spec, &budget).expect("row-pattern bound"));
        }
        for c in checks {
            if c.status != CheckStatus::Holds {
                bad.push(format!("{name}: {} is {:?} ({} vs {})", c.name, c.status, c.lhs, c.rhs));
            }
        }
    }
    if finite.is_empty() {
        bad.push("no finite-gldim instance".into());
    }
    let mut qf = Vec::new();
    for (entry, rhs) in [("qf-block-dual", 1), ("example3", 3)] {
        let file = corpus().into_iter().find(|s| s.name == entry).expect("corpus entry");
        let l = load(&file, Rationals, MAX_DIM).expect("loads");
        let spec = l.block.expect("block spec");
        let base_qf = is_self_injective(&AlgebraCtx::new(spec.base.clone(), None).expect("ctx"));
        let c = cor_4_10(&spec, &budget).expect("block bound");
        let lower_ok = match c.lhs.lo {
            ExtInt::Fin(k) => k <= rhs,
            ExtInt::NegInf => true,
            ExtInt::PosInf => false,
        };
        let ok = base_qf
            && c.rhs == Interval::fin(rhs)
            && lower_ok
            && matches!(c.status, CheckStatus::Holds | CheckStatus::Consistent);
        if !ok {
            bad.push(format!("{entry}: self-injective {base_qf}, {:?} {} vs {}", c.status, c.lhs, c.rhs));
        }
        qf.push(format!("{entry} fd bracket {} against bound {rhs} ({:?})", c.lhs, c.status));
    }
    line(
        "6 dimension bounds",
        &bad,
        format!("exact gldim bounds hold on {}; {}", finite.join(", "), qf.join(", ")),
    )
}

/// Modules whose projective dimension is compared with Ext vanishing.
fn corpus_modules(entries: &[(String, LambdaSpec<Rationals>)]) -> Vec<(String, LeftModule<Rationals>)> {
    let mut out = Vec::new();
    for (name, spec) in entries {
        let bundle = cokernel_modules(spec).expect("bundle");
        let ctx = bundle.ctx.clone();
        for (c, s) in LeftModule::simples(&ctx).into_iter().enumerate() {
            out.push((format!("{name} S{c}"), s));
        }
        for i in 2..=spec.n {
            out.push((format!("{name} L{i}"), bundle.l(i).clone()));
        }
        out.push((format!("{name} T"), bundle.t()));
        let sigma = build_sigma(spec).expect("sigma");
        let sctx = AlgebraCtx::new(sigma.algebra.clone(), Some(&sigma.idems)).expect("ctx");
        for (c, s) in LeftModule::simples(&sctx).into_iter().enumerate() {
            out.push((format!("{name} Sigma S{c}"), s));
        }
    }
    out
}

fn criterion_7a(entries: &[(String, LambdaSpec<Rationals>)]) -> Line {
    const DEPTH: usize = 8;
    let mut bad = Vec::new();
    let modules = corpus_modules(entries);
    for (name, m) in &modules {
        let pd = minimal_resolution(m, DEPTH, 0).pd();
        let simples = LeftModule::direct_sum_all(m.ctx(), &LeftModule::simples(m.ctx()));
        let stages = resolution_stages(m, DEPTH + 1);
        let nonzero: Vec<bool> =
            (0..=DEPTH).map(|k| ext_dim_from(&stages, &simples, k).expect("within computed stages") > 0).collect();
        // pd from Ext: the last k with Ext^k(M, top) ≠ 0, or "beyond" when every k ≤ DEPTH is nonzero
        let from_ext = match nonzero.iter().rposition(|&x| x) {
            None => PdValue::MinusInfinity,
            Some(k) if k == DEPTH => PdValue::AtLeast(DEPTH),
            Some(k) => PdValue::Exact(k),
        };
        let agree = match (pd, from_ext) {
            (PdValue::Exact(a), PdValue::Exact(b)) => a == b && nonzero[..=a].iter().all(|&x| x),
            (PdValue::MinusInfinity, PdValue::MinusInfinity) => true,
            (PdValue::Infinite | PdValue::AtLeast(_), PdValue::AtLeast(_)) => nonzero.iter().all(|&x| x),
            _ => false,
        };
        if !agree {
            bad.push(format!("{name}: resolution {pd}, Ext {from_ext}"));
        }
    }
    line("7a pd vs Ext vanishing", &bad, format!("{} modules to depth {DEPTH}", modules.len()))
}

fn key(s: &Subspace<PrimeField>) -> Vec<Vec<u64>> {
    s.basis().to_vec()
}

/// Every left ideal of `a`, as sums of cyclic ones.
fn left_ideals(a: &FdAlgebra<PrimeField>) -> Vec<Subspace<PrimeField>> {
    let f = a.field();
    let p = f.characteristic();
    let d = a.dim();
    let mut seen = HashSet::new();
    let mut cyclic = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        for code in 0..p.pow(free as u32) {
            let mut v = vec![0u64; d];
            v[lead] = 1;
            let mut c = code;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = c % p;
                c /= p;
            }
            let u = a.left_ideal_generated(&[v]);
            if seen.insert(key(&u)) {
                cyclic.push(u);
            }
        }
    }
    let mut all = vec![a.zero_space()];
    seen.insert(key(&all[0]));
    all.extend(cyclic.iter().cloned());
    let mut i = 0;
    while i < all.len() {
        for c in &cyclic {
            let s = all[i].sum(c);
            if seen.insert(key(&s)) {
                all.push(s);
            }
        }
        i += 1;
    }
    all
}

fn small_algebras(file: &SpecFile, f: PrimeField) -> Vec<(String, FdAlgebra<PrimeField>, Option<Vec<Vec<u64>>>)> {
    let Ok(l): Result<Loaded<PrimeField>, _> = load(file, f, MAX_DIM) else { return Vec::new() };
    let mut out = vec![(format!("{} base", file.name), l.base.clone(), None)];
    let mut push_ring = |what: &str, r: Option<BuiltRing<PrimeField>>| {
        if let Some(r) = r {
            out.push((format!("{} {what}", file.name), r.algebra.clone(), Some(r.idems.clone())));
        }
    };
    if let Some(spec) = &l.lambda {
        push_ring("lambda", build_lambda(spec).ok());
        push_ring("sigma", build_sigma(spec).ok());
    }
    if let Some(spec) = &l.block {
        push_ring("block", build_block_extension(spec).ok());
    }
    if let Some(spec) = &l.tiled {
        push_ring("tiled", build_tiled_triangular(spec).ok());
    }
    out.retain(|(_, a, _)| a.dim() <= 6);
    out
}

fn criterion_7b() -> Line {
    let f = PrimeField::new(7).expect("prime");
    let mut bad = Vec::new();
    let mut done = Vec::new();
    let mut seen_tables = HashSet::new();
    for file in corpus() {
        for (name, a, idems) in small_algebras(&file, f) {
            let table: Vec<Vec<(usize, u64)>> =
                (0..a.dim()).flat_map(|i| (0..a.dim()).map(move |j| (i, j))).map(|(i, j)| a.structure(i, j).to_vec()).collect();
            if !seen_tables.insert((a.dim(), table)) {
                continue;
            }
            let ctx: Arc<AlgebraCtx<PrimeField>> = AlgebraCtx::new(a.clone(), idems.as_deref()).expect("ctx");
            let gl = global_dimension(&ctx, 20);
            let reg = LeftModule::regular(ctx.clone());
            let ideals = left_ideals(&a);
            let mut pds = Vec::new();
            for u in &ideals {
                let (q, _) = reg.quotient(u).expect("left ideal");
                pds.push(minimal_resolution(&q, 20, 0).pd());
            }
            let brute = tiltkit::dimension::combine_sup(&pds);
            let agree = match (gl, brute) {
                (PdValue::Exact(x), PdValue::Exact(y)) => x == y,
                (PdValue::Infinite, PdValue::Infinite) => true,
                (PdValue::MinusInfinity, PdValue::MinusInfinity) => true,
                _ => false,
            };
            if !agree {
                bad.push(format!("{name}: simples {gl}, cyclic {brute}"));
            }
            done.push(format!("{name} ({} ideals, gldim {gl})", ideals.len()));
        }
    }
    line("7b gldim vs brute force", &bad, format!("over F_7: {}", done.join(", ")))
}

fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> Matrix<Rationals> {
    loop {
        let m = Matrix::from_fn(Rationals, n, n, |_, _| Rationals.from_i64(rng.gen_range(-3..=3)));
        if m.inverse().is_some() {
            return m;
        }
    }
}

fn criterion_7c(entries: &[(String, LambdaSpec<Rationals>)]) -> Line {
    let mut pools: Vec<(String, Vec<LeftModule<Rationals>>)> = Vec::new();
    for (name, spec) in entries.iter().filter(|(_, s)| build_lambda(s).map_or(false, |r| r.algebra.dim() <= 20)) {
        let bundle = cokernel_modules(spec).expect("bundle");
        let mut mods: Vec<LeftModule<Rationals>> = bundle.summands.clone();
        mods.extend(LeftModule::simples(&bundle.ctx));
        pools.push((name.clone(), mods));
    }
    let mut bad = Vec::new();
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (name, mods) = &pools[seed as usize % pools.len()];
        let m = &mods[rng.gen_range(0..mods.len())];
        let n = &mods[rng.gen_range(0..mods.len())];
        let before = hom_dim(m, n);
        let m2 = m.conjugate(&random_invertible(m.dim(), &mut rng)).expect("invertible");
        let n2 = n.conjugate(&random_invertible(n.dim(), &mut rng)).expect("invertible");
        let after = hom_dim(&m2, &n2);
        if before != after {
            bad.push(format!("seed {seed} on {name}: {before} vs {after}"));
        }
    }
    line("7c hom dims under basis change", &bad, format!("100 seeded changes over {} algebras", pools.len()))
}

/// A random valid, non-degenerate spec over `F_101` with `dim Λ ≤ 40`, or `None` to retry.
fn random_spec(rng: &mut ChaCha8Rng) -> Option<LambdaSpec<PrimeField>> {
    let f = PrimeField::new(101).expect("prime");
    let base = match rng.gen_range(0..7) {
        0 => ground(f),
        1 => truncated_poly(f, 2),
        2 => truncated_poly(f, 3),
        3 => truncated_poly(f, 4),
        4 => lower_triangular(f, 2),
        5 => product_of_fields(f, 2),
        _ => full_matrix(f, 2),
    };
    let n = rng.gen_range(2..=4);
    let d = base.dim();
    let rad = base.radical().ok()?;
    let mut candidates = vec![base.zero_space(), base.full_space(), rad.clone(), base.product_space(&rad, &rad)];
    for _ in 0..3 {
        let x: Vec<u64> = (0..d).map(|_| if rng.gen_bool(0.5) { 0 } else { f.random(rng) }).collect();
        candidates.push(base.ideal_generated(&[x]));
    }
    let pick = |rng: &mut ChaCha8Rng| candidates[rng.gen_range(0..candidates.len())].clone();
    let mut ideals = vec![pick(rng)];
    for _ in 3..=n {
        let next = ideals.last().expect("nonempty").intersection(&pick(rng));
        ideals.push(next);
    }
    let mut spec = LambdaSpec::new(base.clone(), ideals).ok()?;
    for i in 2..=n {
        if rng.gen_bool(0.3) {
            let sub = base.subring_generated(spec.ideal(i).basis());
            spec.set_subring(i, sub);
        }
        if spec.a(i) == spec.ideal(i) {
            return None;
        }
    }
    for i in 3..=n {
        for j in 2..i {
            if rng.gen_bool(0.3) {
                let bigger = spec.ideal(j).sum(&pick(rng));
                spec.set_ideal_ij(i, j, bigger);
            }
        }
    }
    if !spec.validate().is_valid() {
        return None;
    }
    let lam = build_lambda(&spec).ok()?;
    (lam.algebra.dim() <= 40).then_some(spec)
}

fn criterion_8() -> Line {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut specs = Vec::new();
    let mut attempts = 0;
    while specs.len() < 100 && attempts < 100_000 {
        attempts += 1;
        if let Some(s) = random_spec(&mut rng) {
            specs.push(s);
        }
    }
    let mut bad = Vec::new();
    if specs.len() < 100 {
        bad.push(format!("only {} valid specs in {attempts} attempts", specs.len()));
    }
    let mut largest = 0;
    for (k, spec) in specs.iter().enumerate() {
        let lam = build_lambda(spec).expect("validated");
        let sigma = build_sigma(spec).expect("validated");
        largest = largest.max(lam.algebra.dim());
        for (what, r) in [("lambda", &lam), ("sigma", &sigma)] {
            if !r.algebra.validate().is_valid() {
                bad.push(format!("spec {k}: {what} fails associativity or unit"));
            }
            if !r.entry_mismatches().is_empty() {
                bad.push(format!("spec {k}: {what} corners differ from entries at {:?}", r.entry_mismatches()));
            }
        }
        match verify_theorem1(spec, 8) {
            Ok(r) => {
                if !(r.certificate.is_valid() && r.dim_end_t == r.dim_sigma) {
                    bad.push(format!("spec {k}: certificate"));
                }
                if !r.tilting.passes() {
                    bad.push(format!("spec {k}: tilting"));
                }
                if !r.hom_lattice.holds() {
                    bad.push(format!("spec {k}: hom lattice"));
                }
            }
            Err(e) => bad.push(format!("spec {k}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > SUITE_LIMIT {
        bad.push(format!("took {elapsed:.2?}"));
    }
    line(
        "8 random specs over F_101",
        &bad,
        format!("{} specs from {attempts} draws, largest dim {largest}, {elapsed:.2?}", specs.len()),
    )
}

fn main() {
    let entries = lambda_entries();
    let runs = run_theorem(&entries);
    let lines = vec![
        criterion_1(&runs),
        criterion_2(&runs),
        criterion_3(&runs),
        criterion_4(&runs),
        criterion_5(&runs),
        criterion_6(&entries),
        criterion_7a(&entries),
        criterion_7b(),
        criterion_7c(&entries),
        criterion_8(),
    ];
    let mut failed = 0;
    for l in &lines {
        println!("criterion {}: {} ({})", l.id, if l.pass { "PASS" } else { "FAIL" }, l.detail);
        failed += usize::from(!l.pass);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
