use std::fs::{self, File};
use std::io::BufReader;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use num_bigint::BigUint;
use serde_json::json;

use sdaut::casesearch::p59::P;
use sdaut::casesearch::theorem::{case_refutations, run_case_modules, sample_reps, CaseSampling};
use sdaut::casesearch::{
    fixed_point_sweep, golay_mod7_test, p59_orbit_representatives, p59_sweep, P59Family,
    SubsetPlan, SubsetSweepOptions, SweepReport, P59_MODULUS,
};
use sdaut::code::{extremal_bound, extremal_type2_enumerator, load_code, registry, registry_entries, write_code};
use sdaut::decomp::{
    balance_blocks, check_selfdual_conditions, cycle_structure, decompose, is_automorphism, project_pi,
    Permutation,
};
use sdaut::exclusion::{feasible_types, theorem_table, LemmaSet, TypeVerdict};
use sdaut::lowweight::{find_below, find_min_weight_word, Witness};
use sdaut::modfield::{factor_by_trial_division, mult_order_of_2, PField, TRIAL_DIVISION_BOUND};
use sdaut::util::{primes_up_to, task_seed};
use sdaut::{BinaryCode, BitVector, Error};

use crate::args::*;
use crate::output::{print_report, read_config, result_files, RunConfig, RunDir, REPLAY_DIR};

pub enum Outcome {
    Completed,
    Unresolved,
}

impl Outcome {
    fn from_flag(resolved: bool) -> Self {
        if resolved {
            Outcome::Completed
        } else {
            Outcome::Unresolved
        }
    }
}

/// Argument or input problem, reported with exit code 64.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

pub fn exit_code_for(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<Usage>() {
            return 64;
        }
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::Io(_) | Error::Json(_) => 1,
                _ => 64,
            };
        }
    }
    1
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    if let Command::Replay(a) = &cli.command {
        return replay(&a.dir);
    }
    let config = RunConfig {
        tool: "sdaut".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        seed: cli.seed,
        command: cli.command.clone(),
    };
    let name = cli.name.clone().unwrap_or_else(|| cli.command.run_name());
    let dir = RunDir::create(cli.out.join(name), &config)?;
    execute(&cli.command, cli.seed, &dir)
}

fn execute(cmd: &Command, seed: u64, dir: &RunDir) -> Result<Outcome> {
    println!("# {}  seed {seed}  output {}", cmd.run_name(), dir.path.display());
    let start = Instant::now();
    let outcome = match cmd {
        Command::Types(a) => types(a, dir),
        Command::Enumerator(a) => enumerator(a, dir),
        Command::Codes => codes(dir),
        Command::P59(P59Command::Orbits(a)) => p59_orbits(a, dir),
        Command::P59(P59Command::Check(a)) => p59_check(a, seed, dir),
        Command::P59(P59Command::Sample(a)) => p59_sample(a, seed, dir),
        Command::P59(P59Command::Sweep(a)) => p59_range(a, seed, dir),
        Command::Sweep(a) => sweep(a, seed, dir),
        Command::Golay7(a) => golay7(a, seed, dir),
        Command::Decompose(a) => decompose_cmd(a, dir),
        Command::Lowweight(a) => lowweight(a, seed, dir),
        Command::Theorem(a) => theorem(a, seed, dir),
        Command::Replay(_) => Err(usage("a replay cannot be replayed")),
    }?;
    println!("# elapsed {:.2?}", start.elapsed());
    Ok(outcome)
}

fn replay(dir: &Path) -> Result<Outcome> {
    let config = read_config(dir)?;
    if matches!(config.command, Command::Replay(_)) {
        return Err(usage("config records a replay"));
    }
    let target = dir.join(REPLAY_DIR);
    if target.exists() {
        fs::remove_dir_all(&target)?;
    }
    let rerun = RunDir::create(target.clone(), &config)?;
    execute(&config.command, config.seed, &rerun)?;
    let mut same = true;
    for name in result_files(dir)? {
        let a = fs::read(dir.join(&name))?;
        let status = match fs::read(target.join(&name)) {
            Ok(b) if a == b => "identical",
            Ok(_) => "differs",
            Err(_) => "missing",
        };
        same &= status == "identical";
        println!("replay {name}: {status}");
    }
    if !same {
        bail!("replay of {} does not reproduce its results", dir.display());
    }
    Ok(Outcome::Completed)
}

/// A registry name, else a path to a code file.
fn load_code_arg(spec: &str) -> Result<BinaryCode> {
    if registry_entries().iter().any(|e| e.name.eq_ignore_ascii_case(spec)) {
        return Ok(registry(spec)?);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(usage(format!("{spec:?} is neither a registry code nor a file")));
    }
    let file = File::open(path).with_context(|| format!("opening {spec}"))?;
    load_code(BufReader::new(file)).with_context(|| format!("reading code file {spec}"))
}

fn support(v: &BitVector) -> Vec<usize> {
    v.ones_iter().map(|i| i + 1).collect()
}

fn types(a: &TypesArgs, dir: &RunDir) -> Result<Outcome> {
    let set = LemmaSet::preset(&a.preset)
        .ok_or_else(|| usage(format!("unknown preset {:?} (tabulated, paper-table, full, none)", a.preset)))?;
    let d = match a.d {
        Some(d) => d,
        None => extremal_bound(a.n as usize)? as u64,
    };
    let tags: Vec<&str> = set.lemmas.iter().map(|l| l.tag()).collect();
    println!("n = {}, d = {d}, preset {} ({})", a.n, a.preset, tags.join(", "));
    println!("{:>4} {:>4} {:>4}", "p", "c", "f");
    let mut primes = Vec::new();
    for p in primes_up_to(a.n).into_iter().filter(|&p| p > 2) {
        let verdicts = feasible_types(a.n, d, p, &set);
        for v in verdicts.iter().filter(|v| v.survives()) {
            let note = if v.notes.is_empty() || !a.reasons {
                String::new()
            } else {
                format!("   ({})", v.notes.join("; "))
            };
            println!("{:>4} {:>4} {:>4}{note}", p, v.candidate.c, v.candidate.f);
        }
        primes.push((p, verdicts));
    }
    let surviving: Vec<u64> = primes
        .iter()
        .filter(|(_, v)| v.iter().any(TypeVerdict::survives))
        .map(|(p, _)| *p)
        .collect();
    println!("primes with a surviving type: {surviving:?}");
    if a.reasons {
        println!();
        for (_, verdicts) in &primes {
            for v in verdicts.iter().filter(|v| !v.survives()) {
                let why: Vec<String> = v.reasons.iter().map(ToString::to_string).collect();
                println!("{:<12} {}", v.candidate.to_string(), why.join("; "));
            }
        }
    }
    let rows: Vec<_> = primes
        .iter()
        .map(|(p, v)| json!({ "p": p, "verdicts": v }))
        .collect();
    dir.write_json(
        "types.json",
        &json!({
            "n": a.n,
            "d": d,
            "preset": a.preset,
            "lemmas": tags,
            "defer_even_c": set.defer_even_c,
            "surviving_primes": surviving,
            "primes": rows,
        }),
    )?;
    Ok(Outcome::Completed)
}

fn enumerator(a: &EnumeratorArgs, dir: &RunDir) -> Result<Outcome> {
    let wd = extremal_type2_enumerator(a.n)?;
    let d = extremal_bound(a.n)?;
    let terms: Vec<String> = wd
        .support()
        .iter()
        .map(|(i, c)| match i {
            0 => c.to_string(),
            _ if c == &BigUint::from(1u32) => format!("y^{i}"),
            _ => format!("{c} y^{i}"),
        })
        .collect();
    println!("W(y) = {}", terms.join(" + "));
    for (i, c) in wd.support() {
        println!("A_{i} = {c}");
    }
    let counts: serde_json::Map<String, serde_json::Value> = wd
        .support()
        .into_iter()
        .map(|(i, c)| (i.to_string(), json!(c.to_string())))
        .collect();
    dir.write_json("enumerator.json", &json!({ "n": a.n, "d": d, "counts": counts }))?;
    Ok(Outcome::Completed)
}

fn codes(dir: &RunDir) -> Result<Outcome> {
    let mut rows = Vec::new();
    for e in registry_entries() {
        let src = if e.is_vendored() { "data file" } else { "constructed" };
        println!(
            "{:<8} [{}, {}, {}]{}  {src:<11}  {}",
            e.name,
            e.length,
            e.dimension,
            e.min_distance,
            if e.doubly_even { " II" } else { " I " },
            e.description
        );
        rows.push(json!({
            "name": e.name,
            "length": e.length,
            "dimension": e.dimension,
            "min_distance": e.min_distance,
            "doubly_even": e.doubly_even,
            "vendored": e.is_vendored(),
            "description": e.description,
        }));
    }
    dir.write_json("codes.json", &rows)?;
    Ok(Outcome::Completed)
}

fn p59_orbits(a: &OrbitsArgs, dir: &RunDir) -> Result<Outcome> {
    let s = mult_order_of_2(P as u64)?;
    let field = PField::new(P as u64)?;
    let exponent = (BigUint::from(1u32) << 29) - 1u32;
    let delta_order = field.power_order(&exponent);
    let factors = factor_by_trial_division(&delta_order, TRIAL_DIVISION_BOUND)?;
    let factor_text: Vec<String> = factors
        .iter()
        .map(|(r, e)| if *e == 1 { r.to_string() } else { format!("{r}^{e}") })
        .collect();
    let started = Instant::now();
    let reps = p59_orbit_representatives();
    let listing = started.elapsed();
    let nonzero = reps.iter().filter(|&&k| k != 0).count();
    println!("s(59) = {s}");
    println!("order of δ = α^(2^29 - 1): {delta_order} = {}", factor_text.join(" · "));
    println!("doubling orbits on Z_{P59_MODULUS}: {} in total, {nonzero} excluding {{0}}", reps.len());
    println!("listing took {listing:.2?}");
    dir.write_json(
        "orbits.json",
        &json!({
            "p": P,
            "order_of_2": s,
            "delta_order": delta_order.to_string(),
            "delta_order_factors": factors.iter().map(|(r, e)| json!([r.to_string(), e])).collect::<Vec<_>>(),
            "modulus": P59_MODULUS,
            "orbits_total": reps.len(),
            "orbits_nonzero": nonzero,
        }),
    )?;
    if a.write_reps {
        let mut text = String::with_capacity(reps.len() * 8);
        for k in &reps {
            text.push_str(&k.to_string());
            text.push('\n');
        }
        dir.write_text("representatives.txt", &text)?;
    }
    Ok(Outcome::Completed)
}

fn family(a: &AlphaArgs) -> Result<P59Family> {
    Ok(P59Family::with_seed(a.alpha_seed)?)
}

fn witness_json(w: &Witness) -> serde_json::Value {
    json!({
        "weight": w.weight,
        "iterations": w.iterations_used,
        "support": support(&w.codeword),
    })
}

fn p59_check(a: &CheckArgs, seed: u64, dir: &RunDir) -> Result<Outcome> {
    let fam = family(&a.alpha)?;
    let cand = fam.build(a.k);
    let report = check_selfdual_conditions(&cand.code, &sdaut::casesearch::P59Candidate::sigma())?;
    let gate = cand.passes_gate()?;
    println!("k = {}  dimension {}  self-dual {}", a.k, cand.code.dimension(), cand.code.is_self_dual());
    println!(
        "π(F) self-dual {}  φ(E*) self-dual {}  q-form agrees {:?}  gate {}",
        report.pi_self_dual, report.phi_self_dual, report.q_form_agrees, gate
    );
    let mut found = None;
    let mut attempts = 0;
    if gate {
        let base = task_seed(seed, 0);
        for attempt in 0..a.budget.attempts.max(1) {
            attempts = attempt + 1;
            let budget = a.budget.budget(task_seed(base, attempt as u64));
            if let Some(w) = find_below(&cand.code, 24, &budget) {
                found = Some(w);
                break;
            }
        }
    }
    match &found {
        Some(w) => println!(
            "refuted: codeword of weight {} after {} iterations (attempt {attempts})",
            w.weight, w.iterations_used
        ),
        None => println!("unresolved after {attempts} attempts"),
    }
    dir.write_json(
        "check.json",
        &json!({
            "k": a.k,
            "alpha": fam.params(),
            "gate": gate,
            "pi_self_dual": report.pi_self_dual,
            "phi_self_dual": report.phi_self_dual,
            "q_form_agrees": report.q_form_agrees,
            "attempts": attempts,
            "witness": found.as_ref().map(witness_json),
        }),
    )?;
    Ok(Outcome::from_flag(found.is_some()))
}

fn finish_sweep(report: &SweepReport, dir: &RunDir) -> Result<Outcome> {
    print_report(report);
    dir.write_json("summary.json", report)?;
    Ok(Outcome::from_flag(report.all_refuted()))
}

fn p59_sample(a: &SampleArgs, seed: u64, dir: &RunDir) -> Result<Outcome> {
    let fam = family(&a.alpha)?;
    let reps = sample_reps(&p59_orbit_representatives(), a.count, task_seed(seed, 59));
    dir.write_json("sample.json", &json!({ "representatives": reps }))?;
    let runner = dir.runner(&a.exec, "log.jsonl");
    let report = p59_sweep(&fam, &reps, &a.budget.budget(seed), a.budget.attempts, seed, &runner)?;
    finish_sweep(&report, dir)
}

fn p59_range(a: &RangeArgs, seed: u64, dir: &RunDir) -> Result<Outcome> {
    let fam = family(&a.alpha)?;
    let all = p59_orbit_representatives();
    let end = a.end.unwrap_or(all.len()).min(all.len());
    if a.start >= end {
        return Err(usage(format!("empty range {}..{end}", a.start)));
    }
    let runner = dir.runner(&a.exec, "log.jsonl");
    let report = p59_sweep(
        &fam,
        &all[a.start..end],
        &a.budget.budget(seed),
        a.budget.attempts,
        seed,
        &runner,
    )?;
    finish_sweep(&report, dir)
}

fn parse_mask(text: &str, n: usize, f: usize) -> Result<u64> {
    let mut mask = 0u64;
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i: usize = part
            .parse()
            .map_err(|_| usage(format!("bad coordinate {part:?} in --fixed")))?;
        if i == 0 || i > n {
            return Err(usage(format!("coordinate {i} outside 1..={n}")));
        }
        mask |= 1 << (i - 1);
    }
    if mask.count_ones() as usize != f {
        return Err(usage(format!("--fixed {text:?} must name {f} distinct coordinates")));
    }
    Ok(mask)
}

fn plan(a: &PlanArgs, n: usize, f: usize) -> Result<SubsetPlan> {
    if a.all {
        return Ok(SubsetPlan::All { block: a.block.max(1) });
    }
    if !a.fixed.is_empty() {
        let masks = a.fixed.iter().map(|t| parse_mask(t, n, f)).collect::<Result<_>>()?;
        return Ok(SubsetPlan::List { masks });
    }
    Ok(SubsetPlan::Sample {
        count: a.sample.unwrap_or(1000),
    })
}

fn sweep(a: &SweepArgs, seed: u64, dir: &RunDir) -> Result<Outcome> {
    let code = load_code_arg(&a.code)?;
    let (p, c, f, mod4) = a.case.params();
    if code.length() != c + f {
        return Err(usage(format!(
            "case {} needs a code of length {}, {} has length {}",
            a.case.label(),
            c + f,
            a.code,
            code.length()
        )));
    }
    if !code.is_self_dual() {
        return Err(usage(format!("{} is not self-dual", a.code)));
    }
    let opts = SubsetSweepOptions {
        plan: plan(&a.plan, code.length(), f)?,
        mod4,
        track_weight: a.track_weight,
    };
    let runner = dir.runner(&a.exec, "log.jsonl");
    let case = format!("{p}-({c};{f}) {}", a.code);
    let report = fixed_point_sweep(&case, &code, p, f, 24, &opts, seed, &runner)?;
    finish_sweep(&report, dir)
}

fn golay7(a: &Golay7Args, seed: u64, dir: &RunDir) -> Result<Outcome> {
    let runner = dir.runner(&a.exec, "log.jsonl");
    let rep = golay_mod7_test(&plan(&a.plan, 24, 8)?, None, seed, &runner)?;
    let a28_mod7 = &rep.extremal_a28 % 7u32;
    println!("extremal A_28 = {} ≡ {a28_mod7} (mod 7)", rep.extremal_a28);
    print_report(&rep.sweep);
    let verdict = rep.universally_inconsistent();
    println!(
        "A'_28 ≡ A_28 (mod 7) fails on every placement: {verdict}  ({} of {} placements)",
        rep.sweep.refuted_cases, rep.sweep.cases
    );
    dir.write_json(
        "summary.json",
        &json!({
            "extremal_a28": rep.extremal_a28.to_string(),
            "extremal_a28_mod7": a28_mod7.to_string(),
            "universally_inconsistent": verdict,
            "sweep": rep.sweep,
        }),
    )?;
    Ok(Outcome::from_flag(verdict))
}

fn decompose_cmd(a: &DecomposeArgs, dir: &RunDir) -> Result<Outcome> {
    let code = load_code_arg(&a.code)?;
    let text = match (&a.perm, &a.perm_file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        (None, None) => return Err(usage("give --perm or --perm-file")),
    };
    let sigma = Permutation::parse(&text, Some(code.length())).context("parsing the permutation")?;
    let structure = cycle_structure(&sigma)?;
    if !is_automorphism(&code, &sigma) {
        return Err(Error::SigmaNotAutomorphism.into());
    }
    let d = decompose(&code, &sigma)?;
    let pi = project_pi(&d.fixed, &structure)?;
    println!(
        "type {}  code [{}, {}]",
        structure.type_label(),
        code.length(),
        code.dimension()
    );
    println!(
        "dim F = {}  dim E = {}  C = F ⊕ E: {}",
        d.fixed.dimension(),
        d.even.dimension(),
        d.is_direct_sum_of(&code)
    );
    let mut out = json!({
        "type": structure.type_label(),
        "length": code.length(),
        "dimension": code.dimension(),
        "dim_fixed": d.fixed.dimension(),
        "dim_even": d.even.dimension(),
        "direct_sum": d.is_direct_sum_of(&code),
        "pi_length": pi.length(),
        "pi_dimension": pi.dimension(),
    });
    if code.is_self_dual() && structure.p > 2 {
        let r = check_selfdual_conditions(&code, &sigma)?;
        println!(
            "π(F) self-dual {}  φ(E*) self-dual {}  field {}  q-form agrees {:?}",
            r.pi_self_dual, r.phi_self_dual, r.field_mode, r.q_form_agrees
        );
        out["pi_self_dual"] = json!(r.pi_self_dual);
        out["phi_self_dual"] = json!(r.phi_self_dual);
        out["field_mode"] = json!(r.field_mode);
        out["q_form_agrees"] = json!(r.q_form_agrees);
        if r.pi_self_dual {
            let b = balance_blocks(&pi, structure.c(), structure.f())?;
            println!(
                "balance: k1 = {}  k2 = {}  k1 - c/2 = k2 - f/2: {}  ranks {}  duals {}",
                b.k1,
                b.k2,
                b.balance_holds(),
                b.ranks_hold(),
                b.duals_hold()
            );
            out["balance"] = json!({
                "k1": b.k1,
                "k2": b.k2,
                "balance": b.balance_holds(),
                "ranks": b.ranks_hold(),
                "duals": b.duals_hold(),
            });
        }
    }
    dir.write_json("decompose.json", &out)?;
    dir.write_text("pi.txt", &write_code(&pi))?;
    Ok(Outcome::Completed)
}

fn lowweight(a: &LowweightArgs, seed: u64, dir: &RunDir) -> Result<Outcome> {
    let code = load_code_arg(&a.code)?;
    let budget = a.budget.budget(seed);
    let mut found = None;
    for attempt in 0..a.budget.attempts.max(1) {
        let b = budget.with_seed(task_seed(seed, attempt as u64));
        found = match a.target {
            Some(t) => find_below(&code, t, &b),
            None => find_min_weight_word(&code, code.length(), &b),
        };
        if found.is_some() {
            break;
        }
    }
    match (&found, a.target) {
        (Some(w), Some(t)) => println!("weight {} < {t} after {} iterations", w.weight, w.iterations_used),
        (Some(w), None) => println!("lightest word found: weight {} ({} iterations)", w.weight, w.iterations_used),
        (None, Some(t)) => println!("no word of weight < {t} within the budget"),
        (None, None) => println!("the code has no nonzero word"),
    }
    if let Some(w) = &found {
        let s: Vec<String> = support(&w.codeword).iter().map(ToString::to_string).collect();
        println!("support {}", s.join(" "));
    }
    dir.write_json(
        "lowweight.json",
        &json!({
            "length": code.length(),
            "dimension": code.dimension(),
            "target": a.target,
            "budget": budget,
            "witness": found.as_ref().map(witness_json),
        }),
    )?;
    Ok(Outcome::from_flag(found.is_some()))
}

fn theorem(a: &TheoremArgs, seed: u64, dir: &RunDir) -> Result<Outcome> {
    let sampling = CaseSampling {
        p59_reps: a.p59_reps,
        subsets: a.subsets,
        golay_subsets: a.golay_subsets,
        budget: a.budget.budget(seed),
        attempts: a.budget.attempts,
    };
    let ev = run_case_modules(&sampling, seed)?;
    let mut reports: Vec<&SweepReport> = vec![&ev.p59];
    reports.extend(ev.five.iter().map(|(_, r)| r));
    reports.push(&ev.golay7.sweep);
    reports.extend(ev.seven.iter().map(|(_, r)| r));
    reports.push(&ev.x24_sampled);
    reports.push(&ev.x24_admissible);
    for r in &reports {
        let flag = if r.flagged_cases > 0 { format!(", {} flagged", r.flagged_cases) } else { String::new() };
        println!("{:<28} {:>5}/{:<5} refuted{flag}", r.case, r.refuted, r.total);
    }
    let refs = case_refutations(&ev);
    println!();
    for r in &refs {
        println!("{} excluded [{}]: {}", r.candidate, r.source, r.detail);
    }
    let table = theorem_table(120, 24, &refs);
    println!();
    println!("{:>4} {:>4} {:>4}", "p", "c", "f");
    for (p, rows) in &table {
        for v in rows {
            println!("{:>4} {:>4} {:>4}", p, v.candidate.c, v.candidate.f);
        }
    }
    let primes: Vec<u64> = table.iter().map(|(p, _)| *p).collect();
    println!("surviving odd primes: {primes:?}");
    let computed = ["59-(2;2)", "5-(22;10)", "7-(16;8)"];
    let all_backed = computed
        .iter()
        .all(|t| refs.iter().any(|r| r.candidate.to_string() == *t));
    let table_json: Vec<_> = table
        .iter()
        .map(|(p, rows)| json!({ "p": p, "types": rows.iter().map(|v| v.candidate.to_string()).collect::<Vec<_>>() }))
        .collect();
    dir.write_json(
        "theorem.json",
        &json!({
            "sampling": sampling,
            "refutations": refs,
            "table": table_json,
            "surviving_primes": primes,
            "evidence": reports,
        }),
    )?;
    let unresolved = reports
        .iter()
        .any(|r| !r.unresolved_ids.is_empty() || r.completed < r.total);
    if unresolved {
        println!("some sampled tasks are unresolved");
    }
    Ok(Outcome::from_flag(all_backed))
}
