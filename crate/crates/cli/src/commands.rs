use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::{Args, ValueEnum};
use quasidiff::analysis::{
    check_theorem1, check_theorem2, classify, component_sign_profile, contradiction_certificate,
    lemma2_bound, Lemma2Input, TermParity, DEFAULT_THRESHOLD,
};
use quasidiff::bundled::EXAMPLES;
use quasidiff::export::write_csv;
use quasidiff::model::{companion, residual, Residual};
use quasidiff::solver::{sample_trajectory, solve, SeedWindow, Trajectory};
use quasidiff::{ClosedForm, ClosedFormSpec, EquationSpec, IndexedWindow, XSource};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::exit::{CliError, Status};
use crate::input::{EquationArgs, Loaded, OutputArgs, ToleranceArgs};

pub fn horizon_parser() -> clap::builder::RangedU64ValueParser<usize> {
    clap::builder::RangedU64ValueParser::<usize>::new().range(8..)
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub equation: EquationArgs,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Number of recursion steps (at least 8)
    #[arg(long, default_value_t = 40, value_parser = horizon_parser())]
    pub horizon: usize,
    /// Initial values covering the seed window, comma separated; defaults to the
    /// document's closed-form solution
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub seed_values: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub equation: EquationArgs,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Number of indices checked, starting at n0
    #[arg(long, default_value_t = 40, value_parser = horizon_parser())]
    pub horizon: usize,
    /// Closed-form candidate "scale,ratio[,alternating]" for x_n = scale·(±1)^n·ratio^n;
    /// defaults to the document's solution
    #[arg(long, allow_hyphen_values = true)]
    pub candidate: Option<String>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub equation: EquationArgs,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
    /// Write a JSON report here
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Sample horizon for index-wise hypotheses and certificates
    #[arg(long, default_value_t = 40, value_parser = horizon_parser())]
    pub horizon: usize,
    /// Hypotheses of the quick-oscillation exclusion result
    #[arg(long)]
    pub theorem1: bool,
    /// Hypotheses of the almost-oscillation criterion
    #[arg(long)]
    pub theorem2: bool,
    /// Build this many contradiction certificates from random positive q windows
    #[arg(long, value_name = "N")]
    pub certificate: Option<usize>,
    /// Which terms of the candidate are positive: even or odd (default: the class the
    /// statement claims to exclude)
    #[arg(long)]
    pub parity: Option<TermParity>,
    /// Seed for the random q windows
    #[arg(long, default_value_t = 1)]
    pub rng_seed: u64,
    /// Bound x by its companion sequence along the document's solution
    #[arg(long)]
    pub lemma2: bool,
    /// Number of terms summed for the series conditions
    #[arg(long, default_value_t = 100_000)]
    pub series_horizon: usize,
    /// A series counts as divergent once a partial sum leaves [-threshold, threshold]
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    ClosedForm,
    Solve,
    Zero,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub equation: EquationArgs,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Number of recursion steps covered by the trajectory
    #[arg(long, default_value_t = 40, value_parser = horizon_parser())]
    pub horizon: usize,
    /// Trajectory source (default: closed form when the document has one, else solve)
    #[arg(long, value_enum)]
    pub source: Option<Source>,
    /// Initial values for --source solve, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub seed_values: Option<Vec<f64>>,
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let file = File::create(path)?;
    serde_json::to_writer_pretty(BufWriter::new(file), value)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

fn write_csv_file(path: &Path, traj: &Trajectory) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path)?);
    write_csv(traj, &mut w)?;
    w.flush()?;
    Ok(())
}

fn solution(loaded: &Loaded) -> Result<ClosedFormSpec, CliError> {
    loaded.document.solution.ok_or_else(|| {
        CliError::usage(format!(
            "{} has no closed-form solution; supply seed values or a candidate",
            loaded.label
        ))
    })
}

fn seed_window(loaded: &Loaded, values: &Option<Vec<f64>>) -> Result<SeedWindow, CliError> {
    let eq = &loaded.equation;
    match values {
        Some(v) => {
            let (first, last) = SeedWindow::required_range(eq);
            let need = (last - first + 1) as usize;
            if v.len() != need {
                return Err(CliError::usage(format!(
                    "{need} seed values needed for indices {first}..={last}, got {}",
                    v.len()
                )));
            }
            Ok(SeedWindow::new(first, v.clone()))
        }
        None => Ok(SeedWindow::from_source(eq, &solution(loaded)?)?),
    }
}

fn summarize_residuals(res: &[Residual]) -> (f64, Option<i64>) {
    res.iter().fold((0.0, None), |(m, at), r| {
        let v = r.relative();
        if v > m || v.is_nan() {
            (v, Some(r.index))
        } else {
            (m, at)
        }
    })
}

/// Serialized name of a unit enum variant.
fn label<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => "?".into(),
    }
}

fn source_name(s: Source) -> &'static str {
    match s {
        Source::ClosedForm => "closed-form",
        Source::Solve => "solve",
        Source::Zero => "zero",
    }
}

pub fn solve_cmd(args: &SolveArgs) -> Result<Status, CliError> {
    let loaded = args.equation.load()?;
    let tol = args.tolerances.profile()?;
    let eq = &loaded.equation;
    let seed = seed_window(&loaded, &args.seed_values)?;
    let traj = solve(eq, &seed, args.horizon, tol.eps_sign)?;
    let res = traj.residuals(eq)?;
    let (max_rel, at) = summarize_residuals(&res);

    match &args.output.csv {
        Some(p) => write_csv_file(p, &traj)?,
        None => match write_csv(&traj, io::stdout().lock()) {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => return Ok(Status::Pass),
            r => r?,
        },
    }
    let summary = format!(
        "solved {} in {} mode: x on [{}, {}], {} steps, max relative residual {:.3e}{}\n",
        loaded.label,
        label(&eq.mode()),
        traj.start(),
        traj.end(),
        res.len(),
        max_rel,
        at.map(|n| format!(" at n={n}")).unwrap_or_default(),
    );
    if args.output.csv.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    if let Some(tr) = traj.truncation {
        eprintln!(
            "warning: truncated at step {} by a non-finite value, x_{} and later not computed; the CSV ends with a marker",
            tr.step, tr.index
        );
    }
    if let Some(p) = &args.output.out {
        write_json(
            p,
            &json!({
                "equation": loaded.label,
                "mode": eq.mode(),
                "range": [traj.start(), traj.end()],
                "steps": res.len(),
                "max_relative_residual": max_rel,
                "argmax": at,
                "truncation": traj.truncation,
                "warning": traj.truncation.map(|_| "truncated"),
            }),
        )?;
    }
    Ok(Status::Pass)
}

fn parse_candidate(s: &str) -> Result<ClosedFormSpec, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| {
        t.parse::<f64>()
            .map_err(|_| CliError::usage(format!("candidate: {t:?} is not a number")))
    };
    match parts.as_slice() {
        [scale, ratio] | [scale, ratio, _] => Ok(ClosedFormSpec::SignGeometric {
            scale: num(scale)?,
            ratio: num(ratio)?,
            alternating: match parts.get(2) {
                None => false,
                Some(&"alternating") | Some(&"alt") | Some(&"true") => true,
                Some(&"false") => false,
                Some(other) => {
                    return Err(CliError::usage(format!(
                        "candidate: expected \"alternating\", got {other:?}"
                    )))
                }
            },
        }),
        _ => Err(CliError::usage(
            "candidate must be \"scale,ratio[,alternating]\"",
        )),
    }
}

pub fn verify_cmd(args: &VerifyArgs) -> Result<Status, CliError> {
    let loaded = args.equation.load()?;
    let tol = args.tolerances.profile()?;
    let eq = &loaded.equation;
    let candidate = match &args.candidate {
        Some(s) => parse_candidate(s)?,
        None => solution(&loaded)?,
    };
    let lo = eq.n0();
    let hi = lo + args.horizon as i64 - 1;
    let res = (lo..=hi)
        .map(|n| residual(eq, &candidate, n))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(r) = res.iter().find(|r| !r.value.is_finite()) {
        return Err(CliError::numeric(format!(
            "residual at n={} is not finite; the candidate leaves the double range",
            r.index
        )));
    }
    let (max_rel, at) = summarize_residuals(&res);
    let failing: Vec<i64> = res
        .iter()
        .filter(|r| r.relative() > tol.eps_residual)
        .map(|r| r.index)
        .collect();
    let pass = failing.is_empty();

    println!(
        "{} {}: max relative residual {:.3e}{} over n = {lo}..={hi} (tolerance {:.1e})",
        if pass { "PASS" } else { "FAIL" },
        loaded.label,
        max_rel,
        at.map(|n| format!(" at n={n}")).unwrap_or_default(),
        tol.eps_residual,
    );
    if !pass {
        let shown: Vec<String> = failing.iter().take(12).map(|n| n.to_string()).collect();
        println!(
            "  {} of {} indices exceed the tolerance: {}{}",
            failing.len(),
            res.len(),
            shown.join(", "),
            if failing.len() > shown.len() {
                ", ..."
            } else {
                ""
            }
        );
    }
    if let Some(p) = &args.output.out {
        write_json(
            p,
            &json!({
                "equation": loaded.label,
                "candidate": candidate,
                "range": [lo, hi],
                "eps_residual": tol.eps_residual,
                "max_relative_residual": max_rel,
                "argmax": at,
                "failing_indices": failing,
                "pass": pass,
                "residuals": res,
            }),
        )?;
    }
    if let Some(p) = &args.output.csv {
        let traj = sample_trajectory(eq, &candidate, lo - eq.delta().max(eq.tau()).max(0), hi + 4)?;
        write_csv_file(p, &traj)?;
    }
    Ok(if pass { Status::Pass } else { Status::Failure })
}

fn random_q(rng: &mut ChaCha8Rng, start: i64, end: i64) -> IndexedWindow {
    IndexedWindow::from_fn(start, end, |_| 10f64.powf(rng.gen_range(-3.0..3.0)))
}

fn certificate_window(eq: &EquationSpec, horizon: usize) -> (i64, i64) {
    let start = eq.n0() - eq.delta().max(eq.tau()).max(0);
    let end = eq.n0() + horizon as i64 + 3 + (-eq.tau()).max(-eq.delta()).max(0);
    (start, end)
}

pub fn check_cmd(args: &CheckArgs) -> Result<Status, CliError> {
    let loaded = args.equation.load()?;
    let tol = args.tolerances.profile()?;
    let eq = &loaded.equation;
    let run_all = !(args.theorem1 || args.theorem2 || args.certificate.is_some() || args.lemma2);
    let mut ok = true;
    let mut report = serde_json::Map::new();
    report.insert("equation".into(), json!(loaded.label));

    let t1 = check_theorem1(eq, args.horizon)?;
    if args.theorem1 || run_all {
        print!("{}", t1.render());
        ok &= t1.report.holds();
        report.insert("theorem1".into(), json!(t1));
    }
    if args.theorem2 || run_all {
        let t2 = check_theorem2(eq, args.series_horizon, args.threshold, &tol)?;
        print!("{}", t2.render());
        ok &= t2.holds();
        report.insert("theorem2".into(), json!(t2));
    }
    if let Some(count) = args.certificate {
        let parity = args
            .parity
            .or(t1.claimed_exclusion)
            .unwrap_or(TermParity::Even);
        let mut rng = ChaCha8Rng::seed_from_u64(args.rng_seed);
        let (start, end) = certificate_window(eq, args.horizon);
        let mut valid = 0;
        let mut certs = Vec::with_capacity(count);
        let mut refused = None;
        for _ in 0..count {
            let q = random_q(&mut rng, start, end);
            match contradiction_certificate(eq, &q, parity) {
                Ok(c) => {
                    valid += c.valid as usize;
                    certs.push(json!({
                        "range": c.range,
                        "valid": c.valid,
                        "chains_positive": c.chains_positive,
                        "conflicts": c.conflicts(),
                        "entries": c.entries,
                    }));
                }
                Err(e) => {
                    refused = Some(e.to_string());
                    break;
                }
            }
        }
        let word = match parity {
            TermParity::Even => "even",
            TermParity::Odd => "odd",
        };
        match &refused {
            Some(why) => println!("certificate: refused ({why})"),
            None => println!(
                "certificate (positive {word} terms): {valid}/{count} valid on random q windows [{start}..{end}]"
            ),
        }
        ok &= refused.is_none() && valid == count;
        report.insert(
            "certificates".into(),
            json!({
                "parity": parity,
                "requested": count,
                "valid": valid,
                "refused": refused,
                "certificates": certs,
            }),
        );
    }
    if args.lemma2 {
        let cert = lemma2_along_solution(&loaded, args.horizon)?;
        println!(
            "lemma2: P = {:.6}, L = {:.6e}, K = {:.6e}, bound = {:.6e}, max |x| = {:.6e} at n={} on [{}..{}]: {}",
            cert.p_cap,
            cert.z_bound,
            cert.startup_max,
            cert.bound,
            cert.max_abs_x,
            cert.argmax,
            cert.range.0,
            cert.range.1,
            if cert.valid { "valid" } else { "NOT valid" }
        );
        ok &= cert.valid;
        report.insert("lemma2".into(), json!(cert));
    }
    if let Some(p) = &args.out {
        write_json(p, &Value::Object(report))?;
    }
    Ok(if ok { Status::Pass } else { Status::Failure })
}

fn lemma2_along_solution(
    loaded: &Loaded,
    horizon: usize,
) -> Result<quasidiff::analysis::BoundCertificate, CliError> {
    let eq = &loaded.equation;
    let x = solution(loaded)?;
    let delta = eq.delta();
    if delta < 1 {
        return Err(CliError::usage("lemma2 needs a positive neutral delay"));
    }
    let n1 = eq.n0();
    let last = n1 + horizon as i64 - 1;
    let z = (n1..=last)
        .map(|n| companion(&x, eq.p(), delta, n))
        .collect::<Result<Vec<_>, _>>()?;
    let z = IndexedWindow::new(n1, z);
    let startup: Vec<f64> = (n1..n1 + delta)
        .map(|n| {
            x.value_at(n)
                .ok_or_else(|| CliError::numeric(format!("x_{n} is not finite")))
        })
        .collect::<Result<_, _>>()?;
    let p_limit = eq.p().eval(last)?;
    Ok(lemma2_bound(&Lemma2Input {
        z: &z,
        startup: &startup,
        p: eq.p(),
        p_limit,
        delta,
        z_bound: None,
    })?)
}

pub fn classify_cmd(args: &ClassifyArgs) -> Result<Status, CliError> {
    let loaded = args.equation.load()?;
    let tol = args.tolerances.profile()?;
    let eq = &loaded.equation;
    let source = args.source.unwrap_or(
        if loaded.document.solution.is_some() && args.seed_values.is_none() {
            Source::ClosedForm
        } else {
            Source::Solve
        },
    );
    let start = eq.n0() - eq.delta().max(eq.tau()).max(0);
    let end = eq.n0() + args.horizon as i64 + 3;
    let traj = match source {
        Source::ClosedForm => sample_trajectory(eq, &solution(&loaded)?, start, end)?,
        Source::Zero => sample_trajectory(eq, &ClosedForm(|_| 0.0), start, end)?,
        Source::Solve => {
            let seed = seed_window(&loaded, &args.seed_values)?;
            solve(eq, &seed, args.horizon, tol.eps_sign)?
        }
    };
    let verdict = classify(&traj, &tol)?;
    println!(
        "{} ({} source, x on [{}, {}]): {}",
        loaded.label,
        source_name(source),
        traj.start(),
        traj.end(),
        label(&verdict.kind)
    );
    println!(
        "  decided on suffix [{}, {}]",
        verdict.suffix.0, verdict.suffix.1
    );
    println!(
        "  tends to zero: {} (finite-window evidence, not a limit)",
        verdict.tends_to_zero
    );
    if verdict.degenerate_zero {
        println!("  note: every suffix value is zero at the sign tolerance (degenerate zero)");
    }
    if let Some(qd) = &verdict.quick_decomposition {
        let (lo, hi) =
            qd.q.values
                .iter()
                .fold((f64::INFINITY, 0.0f64), |(a, b), v| (a.min(*v), b.max(*v)));
        println!(
            "  x_n = (-1)^n q_n, positive {} terms, q in [{lo:.6e}, {hi:.6e}]",
            label(&qd.positive_terms)
        );
    }
    if let Some(tr) = traj.truncation {
        eprintln!(
            "warning: truncated at step {} by a non-finite value, classified x up to x_{}",
            tr.step,
            tr.index - 1
        );
    }
    let profile = component_sign_profile(&traj, &tol).ok();
    if let Some(p) = &profile {
        println!("  components: {}", label(&p.case));
        for c in &p.components {
            println!(
                "    {}: {}, monotone {}, tends to zero {}",
                c.name,
                label(&c.sign),
                c.monotone,
                c.tends_to_zero
            );
        }
    }
    if let Some(p) = &args.output.out {
        write_json(
            p,
            &json!({
                "equation": loaded.label,
                "source": source_name(source),
                "verdict": verdict,
                "profile": profile,
                "truncation": traj.truncation,
            }),
        )?;
    }
    if let Some(p) = &args.output.csv {
        write_csv_file(p, &traj)?;
    }
    Ok(Status::Pass)
}

pub fn list_examples() -> Status {
    for ex in &EXAMPLES {
        println!("{:<10} {}", ex.name, ex.summary);
    }
    Status::Pass
}
