//! Command-line surface.
//!
//! Subcommands: rank | init | sing | support | irrdiv | regular | oracle.
//! Exit codes: 0 REGULAR or success, 1 IRREGULAR, 2 INCONCLUSIVE, 3 usage
//! error, 4 resource error. The environment variable DREG_BUDGET_MS caps
//! wall-clock per Groebner call; exceeding it exits 4.

use crate::parse::{parse_problem, ProblemFile};
use crate::print::{fmt_point, fmt_poly, fmt_weyl};
use crate::report::{self, render};
use dreg_core::arith::{parse_rational, Rational};
use dreg_core::budget::{Budget, Deadline};
use dreg_core::charvar::singular_locus;
use dreg_core::engine::{
    self, assemble_report, plan_charts, run_chart_task, Chart, ChartOutput, Options,
    RecordStatus, Verdict,
};
use dreg_core::error::Error;
use dreg_core::fuchs::{line_regularity_oracle, transverse_direction};
use dreg_core::ratweyl::holonomic_rank;
use dreg_core::weyl::DIdeal;
use dreg_core::wgb::initial_ideal;
use serde_json::{json, Map, Value};
use num_traits::Zero;
use std::cell::Cell;
use std::time::{Duration, Instant};

const USAGE: &str = "usage: dreg <rank|init|sing|support|irrdiv|regular|oracle> <file.dreg> [options]
options:
  --seed <n>                  sampling seed (default 0)
  --height-bound <n>          rational height bound, doubled on retries (default 5)
  --points-per-component <n>  consensus sample size (default 3)
  --check-infinity            also test the standard charts at infinity
  --charts <k,...>            restrict infinity checks to these charts (1-based)
  --weight <w1,...,wn>        weight vector (init: the deformation weight;
                              regular: extra certifying weights, repeatable)
  --point <p1,...,pn>         point for init / base point for oracle
  --cross-check               append line-oracle verdicts to regular reports
  --jobs <n>                  run chart pipelines on n threads (default 1)
  --out <file>                write the report to a file instead of stdout
environment:
  DREG_BUDGET_MS              wall-clock cap per Groebner call (exit 4)";

struct MsDeadline {
    limit: Duration,
    start: Cell<Instant>,
}

impl MsDeadline {
    fn new(limit_ms: u64) -> Self {
        MsDeadline {
            limit: Duration::from_millis(limit_ms),
            start: Cell::new(Instant::now()),
        }
    }
}

impl Deadline for MsDeadline {
    fn expired(&self) -> bool {
        self.start.get().elapsed() > self.limit
    }

    fn reset(&self) {
        self.start.set(Instant::now());
    }
}

struct Cli {
    command: String,
    file: String,
    seed: Option<u64>,
    height_bound: Option<u64>,
    points_per_component: Option<usize>,
    check_infinity: bool,
    charts: Option<Vec<usize>>,
    weights: Vec<Vec<Rational>>,
    point: Option<Vec<Rational>>,
    cross_check: bool,
    jobs: usize,
    out: Option<String>,
}

fn parse_args(args: &[String]) -> Result<Cli, String> {
    let mut it = args.iter();
    let command = it.next().ok_or_else(|| USAGE.to_string())?.clone();
    if !matches!(
        command.as_str(),
        "rank" | "init" | "sing" | "support" | "irrdiv" | "regular" | "oracle"
    ) {
        return Err(format!("unknown subcommand '{command}'\n{USAGE}"));
    }
    let mut cli = Cli {
        command,
        file: String::new(),
        seed: None,
        height_bound: None,
        points_per_component: None,
        check_infinity: false,
        charts: None,
        weights: Vec::new(),
        point: None,
        cross_check: false,
        jobs: 1,
        out: None,
    };
    let need = |it: &mut std::slice::Iter<String>, flag: &str| -> Result<String, String> {
        it.next()
            .cloned()
            .ok_or_else(|| format!("flag {flag} needs a value"))
    };
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--seed" => {
                cli.seed = Some(
                    need(&mut it, "--seed")?
                        .parse()
                        .map_err(|_| "--seed expects a nonnegative integer".to_string())?,
                )
            }
            "--height-bound" => {
                let h: u64 = need(&mut it, "--height-bound")?
                    .parse()
                    .map_err(|_| "--height-bound expects a positive integer".to_string())?;
                if h == 0 {
                    return Err("--height-bound must be positive".into());
                }
                cli.height_bound = Some(h);
            }
            "--points-per-component" => {
                cli.points_per_component = Some(
                    need(&mut it, "--points-per-component")?
                        .parse()
                        .map_err(|_| "--points-per-component expects an integer".to_string())?,
                )
            }
            "--check-infinity" => cli.check_infinity = true,
            "--charts" => {
                let spec = need(&mut it, "--charts")?;
                let mut charts = Vec::new();
                for part in spec.split(',') {
                    let k: usize = part
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad chart index '{part}'"))?;
                    if k == 0 {
                        return Err("chart indices are 1-based".into());
                    }
                    charts.push(k - 1);
                }
                cli.charts = Some(charts);
            }
            "--weight" => {
                let spec = need(&mut it, "--weight")?;
                cli.weights.push(parse_rational_csv(&spec)?);
            }
            "--point" => {
                let spec = need(&mut it, "--point")?;
                cli.point = Some(parse_rational_csv(&spec)?);
            }
            "--cross-check" => cli.cross_check = true,
            "--jobs" => {
                let j: usize = need(&mut it, "--jobs")?
                    .parse()
                    .map_err(|_| "--jobs expects a positive integer".to_string())?;
                cli.jobs = j.max(1);
            }
            "--out" => cli.out = Some(need(&mut it, "--out")?),
            other => {
                if cli.file.is_empty() && !other.starts_with("--") {
                    cli.file = other.to_string();
                } else {
                    return Err(format!("unexpected argument '{other}'\n{USAGE}"));
                }
            }
        }
    }
    if cli.file.is_empty() {
        return Err(format!("missing input file\n{USAGE}"));
    }
    Ok(cli)
}

fn parse_rational_csv(spec: &str) -> Result<Vec<Rational>, String> {
    spec.split(',')
        .map(|part| {
            parse_rational(part.trim()).ok_or_else(|| format!("bad rational '{part}'"))
        })
        .collect()
}

fn budget_ms_from_env() -> Result<Option<u64>, String> {
    match std::env::var("DREG_BUDGET_MS") {
        Ok(v) => v
            .parse::<u64>()
            .map(Some)
            .map_err(|_| format!("DREG_BUDGET_MS is not a nonnegative integer: '{v}'")),
        Err(_) => Ok(None),
    }
}

fn build_options(cli: &Cli, pf: &ProblemFile) -> Options {
    let extra_weights = if cli.command == "regular" || cli.command == "irrdiv" {
        let mut w = pf.weights.clone();
        w.extend(cli.weights.iter().cloned());
        w
    } else {
        Vec::new()
    };
    Options {
        seed: cli.seed.or(pf.seed).unwrap_or(0),
        height_bound: cli.height_bound.or(pf.height_bound).unwrap_or(5),
        points_per_component: cli
            .points_per_component
            .or(pf.points_per_component)
            .unwrap_or(3),
        check_infinity: cli.check_infinity || pf.check_infinity,
        charts: cli.charts.clone().or_else(|| pf.charts.clone()),
        components: pf.components.clone(),
        avoid: pf.avoid.clone(),
        declared_points: pf.points.clone(),
        extra_weights,
        ..Options::default()
    }
}

fn emit(cli: &Cli, value: &Value) -> Result<(), String> {
    let text = render(value);
    match &cli.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}"))
        }
    }
}

fn base_document(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(report::SCHEMA));
    m.insert("command".into(), json!(command));
    m
}

pub fn run_command(args: &[String]) -> i32 {
    let cli = match parse_args(args) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("{msg}");
            return 3;
        }
    };
    let text = match std::fs::read_to_string(&cli.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", cli.file);
            return 3;
        }
    };
    let pf = match parse_problem(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{}: {e}", cli.file);
            return 3;
        }
    };
    let budget_ms = match budget_ms_from_env() {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("{msg}");
            return 3;
        }
    };
    let ideal = DIdeal::new(pf.nvars, pf.gens.clone());
    let options = build_options(&cli, &pf);

    let outcome = dispatch(&cli, &pf, &ideal, &options, budget_ms);
    match outcome {
        Ok(code) => code,
        Err(Error::Resource { what }) => {
            eprintln!("resource budget exceeded: {what}");
            4
        }
        Err(Error::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            3
        }
        Err(other) => {
            eprintln!("error: {other}");
            2
        }
    }
}

fn dispatch(
    cli: &Cli,
    pf: &ProblemFile,
    ideal: &DIdeal,
    options: &Options,
    budget_ms: Option<u64>,
) -> Result<i32, Error> {
    let deadline = budget_ms.map(MsDeadline::new);
    let budget = match &deadline {
        Some(d) => Budget::with_deadline(d),
        None => Budget::new(),
    };
    match cli.command.as_str() {
        "rank" => {
            let rank = holonomic_rank(ideal, &budget)?;
            let mut doc = base_document("rank");
            doc.insert("rank".into(), report::rank_value(&rank));
            doc.insert("telemetry".into(), report::telemetry_value(&[&budget]));
            emit(cli, &Value::Object(doc)).map_err(Error::Usage)?;
            Ok(0)
        }
        "init" => {
            let weight = cli
                .weights
                .first()
                .cloned()
                .or_else(|| pf.weights.first().cloned())
                .ok_or_else(|| {
                    Error::Usage("init needs a weight (--weight or a weight directive)".into())
                })?;
            if weight.len() != ideal.nvars {
                return Err(Error::Usage(format!(
                    "weight has {} entries, expected {}",
                    weight.len(),
                    ideal.nvars
                )));
            }
            let point = cli.point.clone().or_else(|| pf.points.first().cloned());
            let working = match &point {
                Some(p) => {
                    if p.len() != ideal.nvars {
                        return Err(Error::Usage(format!(
                            "point has {} coordinates, expected {}",
                            p.len(),
                            ideal.nvars
                        )));
                    }
                    ideal.translate(p)?
                }
                None => ideal.clone(),
            };
            let init = initial_ideal(&working, &weight, &budget)?;
            // canonical reduced presentation of the same ideal
            let init = DIdeal::new(
                init.nvars,
                dreg_core::wgb::membership_basis(&init, &budget)?,
            );
            let mut doc = base_document("init");
            doc.insert(
                "weight".into(),
                json!(weight.iter().map(crate::print::fmt_rational).collect::<Vec<_>>()),
            );
            doc.insert(
                "point".into(),
                match &point {
                    Some(p) => json!(fmt_point(p)),
                    None => Value::Null,
                },
            );
            doc.insert(
                "initial_ideal".into(),
                json!(init.gens.iter().map(fmt_weyl).collect::<Vec<_>>()),
            );
            doc.insert("telemetry".into(), report::telemetry_value(&[&budget]));
            emit(cli, &Value::Object(doc)).map_err(Error::Usage)?;
            Ok(0)
        }
        "sing" => {
            let sing = singular_locus(ideal, &budget)?;
            let mut doc = base_document("sing");
            doc.insert(
                "components".into(),
                json!(sing.codim1.iter().map(fmt_poly).collect::<Vec<_>>()),
            );
            doc.insert(
                "may_have_deeper_components".into(),
                json!(sing.may_have_deeper_components),
            );
            doc.insert("telemetry".into(), report::telemetry_value(&[&budget]));
            emit(cli, &Value::Object(doc)).map_err(Error::Usage)?;
            Ok(0)
        }
        "support" => {
            let rank = holonomic_rank(ideal, &budget)?;
            let records = engine::irregular_support(ideal, options, &budget)?;
            let mut doc = base_document("support");
            doc.insert("rank".into(), report::rank_value(&rank));
            doc.insert(
                "records".into(),
                json!(records.iter().map(report::record_value).collect::<Vec<_>>()),
            );
            doc.insert(
                "support".into(),
                json!(records
                    .iter()
                    .filter(|r| r.status == RecordStatus::Stable
                        && r.irr_mult.is_some_and(|m| m > 0))
                    .map(|r| fmt_poly(&r.component))
                    .collect::<Vec<_>>()),
            );
            doc.insert("telemetry".into(), report::telemetry_value(&[&budget]));
            emit(cli, &Value::Object(doc)).map_err(Error::Usage)?;
            Ok(0)
        }
        "regular" | "irrdiv" => {
            let (report_doc, verdict) =
                full_pipeline(cli, ideal, options, budget_ms, &budget)?;
            emit(cli, &report_doc).map_err(Error::Usage)?;
            if cli.command == "regular" {
                Ok(match verdict {
                    Verdict::Regular => 0,
                    Verdict::Irregular => 1,
                    Verdict::Inconclusive => 2,
                })
            } else {
                Ok(0)
            }
        }
        "oracle" => {
            let code = oracle_command(cli, ideal, options, &budget)?;
            Ok(code)
        }
        _ => unreachable!("subcommand validated in parse_args"),
    }
}

/// Deterministic step counters carried out of a worker thread.
type Counts = (u64, u64, u64);
type TaskResult = Result<(usize, ChartOutput, Counts), Error>;

/// regular / irrdiv pipeline with chart-level parallelism. Outputs are
/// assembled in task order, so the report bytes do not depend on --jobs.
fn full_pipeline(
    cli: &Cli,
    ideal: &DIdeal,
    options: &Options,
    budget_ms: Option<u64>,
    budget: &Budget,
) -> Result<(Value, Verdict), Error> {
    let rank = match holonomic_rank(ideal, budget)? {
        dreg_core::ratweyl::RankResult::Finite(r) => r,
        dreg_core::ratweyl::RankResult::Infinite => {
            let report = engine::infinite_rank_report();
            let doc = report::regularity_value(
                &report,
                options,
                &cli.command,
                report::telemetry_value(&[budget]),
            );
            return Ok((doc, report.verdict));
        }
    };
    let tasks = plan_charts(ideal, options)?;
    let jobs = cli.jobs.min(tasks.len()).max(1);
    let mut outputs: Vec<Option<(ChartOutput, Counts)>> = Vec::new();
    outputs.resize_with(tasks.len(), || None);
    if jobs <= 1 {
        for (i, task) in tasks.iter().enumerate() {
            let out = run_chart_task(task, rank, options, budget)?;
            outputs[i] = Some((out, (0, 0, 0)));
        }
    } else {
        let results: Vec<TaskResult> = std::thread::scope(|scope| {
                let mut handles = Vec::new();
                for worker in 0..jobs {
                    let tasks = &tasks;
                    let options_ref = options;
                    handles.push(scope.spawn(move || {
                        let mut local = Vec::new();
                        for (i, task) in tasks.iter().enumerate() {
                            if i % jobs != worker {
                                continue;
                            }
                            let deadline = budget_ms.map(MsDeadline::new);
                            let thread_budget = match &deadline {
                                Some(d) => Budget::with_deadline(d),
                                None => Budget::new(),
                            };
                            let res = run_chart_task(task, rank, options_ref, &thread_budget)
                                .map(|out| {
                                    (
                                        i,
                                        out,
                                        (
                                            thread_budget.gb_calls(),
                                            thread_budget.pairs_total(),
                                            thread_budget.reductions(),
                                        ),
                                    )
                                });
                            local.push(res);
                        }
                        local
                    }));
                }
                handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("worker panicked"))
                    .collect()
            });
        for res in results {
            let (i, out, counts) = res?;
            outputs[i] = Some((out, counts));
        }
    }
    let mut chart_outputs = Vec::with_capacity(outputs.len());
    let mut extra_counts = (0u64, 0u64, 0u64);
    for slot in outputs {
        let (out, counts) = slot.expect("every task produced output");
        extra_counts.0 += counts.0;
        extra_counts.1 += counts.1;
        extra_counts.2 += counts.2;
        chart_outputs.push(out);
    }
    let report_struct = assemble_report(rank, &chart_outputs, options);

    let telemetry = json!({
        "gb_calls": budget.gb_calls() + extra_counts.0,
        "s_pairs": budget.pairs_total() + extra_counts.1,
        "reductions": budget.reductions() + extra_counts.2,
    });
    let mut doc =
        report::regularity_value(&report_struct, options, &cli.command, telemetry);
    if cli.cross_check && cli.command == "regular" {
        let oracle = cross_check_value(ideal, &report_struct, options, budget)?;
        if let Value::Object(m) = &mut doc {
            m.insert("oracle".into(), oracle);
        }
    }
    Ok((doc, report_struct.verdict))
}

/// Line-oracle verdicts for every stable affine record, appended to the
/// regular report under --cross-check.
fn cross_check_value(
    ideal: &DIdeal,
    report_struct: &engine::RegularityReport,
    options: &Options,
    budget: &Budget,
) -> Result<Value, Error> {
    let mut out = Vec::new();
    for rec in report_struct
        .records
        .iter()
        .filter(|r| r.chart == Chart::Affine)
    {
        let mut entry = Map::new();
        entry.insert("component".into(), json!(fmt_poly(&rec.component)));
        let point = rec.points.first();
        match point {
            None => {
                entry.insert("status".into(), json!("no sampled point"));
            }
            Some(p) => match transverse_direction(&rec.component, p, options.seed) {
                Err(e) => {
                    entry.insert("status".into(), json!(format!("unavailable: {e}")));
                }
                Ok(v) => match line_regularity_oracle(ideal, p, &v, options.seed, budget) {
                    Err(e) => {
                        entry.insert("status".into(), json!(format!("unavailable: {e}")));
                    }
                    Ok(regular) => {
                        entry.insert("regular_along_line".into(), json!(regular));
                        let engine_regular = rec.irr_mult == Some(0);
                        entry.insert(
                            "agrees_with_gr_rank".into(),
                            json!(regular == engine_regular),
                        );
                    }
                },
            },
        }
        out.push(Value::Object(entry));
    }
    Ok(json!(out))
}

fn oracle_command(
    cli: &Cli,
    ideal: &DIdeal,
    options: &Options,
    budget: &Budget,
) -> Result<i32, Error> {
    let sing = singular_locus(ideal, budget)?;
    let components = if options.components.is_empty() {
        sing.codim1.clone()
    } else {
        options.components.clone()
    };
    let mut entries = Vec::new();
    let mut failures = false;
    for (ci, comp) in components.iter().enumerate() {
        let avoid: Vec<_> = components
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != ci)
            .map(|(_, f)| f.clone())
            .chain(options.avoid.iter().cloned())
            .collect();
        let mut entry = Map::new();
        entry.insert("component".into(), json!(fmt_poly(comp)));
        let point = cli
            .point
            .clone()
            .filter(|p| p.len() == ideal.nvars && comp.eval(p).is_zero())
            .map(Ok)
            .unwrap_or_else(|| {
                engine::generic_point(
                    comp,
                    &avoid,
                    &[],
                    options.seed,
                    9_000_000 + ci as u64,
                    options.height_bound,
                    options.max_point_attempts,
                )
            });
        match point {
            Err(e) => {
                failures = true;
                entry.insert("status".into(), json!(format!("unavailable: {e}")));
            }
            Ok(p) => {
                entry.insert("point".into(), json!(fmt_point(&p)));
                match transverse_direction(comp, &p, options.seed)
                    .and_then(|v| line_regularity_oracle(ideal, &p, &v, options.seed, budget))
                {
                    Err(Error::Resource { what }) => return Err(Error::Resource { what }),
                    Err(e) => {
                        failures = true;
                        entry.insert("status".into(), json!(format!("unavailable: {e}")));
                    }
                    Ok(regular) => {
                        entry.insert("regular_along_line".into(), json!(regular));
                    }
                }
            }
        }
        entries.push(Value::Object(entry));
    }
    let mut doc = base_document("oracle");
    doc.insert("oracle".into(), json!(entries));
    doc.insert("telemetry".into(), report::telemetry_value(&[budget]));
    emit(cli, &Value::Object(doc)).map_err(Error::Usage)?;
    Ok(if failures { 2 } else { 0 })
}
