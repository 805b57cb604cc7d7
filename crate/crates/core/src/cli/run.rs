use std::fmt::Write as _;
use std::fs;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::io::{read_grid_csv, read_points_csv, write_plot_csv};
use super::{RunConfig, Subcommand};
use crate::base_r::{self, encode, is_r_adic, parse_word, recognizability_trend, FunctionGraph, Rva};
use crate::classify::classify_function;
use crate::diff::{certify_smoothness, check_diff_identities, gen_diff, is_suitable, StepVector};
use crate::error::{Error, Result};
use crate::field::{normalize, verify_field_axioms, FieldStructure};
use crate::interval::Interval;
use crate::model::{parse_function_spec, sample, FunctionModel};
use crate::seqset::{
    assouad_estimate, box_dimension_estimate, classify_decay, make_sequence_set, omega_order, PointSet, SequenceSet,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    report: Value,
}

struct Produced {
    report: Value,
    plot: Vec<(f64, f64)>,
    summary: Option<String>,
}

/// Executes one subcommand. The JSON report goes to `output_path` (or to
/// `stdout` when absent); errors become `{error, detail}` on `stderr`.
pub fn run(cfg: &RunConfig) -> RunOutcome {
    match execute(cfg) {
        Ok(out) => out,
        Err(e) => {
            let code = if matches!(e, Error::Invariant(_)) { EXIT_INTERNAL } else { EXIT_PRECONDITION };
            let body = json!({ "error": e.kind(), "detail": e.to_string() });
            RunOutcome { code, stdout: String::new(), stderr: format!("{body}\n") }
        }
    }
}

fn execute(cfg: &RunConfig) -> Result<RunOutcome> {
    cfg.tolerances().validate()?;
    let produced = match cfg.subcommand {
        Subcommand::Certify => certify(cfg)?,
        Subcommand::Classify => classify(cfg)?,
        Subcommand::SynthField => synth_field(cfg)?,
        Subcommand::Seqset => seqset(cfg)?,
        Subcommand::Dimension => dimension(cfg)?,
        Subcommand::Encode => encode_cmd(cfg)?,
        Subcommand::Recognize => recognize(cfg)?,
        Subcommand::Identities => identities(cfg)?,
    };
    let envelope = Envelope {
        tool: "tame",
        version: env!("CARGO_PKG_VERSION"),
        config: cfg,
        report: produced.report,
    };
    let mut text = serde_json::to_string_pretty(&envelope)?;
    text.push('\n');
    if let Some(path) = &cfg.plot_path {
        write_plot_csv(path, &produced.plot)?;
    }
    let stdout = match &cfg.output_path {
        Some(path) => {
            fs::write(path, &text)?;
            produced.summary.unwrap_or_default()
        }
        None => text,
    };
    Ok(RunOutcome { code: EXIT_OK, stdout, stderr: String::new() })
}

fn load_function(cfg: &RunConfig) -> Result<FunctionModel> {
    match (&cfg.function_spec, &cfg.input_path) {
        (Some(spec), None) => parse_function_spec(spec),
        (None, Some(path)) => read_grid_csv(path),
        _ => Err(Error::Precondition("exactly one of --fn and --input is required".into())),
    }
}

fn analysis_interval(cfg: &RunConfig, f: &FunctionModel) -> Result<Interval> {
    match &cfg.interval {
        Some(text) => text.parse(),
        None => Ok(f.domain()),
    }
}

fn function_plot(f: &FunctionModel, i: &Interval, n: usize) -> Result<Vec<(f64, f64)>> {
    let g = sample(f, i, n.clamp(2, 4096))?;
    Ok(g.knots.iter().copied().zip(g.values.iter().copied()).collect())
}

fn certify(cfg: &RunConfig) -> Result<Produced> {
    let f = load_function(cfg)?;
    let i = analysis_interval(cfg, &f)?;
    let cert = certify_smoothness(&f, &i, cfg.k, &cfg.tolerances())?;
    let summary = format!("k = {}  coverage = {}  regions = {}\n", cert.k, cert.coverage, cert.regions.len());
    Ok(Produced { report: serde_json::to_value(&cert)?, plot: function_plot(&f, &i, cfg.grid_n)?, summary: Some(summary) })
}

fn classify(cfg: &RunConfig) -> Result<Produced> {
    let f = load_function(cfg)?;
    let i = analysis_interval(cfg, &f)?;
    let r = classify_function(&f, &i, cfg.depth, &cfg.tolerances())?;
    let mut table = String::new();
    let row = |t: &mut String, k: &str, v: String| writeln!(t, "{k:<22}{v}").expect("write to string");
    row(&mut table, "function", f.to_spec());
    row(&mut table, "interval", i.to_text());
    row(&mut table, "smoothness coverage", format!("{} (k = {})", r.smoothness.coverage, r.smoothness.k));
    row(&mut table, "convexity", serde_json::to_value(r.convexity)?.as_str().unwrap_or("").to_string());
    let found = r.repetition.iter().filter(|w| w.witness.is_some()).count();
    row(&mut table, "repetition witnesses", format!("{found}/{}", r.repetition.len()));
    row(&mut table, "affine coverage", format!("{} (depth {})", r.affine_coverage, r.affine_depth));
    row(&mut table, "certified defect", format!("{:e}", r.certified_defect));
    row(&mut table, "verdict", serde_json::to_value(r.verdict)?.as_str().unwrap_or("").to_string());
    Ok(Produced { report: serde_json::to_value(&r)?, plot: function_plot(&f, &i, cfg.grid_n)?, summary: Some(table) })
}

fn synth_field(cfg: &RunConfig) -> Result<Produced> {
    let f = load_function(cfg)?;
    let i = analysis_interval(cfg, &f)?;
    let tol = cfg.tolerances();
    let nf = normalize(&f, &i, &tol)?;
    let fs = FieldStructure::build(nf, cfg.grid_n, &tol)?;
    let axioms = verify_field_axioms(&fs, cfg.trials, &tol)?;
    let summary = format!(
        "b = {}  |E| = {}  max residual = {:e}  order violations = {}\n",
        fs.b,
        fs.e.len(),
        axioms.max_residual,
        axioms.order_violations
    );
    let report = json!({
        "normalized": fs.normalized.f.to_spec(),
        "provenance": fs.normalized.provenance,
        "b": fs.b,
        "E_size": fs.e.len(),
        "continuous": fs.continuous,
        "t_max": fs.t_max,
        "axiom_report": axioms,
    });
    let plot = fs.table.iter().map(|p| (p.x, p.tau)).collect();
    Ok(Produced { report, plot, summary: Some(summary) })
}

fn sequence(cfg: &RunConfig) -> Result<SequenceSet> {
    match (&cfg.function_spec, &cfg.input_path) {
        (Some(spec), None) => make_sequence_set(&parse_function_spec(spec)?, cfg.n_max),
        (None, Some(path)) => match read_points_csv(path)? {
            PointSet::Line(v) => SequenceSet::from_values(v),
            PointSet::Plane(_) => Err(Error::Precondition("sequence input must have one column".into())),
        },
        _ => Err(Error::Precondition("exactly one of --fn and --input is required".into())),
    }
}

fn seqset(cfg: &RunConfig) -> Result<Produced> {
    let s = sequence(cfg)?;
    let fit = classify_decay(&s);
    let omega = omega_order(&s.values);
    let plot = omega.elements.iter().copied().zip(omega.delta_values.iter().copied()).collect();
    let summary = format!("len = {}  decay = {:?}  lambda = {}\n", s.len(), fit.class, fit.lambda);
    let report = json!({
        "len": s.len(),
        "min_value": s.min_value(),
        "strictly_decreasing": s.strictly_decreasing,
        "decreasing_gaps": s.decreasing_gaps,
        "decay": fit,
        "omega_order": omega,
    });
    Ok(Produced { report, plot, summary: Some(summary) })
}

fn dimension(cfg: &RunConfig) -> Result<Produced> {
    let points = match (&cfg.function_spec, &cfg.input_path) {
        (None, Some(path)) => read_points_csv(path)?,
        _ => PointSet::Line(sequence(cfg)?.values),
    };
    let assouad = assouad_estimate(&points, cfg.j_min, cfg.j_max)?;
    let boxd = box_dimension_estimate(&points, cfg.j_min, cfg.j_max)?;
    let plot = boxd
        .per_scale_counts
        .iter()
        .map(|s| (s.j_outer as f64, (s.counts[0] as f64).log2()))
        .collect();
    let summary = format!("points = {}  assouad = {}  box = {}\n", points.len(), assouad.estimate, boxd.estimate);
    let report = json!({ "points": points.len(), "dim": points.dim(), "assouad": assouad, "box": boxd });
    Ok(Produced { report, plot, summary: Some(summary) })
}

fn encode_cmd(cfg: &RunConfig) -> Result<Produced> {
    let x = cfg.x.ok_or_else(|| Error::Precondition("encode needs --x".into()))?;
    let words = encode(x, cfg.base, cfg.precision)?;
    let text: Vec<String> = words.iter().map(|w| w.to_string()).collect();
    let decoded: Vec<f64> = words.iter().map(|w| w.decode()).collect();
    let canon = &words[0];
    let plot = (1..=cfg.precision as i32).map(|k| (-k as f64, canon.digit_at(-k) as f64)).collect();
    let mut summary = text.join("\n");
    summary.push('\n');
    let report = json!({
        "x": x,
        "base": cfg.base,
        "precision": cfg.precision,
        "r_adic": is_r_adic(x, cfg.base),
        "words": text,
        "decoded": decoded,
    });
    Ok(Produced { report, plot, summary: Some(summary) })
}

fn recognize(cfg: &RunConfig) -> Result<Produced> {
    if let Some(path) = &cfg.automaton_path {
        let a = Rva::from_json(&fs::read_to_string(path)?)?;
        let words = cfg.words.iter().map(|w| parse_word(w, a.r())).collect::<Result<Vec<_>>>()?;
        let m = a.membership(&words)?;
        let summary = format!("{}\n", if m.accepted { "accept" } else { "reject" });
        let report = json!({ "mode": "membership", "words": cfg.words, "membership": m });
        return Ok(Produced { report, plot: Vec::new(), summary: Some(summary) });
    }
    let graph = FunctionGraph::new(load_function(cfg)?)?;
    if cfg.p_min > cfg.p_max {
        return Err(Error::Precondition("--p-min must not exceed --p-max".into()));
    }
    let trend = recognizability_trend(&graph, cfg.base, cfg.p_min..=cfg.p_max, cfg.samples, cfg.seed)?;
    let plot = trend.counts.iter().map(|c| (c.p as f64, c.classes as f64)).collect();
    let counts: Vec<String> = trend.counts.iter().map(|c| c.classes.to_string()).collect();
    let verdict = match trend.verdict {
        Some(base_r::Trend::Bounded) => "bounded",
        Some(base_r::Trend::Growing) => "growing",
        None => "withheld",
    };
    let summary = format!("counts = [{}]  verdict = {verdict} ({})\n", counts.join(", "), trend.label);
    let report = json!({ "mode": "trend", "probes": base_r::PROBES, "trend": trend });
    Ok(Produced { report, plot, summary: Some(summary) })
}

fn identities(cfg: &RunConfig) -> Result<Produced> {
    let f = load_function(cfg)?;
    let g = match &cfg.second_spec {
        Some(spec) => parse_function_spec(spec)?,
        None => f.clone(),
    };
    let i = analysis_interval(cfg, &f)?;
    let k = cfg.k;
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut split, mut additivity, mut done) = (0.0f64, 0.0f64, 0usize);
    let mut plot = Vec::with_capacity(cfg.trials);
    let span = i.len() / (2 * k) as f64;
    for _ in 0..cfg.trials {
        let h: Vec<f64> = (0..k).map(|_| span * rng.gen_range(0.01..1.0)).collect();
        let reach = k as f64 * h.iter().fold(0.0f64, |m, &v| m.max(v));
        let x = i.lo + (i.len() - reach) * rng.gen_range(0.01..0.99);
        if !is_suitable(&i, k, &h, x) {
            continue;
        }
        let hv = StepVector::new(h)?;
        let r = check_diff_identities(&f, &g, x, &hv)?;
        split = split.max(r.split_residual);
        additivity = additivity.max(r.additivity_residual);
        plot.push((x, gen_diff(&f, x, &hv)?));
        done += 1;
    }
    let summary = format!("trials = {done}  split = {split:e}  additivity = {additivity:e}\n");
    let report = json!({
        "k": k,
        "trials": done,
        "max_split_residual": split,
        "max_additivity_residual": additivity,
    });
    Ok(Produced { report, plot, summary: Some(summary) })
}
