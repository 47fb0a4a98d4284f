//! Argument parsing and the five verbs.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use efc_core::decomposition::{star_decompose, DecompositionTree};
use efc_core::formulations::{
    camion_signing, circuit_dominant_ef, cographic_independence_ef, cographic_signing, explicit_flat_ef, graphic_independence_ef,
    graphic_signing, r10_signing, regular_pipeline, verify_tu, FormulationError, PipelineOptions, PipelineOutput, SignedMatrix,
};
use efc_core::lp::{ExtendedFormulation, SizeReport};
use efc_core::matroid::{r10, BinaryMatroid, Graph, DEFAULT_CAP};
use efc_core::verify::{
    check_circuit_dominant, check_projection_equality_with, check_size_bounds, ProjectionOptions, SizeLedger, VerificationReport,
};

use crate::formats::{parse_graph, parse_matrix, parse_tree, read_file, sniff_kind, FormatError};
use crate::lp_text::{parse_ef, write_ef, LpTextError};

/// Exit status for a run where every check passed.
pub const EXIT_OK: i32 = 0;
/// Exit status when some check failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for bad arguments or unreadable input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Graphic,
    Cographic,
    Binary,
    Dectree,
    R10,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    JsonLines,
}

#[derive(Parser, Debug)]
#[command(name = "efc", version, about = "Build and check extended formulations of regular matroid polytopes")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Source {
    /// Graph, matrix or decomposition-tree file (not needed for r10).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Input kind; guessed from the file contents when omitted.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Enumeration cap for circuits, flats and independent sets.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct Sampling {
    /// Random objectives per check.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Build the independence-polytope formulation and write it as LP text.
    Build {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check formulations against the matroid oracles.
    Verify {
        /// Input files; repeat the flag to check several instances.
        #[arg(long = "input")]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[command(flatten)]
        sampling: Sampling,
        /// Worker threads across instances (default: available cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Check this LP file instead of building the formulation.
        #[arg(long)]
        lp: Option<PathBuf>,
    },
    /// Print the centroid star decomposition of a decomposition tree.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Print size counts, recounted from the emitted LP text.
    Stats {
        #[command(flatten)]
        src: Source,
        /// Also write the LP that was counted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the circuit-dominant formulation, optionally checking it.
    CircuitDominant {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare against circuit enumeration and check the size bound.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        sampling: Sampling,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    LpText(#[from] LpTextError),
    #[error(transparent)]
    Formulation(#[from] FormulationError),
    #[error("{0}")]
    Verify(#[from] efc_core::verify::VerifyError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

/// A loaded input.
#[derive(Clone, Debug)]
pub enum Instance {
    Graph { g: Graph, cographic: bool },
    Binary(BinaryMatroid),
    Tree(DecompositionTree),
    R10,
}

impl Instance {
    pub fn matroid(&self) -> Result<BinaryMatroid, CliError> {
        Ok(match self {
            Instance::Graph { g, cographic: false } => g.cycle_matroid(),
            Instance::Graph { g, cographic: true } => g.bond_matroid(),
            Instance::Binary(m) => m.clone(),
            Instance::Tree(t) => t.compose().map_err(FormulationError::from)?,
            Instance::R10 => r10(),
        })
    }

    /// The independence-polytope formulation, plus the pipeline ledger for trees.
    pub fn formulation(&self, cap: usize) -> Result<(ExtendedFormulation, Option<PipelineOutput>), CliError> {
        Ok(match self {
            Instance::Graph { g, cographic: false } => (graphic_independence_ef(g)?, None),
            Instance::Graph { g, cographic: true } => (cographic_independence_ef(g)?, None),
            Instance::Binary(m) => (explicit_flat_ef(m, cap)?, None),
            Instance::Tree(t) => {
                let out = regular_pipeline(t, &PipelineOptions { cap })?;
                (out.ef.clone(), Some(out))
            }
            Instance::R10 => (explicit_flat_ef(&r10(), cap)?, None),
        })
    }

    /// A totally unimodular signing of the matroid.
    pub fn signing(&self) -> Result<SignedMatrix, CliError> {
        let sm = match self {
            Instance::Graph { g, cographic: false } => return Ok(graphic_signing(g)),
            Instance::Graph { g, cographic: true } => return Ok(cographic_signing(g)),
            Instance::R10 => return Ok(r10_signing()),
            Instance::Binary(m) => camion_signing(m),
            Instance::Tree(_) => camion_signing(&self.matroid()?),
        };
        verify_tu(&sm, sm.rows.len())?;
        Ok(sm)
    }
}

fn instance_name(input: Option<&Path>) -> String {
    input.and_then(|p| p.file_stem()).map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "r10".into())
}

/// Read `input` as `kind` (guessing the kind from the contents if needed).
pub fn load(input: Option<&Path>, kind: Option<Kind>) -> Result<Instance, CliError> {
    let Some(path) = input else {
        return match kind {
            Some(Kind::R10) => Ok(Instance::R10),
            None => Err(CliError::Usage("pass --input, or --kind r10 for the built-in R10".into())),
            Some(k) => Err(CliError::Usage(format!("--kind {} needs --input", k.to_possible_value().unwrap().get_name()))),
        };
    };
    let text = read_file(path)?;
    let kind = match kind {
        Some(k) => k,
        None => match sniff_kind(&text) {
            Some("graphic") => Kind::Graphic,
            Some("binary") => Kind::Binary,
            Some("dectree") => Kind::Dectree,
            _ => return Err(CliError::Usage(format!("cannot tell the kind of {}; pass --kind", path.display()))),
        },
    };
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(match kind {
        Kind::Graphic => Instance::Graph { g: parse_graph(&text)?, cographic: false },
        Kind::Cographic => Instance::Graph { g: parse_graph(&text)?, cographic: true },
        Kind::Binary => Instance::Binary(parse_matrix(&text)?),
        Kind::Dectree => Instance::Tree(parse_tree(&text, base)?),
        Kind::R10 => {
            let m = parse_matrix(&text)?;
            efc_core::decomposition::Part::r10(m).map_err(FormulationError::from)?;
            Instance::R10
        }
    })
}

/// One output record, printed as `key=value` pairs or as a JSON object.
struct Record(Vec<(&'static str, Value)>);

impl Record {
    fn new() -> Self {
        Record(Vec::new())
    }

    fn with(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self
                .0
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}={s}"),
                    other => format!("{k}={other}"),
                })
                .collect::<Vec<_>>()
                .join(" "),
            OutputFormat::JsonLines => {
                let map: Map<String, Value> = self.0.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
                Value::Object(map).to_string()
            }
        }
    }
}

fn emit(out: &mut dyn Write, format: OutputFormat, rec: Record) -> std::io::Result<()> {
    writeln!(out, "{}", rec.render(format))
}

fn size_record(rec: Record, s: &SizeReport) -> Record {
    rec.with("vars", s.variables).with("ineqs", s.inequalities).with("eqs", s.equations)
}

fn ledger_records(name: &str, ef: &ExtendedFormulation, pipeline: Option<&PipelineOutput>) -> Vec<Record> {
    match pipeline {
        Some(p) => p
            .ledger
            .iter()
            .map(|e| size_record(Record::new().with("level", e.level).with("part", e.part.clone()), &e.size))
            .collect(),
        None => vec![size_record(Record::new().with("level", 0).with("part", name), &ef.size())],
    }
}

fn report_records(report: &VerificationReport) -> Vec<Record> {
    let mut recs: Vec<Record> = report
        .checks
        .iter()
        .map(|c| Record::new().with("check", c.name.clone()).with("status", c.status.as_str()).with("detail", c.detail.clone()))
        .collect();
    let failed = report.failures().count();
    recs.push(
        Record::new()
            .with("instance", report.instance.clone())
            .with("status", if failed == 0 { "pass" } else { "fail" })
            .with("checks", report.checks.len())
            .with("failed", failed)
            .with("trials", report.trials)
            .with("seed", report.seed),
    );
    recs
}

fn write_lp_file(path: &Path, ef: &ExtendedFormulation, header: &[Record]) -> Result<(), CliError> {
    let mut text = String::new();
    for r in header {
        text.push_str("# ");
        text.push_str(&r.render(OutputFormat::Text));
        text.push('\n');
    }
    text.push_str(&write_ef(ef));
    std::fs::write(path, text).map_err(|source| FormatError::Io { path: path.to_path_buf(), source })?;
    Ok(())
}

fn build(src: &Source, out_path: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    let inst = load(src.input.as_deref(), src.kind)?;
    let name = instance_name(src.input.as_deref());
    let (ef, pipeline) = inst.formulation(src.cap)?;
    let ledger = ledger_records(&name, &ef, pipeline.as_ref());
    match out_path {
        Some(p) => {
            write_lp_file(p, &ef, &ledger)?;
            for r in ledger {
                emit(out, src.format, r)?;
            }
        }
        None => match src.format {
            OutputFormat::Text => {
                for r in &ledger {
                    writeln!(out, "# {}", r.render(OutputFormat::Text))?;
                }
                write!(out, "{}", write_ef(&ef))?;
            }
            OutputFormat::JsonLines => {
                for r in ledger {
                    emit(out, src.format, r)?;
                }
                emit(out, src.format, Record::new().with("lp", write_ef(&ef)))?;
            }
        },
    }
    Ok(EXIT_OK)
}

struct VerifyJob<'a> {
    input: Option<&'a Path>,
    kind: Option<Kind>,
    lp: Option<&'a Path>,
    opts: ProjectionOptions,
}

fn verify_one(job: &VerifyJob<'_>) -> Result<(VerificationReport, u128), CliError> {
    let start = Instant::now();
    let inst = load(job.input, job.kind)?;
    let name = instance_name(job.input);
    let m = inst.matroid()?;
    let mut report = match job.lp {
        Some(p) => {
            let ef = parse_ef(&read_file(p)?)?;
            check_projection_equality_with(&ef, &m, &job.opts)
        }
        None => {
            let (ef, pipeline) = inst.formulation(job.opts.cap)?;
            let mut r = check_projection_equality_with(&ef, &m, &job.opts);
            if let Some(p) = &pipeline {
                r.absorb(check_size_bounds(SizeLedger::Pipeline(p), &name));
            }
            r
        }
    };
    report.instance = name;
    let elapsed = start.elapsed().as_millis();
    report.elapsed_ms = Some(elapsed as u64);
    Ok((report, elapsed))
}

fn run_jobs(jobs: &[VerifyJob<'_>], threads: usize) -> Vec<Result<(VerificationReport, u128), CliError>> {
    if threads <= 1 || jobs.len() <= 1 {
        return jobs.iter().map(verify_one).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<Result<(VerificationReport, u128), CliError>>> = (0..jobs.len()).map(|_| None).collect();
    let done = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|s| {
        for _ in 0..threads.min(jobs.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let r = verify_one(&jobs[i]);
                done.lock().expect("no worker panicked")[i] = Some(r);
            });
        }
    });
    slots.into_iter().map(|r| r.expect("every job ran")).collect()
}

#[allow(clippy::too_many_arguments)]
fn verify(
    inputs: &[PathBuf],
    kind: Option<Kind>,
    cap: usize,
    format: OutputFormat,
    sampling: &Sampling,
    jobs: Option<usize>,
    lp: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    if lp.is_some() && inputs.len() > 1 {
        return Err(CliError::Usage("--lp checks a single instance".into()));
    }
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let mut opts = ProjectionOptions::new(sampling.trials, sampling.seed);
    opts.cap = cap;
    let list: Vec<VerifyJob<'_>> = if inputs.is_empty() {
        vec![VerifyJob { input: None, kind, lp, opts }]
    } else {
        inputs.iter().map(|p| VerifyJob { input: Some(p), kind, lp, opts }).collect()
    };
    let threads = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut code = EXIT_OK;
    for result in run_jobs(&list, threads) {
        let (report, elapsed) = result?;
        for r in report_records(&report) {
            emit(out, format, r)?;
        }
        writeln!(err, "instance={} elapsed_ms={elapsed}", report.instance)?;
        if !report.passed() {
            code = EXIT_FAIL;
        }
    }
    Ok(code)
}

fn decompose(input: &Path, format: OutputFormat, out: &mut dyn Write) -> Result<i32, CliError> {
    let base = input.parent().unwrap_or(Path::new("."));
    let tree = parse_tree(&read_file(input)?, base)?;
    let star = star_decompose(&tree).map_err(FormulationError::from)?;
    let center = tree.node(star.center);
    emit(
        out,
        format,
        Record::new()
            .with("center", center.id.clone())
            .with("kind", center.part.kind().as_str())
            .with("elements", center.part.matroid().len())
            .with("total", star.total)
            .with("leaves", star.leaves.len()),
    )?;
    for (i, leaf) in star.leaves.iter().enumerate() {
        let nodes: Vec<&str> = leaf.nodes.iter().map(|&v| tree.node(v).id.as_str()).collect();
        emit(
            out,
            format,
            Record::new()
                .with("leaf", i)
                .with("nodes", nodes.join("+"))
                .with("triangle", leaf.triangle.join(","))
                .with("elements", leaf.matroid.len()),
        )?;
    }
    for (v, w) in star.weights.iter().enumerate() {
        let n = tree.node(v);
        emit(out, format, Record::new().with("node", n.id.clone()).with("kind", n.part.kind().as_str()).with("weight", *w))?;
    }
    let (status, detail) = match star.check_invariants(&tree) {
        Ok(()) => ("pass", "|E(M0)| <= n, |E(Mi)| <= n/2 + 3, k <= n/4".to_string()),
        Err(e) => ("fail", e.to_string()),
    };
    emit(out, format, Record::new().with("check", "star-invariants").with("status", status).with("detail", detail))?;
    Ok(if status == "pass" { EXIT_OK } else { EXIT_FAIL })
}

/// Variables per name block (the text before the first `:`).
fn blocks(ef: &ExtendedFormulation) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for v in ef.lp.vars() {
        let block = v.name.split_once(':').map_or(v.name.as_str(), |(b, _)| b);
        *counts.entry(block.to_string()).or_insert(0) += 1;
    }
    counts
}

/// Closed-form block sizes of the flow formulation of a connected graph.
fn flow_formulas(g: &Graph) -> Vec<(&'static str, &'static str, usize)> {
    let (v, e) = (g.vertex_count(), g.edge_count());
    vec![("x", "|E|", e), ("c", "2|E|", 2 * e), ("phi", "(|V|-1)*2|E|", (v - 1) * 2 * e)]
}

fn stats(src: &Source, out_path: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    let inst = load(src.input.as_deref(), src.kind)?;
    let name = instance_name(src.input.as_deref());
    let (built, pipeline) = inst.formulation(src.cap)?;
    let text = write_ef(&built);
    if let Some(p) = out_path {
        std::fs::write(p, &text).map_err(|source| FormatError::Io { path: p.to_path_buf(), source })?;
    }
    // Count what was emitted, not what was built.
    let ef = parse_ef(&text)?;
    let fmt = src.format;
    emit(out, fmt, size_record(Record::new().with("instance", name.clone()).with("ground", ef.dim()), &ef.size()))?;
    let counts = blocks(&ef);
    let mut code = EXIT_OK;
    let formulas = match &inst {
        Instance::Graph { g, .. } if g.is_connected() => flow_formulas(g),
        _ => Vec::new(),
    };
    for (block, n) in &counts {
        let mut rec = Record::new().with("block", block.clone()).with("vars", *n);
        if let Some((_, formula, expected)) = formulas.iter().find(|(b, _, _)| b == block) {
            let ok = n == expected;
            if !ok {
                code = EXIT_FAIL;
            }
            rec = rec.with("formula", *formula).with("expected", *expected).with("status", if ok { "pass" } else { "fail" });
        }
        emit(out, fmt, rec)?;
    }
    if let Instance::Graph { g, .. } = &inst {
        if !formulas.is_empty() {
            let (v, e) = (g.vertex_count(), g.edge_count());
            let expected = e + 2 * e + (v - 1) * 2 * e;
            let ok = expected == ef.lp.vars().len();
            if !ok {
                code = EXIT_FAIL;
            }
            emit(
                out,
                fmt,
                Record::new()
                    .with("total", ef.lp.vars().len())
                    .with("formula", format!("|E|+2|E|+(|V|-1)*2|E| with |V|={v} |E|={e}"))
                    .with("expected", expected)
                    .with("status", if ok { "pass" } else { "fail" }),
            )?;
        }
    }
    if let Some(p) = &pipeline {
        for r in ledger_records(&name, &built, Some(p)) {
            emit(out, fmt, r)?;
        }
        for s in &p.stars {
            emit(
                out,
                fmt,
                Record::new()
                    .with("star", s.center.clone())
                    .with("level", s.level)
                    .with("kind", s.kind)
                    .with("e0", s.e0)
                    .with("r_ineqs", s.r_count)
                    .with("leaf_ineqs", s.leaf_counts.iter().sum::<usize>())
                    .with("prime_ineqs", s.prime_counts.iter().sum::<usize>())
                    .with("total", s.total)
                    .with("c1", s.c1),
            )?;
        }
    }
    Ok(code)
}

fn circuit_dominant(
    src: &Source,
    out_path: Option<&Path>,
    check: bool,
    sampling: &Sampling,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let inst = load(src.input.as_deref(), src.kind)?;
    let name = instance_name(src.input.as_deref());
    let cd = circuit_dominant_ef(&inst.signing()?)?;
    let n = cd.matrix.elements.len();
    let rec = size_record(Record::new().with("level", 0).with("part", name.clone()), &cd.ef.size())
        .with("pieces", cd.pieces.len())
        .with("elements", n);
    if let Some(p) = out_path {
        write_lp_file(p, &cd.ef, std::slice::from_ref(&rec))?;
    }
    emit(out, src.format, rec)?;
    if !check {
        return Ok(EXIT_OK);
    }
    let mut report = check_circuit_dominant(&cd, sampling.trials, sampling.seed, src.cap)?;
    report.absorb(check_size_bounds(SizeLedger::Dominant(&cd), &name));
    report.instance = name;
    for r in report_records(&report) {
        emit(out, src.format, r)?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cli.verb {
        Verb::Build { src, out: path } => build(&src, path.as_deref(), out),
        Verb::Verify { inputs, kind, cap, format, sampling, jobs, lp } => {
            verify(&inputs, kind, cap, format, &sampling, jobs, lp.as_deref(), out, err)
        }
        Verb::Decompose { input, format } => decompose(&input, format, out),
        Verb::Stats { src, out: path } => stats(&src, path.as_deref(), out),
        Verb::CircuitDominant { src, out: path, verify, sampling } => circuit_dominant(&src, path.as_deref(), verify, &sampling, out),
    }
}

/// Run the command line `args` (program name first) and return the exit
/// status. Reports go to `out`; diagnostics and timings to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
