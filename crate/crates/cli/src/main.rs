//! `kanlift`: build simplicial sets, apply operations, run bounded lifting
//! checks and the fixture corpus from the command line.
//!
//! Exit codes: 0 success or verified, 1 refuted (witness written), 2
//! undecided (a search budget ran out), 3 input or validation error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use kanlift::bisimp::{d_shriek, delta_embed, diagonal};
use kanlift::builders::{boundary, cyclic_group, group_nerve, horn, point, quotient_d, standard};
use kanlift::cover::{category_nerve, star_cover, CoverSpec};
use kanlift::ex::{ex_apply, gamma_star};
use kanlift::expansion::{find_expansion, verify_expansion};
use kanlift::fixtures;
use kanlift::format::{Container, Document};
use kanlift::homology::homology;
use kanlift::lifting::{
    delta_of, kan_check, kan_fibration_check, replay_witness, rezk_check, rezk_witness_container, rhlp_check,
    weak_kan_complex_check, weak_kan_fibration_check, witness_container, CheckOptions, CheckOutcome, Verdict,
};
use kanlift::search::{SearchOutcome, DEFAULT_BUDGET};
use kanlift::subdivide::{sd, sd_iterate};
use kanlift::{SimplicialMap, SimplicialSet};

/// Overrides the default node budget of every search.
const BUDGET_VAR: &str = "KANLIFT_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "kanlift", version, about = "Bounded Kan, weak Kan and realization-fibration checks on finite simplicial sets")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a standard simplicial set or map.
    Build {
        #[arg(value_enum)]
        shape: Shape,
        /// Shape parameters, e.g. `n` or `n k`.
        params: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        trunc: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply a construction to a file.
    Op {
        #[arg(value_enum)]
        op: Op,
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        iterations: usize,
        /// Truncation of the result, where the construction needs one.
        #[arg(long)]
        trunc: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a bounded check and print one JSON record.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        i_max: usize,
        #[arg(long, default_value_t = 0)]
        homotopy_level: usize,
        #[arg(long, default_value_t = 0)]
        sd_level: usize,
        #[arg(long, default_value_t = 1)]
        m_max: usize,
        #[arg(long)]
        budget: Option<u64>,
        /// Where to write the witness of a refutation (default `<input>.witness`).
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Integral homology table.
    Homology {
        input: PathBuf,
        /// Highest degree (default: one below the file's truncation).
        #[arg(long)]
        deg_max: Option<usize>,
    },
    /// Nerve of the star cover of a set, or of a `COVER` file.
    Nerve {
        input: PathBuf,
        /// Use plain index sets instead of connected components.
        #[arg(long)]
        no_components: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-solve a witness file; exit 1 when the refutation is reproduced.
    Replay {
        input: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Export or run the fixture corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    /// Write every fixture as `<name>.sset` into a directory.
    Export { dir: PathBuf },
    /// Weak Kan and Rezk checks on every fixture; refuted when some map is
    /// weak-Kan-verified yet Rezk-refuted.
    Run {
        /// Read the fixtures from this directory instead of the built-in list.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        i_max: usize,
        #[arg(long, default_value_t = 1)]
        homotopy_level: usize,
        #[arg(long, default_value_t = 2)]
        m_max: usize,
        #[arg(long)]
        budget: Option<u64>,
        /// Directory for witnesses of refuted weak checks.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        /// Only these fixtures.
        #[arg(long = "only")]
        only: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Shape {
    Standard,
    Boundary,
    Horn,
    Point,
    QuotientD,
    CyclicNerve,
    Counterexample,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    Sd,
    Ex,
    LastVertex,
    Gamma,
    Delta,
    DShriek,
    Diagonal,
    StarCover,
    Expand,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckKind {
    Kan,
    KanFib,
    WeakKan,
    WeakKanFib,
    Rhlp,
    Rezk,
}

impl CheckKind {
    fn name(self) -> &'static str {
        match self {
            CheckKind::Kan => "kan",
            CheckKind::KanFib => "kan-fib",
            CheckKind::WeakKan => "weak-kan",
            CheckKind::WeakKanFib => "weak-kan-fib",
            CheckKind::Rhlp => "rhlp",
            CheckKind::Rezk => "rezk",
        }
    }
}

#[derive(Serialize, Debug)]
struct Record {
    check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fixture: Option<String>,
    verdict: String,
    bound: String,
    witness_path: Option<String>,
    wall_time: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    problems: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

#[derive(Serialize, Debug)]
struct ErrorRecord {
    verdict: &'static str,
    error: String,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Out<T> = std::result::Result<T, Failure>;

fn exit_code(v: Verdict) -> u8 {
    match v {
        Verdict::Verified => 0,
        Verdict::Refuted => 1,
        Verdict::Undecided => 2,
    }
}

fn budget(flag: Option<u64>) -> Out<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure(format!("{BUDGET_VAR} is not a number: `{v}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn read(path: &Path) -> Out<Document> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    Document::parse(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_set(path: &Path) -> Out<Arc<SimplicialSet>> {
    match read(path)? {
        Document::Set(s) => {
            let bad = s.validate();
            if let Some(v) = bad.first() {
                return Err(Failure(format!("{}: {v}", path.display())));
            }
            Ok(Arc::new(s))
        }
        d => Err(Failure(format!("{}: expected an SSET file, found {}", path.display(), d.kind()))),
    }
}

fn read_map(path: &Path) -> Out<SimplicialMap> {
    let Document::Container(c) = read(path)? else {
        return Err(Failure(format!("{}: expected a container holding a map", path.display())));
    };
    let map = c
        .map("f")
        .or_else(|| if c.maps.len() == 1 { c.maps.first().map(|(.., m)| m) } else { None })
        .cloned()
        .ok_or_else(|| Failure(format!("{}: no map `f`", path.display())))?;
    if let Some(v) = map.validate().first() {
        return Err(Failure(format!("{}: {v}", path.display())));
    }
    Ok(map)
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Out<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn map_container(kind: &str, map: &SimplicialMap) -> Container {
    let mut c = Container::new(kind);
    c.add_set("X", map.domain().clone());
    c.add_set("Y", map.codomain().clone());
    c.add_map("f", "X", "Y", map.clone());
    c
}

fn param(params: &[usize], i: usize, shape: Shape) -> Out<usize> {
    params.get(i).copied().ok_or_else(|| Failure(format!("{shape:?} needs {} parameter(s)", i + 1)))
}

fn build(shape: Shape, params: &[usize], trunc: usize) -> Out<String> {
    let set = match shape {
        Shape::Standard => standard(param(params, 0, shape)?, trunc)?,
        Shape::Boundary => boundary(param(params, 0, shape)?, trunc)?,
        Shape::Horn => horn(param(params, 0, shape)?, param(params, 1, shape)?, trunc)?,
        Shape::Point => point(trunc),
        Shape::QuotientD => quotient_d(trunc)?,
        Shape::CyclicNerve => group_nerve(&cyclic_group(param(params, 0, shape)?), trunc)?,
        Shape::Counterexample => return Ok(map_container("MAP", &fixtures::counterexample()?).to_text()),
    };
    Ok(set.to_text())
}

fn op(op: Op, input: &Path, iterations: usize, trunc: Option<usize>, budget: u64) -> Out<String> {
    Ok(match op {
        Op::Sd => sd_iterate(&read_set(input)?, iterations).to_text(),
        Op::Ex => {
            let x = read_set(input)?;
            let d = trunc.unwrap_or(x.max_dim());
            ex_apply(&x, iterations, d)?.to_text()
        }
        Op::LastVertex => map_container("MAP", &sd(&read_set(input)?).last_vertex()).to_text(),
        Op::Gamma => {
            let x = read_set(input)?;
            map_container("MAP", &gamma_star(&x, trunc.unwrap_or(x.max_dim()))?).to_text()
        }
        Op::Delta => kanlift::format::write_bsset(&delta_embed(&*read_set(input)?)),
        Op::DShriek => kanlift::format::write_bsset(&d_shriek(&read_set(input)?)?.object),
        Op::Diagonal => match read(input)? {
            Document::BiSet(b) => diagonal(&Arc::new(b))?.object.to_text(),
            d => return Err(Failure(format!("{}: expected a BSSET file, found {}", input.display(), d.kind()))),
        },
        Op::StarCover => star_cover(&read_set(input)?)?.to_container().to_text(),
        Op::Expand => {
            let inc = read_map(input)?;
            match find_expansion(&inc, budget)? {
                SearchOutcome::Found(seq) => {
                    let report = verify_expansion(&seq);
                    if !report.accepted {
                        return Err(Failure(format!("expansion rejected: {:?}", report.failure)));
                    }
                    seq.to_container().to_text()
                }
                SearchOutcome::Exhausted => return Err(Failure("no expansion exists".into())),
                SearchOutcome::BudgetExceeded => return Err(Failure("expansion search exceeded the budget".into())),
            }
        }
    })
}

fn default_witness_path(input: &Path) -> PathBuf {
    let mut name = input.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".witness");
    input.with_file_name(name)
}

fn run_check(kind: CheckKind, input: &Path, params: &CheckParams) -> Out<(CheckOutcome, Option<Container>)> {
    let opts = CheckOptions { budget: params.budget, homotopy_level: params.homotopy_level };
    let outcome = match kind {
        CheckKind::Kan => kan_check(&read_set(input)?, params.n_max, opts)?,
        CheckKind::WeakKan => weak_kan_complex_check(&read_set(input)?, params.n_max, params.i_max, opts)?,
        CheckKind::KanFib => kan_fibration_check(&read_map(input)?, params.n_max, opts)?,
        CheckKind::WeakKanFib => weak_kan_fibration_check(&read_map(input)?, params.n_max, params.i_max, opts)?,
        CheckKind::Rhlp => rhlp_check(&read_map(input)?, params.n_max, params.sd_level, opts)?,
        CheckKind::Rezk => {
            let f = read_map(input)?;
            let out = rezk_check(&delta_of(&f)?, params.m_max, opts)?;
            let w = rezk_witness_container(&f, &out);
            return Ok((out, w));
        }
    };
    let w = witness_container(&outcome);
    Ok((outcome, w))
}

struct CheckParams {
    n_max: usize,
    i_max: usize,
    homotopy_level: usize,
    sd_level: usize,
    m_max: usize,
    budget: u64,
}

fn emit<T: Serialize>(record: &T) {
    println!("{}", serde_json::to_string(record).expect("records serialize"));
}

fn check(kind: CheckKind, input: &Path, params: CheckParams, witness: Option<PathBuf>) -> Out<u8> {
    let start = Instant::now();
    let (outcome, container) = run_check(kind, input, &params)?;
    let mut witness_path = None;
    if outcome.verdict == Verdict::Refuted {
        if let Some(c) = container {
            let path = witness.unwrap_or_else(|| default_witness_path(input));
            fs::write(&path, c.to_text()).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            witness_path = Some(path.display().to_string());
        }
    }
    emit(&Record {
        check: kind.name().into(),
        input: Some(input.display().to_string()),
        fixture: None,
        verdict: outcome.verdict.as_str().into(),
        bound: outcome.bound.clone(),
        witness_path,
        wall_time: start.elapsed().as_secs_f64(),
        problems: Some(outcome.problems),
        notes: outcome.notes.clone(),
    });
    Ok(exit_code(outcome.verdict))
}

fn nerve(input: &Path, components: bool) -> Out<String> {
    let cover = match read(input)? {
        Document::Set(s) => star_cover(&Arc::new(s))?,
        Document::Container(c) if c.kind == "COVER" => CoverSpec::from_container(&c)?,
        d => return Err(Failure(format!("{}: expected an SSET or COVER file, found {}", input.display(), d.kind()))),
    };
    Ok(category_nerve(&Arc::new(cover), components)?.object.to_text())
}

fn replay(input: &Path, budget: u64) -> Out<u8> {
    let start = Instant::now();
    let Document::Container(c) = read(input)? else {
        return Err(Failure(format!("{}: not a witness file", input.display())));
    };
    if c.kind != "WITNESS" {
        return Err(Failure(format!("{}: not a witness file", input.display())));
    }
    let verdict = match replay_witness(&c, budget) {
        Ok(true) => Verdict::Refuted,
        Ok(false) => return Err(Failure(format!("{}: the witness does not reproduce", input.display()))),
        Err(kanlift::Error::Precondition(_)) => Verdict::Undecided,
        Err(e) => return Err(e.into()),
    };
    emit(&Record {
        check: "replay".into(),
        input: Some(input.display().to_string()),
        fixture: None,
        verdict: verdict.as_str().into(),
        bound: c.meta("bound").unwrap_or_default().to_string(),
        witness_path: Some(input.display().to_string()),
        wall_time: start.elapsed().as_secs_f64(),
        problems: None,
        notes: Vec::new(),
    });
    Ok(exit_code(verdict))
}

fn load_corpus(dir: &Option<PathBuf>) -> Out<Vec<(String, SimplicialMap)>> {
    let Some(dir) = dir else {
        return Ok(fixtures::corpus()?.into_iter().map(|f| (f.name.to_string(), f.map)).collect());
    };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "sset"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        let Document::Container(c) = read(&p)? else { continue };
        if c.kind != "MAP" {
            continue;
        }
        let name = c
            .meta("name")
            .map(str::to_string)
            .unwrap_or_else(|| p.file_stem().unwrap_or_default().to_string_lossy().into_owned());
        out.push((name, read_map(&p)?));
    }
    Ok(out)
}

struct AuditRow {
    record: Record,
    violation: bool,
    undecided: bool,
}

fn audit_one(name: &str, f: &SimplicialMap, params: &CheckParams, witness_dir: &Option<PathBuf>) -> Out<AuditRow> {
    let start = Instant::now();
    let opts = CheckOptions { budget: params.budget, homotopy_level: params.homotopy_level };
    let weak = weak_kan_fibration_check(f, params.n_max, params.i_max, opts)?;
    let rezk = rezk_check(&delta_of(f)?, params.m_max, opts)?;
    let mut witness_path = None;
    if let (Some(dir), Some(c)) = (witness_dir, witness_container(&weak)) {
        let path = dir.join(format!("{name}.witness"));
        fs::write(&path, c.to_text()).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        witness_path = Some(path.display().to_string());
    }
    let violation = weak.verdict == Verdict::Verified && rezk.verdict == Verdict::Refuted;
    let undecided = weak.verdict == Verdict::Undecided || rezk.verdict == Verdict::Undecided;
    let verdict = if violation {
        Verdict::Refuted
    } else if undecided {
        Verdict::Undecided
    } else {
        Verdict::Verified
    };
    Ok(AuditRow {
        record: Record {
            check: "audit".into(),
            input: None,
            fixture: Some(name.to_string()),
            verdict: verdict.as_str().into(),
            bound: format!("weak: {}; rezk: {}", weak.bound, rezk.bound),
            witness_path,
            wall_time: start.elapsed().as_secs_f64(),
            problems: Some(weak.problems + rezk.problems),
            notes: vec![format!("weak-kan-fib {}", weak.verdict), format!("rezk {}", rezk.verdict)],
        },
        violation,
        undecided,
    })
}

fn corpus(action: CorpusAction) -> Out<u8> {
    match action {
        CorpusAction::Export { dir } => {
            fs::create_dir_all(&dir).map_err(|e| Failure(format!("{}: {e}", dir.display())))?;
            for fx in fixtures::corpus()? {
                let path = dir.join(fx.file_name());
                fs::write(&path, fx.to_container().to_text()).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            }
            Ok(0)
        }
        CorpusAction::Run { dir, n_max, i_max, homotopy_level, m_max, budget: b, witness_dir, only } => {
            let start = Instant::now();
            let params = CheckParams { n_max, i_max, homotopy_level, sd_level: 0, m_max, budget: budget(b)? };
            if let Some(w) = &witness_dir {
                fs::create_dir_all(w).map_err(|e| Failure(format!("{}: {e}", w.display())))?;
            }
            let mut maps = load_corpus(&dir)?;
            if !only.is_empty() {
                maps.retain(|(n, _)| only.contains(n));
            }
            let rows: Vec<AuditRow> =
                maps.par_iter().map(|(name, f)| audit_one(name, f, &params, &witness_dir)).collect::<Out<_>>()?;
            for r in &rows {
                emit(&r.record);
            }
            let violations = rows.iter().filter(|r| r.violation).count();
            let verdict = if violations > 0 {
                Verdict::Refuted
            } else if rows.iter().any(|r| r.undecided) {
                Verdict::Undecided
            } else {
                Verdict::Verified
            };
            emit(&Record {
                check: "implication-audit".into(),
                input: dir.map(|d| d.display().to_string()),
                fixture: None,
                verdict: verdict.as_str().into(),
                bound: format!("n_max={n_max} i_max={i_max} homotopy_level={homotopy_level} m_max={m_max}"),
                witness_path: None,
                wall_time: start.elapsed().as_secs_f64(),
                problems: None,
                notes: vec![format!("{} fixtures, {violations} violations", rows.len())],
            });
            Ok(exit_code(verdict))
        }
    }
}

fn run(cli: Cli) -> Out<u8> {
    match cli.command {
        Command::Build { shape, params, trunc, output } => {
            write_out(&output, &build(shape, &params, trunc)?)?;
            Ok(0)
        }
        Command::Op { op: o, input, iterations, trunc, budget: b, output } => {
            write_out(&output, &op(o, &input, iterations, trunc, budget(b)?)?)?;
            Ok(0)
        }
        Command::Check { kind, input, n_max, i_max, homotopy_level, sd_level, m_max, budget: b, witness } => {
            let params = CheckParams { n_max, i_max, homotopy_level, sd_level, m_max, budget: budget(b)? };
            check(kind, &input, params, witness)
        }
        Command::Homology { input, deg_max } => {
            let x = read_set(&input)?;
            let d = deg_max.unwrap_or(x.max_dim().saturating_sub(1));
            print!("{}", homology(&x, d)?.to_table());
            Ok(0)
        }
        Command::Nerve { input, no_components, output } => {
            write_out(&output, &nerve(&input, !no_components)?)?;
            Ok(0)
        }
        Command::Replay { input, budget: b } => replay(&input, budget(b)?),
        Command::Corpus { action } => corpus(action),
    }
}

fn fail(message: String) -> ExitCode {
    eprintln!("error: {message}");
    emit(&ErrorRecord { verdict: "error", error: message });
    ExitCode::from(3)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            return fail(first.strip_prefix("error: ").unwrap_or(first).to_string());
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            return fail("--threads must be positive".into());
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return fail(e.to_string());
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(m)) => fail(m),
    }
}
