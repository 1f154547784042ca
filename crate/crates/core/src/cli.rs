//! The `exkh` command line.

use std::io::{self, IsTerminal, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::corpus::{bundled, bundled_entry, parse_corpus, CorpusEntry};
use crate::error::Error;
use crate::homology::{cohomology, GradedAbelianGroup};
use crate::lando::{extreme_complex, lando_graph, x_complex, y_complex, DEFAULT_FACE_LIMIT};
use crate::oracle::{jmax, jmin, khovanov_homology};
use crate::pd::{parse_pd, LinkDiagram};
use crate::resolution::{resolve, State, DEFAULT_CUBE_CAP, MAX_CUBE_CAP};
use crate::verify::{jmax_from_y, verify_all, verify_entry, VerificationReport, VerifyOptions};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "exkh", version, about = "Extreme Khovanov homology of link diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Crossing counts, extreme gradings and the size of the Lando graph.
    Info(InfoArgs),
    /// Khovanov homology in one quantum grading.
    Homology(HomologyArgs),
    /// Cross-check both pipelines on one diagram or a corpus.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// PD text, a file, a bundled corpus name, or `-` for stdin.
    #[arg(short, long)]
    pub input: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Also write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest crossing number the cube oracle will accept.
    #[arg(long, env = "EXKH_CUBE_CAP", default_value_t = DEFAULT_CUBE_CAP)]
    pub cube_cap: usize,
    #[arg(long, default_value_t = DEFAULT_FACE_LIMIT)]
    pub face_limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Extreme,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Export {
    Lando,
    XComplex,
    YComplex,
    Resolution,
    Complex,
}

#[derive(Debug, Clone, Args)]
pub struct InfoArgs {
    #[command(flatten)]
    pub common: Common,
    /// Print one intermediate object instead of the summary.
    #[arg(long, value_enum)]
    pub export: Option<Export>,
}

#[derive(Debug, Clone, Args)]
pub struct HomologyArgs {
    #[command(flatten)]
    pub common: Common,
    /// `min`, `max`, or an explicit quantum grading.
    #[arg(long, default_value = "min", allow_negative_numbers = true)]
    pub grading: Grading,
    #[arg(long, value_enum, default_value_t = Via::Extreme)]
    pub via: Via,
    /// Same as `--via oracle`.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Swap the smoothing rule at these crossings on the cube side.
    #[arg(long, hide = true, value_delimiter = ',')]
    pub inject_fault: Vec<usize>,
    /// Record per-check timings (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    Min,
    Max,
    Exact(i64),
}

impl std::str::FromStr for Grading {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "min" => Ok(Grading::Min),
            "max" => Ok(Grading::Max),
            _ => s
                .parse()
                .map(Grading::Exact)
                .map_err(|_| format!("expected `min`, `max` or an integer, got `{s}`")),
        }
    }
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CubeTooLarge { .. } | Error::TooManyFaces { .. } => EXIT_RESOURCE,
            _ => EXIT_INPUT,
        };
        let mut message = e.to_string();
        if matches!(e, Error::CubeTooLarge { .. }) {
            message.push_str("; drop --oracle to use the extreme pipeline, or raise --cube-cap");
        }
        Failure { code, message }
    }
}

fn input_failure(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

type Outcome = std::result::Result<Output, Failure>;

/// What a command prints, plus its exit code.
#[derive(Debug)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

fn read_input(input: Option<&str>) -> std::result::Result<(String, String), Failure> {
    let from_stdin = || {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_failure(format!("reading stdin: {e}")))?;
        Ok(("stdin".to_string(), s))
    };
    match input {
        None | Some("-") => from_stdin(),
        Some(arg) => {
            let path = std::path::Path::new(arg);
            if path.is_file() {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| input_failure(format!("reading {arg}: {e}")))?;
                Ok((arg.to_string(), text))
            } else if let Some(entry) = bundled_entry(arg) {
                Ok((entry.name, entry.pd))
            } else {
                Ok(("inline".to_string(), arg.to_string()))
            }
        }
    }
}

fn load_diagram(common: &Common) -> std::result::Result<(String, LinkDiagram), Failure> {
    let (id, text) = read_input(common.input.as_deref())?;
    let d: LinkDiagram = text.parse()?;
    Ok((id, d))
}

fn emit(common: &Common, json: serde_json::Value, table: String) -> Outcome {
    let pretty = serde_json::to_string_pretty(&json).expect("JSON value serializes") + "\n";
    if let Some(path) = &common.out {
        std::fs::write(path, &pretty).map_err(|e| input_failure(format!("writing {}: {e}", path.display())))?;
    }
    Ok(Output {
        code: EXIT_OK,
        stdout: match common.format {
            Format::Json => pretty,
            Format::Table => table,
        },
        stderr: String::new(),
    })
}

fn cmd_info(args: &InfoArgs) -> Outcome {
    let c = &args.common;
    let (id, d) = load_diagram(c)?;
    if let Some(what) = args.export {
        let text = match what {
            Export::Lando => lando_graph(&d).to_edge_list(),
            Export::XComplex => pretty(x_complex(&d, c.face_limit)?.to_json()),
            Export::YComplex => pretty(y_complex(&d, c.face_limit)?.to_json()),
            Export::Resolution => pretty(resolve(&d, &State::zero(d.n())).to_json()),
            Export::Complex => pretty(extreme_complex(&d, c.face_limit)?.to_json()),
        };
        return Ok(Output {
            code: EXIT_OK,
            stdout: text,
            stderr: String::new(),
        });
    }
    let g = lando_graph(&d);
    let x = x_complex(&d, c.face_limit)?;
    let circles = resolve(&d, &State::zero(d.n())).circle_count();
    let json = json!({
        "input": id,
        "pd": d.pd().to_string(),
        "n": d.n(),
        "n_plus": d.n_plus(),
        "n_minus": d.n_minus(),
        "zero_circles": circles,
        "jmin": jmin(&d),
        "jmax": jmax(&d),
        "lando_vertices": g.vertices.len(),
        "lando_edges": g.edges.len(),
        "x_faces": x.face_count(),
    });
    let table = format!(
        "input           {id}\n\
         crossings       {}\n\
         n_plus          {}\n\
         n_minus         {}\n\
         |D(0)|          {circles}\n\
         jmin            {}\n\
         jmax            {}\n\
         lando vertices  {}\n\
         lando edges     {}\n\
         X_D faces       {}\n",
        d.n(),
        d.n_plus(),
        d.n_minus(),
        jmin(&d),
        jmax(&d),
        g.vertices.len(),
        g.edges.len(),
        x.face_count(),
    );
    emit(c, json, table)
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("JSON value serializes") + "\n"
}

fn cmd_homology(args: &HomologyArgs) -> Outcome {
    let c = &args.common;
    let via = if args.oracle { Via::Oracle } else { args.via };
    let (id, d) = load_diagram(c)?;
    let (lo, hi) = (jmin(&d), jmax(&d));
    let (label, j) = match args.grading {
        Grading::Min => ("min", lo),
        Grading::Max => ("max", hi),
        Grading::Exact(j) => ("exact", j),
    };
    let cube_cap = c.cube_cap.min(MAX_CUBE_CAP);

    let extreme = if via == Via::Oracle {
        None
    } else if j == lo {
        Some(cohomology(&extreme_complex(&d, c.face_limit)?)?)
    } else if j == hi {
        Some(jmax_from_y(&d, c.face_limit)?)
    } else if j < lo || j > hi || (j - lo) % 2 != 0 {
        Some(GradedAbelianGroup::zero())
    } else {
        return Err(input_failure(format!(
            "grading {j} is not extreme (jmin = {lo}, jmax = {hi}); pass --oracle to use the cube"
        )));
    };
    let oracle = match via {
        Via::Extreme => None,
        _ => Some(khovanov_homology(&d, j, cube_cap)?),
    };
    let verdict = match (&extreme, &oracle) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };

    let mut json = json!({ "input": id, "grading": label, "j": j, "jmin": lo, "jmax": hi });
    let mut table = format!("{id}  j = {j}  (jmin = {lo}, jmax = {hi})\n");
    if let Some(g) = &extreme {
        json["extreme"] = g.to_json();
        table.push_str(&format!("  extreme  {g}\n"));
    }
    if let Some(g) = &oracle {
        json["oracle"] = g.to_json();
        table.push_str(&format!("  oracle   {g}\n"));
    }
    if let Some(m) = verdict {
        json["match"] = json!(m);
        table.push_str(if m { "  MATCH\n" } else { "  MISMATCH\n" });
    }
    let mut out = emit(c, json, table)?;
    if verdict == Some(false) {
        out.code = EXIT_VERIFY_FAILED;
    }
    Ok(out)
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let c = &args.common;
    let opts = VerifyOptions {
        cube_cap: c.cube_cap.min(MAX_CUBE_CAP),
        face_limit: c.face_limit,
        inject_fault: args.inject_fault.clone(),
        timings: args.timings,
    };
    let entries: Vec<CorpusEntry> = match &c.input {
        None => bundled(),
        Some(_) => {
            let (id, text) = read_input(c.input.as_deref())?;
            match parse_pd(&text) {
                Ok(_) => vec![CorpusEntry {
                    name: id,
                    pd: text.trim().to_string(),
                    expected: None,
                }],
                Err(Error::EmptyInput) => return Err(Error::EmptyInput.into()),
                Err(pd_err) => parse_corpus(&text).map_err(|corpus_err| match corpus_err {
                    Error::EmptyInput => corpus_err,
                    _ => pd_err,
                })?,
            }
        }
    };
    let single = entries.len() == 1;

    let reports: Vec<std::result::Result<VerificationReport, Error>> = entries
        .par_iter()
        .map(|e| {
            let mut o = opts.clone();
            let d = e.diagram()?;
            o.inject_fault.retain(|&k| k < d.n());
            if single && e.expected.is_none() {
                verify_all(&e.name, &d, &o)
            } else {
                verify_entry(e, &o)
            }
        })
        .collect();
    let reports: Vec<VerificationReport> = reports.into_iter().collect::<Result<_, _>>()?;

    let passed = reports.iter().filter(|r| r.pass).count();
    let all = passed == reports.len();
    let mut table: String = reports.iter().map(VerificationReport::to_table).collect();
    table.push_str(&format!("{passed}/{} diagrams passed\n", reports.len()));
    let json = json!({
        "pass": all,
        "passed": passed,
        "total": reports.len(),
        "reports": reports.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
    });
    let mut out = emit(c, json, table)?;
    if !all {
        out.code = EXIT_VERIFY_FAILED;
        let r = reports.iter().find(|r| !r.pass).expect("some report failed");
        let check = r.first_failure().expect("failed report has a failing check");
        out.stderr = format!(
            "verification failed: {} {}: {}\n",
            r.id,
            check.name,
            check.witness.as_deref().unwrap_or("")
        );
    }
    Ok(out)
}

/// Run a parsed command line, capturing output.
pub fn run(cli: &Cli) -> Output {
    let result = match &cli.command {
        Command::Info(a) => cmd_info(a),
        Command::Homology(a) => cmd_homology(a),
        Command::Verify(a) => cmd_verify(a),
    };
    result.unwrap_or_else(|f| Output {
        code: f.code,
        stdout: String::new(),
        stderr: format!("error: {}\n", f.message),
    })
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    if matches!(&cli.command, Command::Info(_) | Command::Homology(_))
        && input_is_terminal(&cli)
    {
        eprintln!("reading PD code from stdin (use --input to pass it directly)");
    }
    let out = run(&cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    io::stdout().flush().ok();
    ExitCode::from(out.code)
}

fn input_is_terminal(cli: &Cli) -> bool {
    let common = match &cli.command {
        Command::Info(a) => &a.common,
        Command::Homology(a) => &a.common,
        Command::Verify(a) => &a.common,
    };
    matches!(common.input.as_deref(), None | Some("-")) && io::stdin().is_terminal()
}
