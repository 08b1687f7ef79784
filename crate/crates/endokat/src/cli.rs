//! Argument parsing and dispatch. Exit codes: 0 when every check passes, 1
//! on a mathematical violation or failed hypothesis, 2 on input or usage
//! errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use endokat_core::linearize::CLOSURE_CAP;

use crate::audit::{self, Limits, Suite};
use crate::generate::{self, Kind, Params};
use crate::json::{load_matrices, to_json, load_split, AuditItem, Instance, InstanceFile, LoadError};
use crate::linearize::{self, Diagnostic, Outcome};
use crate::validate::validate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "endokat", version, about = "Endogenies of finite abelian groups and bi-module linearization")]
pub struct Cli {
    /// Largest group order accepted anywhere.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub max_order: u64,
    /// Largest closure (prerings, matrix algebras) before falling back or
    /// failing. Defaults to 20000, or 256 for audits.
    #[arg(long, global = true)]
    pub max_closure: Option<usize>,
    /// Worker threads for audits; 0 uses the available parallelism.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate an instance file, then print it normalized.
    Validate { file: PathBuf },
    /// Run a law suite over instances.
    Audit(AuditArgs),
    /// Extract the field of scalars (matrix instances) or run the split
    /// bi-module pipeline.
    Linearize {
        file: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write a generated instance file.
    Generate(GenerateArgs),
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    pub instances: Option<PathBuf>,
    /// Number of seeded random instances.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, env = "ENDOKAT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Cross-check every instance against the element-enumeration oracle.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, env = "ENDOKAT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Upper bound on the order of a random group.
    #[arg(long)]
    pub order: Option<u64>,
    /// Cyclic factors of the group, e.g. `2,4`.
    #[arg(long, value_delimiter = ',')]
    pub moduli: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    pub torsion: Option<Vec<u64>>,
    /// Subgroup generators, e.g. `0,2;1,0`.
    #[arg(long)]
    pub subgroup: Option<String>,
    #[arg(long)]
    pub planted: bool,
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    #[arg(long)]
    pub count: Option<usize>,
}

struct Io<'a> {
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
}

/// Parses `args` and runs the command, writing to the given streams.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let mut io = Io { out, err };
    let limits = Limits {
        max_order: cli.max_order as u128,
        max_closure: cli.max_closure.unwrap_or(match cli.command {
            Command::Audit(_) => audit::AUDIT_CLOSURE,
            _ => CLOSURE_CAP,
        }),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(io.err, "cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    };
    pool.install(|| dispatch(cli.command, limits, &mut io))
}

fn read(path: &Path, io: &mut Io) -> Option<String> {
    match std::fs::read_to_string(path) {
        Ok(s) => Some(s),
        Err(e) => {
            let _ = writeln!(io.err, "cannot read {}: {e}", path.display());
            None
        }
    }
}

fn emit(path: Option<&Path>, text: &str, io: &mut Io) -> bool {
    match path {
        Some(p) => match std::fs::write(p, text) {
            Ok(()) => true,
            Err(e) => {
                let _ = writeln!(io.err, "cannot write {}: {e}", p.display());
                false
            }
        },
        None => io.out.write_all(text.as_bytes()).is_ok(),
    }
}

fn load_error(e: &LoadError, io: &mut Io) -> i32 {
    match e {
        LoadError::Malformed(m) => {
            let _ = writeln!(io.err, "malformed input: {m}");
            EXIT_USAGE
        }
        LoadError::Invalid(e) => {
            let d = Diagnostic::from_error(e);
            let _ = writeln!(io.err, "{}", e.kind());
            let _ = write!(io.out, "{}", to_json(&d));
            EXIT_VIOLATION
        }
    }
}

fn dispatch(cmd: Command, limits: Limits, io: &mut Io) -> i32 {
    match cmd {
        Command::Validate { file } => {
            let Some(text) = read(&file, io) else { return EXIT_USAGE };
            match validate(&text, limits) {
                Ok(f) => {
                    if !emit(None, &f.to_pretty(), io) {
                        return EXIT_USAGE;
                    }
                    let _ = writeln!(io.err, "valid");
                    EXIT_OK
                }
                Err(e) => load_error(&e, io),
            }
        }
        Command::Audit(a) => cmd_audit(a, limits, io),
        Command::Linearize { file, report } => cmd_linearize(&file, report.as_deref(), limits, io),
        Command::Generate(g) => cmd_generate(g, limits, io),
    }
}

/// Turns any instance file the audit understands into audit items.
pub fn audit_items(file: &InstanceFile) -> Result<Vec<AuditItem>, LoadError> {
    use crate::json::{subgroup_json, EndogenySetJson, GroupJson};
    Ok(match &file.body {
        Instance::AuditInstances { instances } => instances.clone(),
        Instance::EndogenySet { set } => vec![AuditItem {
            set: set.clone(),
            subgroups: Vec::new(),
            gamma: None,
            delta: None,
            split: None,
        }],
        Instance::Endogeny { endogeny } => {
            if endogeny.source != endogeny.target {
                return Err(LoadError::Malformed("audits need endogenies of one group".into()));
            }
            vec![AuditItem {
                set: EndogenySetJson {
                    ambient: endogeny.source.clone(),
                    n_max: endogeny.n_max.clone(),
                    generators: vec![endogeny.graph_generators.clone()],
                },
                subgroups: Vec::new(),
                gamma: None,
                delta: None,
                split: None,
            }]
        }
        Instance::SplitBimodule {
            split,
            gamma,
            delta,
            planted,
        } => {
            let s = split.load(u128::MAX)?;
            let mut gens = gamma.clone();
            gens.extend(delta.iter().cloned());
            vec![AuditItem {
                set: EndogenySetJson {
                    ambient: GroupJson::of(s.ambient()),
                    n_max: subgroup_json(s.t()),
                    generators: gens,
                },
                subgroups: planted.iter().cloned().collect(),
                gamma: Some((0..gamma.len()).collect()),
                delta: Some((gamma.len()..gamma.len() + delta.len()).collect()),
                split: Some(split.clone()),
            }]
        }
        _ => return Err(LoadError::Malformed("this kind of file cannot be audited".into())),
    })
}

fn cmd_audit(a: AuditArgs, limits: Limits, io: &mut Io) -> i32 {
    let items = match (&a.instances, a.random) {
        (Some(path), _) => {
            let Some(text) = read(path, io) else { return EXIT_USAGE };
            match InstanceFile::parse(&text).and_then(|f| audit_items(&f)) {
                Ok(items) => items,
                Err(e) => return load_error(&e, io),
            }
        }
        (None, Some(n)) => match audit::random_items(a.suite, n, a.seed, limits) {
            Ok(items) => items,
            Err(e) => {
                let _ = writeln!(io.err, "generation failed: {e}");
                return EXIT_USAGE;
            }
        },
        (None, None) => {
            let _ = writeln!(io.err, "one of --instances or --random is required");
            return EXIT_USAGE;
        }
    };
    let report = match audit::run(a.suite, &items, a.oracle, limits) {
        Ok(r) => r,
        Err(e) => return load_error(&e, io),
    };
    let text = to_json(&report);
    if !emit(a.report.as_deref(), &text, io) {
        return EXIT_USAGE;
    }
    let _ = writeln!(
        io.err,
        "{}: {} instances, {} laws evaluated, {} skipped, {} violations",
        a.suite.name(),
        report.instances_run,
        report.laws_evaluated,
        report.laws_skipped,
        report.violations.len()
    );
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

fn cmd_linearize(file: &Path, report: Option<&Path>, limits: Limits, io: &mut Io) -> i32 {
    let Some(text) = read(file, io) else { return EXIT_USAGE };
    let parsed = match InstanceFile::parse(&text) {
        Ok(f) => f,
        Err(e) => return load_error(&e, io),
    };
    let cap = limits.max_closure;
    let result: Result<Result<Outcome, endokat_core::Error>, LoadError> = match &parsed.body {
        Instance::MatrixBimodule {
            p,
            n,
            gamma,
            delta,
            truth,
        } => (|| {
            let g = load_matrices(*p, *n, gamma)?;
            let d = load_matrices(*p, *n, delta)?;
            Ok(linearize::run_matrix(*p, *n, &g, &d, truth.clone(), cap).map(Outcome::Matrix))
        })(),
        Instance::SplitBimodule {
            split,
            gamma,
            delta,
            planted,
        } => load_split(split, gamma, delta, planted.as_ref(), limits.max_order)
            .map(|ls| linearize::run_split(&ls, cap).map(Outcome::Split)),
        _ => Err(LoadError::Malformed("linearize needs a matrix_bimodule or split_bimodule file".into())),
    };
    match result {
        Err(e) => load_error(&e, io),
        Ok(Err(e)) => {
            let d = Diagnostic::from_error(&e);
            let text = to_json(&d);
            let _ = emit(report, &text, io);
            let _ = writeln!(io.err, "{e}");
            EXIT_VIOLATION
        }
        Ok(Ok(outcome)) => {
            if !emit(report, &outcome.to_pretty(), io) {
                return EXIT_USAGE;
            }
            if outcome.passed() {
                let _ = writeln!(io.err, "ok");
                EXIT_OK
            } else {
                let _ = writeln!(io.err, "report invariants or ground truth failed");
                EXIT_VIOLATION
            }
        }
    }
}

fn parse_subgroup(s: &str) -> Result<Vec<Vec<i64>>, String> {
    s.split(';')
        .filter(|g| !g.trim().is_empty())
        .map(|g| {
            g.split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|e| format!("bad coordinate {c:?}: {e}")))
                .collect()
        })
        .collect()
}

fn cmd_generate(g: GenerateArgs, limits: Limits, io: &mut Io) -> i32 {
    let subgroup = match g.subgroup.as_deref().map(parse_subgroup).transpose() {
        Ok(s) => s,
        Err(m) => {
            let _ = writeln!(io.err, "{m}");
            return EXIT_USAGE;
        }
    };
    let params = Params {
        p: g.p,
        k: g.k,
        m: g.m,
        order: g.order,
        moduli: g.moduli,
        torsion: g.torsion,
        subgroup,
        planted: g.planted,
        suite: g.suite,
        count: g.count,
    };
    match generate::generate(g.kind, g.seed, &params, limits) {
        Ok(f) => {
            if emit(g.output.as_deref(), &f.to_pretty(), io) {
                EXIT_OK
            } else {
                EXIT_USAGE
            }
        }
        Err(LoadError::Malformed(m)) | Err(LoadError::Invalid(endokat_core::Error::InvalidInput(m))) => {
            let _ = writeln!(io.err, "bad parameters: {m}");
            EXIT_USAGE
        }
        Err(LoadError::Invalid(e)) => {
            let _ = writeln!(io.err, "bad parameters: {e}");
            EXIT_USAGE
        }
    }
}
