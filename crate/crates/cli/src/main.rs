//! `mglite`: the Magnolia-lite batch compiler.
//!
//! Exit status is 0 on success, 1 when diagnostics or oracles fail, 2 on
//! usage errors and 3 when the host faults. Diagnostics go to standard
//! error and data to standard output.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mglite_core::codegen::{build, BackendSpec, CodegenError};
use mglite_core::corpus::{self, PythonHost, RunError};
use mglite_core::frontend::ast::ModuleKind;
use mglite_core::interp::reference_host;
use mglite_core::modsys::{check_satisfaction, dump_flat, Flattener, ModuleEnv};
use mglite_core::oracle::{generate_oracles, run_oracles, RunConfig, Verdict};
use mglite_core::{Diagnostics, SourceMap};

const OK: u8 = 0;
const FAILED: u8 = 1;
const USAGE: u8 = 2;
const FAULT: u8 = 3;

#[derive(Parser)]
#[command(name = "mglite", version, about = "Batch compiler for Magnolia-lite")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Also load every `.mg` file in DIR (repeatable).
    #[arg(long = "path", value_name = "DIR", global = true)]
    path: Vec<PathBuf>,
    /// Treat warnings as errors.
    #[arg(long, global = true)]
    deny_warnings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, flatten and type-check every module.
    Check { files: Vec<PathBuf> },
    /// Print the flattened form of a module.
    Flatten {
        #[arg(short, long, value_name = "NAME")]
        module: String,
        files: Vec<PathBuf>,
    },
    /// Check every satisfaction declaration syntactically.
    Satisfaction { files: Vec<PathBuf> },
    /// Run the axiom oracles of a satisfaction.
    Test {
        #[arg(short, long, value_name = "NAME")]
        satisfaction: String,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here.
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
        /// Seconds per oracle.
        #[arg(long, default_value_t = 5.0)]
        timeout: f64,
        #[command(flatten)]
        engine: EngineArgs,
        files: Vec<PathBuf>,
    },
    /// Transpile programs with their oracle harnesses.
    Build {
        /// Program to build; all programs when absent, each in its own
        /// subdirectory of the output.
        #[arg(short, long, value_name = "NAME")]
        program: Option<String>,
        #[arg(long, default_value = "Python")]
        backend: String,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        #[arg(long)]
        no_guard_checks: bool,
        files: Vec<PathBuf>,
    },
    /// Build a program and run an entry point on a fixture.
    Run {
        #[arg(short, long, value_name = "NAME")]
        program: String,
        /// Text of the first argument, usually a graph.
        #[arg(long, value_name = "FILE")]
        fixture: Option<PathBuf>,
        #[arg(long, default_value = "main")]
        entry: String,
        /// Further arguments in order. With a fixture and no `--arg`, a
        /// second argument defaults to `0`, the start vertex.
        #[arg(long = "arg", value_name = "TEXT")]
        args: Vec<String>,
        #[arg(long)]
        no_guard_checks: bool,
        #[command(flatten)]
        engine: EngineArgs,
        files: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    /// The reference interpreter with the built-in host.
    Interp,
    /// Emitted Python on the host library.
    Python,
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long, value_enum, default_value_t = Engine::Interp)]
    engine: Engine,
    /// Directory containing the Python `lib` package.
    #[arg(long, value_name = "DIR", default_value = "hostlib")]
    host_path: PathBuf,
    #[arg(long, default_value = "python3")]
    python: PathBuf,
}

impl EngineArgs {
    fn host(&self) -> PythonHost {
        PythonHost {
            python: self.python.clone(),
            host_path: self.host_path.clone(),
        }
    }
}

struct Session {
    env: ModuleEnv,
    deny_warnings: bool,
}

impl Session {
    fn sources(&self) -> &SourceMap {
        self.env.sources()
    }

    /// Prints `d` to standard error; true when it holds errors.
    fn report(&self, mut d: Diagnostics) -> bool {
        if self.deny_warnings {
            d.deny_warnings();
        }
        eprint!("{}", d.render(self.sources()));
        d.has_errors()
    }
}

fn load(common: &Common, files: &[PathBuf]) -> Result<Session, u8> {
    if files.is_empty() && common.path.is_empty() {
        eprintln!("error: no input files; give files or --path DIR");
        return Err(USAGE);
    }
    let (env, d) = ModuleEnv::load(files, &common.path).map_err(|e| {
        eprintln!("error: {e}");
        USAGE
    })?;
    let s = Session {
        env,
        deny_warnings: common.deny_warnings,
    };
    if s.report(d) {
        return Err(FAILED);
    }
    Ok(s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(c) | Err(c) => c,
    };
    ExitCode::from(code)
}

fn run(cli: Cli) -> Result<u8, u8> {
    let c = &cli.common;
    match cli.command {
        Command::Check { files } => check(&load(c, &files)?),
        Command::Flatten { module, files } => flatten(&load(c, &files)?, &module),
        Command::Satisfaction { files } => satisfactions(&load(c, &files)?),
        Command::Test {
            satisfaction,
            budget,
            seed,
            report,
            timeout,
            engine,
            files,
        } => {
            let s = load(c, &files)?;
            let cfg = RunConfig {
                budget,
                seed,
                timeout: Duration::from_secs_f64(timeout),
                ..RunConfig::default()
            };
            match engine.engine {
                Engine::Interp => test_interp(&s, &satisfaction, &cfg, report.as_deref()),
                Engine::Python => {
                    test_python(&s, &satisfaction, &cfg, report.as_deref(), &engine.host())
                }
            }
        }
        Command::Build {
            program,
            backend,
            out,
            no_guard_checks,
            files,
        } => {
            let spec = BackendSpec::new(&backend).map_err(|e| {
                eprintln!("error: {e}");
                USAGE
            })?;
            build_cmd(
                &load(c, &files)?,
                program.as_deref(),
                &spec.guard_checks(!no_guard_checks),
                &out,
            )
        }
        Command::Run {
            program,
            fixture,
            entry,
            mut args,
            no_guard_checks,
            engine,
            files,
        } => {
            let s = load(c, &files)?;
            if let Some(f) = fixture {
                let text = std::fs::read_to_string(&f).map_err(|e| {
                    eprintln!("error: cannot read {}: {e}", f.display());
                    USAGE
                })?;
                if args.is_empty() {
                    args.push("0".into());
                }
                args.insert(0, text);
            }
            run_cmd(&s, &program, &entry, &args, !no_guard_checks, &engine)
        }
    }
}

fn check(s: &Session) -> Result<u8, u8> {
    let mut fl = Flattener::new(&s.env);
    let mut d = Diagnostics::new();
    for m in s.env.modules() {
        d.extend(corpus::check_module(&m.name, &mut fl));
    }
    if s.report(d) {
        return Err(FAILED);
    }
    println!("{} modules in {} files: ok", s.env.len(), s.sources().len());
    Ok(OK)
}

fn flatten(s: &Session, module: &str) -> Result<u8, u8> {
    let mut fl = Flattener::new(&s.env);
    match fl.flatten(module) {
        Ok(m) => {
            print!("{}", dump_flat(&m));
            Ok(OK)
        }
        Err(e) => {
            s.report(Diagnostics::from(e.to_diagnostic()));
            Err(FAILED)
        }
    }
}

fn satisfactions(s: &Session) -> Result<u8, u8> {
    let mut fl = Flattener::new(&s.env);
    let mut failed = false;
    for sat in s.env.satisfactions() {
        let d = check_satisfaction(sat, &mut fl);
        let bad = s.report(d);
        println!("{}: {}", sat.name, if bad { "fails" } else { "holds" });
        failed |= bad;
    }
    Ok(if failed { FAILED } else { OK })
}

fn test_interp(s: &Session, name: &str, cfg: &RunConfig, report: Option<&Path>) -> Result<u8, u8> {
    let mut fl = Flattener::new(&s.env);
    let suite = generate_oracles(name, &mut fl).map_err(|d| {
        s.report(d);
        FAILED
    })?;
    let host = reference_host();
    let r = run_oracles(&suite, &host, cfg, s.sources()).map_err(|d| {
        s.report(d);
        FAILED
    })?;
    print!("{}", r.to_text());
    if let Some(p) = report {
        write_file(p, &r.to_json())?;
    }
    Ok(if r.count(Verdict::Fault) > 0 {
        FAULT
    } else if r.ok() {
        OK
    } else {
        FAILED
    })
}

fn test_python(
    s: &Session,
    name: &str,
    cfg: &RunConfig,
    report: Option<&Path>,
    host: &PythonHost,
) -> Result<u8, u8> {
    let Some(sat) = s
        .env
        .get(name)
        .filter(|m| m.kind == ModuleKind::Satisfaction)
    else {
        eprintln!("error: unknown satisfaction `{name}`");
        return Err(FAILED);
    };
    let mglite_core::frontend::ast::ModuleBody::Satisfaction { lhs, .. } = &sat.body else {
        unreachable!("satisfactions have satisfaction bodies")
    };
    let mut fl = Flattener::new(&s.env);
    // Report oracle generation problems before emitting anything.
    if let Err(d) = generate_oracles(name, &mut fl) {
        s.report(d);
        return Err(FAILED);
    }
    let dir = tempfile::tempdir().map_err(|e| {
        eprintln!("error: {e}");
        FAULT
    })?;
    corpus::build_python(&mut fl, &lhs.name, dir.path(), true).map_err(|e| run_error(s, e))?;
    let mut args = vec![
        "--budget".to_string(),
        cfg.budget.to_string(),
        "--seed".into(),
        cfg.seed.to_string(),
        "--timeout".into(),
        cfg.timeout.as_secs_f64().to_string(),
        "--satisfaction".into(),
        name.into(),
    ];
    if let Some(p) = report {
        args.push("--report".into());
        args.push(absolute(p).display().to_string());
    }
    let harness = format!("{}_oracles.py", lhs.name);
    let out = host
        .script(dir.path(), &harness, &args)
        .map_err(|e| run_error(s, e))?;
    std::io::stdout().write_all(&out.stdout).ok();
    std::io::stderr().write_all(&out.stderr).ok();
    match out.status.code() {
        Some(0) => Ok(OK),
        Some(1) => Ok(FAILED),
        Some(2) => Err(USAGE),
        _ => Err(FAULT),
    }
}

fn absolute(p: &Path) -> PathBuf {
    std::path::absolute(p).unwrap_or_else(|_| p.to_path_buf())
}

fn write_file(p: &Path, text: &str) -> Result<(), u8> {
    std::fs::write(p, text).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", p.display());
        FAILED
    })
}

fn build_cmd(s: &Session, program: Option<&str>, spec: &BackendSpec, out: &Path) -> Result<u8, u8> {
    let mut fl = Flattener::new(&s.env);
    let targets: Vec<(String, PathBuf)> = match program {
        Some(p) => vec![(p.to_string(), out.to_path_buf())],
        None => s
            .env
            .modules()
            .filter(|m| m.kind == ModuleKind::Program)
            .map(|m| (m.name.clone(), out.join(&m.name)))
            .collect(),
    };
    let mut failed = false;
    for (name, dir) in targets {
        match build(&mut fl, &name, spec) {
            Ok(emitted) => {
                failed |= s.report(emitted.diagnostics.clone());
                emitted.write_to(&dir).map_err(|e: CodegenError| {
                    s.report(Diagnostics::from(e.to_diagnostic()));
                    FAILED
                })?;
                for f in emitted.files.keys() {
                    println!("{}", dir.join(f).display());
                }
            }
            Err(d) => {
                s.report(d);
                failed = true;
            }
        }
    }
    Ok(if failed { FAILED } else { OK })
}

fn run_error(s: &Session, e: RunError) -> u8 {
    let code = e.exit_code() as u8;
    match e {
        RunError::Build(d) => {
            s.report(d);
        }
        e => eprintln!("error: {e}"),
    }
    code
}

fn run_cmd(
    s: &Session,
    program: &str,
    entry: &str,
    args: &[String],
    guards: bool,
    engine: &EngineArgs,
) -> Result<u8, u8> {
    let mut fl = Flattener::new(&s.env);
    let out = match engine.engine {
        Engine::Interp => {
            corpus::run_interp(&mut fl, &reference_host(), program, entry, args, guards)
        }
        Engine::Python => corpus::run_python(&mut fl, &engine.host(), program, entry, args, guards),
    }
    .map_err(|e| run_error(s, e))?;
    for line in out {
        println!("{line}");
    }
    Ok(OK)
}
