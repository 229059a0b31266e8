//! The checked-in `.mg` corpus as a test fixture.
//!
//! Every corpus file `x.mg` has an adjacent `x.expected` summary listing its
//! tags, module count, flatten sizes, satisfaction outcomes and expected
//! diagnostics. [`validate_env`] runs the whole pipeline over every file and
//! compares. The module also hosts the end-to-end runners shared by the CLI
//! and the equivalence tests: one on the reference interpreter, one on the
//! emitted Python.

mod expected;

pub use expected::{parse_expected, Expected, FlattenSummary, SatExpect};

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codegen::{build, mangle, BackendSpec};
use crate::diag::{Diagnostic, Diagnostics};
use crate::frontend::ast::{Mode, ModuleKind};
use crate::frontend::pretty::pretty_block;
use crate::interp::{parse_value, type_domain, Fault, HostLibrary, Interpreter, Value};
use crate::modsys::{
    apply_renaming, check_program_complete, check_satisfaction, dump_flat, FlatModule, Flattener,
    ModuleEnv, OpKey, Renaming,
};
use crate::oracle::inputs;
use crate::semantics::{check_scope, TypedModule};
use crate::source::FileId;

/// Directory of graph fixtures, relative to the corpus root.
pub const FIXTURES: &str = "fixtures";
/// Directory of golden flatten dumps, relative to the corpus root.
pub const GOLDEN: &str = "golden";

/// What the pipeline produced for one corpus file.
#[derive(Debug, Clone)]
pub struct EntryReport {
    pub path: PathBuf,
    pub tags: Vec<String>,
    pub diagnostics: Diagnostics,
    /// Differences from the expected summary; empty when the entry is good.
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
}

impl CorpusReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.mismatches.is_empty())
    }

    /// One `path: mismatch` line per problem.
    pub fn failures(&self) -> Vec<String> {
        self.entries
            .iter()
            .flat_map(|e| {
                e.mismatches
                    .iter()
                    .map(move |m| format!("{}: {m}", e.path.display()))
            })
            .collect()
    }
}

/// Parses, flattens and checks every module of `file`. Satisfactions are
/// checked syntactically; programs also for completeness. Diagnostics are
/// attributed to the module being checked, wherever their span points.
pub fn check_file(env: &ModuleEnv, fl: &mut Flattener<'_>, file: FileId) -> Diagnostics {
    let mut d = Diagnostics::new();
    for m in env.modules().filter(|m| m.span.file == file) {
        d.extend(check_module(m.name.as_str(), fl));
    }
    d
}

/// Checks one module by name; see [`check_file`].
pub fn check_module(name: &str, fl: &mut Flattener<'_>) -> Diagnostics {
    let env = fl.env();
    let Some(m) = env.get(name) else {
        return Diagnostics::from(Diagnostic::error(
            crate::DiagKind::UnknownModule,
            format!("unknown module `{name}`"),
        ));
    };
    if m.kind == ModuleKind::Satisfaction {
        return check_satisfaction(m, fl);
    }
    match fl.flatten(name) {
        Err(e) => Diagnostics::from(e.to_diagnostic()),
        Ok(flat) => {
            let mut d = Diagnostics::new();
            if flat.kind == ModuleKind::Program {
                d.extend(check_program_complete(&flat));
            }
            d.extend(check_scope(&flat).1);
            d
        }
    }
}

/// Loads every `.mg` file of `dir` and validates it against its summary.
pub fn validate_corpus(dir: &Path) -> std::io::Result<CorpusReport> {
    let (env, load) = ModuleEnv::load(&[], &[dir.to_path_buf()])?;
    validate_env(&env, &load)
}

/// Compares each loaded file with the `.expected` file next to it.
/// `load` holds the diagnostics reported while loading.
pub fn validate_env(env: &ModuleEnv, load: &Diagnostics) -> std::io::Result<CorpusReport> {
    let mut fl = Flattener::new(env);
    let sources = env.sources();
    let mut report = CorpusReport::default();
    for i in 0..sources.len() {
        let file = FileId(i as u32);
        let path = sources.path(file).to_path_buf();
        let mut diags: Diagnostics = load
            .iter()
            .filter(|d| d.span.is_some_and(|s| s.file == file))
            .cloned()
            .collect();
        diags.extend(check_file(env, &mut fl, file));
        let mut entry = EntryReport {
            path: path.clone(),
            tags: Vec::new(),
            diagnostics: diags,
            mismatches: Vec::new(),
        };
        let exp_path = path.with_extension("expected");
        let text = match std::fs::read_to_string(&exp_path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                entry
                    .mismatches
                    .push(format!("no summary at {}", exp_path.display()));
                report.entries.push(entry);
                continue;
            }
            Err(e) => return Err(e),
        };
        match parse_expected(&text) {
            Ok(exp) => {
                entry.tags = exp.tags.clone();
                entry.mismatches = compare(env, &mut fl, file, &exp, &entry.diagnostics);
            }
            Err(e) => entry
                .mismatches
                .push(format!("bad summary {}: {e}", exp_path.display())),
        }
        report.entries.push(entry);
    }
    Ok(report)
}

fn compare(
    env: &ModuleEnv,
    fl: &mut Flattener<'_>,
    file: FileId,
    exp: &Expected,
    diags: &Diagnostics,
) -> Vec<String> {
    let mut out = Vec::new();
    let modules = env.modules().filter(|m| m.span.file == file).count();
    if let Some(n) = exp.modules {
        if n != modules {
            out.push(format!("expected {n} modules, found {modules}"));
        }
    }
    for f in &exp.flatten {
        match fl.flatten(&f.module) {
            Err(e) => out.push(format!("flatten {}: {e}", f.module)),
            Ok(m) => {
                let got = FlattenSummary {
                    module: f.module.clone(),
                    types: m.types.len(),
                    ops: m.ops.len(),
                    axioms: m.axioms.len(),
                };
                if &got != f {
                    out.push(format!("expected `{f}`, found `{got}`"));
                }
            }
        }
    }
    for (name, want) in &exp.satisfactions {
        let got = match env.get(name) {
            Some(s) if s.kind == ModuleKind::Satisfaction => {
                let d = check_satisfaction(s, fl);
                match d.iter().find(|d| d.severity == crate::Severity::Error) {
                    None => SatExpect::Holds,
                    Some(e) => SatExpect::Fails(e.kind.name().to_string()),
                }
            }
            _ => {
                out.push(format!("no satisfaction `{name}`"));
                continue;
            }
        };
        if &got != want {
            out.push(format!("satisfaction {name}: expected {want}, found {got}"));
        }
    }
    let got: Vec<&str> = diags.iter().map(|d| d.kind.name()).collect();
    if got != exp.diagnostics {
        out.push(format!(
            "expected diagnostics [{}], found [{}]",
            exp.diagnostics.join(" "),
            got.join(" ")
        ));
    }
    out
}

/// Every module of `env` whose flatten dump is kept as a golden file:
/// all but satisfactions, in load order.
pub fn golden_modules(env: &ModuleEnv) -> Vec<String> {
    env.modules()
        .filter(|m| m.kind != ModuleKind::Satisfaction)
        .map(|m| m.name.clone())
        .collect()
}

pub fn golden_path(golden_dir: &Path, module: &str) -> PathBuf {
    golden_dir.join(format!("{module}.flat"))
}

/// Compares each golden module's dump with its file byte for byte.
/// With `bless`, rewrites the files instead and reports nothing.
pub fn check_golden(
    env: &ModuleEnv,
    golden_dir: &Path,
    bless: bool,
) -> std::io::Result<Vec<String>> {
    let mut fl = Flattener::new(env);
    let mut out = Vec::new();
    if bless {
        std::fs::create_dir_all(golden_dir)?;
    }
    for name in golden_modules(env) {
        let dump = match fl.flatten(&name) {
            Ok(m) => dump_flat(&m),
            Err(e) => {
                out.push(format!("{name}: {e}"));
                continue;
            }
        };
        let path = golden_path(golden_dir, &name);
        if bless {
            std::fs::write(&path, &dump)?;
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(g) if g == dump => {}
            Ok(g) => out.push(format!(
                "{name}: dump differs from {}{}",
                path.display(),
                first_diff(&g, &dump)
            )),
            Err(e) => out.push(format!("{name}: cannot read {}: {e}", path.display())),
        }
    }
    Ok(out)
}

fn first_diff(want: &str, got: &str) -> String {
    let mut w = want.lines();
    let mut g = got.lines();
    let mut n = 1;
    loop {
        match (w.next(), g.next()) {
            (None, None) => return String::new(),
            (a, b) if a == b => n += 1,
            (a, b) => return format!(" at line {n}: expected {a:?}, found {b:?}"),
        }
    }
}

/// The types and operations of `m` with status and bodies, without
/// provenance or axioms. Two modules with equal shapes offer the same API
/// with the same implementations.
pub fn shape(m: &FlatModule) -> String {
    let mut out = String::new();
    for t in m.types.values() {
        let _ = writeln!(out, "type {} {}", t.name, status_word(&t.status));
    }
    for op in m.ops.values() {
        let _ = writeln!(out, "op {} {}", op.sig, status_word(&op.status));
        if let Some(b) = op.status.body() {
            out.push_str("  body ");
            pretty_block(&mut out, b, 1);
            out.push('\n');
        }
    }
    out
}

fn status_word(s: &crate::modsys::Status) -> String {
    use crate::modsys::Status;
    match s {
        Status::Required => "required".into(),
        Status::Declared => "declared".into(),
        Status::Defined(_) => "defined".into(),
        Status::External(b) => b.to_string(),
    }
}

/// Line diff between the shape of `a` renamed by `r` and the shape of
/// `b`. Empty when `b` is `a` up to the renaming.
pub fn shape_diff_modulo(
    a: &FlatModule,
    r: &Renaming,
    b: &FlatModule,
) -> Result<Vec<String>, String> {
    let renamed = apply_renaming(a, r).map_err(|e| e.to_string())?;
    let (sa, sb) = (shape(&renamed), shape(b));
    let la: Vec<&str> = sa.lines().collect();
    let lb: Vec<&str> = sb.lines().collect();
    let mut out: Vec<String> = la
        .iter()
        .filter(|l| !lb.contains(l))
        .map(|l| format!("- {l}"))
        .collect();
    out.extend(
        lb.iter()
            .filter(|l| !la.contains(l))
            .map(|l| format!("+ {l}")),
    );
    Ok(out)
}

// ----------------------------------------------------------------- running

#[derive(Debug, Error)]
pub enum RunError {
    #[error("program does not build")]
    Build(Diagnostics),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Fault(Fault),
    #[error("cannot run the emitted program: {0}")]
    Host(String),
}

impl RunError {
    /// Exit status: 1 for compile errors, 2 for usage errors, 3 for faults.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Build(_) => 1,
            RunError::Usage(_) => 2,
            RunError::Fault(_) | RunError::Host(_) => 3,
        }
    }
}

/// A flattened, complete, type-checked program.
pub fn typed_program(fl: &mut Flattener<'_>, name: &str) -> Result<TypedModule, Diagnostics> {
    let flat = fl
        .flatten(name)
        .map_err(|e| Diagnostics::from(e.to_diagnostic()))?;
    if flat.kind != ModuleKind::Program {
        return Err(Diagnostics::from(Diagnostic::error(
            crate::DiagKind::TargetNotExecutable,
            format!("{name} is a {}, not a program", flat.kind),
        )));
    }
    let mut d = check_program_complete(&flat);
    let (typed, checked) = check_scope(&flat);
    d.extend(checked);
    if d.has_errors() {
        return Err(d);
    }
    Ok(typed)
}

/// The unique operation named `entry`.
pub fn entry_op(p: &FlatModule, entry: &str) -> Result<OpKey, RunError> {
    let found: Vec<&OpKey> = p.ops.keys().filter(|k| k.name == entry).collect();
    match found.as_slice() {
        [k] => Ok((*k).clone()),
        [] => Err(RunError::Usage(format!(
            "{} has no operation `{entry}`",
            p.name
        ))),
        _ => Err(RunError::Usage(format!(
            "{} has several operations named `{entry}`",
            p.name
        ))),
    }
}

/// Arguments of `entry` that the caller must supply, with their types.
pub fn input_params(p: &FlatModule, key: &OpKey) -> Vec<(String, String)> {
    p.ops[key]
        .sig
        .params
        .iter()
        .filter(|prm| prm.mode != Mode::Out)
        .map(|prm| (prm.name.clone(), prm.ty.clone()))
        .collect()
}

/// Runs `entry` of `program` on the reference interpreter. `args` are the
/// texts of the non-`out` arguments, parsed by the host; results come back
/// in their canonical text form.
pub fn run_interp(
    fl: &mut Flattener<'_>,
    host: &HostLibrary,
    program: &str,
    entry: &str,
    args: &[String],
    guard_checks: bool,
) -> Result<Vec<String>, RunError> {
    let typed = typed_program(fl, program).map_err(RunError::Build)?;
    let key = entry_op(&typed.flat, entry)?;
    let values = parse_args(&typed, host, &key, args)?;
    let mut interp = Interpreter::new(&typed, host).guard_checks(guard_checks);
    let out = interp.call(&key, values).map_err(RunError::Fault)?;
    Ok(out.iter().map(Value::to_string).collect())
}

/// Parses the texts of the non-`out` arguments of `key`; `out` ones are
/// passed unset.
fn parse_args(
    typed: &TypedModule,
    host: &HostLibrary,
    key: &OpKey,
    args: &[String],
) -> Result<Vec<Value>, RunError> {
    let sig = &typed.flat.ops[key].sig;
    let wanted = input_params(&typed.flat, key).len();
    if wanted != args.len() {
        return Err(RunError::Usage(format!(
            "`{}` takes {wanted} arguments, {} given",
            key.name,
            args.len()
        )));
    }
    let mut texts = args.iter();
    let mut values = Vec::new();
    for prm in &sig.params {
        if prm.mode == Mode::Out {
            values.push(Value::Unset);
            continue;
        }
        let t = texts.next().expect("counted above");
        let v = parse_value(&typed.flat, host, &prm.ty, t)
            .map_err(|e| RunError::Usage(format!("argument `{}`: {e}", prm.name)))?;
        values.push(v);
    }
    Ok(values)
}

/// Runs `entry` once per argument list on the interpreter.
pub fn batch_interp(
    typed: &TypedModule,
    host: &HostLibrary,
    entry: &str,
    calls: &[Vec<String>],
    guard_checks: bool,
) -> Result<Vec<Outcome>, RunError> {
    let key = entry_op(&typed.flat, entry)?;
    calls
        .iter()
        .map(|args| {
            let values = parse_args(typed, host, &key, args)?;
            let mut interp = Interpreter::new(typed, host).guard_checks(guard_checks);
            Ok(match interp.call(&key, values) {
                Ok(vs) => Outcome::Ok(vs.iter().map(Value::to_string).collect()),
                Err(Fault::GuardViolation { op }) => Outcome::Guard(op),
                Err(f) => Outcome::Fault(f.to_string()),
            })
        })
        .collect()
}

/// Runs `entry` once per argument list in one Python process, on a program
/// already built into `dir`.
pub fn batch_python(
    host: &PythonHost,
    dir: &Path,
    typed: &TypedModule,
    entry: &str,
    calls: &[Vec<String>],
) -> Result<Vec<Outcome>, RunError> {
    let key = entry_op(&typed.flat, entry)?;
    let file = dir.join("batch.json");
    let json = serde_json::to_string(calls).expect("strings serialize");
    std::fs::write(&file, json).map_err(|e| RunError::Host(e.to_string()))?;
    let out = host.runtime(
        dir,
        &[
            "batch".into(),
            typed.flat.name.clone(),
            mangle(&key),
            file.display().to_string(),
        ],
    )?;
    if !out.status.success() {
        return Err(RunError::Host(
            String::from_utf8_lossy(&out.stderr).into_owned(),
        ));
    }
    serde_json::from_slice(&out.stdout)
        .map_err(|e| RunError::Host(format!("bad batch output: {e}")))
}

/// Where the Python host library and interpreter live.
#[derive(Debug, Clone)]
pub struct PythonHost {
    pub python: PathBuf,
    /// Directory containing the `lib` package.
    pub host_path: PathBuf,
}

impl PythonHost {
    pub fn new(host_path: impl Into<PathBuf>) -> Self {
        PythonHost {
            python: PathBuf::from("python3"),
            host_path: host_path.into(),
        }
    }

    fn command(&self, dir: &Path) -> Command {
        let mut c = Command::new(&self.python);
        // The child runs inside `dir`, so relative paths must be resolved here.
        let host = std::path::absolute(&self.host_path).unwrap_or_else(|_| self.host_path.clone());
        let mut paths = vec![host, dir.to_path_buf()];
        if let Some(old) = std::env::var_os("PYTHONPATH") {
            paths.extend(std::env::split_paths(&old));
        }
        c.env(
            "PYTHONPATH",
            std::env::join_paths(paths).expect("plain paths"),
        )
        .env("PYTHONDONTWRITEBYTECODE", "1")
        .current_dir(dir);
        c
    }

    /// Runs `mg_runtime.py` in the build directory `dir`.
    pub fn runtime(&self, dir: &Path, args: &[String]) -> Result<std::process::Output, RunError> {
        self.command(dir)
            .arg("mg_runtime.py")
            .args(args)
            .output()
            .map_err(|e| RunError::Host(format!("cannot start {}: {e}", self.python.display())))
    }

    /// Runs an arbitrary script of the build directory `dir`.
    pub fn script(
        &self,
        dir: &Path,
        script: &str,
        args: &[String],
    ) -> Result<std::process::Output, RunError> {
        self.command(dir)
            .arg(script)
            .args(args)
            .output()
            .map_err(|e| RunError::Host(format!("cannot start {}: {e}", self.python.display())))
    }
}

/// Builds `program` into `dir` for Python.
pub fn build_python(
    fl: &mut Flattener<'_>,
    program: &str,
    dir: &Path,
    guard_checks: bool,
) -> Result<(), RunError> {
    let spec = BackendSpec::new(crate::codegen::PYTHON)
        .expect("Python is supported")
        .guard_checks(guard_checks);
    let emitted = build(fl, program, &spec).map_err(RunError::Build)?;
    emitted
        .write_to(dir)
        .map_err(|e| RunError::Host(e.to_string()))
}

/// Runs `entry` of a program already built into `dir` on the Python host.
/// Arguments are passed as files so that multi-line fixtures survive.
pub fn run_built_python(
    host: &PythonHost,
    dir: &Path,
    typed: &TypedModule,
    entry: &str,
    args: &[String],
) -> Result<Vec<String>, RunError> {
    let key = entry_op(&typed.flat, entry)?;
    let mut argv = vec!["call".to_string(), typed.flat.name.clone(), mangle(&key)];
    for (i, a) in args.iter().enumerate() {
        let p = dir.join(format!("arg{i}.txt"));
        std::fs::write(&p, a).map_err(|e| RunError::Host(e.to_string()))?;
        argv.push("--arg-file".into());
        argv.push(p.display().to_string());
    }
    let out = host.runtime(dir, &argv)?;
    let stderr = String::from_utf8_lossy(&out.stderr).trim().to_string();
    match out.status.code() {
        Some(0) => Ok(String::from_utf8_lossy(&out.stdout)
            .lines()
            .map(str::to_string)
            .collect()),
        Some(3) if stderr.contains("guard of") => Err(RunError::Fault(Fault::GuardViolation {
            op: stderr.split('`').nth(1).unwrap_or_default().to_string(),
        })),
        Some(3) => Err(RunError::Fault(Fault::Host(
            stderr
                .strip_prefix("error: ")
                .unwrap_or(&stderr)
                .to_string(),
        ))),
        Some(2) => Err(RunError::Usage(
            stderr
                .strip_prefix("error: ")
                .unwrap_or(&stderr)
                .to_string(),
        )),
        _ => Err(RunError::Host(stderr)),
    }
}

/// Builds `program` into a fresh temporary directory and runs `entry`
/// there on the Python host.
pub fn run_python(
    fl: &mut Flattener<'_>,
    host: &PythonHost,
    program: &str,
    entry: &str,
    args: &[String],
    guard_checks: bool,
) -> Result<Vec<String>, RunError> {
    let typed = typed_program(fl, program).map_err(RunError::Build)?;
    let key = entry_op(&typed.flat, entry)?;
    let wanted = input_params(&typed.flat, &key).len();
    if wanted != args.len() {
        return Err(RunError::Usage(format!(
            "`{entry}` takes {wanted} arguments, {} given",
            args.len()
        )));
    }
    let dir = tempfile::tempdir().map_err(|e| RunError::Host(e.to_string()))?;
    build_python(fl, program, dir.path(), guard_checks)?;
    run_built_python(host, dir.path(), &typed, entry, args)
}

// ------------------------------------------------------------------ probes

/// Result of one probe call, in the JSON form of the Python runtime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Ok(Vec<String>),
    Guard(String),
    Fault(String),
}

impl Outcome {
    /// Equal results, or the same kind of failure. Fault messages differ
    /// between hosts and are not compared.
    pub fn agrees(&self, other: &Outcome) -> bool {
        match (self, other) {
            (Outcome::Fault(_), Outcome::Fault(_)) => true,
            (a, b) => a == b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub op: String,
    pub input: usize,
    pub args: Vec<String>,
    #[serde(flatten)]
    pub outcome: Outcome,
}

/// Calls every operation of `p` whose inputs can be generated on seeded
/// inputs, exactly as the Python runtime's `probe` does.
pub fn probe_interp(
    p: &TypedModule,
    host: &HostLibrary,
    budget: usize,
    seed: u64,
) -> Vec<ProbeRecord> {
    let by_name: BTreeMap<String, &OpKey> = p.flat.ops.keys().map(|k| (mangle(k), k)).collect();
    let mut out = Vec::new();
    for (mangled, key) in by_name {
        let sig = &p.flat.ops[key].sig;
        let doms: Result<Vec<Vec<Value>>, _> = sig
            .params
            .iter()
            .map(|prm| {
                if prm.mode == Mode::Out {
                    Ok(vec![Value::Unset])
                } else {
                    type_domain(&p.flat, host, &prm.ty, usize::MAX)
                }
            })
            .collect();
        let Ok(doms) = doms else { continue };
        for (i, input) in inputs(&doms, budget, seed, &mangled)
            .into_iter()
            .enumerate()
        {
            let args = input.iter().map(Value::to_string).collect();
            let mut interp = Interpreter::new(p, host);
            let outcome = match interp.call(key, input) {
                Ok(vs) => Outcome::Ok(vs.iter().map(Value::to_string).collect()),
                Err(Fault::GuardViolation { op }) => Outcome::Guard(op),
                Err(f) => Outcome::Fault(f.to_string()),
            };
            out.push(ProbeRecord {
                op: mangled.clone(),
                input: i,
                args,
                outcome,
            });
        }
    }
    out
}

/// Runs the Python `probe` of a program built into `dir`.
pub fn probe_python(
    host: &PythonHost,
    dir: &Path,
    program: &str,
    budget: usize,
    seed: u64,
) -> Result<Vec<ProbeRecord>, RunError> {
    let out = host.runtime(
        dir,
        &[
            "probe".into(),
            program.into(),
            budget.to_string(),
            seed.to_string(),
        ],
    )?;
    if !out.status.success() {
        return Err(RunError::Host(
            String::from_utf8_lossy(&out.stderr).into_owned(),
        ));
    }
    serde_json::from_slice(&out.stdout)
        .map_err(|e| RunError::Host(format!("bad probe output: {e}")))
}

/// Records on which the two probes disagree, as readable lines. Differing
/// sets of probed inputs are reported too.
pub fn probe_disagreements(interp: &[ProbeRecord], python: &[ProbeRecord]) -> Vec<String> {
    let key = |r: &ProbeRecord| (r.op.clone(), r.input);
    let py: BTreeMap<_, _> = python.iter().map(|r| (key(r), r)).collect();
    let mut out = Vec::new();
    for r in interp {
        match py.get(&key(r)) {
            None => out.push(format!(
                "{} #{}: only probed by the interpreter",
                r.op, r.input
            )),
            Some(p) if p.args != r.args => out.push(format!(
                "{} #{}: inputs differ {:?} vs {:?}",
                r.op, r.input, r.args, p.args
            )),
            Some(p) if !r.outcome.agrees(&p.outcome) => out.push(format!(
                "{} #{} {:?}: interpreter {:?}, python {:?}",
                r.op, r.input, r.args, r.outcome, p.outcome
            )),
            Some(_) => {}
        }
    }
    if python.len() > interp.len() {
        let ours: std::collections::BTreeSet<_> = interp.iter().map(key).collect();
        for r in python.iter().filter(|r| !ours.contains(&key(r))) {
            out.push(format!("{} #{}: only probed by python", r.op, r.input));
        }
    }
    out
}
