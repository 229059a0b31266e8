//! Transpilation of complete programs to a host backend.
//!
//! Each operation of the flattened program is emitted once under its
//! [`mangle`]d name. Functions return their value; procedures take every
//! parameter and return the tuple of their upd/out parameters, which the
//! call site rebinds. Guards become runtime checks unless disabled.

mod mangle;
mod python;

pub use mangle::{demangle, mangle};

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::diag::{DiagKind, Diagnostic, Diagnostics};
use crate::frontend::ast::{ModuleBody, ModuleKind};
use crate::interp::type_binding;
use crate::modsys::{check_program_complete, Flattener, PREDICATE};
use crate::oracle::{generate_oracles, OracleSuite};
use crate::semantics::{check_scope, TypedModule};
use crate::source::SourceMap;

/// The only backend in scope.
pub const PYTHON: &str = "Python";

#[derive(Debug, Error)]
pub enum CodegenError {
    #[error("unsupported backend `{0}`; the available backend is Python")]
    UnsupportedBackend(String),
    #[error("cannot write {path}: {source}")]
    EmitIo {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CodegenError {
    pub fn to_diagnostic(&self) -> Diagnostic {
        let kind = match self {
            CodegenError::UnsupportedBackend(_) => DiagKind::UnsupportedBackend,
            CodegenError::EmitIo { .. } => DiagKind::TargetNotExecutable,
        };
        Diagnostic::error(kind, self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackendSpec {
    /// Matches the `external <name>` tag in sources.
    pub name: String,
    pub guard_checks: bool,
}

impl BackendSpec {
    pub fn new(name: &str) -> Result<BackendSpec, CodegenError> {
        if name != PYTHON {
            return Err(CodegenError::UnsupportedBackend(name.to_string()));
        }
        Ok(BackendSpec {
            name: name.to_string(),
            guard_checks: true,
        })
    }

    pub fn guard_checks(mut self, on: bool) -> Self {
        self.guard_checks = on;
        self
    }

    pub fn program_file(&self, program: &str) -> String {
        format!("{program}.py")
    }

    pub fn harness_file(&self, program: &str) -> String {
        format!("{program}_oracles.py")
    }
}

/// Where an emitted operation's code comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    Emitted,
    Host {
        backend: String,
        path: String,
        name: String,
    },
    /// Bound to another backend; calling it raises.
    Skipped {
        backend: String,
    },
    /// No implementation at all; only possible for incomplete programs.
    Missing,
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::Emitted => f.write_str("emitted"),
            Binding::Host {
                backend,
                path,
                name,
            } => write!(f, "external {backend} {path}.{name}"),
            Binding::Skipped { backend } => write!(f, "skipped (backend {backend})"),
            Binding::Missing => f.write_str("missing"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub mangled: String,
    /// Signature of the operation in the program.
    pub origin: String,
    pub binding: Binding,
}

#[derive(Debug, Clone, Default)]
pub struct EmittedProgram {
    /// Output path relative to the build directory, and its text.
    pub files: BTreeMap<String, String>,
    pub manifest: Vec<ManifestEntry>,
    /// Mangled names callable from harnesses and the `run` command.
    pub entry_table: Vec<String>,
    /// Warnings such as skipped bindings.
    pub diagnostics: Diagnostics,
}

impl EmittedProgram {
    pub fn write_to(&self, dir: &Path) -> Result<(), CodegenError> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CodegenError::EmitIo { path, source }
        };
        std::fs::create_dir_all(dir).map_err(io(dir))?;
        for (name, text) in &self.files {
            let p = dir.join(name);
            std::fs::write(&p, text).map_err(io(&p))?;
        }
        Ok(())
    }
}

/// Emits `p` for `spec`: the shared runtime, the program module and its
/// manifest.
pub fn transpile(p: &TypedModule, spec: &BackendSpec) -> Result<EmittedProgram, Diagnostics> {
    if p.flat.kind != ModuleKind::Program {
        return Err(Diagnostics::from(Diagnostic::error(
            DiagKind::TargetNotExecutable,
            format!("{} is a {}, not a program", p.flat.name, p.flat.kind),
        )));
    }
    let m = python::program_module(p, &spec.name, spec.guard_checks);
    let mut files = BTreeMap::new();
    files.insert("mg_runtime.py".to_string(), python::RUNTIME.to_string());
    files.insert(spec.program_file(&p.flat.name), m.text);
    files.insert(
        "manifest.txt".to_string(),
        python::manifest_text(&m.manifest),
    );
    Ok(EmittedProgram {
        files,
        entry_table: m.manifest.iter().map(|e| e.mangled.clone()).collect(),
        manifest: m.manifest,
        diagnostics: m.diagnostics,
    })
}

/// Emits `<Program>_oracles.py` for suites whose program is `p`.
pub fn emit_oracle_harness(
    suites: &[OracleSuite],
    p: &TypedModule,
    spec: &BackendSpec,
    sources: &SourceMap,
) -> Result<EmittedProgram, Diagnostics> {
    let mut d = Diagnostics::new();
    for s in suites {
        for o in &s.oracles {
            for prm in &o.params {
                let bound = type_binding(&p.flat, &prm.ty).is_some_and(|b| b.backend == spec.name);
                if prm.ty != PREDICATE && !bound {
                    d.push(Diagnostic::error(
                        DiagKind::MissingGenerator,
                        format!(
                            "oracle {} needs a generator for {}, which has no {} binding",
                            o.name, prm.ty, spec.name
                        ),
                    ));
                }
            }
        }
    }
    if d.has_errors() {
        return Err(d);
    }
    let mut files = BTreeMap::new();
    files.insert(
        spec.harness_file(&p.flat.name),
        python::oracle_harness(p, suites, sources),
    );
    Ok(EmittedProgram {
        files,
        ..EmittedProgram::default()
    })
}

/// Type-checks program `name`, then emits it together with the oracle
/// harness of every satisfaction whose left side it is.
pub fn build(
    fl: &mut Flattener<'_>,
    name: &str,
    spec: &BackendSpec,
) -> Result<EmittedProgram, Diagnostics> {
    let env = fl.env();
    let flat = fl
        .flatten(name)
        .map_err(|e| Diagnostics::from(e.to_diagnostic()))?;
    if flat.kind != ModuleKind::Program {
        return Err(Diagnostics::from(Diagnostic::error(
            DiagKind::TargetNotExecutable,
            format!("{name} is a {}, not a program", flat.kind),
        )));
    }
    let mut d = check_program_complete(&flat);
    let (typed, checked) = check_scope(&flat);
    d.extend(checked);
    if d.has_errors() {
        return Err(d);
    }
    let mut out = transpile(&typed, spec)?;
    let mut suites = Vec::new();
    for s in env.satisfactions() {
        let ModuleBody::Satisfaction { lhs, .. } = &s.body else {
            continue;
        };
        if lhs.name == name {
            suites.push(generate_oracles(&s.name, fl)?);
        }
    }
    let h = emit_oracle_harness(&suites, &typed, spec, env.sources())?;
    out.files.extend(h.files);
    out.diagnostics.extend(d);
    Ok(out)
}

#[cfg(test)]
mod tests;
