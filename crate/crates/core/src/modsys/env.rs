//! The module environment and the flattener over it.

use std::collections::{BTreeMap, HashMap};
use std::io;
use std::path::{Path, PathBuf};

use super::flat::*;
use super::renaming::Renaming;
use super::ModError;
use crate::diag::{DiagKind, Diagnostic, Diagnostics};
use crate::frontend::{self, ast::*};
use crate::source::{SourceMap, SourceUnit, Span};

/// Every module of every loaded file, by name. Frozen once loading is done.
#[derive(Debug, Default)]
pub struct ModuleEnv {
    sources: SourceMap,
    modules: BTreeMap<String, AstModule>,
    order: Vec<String>,
}

impl ModuleEnv {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses `unit` and adds its modules. A file with syntax errors
    /// contributes no modules.
    pub fn add_source(&mut self, unit: SourceUnit) -> Diagnostics {
        let text = unit.text.clone();
        let file = self.sources.add(unit);
        let mut diags = Diagnostics::new();
        let modules = match frontend::parse(file, &text) {
            Ok(ms) => ms,
            Err(d) => return d,
        };
        for m in modules {
            self.add_module(m, &mut diags);
        }
        diags
    }

    fn add_module(&mut self, m: AstModule, diags: &mut Diagnostics) {
        if let Some(prev) = self.modules.get(&m.name) {
            let prev_at = self.sources.path(prev.span.file).display().to_string();
            diags.push(
                Diagnostic::error(
                    DiagKind::DuplicateModule,
                    format!("module `{}` is already defined in {prev_at}", m.name),
                )
                .at(m.span),
            );
            return;
        }
        self.order.push(m.name.clone());
        self.modules.insert(m.name.clone(), m);
    }

    /// Loads the given files, then every `.mg` file directly inside each
    /// search directory (sorted by name) that was not already given.
    pub fn load(files: &[PathBuf], search: &[PathBuf]) -> io::Result<(ModuleEnv, Diagnostics)> {
        let mut env = ModuleEnv::new();
        let mut diags = Diagnostics::new();
        let mut seen = Vec::new();
        for f in files {
            seen.push(canonical(f));
            diags.extend(env.add_source(SourceUnit::read(f)?));
        }
        for dir in search {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "mg"))
                .collect();
            entries.sort();
            for p in entries {
                let c = canonical(&p);
                if seen.contains(&c) {
                    continue;
                }
                seen.push(c);
                diags.extend(env.add_source(SourceUnit::read(&p)?));
            }
        }
        Ok((env, diags))
    }

    /// Convenience for tests and tools: one in-memory file.
    pub fn from_text(path: &str, text: &str) -> (ModuleEnv, Diagnostics) {
        let mut env = ModuleEnv::new();
        let d = env.add_source(SourceUnit::new(path, text));
        (env, d)
    }

    pub fn sources(&self) -> &SourceMap {
        &self.sources
    }

    pub fn get(&self, name: &str) -> Option<&AstModule> {
        self.modules.get(name)
    }

    /// All modules in load order.
    pub fn modules(&self) -> impl Iterator<Item = &AstModule> {
        self.order.iter().map(|n| &self.modules[n])
    }

    pub fn satisfactions(&self) -> impl Iterator<Item = &AstModule> {
        self.modules()
            .filter(|m| m.kind == ModuleKind::Satisfaction)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

fn canonical(p: &Path) -> PathBuf {
    p.canonicalize().unwrap_or_else(|_| p.to_path_buf())
}

/// Memoizing flattener over one environment.
pub struct Flattener<'e> {
    env: &'e ModuleEnv,
    cache: HashMap<String, Result<FlatModule, ModError>>,
    stack: Vec<String>,
}

impl<'e> Flattener<'e> {
    pub fn new(env: &'e ModuleEnv) -> Self {
        Flattener {
            env,
            cache: HashMap::new(),
            stack: Vec::new(),
        }
    }

    pub fn env(&self) -> &'e ModuleEnv {
        self.env
    }

    pub fn flatten(&mut self, name: &str) -> Result<FlatModule, ModError> {
        self.flatten_at(name, None)
    }

    /// Flattens `M[r]` as a `use` would.
    pub fn flatten_expr(&mut self, e: &ModuleExpr) -> Result<FlatModule, ModError> {
        let m = self.flatten_at(&e.name, Some(e.span))?;
        super::flat::rename_module(
            &m,
            &Renaming::from_ast(&e.renaming),
            Some(&e.name),
            Some(e.span),
        )
    }

    fn flatten_at(&mut self, name: &str, span: Option<Span>) -> Result<FlatModule, ModError> {
        if let Some(r) = self.cache.get(name) {
            return r.clone();
        }
        if let Some(pos) = self.stack.iter().position(|n| n == name) {
            let mut cycle = self.stack[pos..].to_vec();
            cycle.push(name.to_string());
            return Err(ModError::CyclicUse { cycle, span });
        }
        let env = self.env;
        let ast = env.get(name).ok_or_else(|| ModError::UnknownModule {
            name: name.to_string(),
            span,
        })?;
        if ast.kind == ModuleKind::Satisfaction {
            return Err(ModError::NotAModuleExpression {
                name: name.to_string(),
                span,
            });
        }
        self.stack.push(name.to_string());
        let result = self.flatten_module(ast);
        self.stack.pop();
        self.cache.insert(name.to_string(), result.clone());
        result
    }

    fn flatten_module(&mut self, ast: &AstModule) -> Result<FlatModule, ModError> {
        let mut out = FlatModule::new(ast.kind, ast.name.clone());
        for decl in ast.decls() {
            match decl {
                AstDecl::Use(e) => {
                    let used = self.flatten_expr(e)?;
                    out.absorb(used)?;
                }
                AstDecl::Type(t) => out.add_type(FlatType {
                    name: t.name.clone(),
                    status: if t.required {
                        Status::Required
                    } else {
                        Status::Declared
                    },
                    provenance: Provenance::own(&ast.name),
                    span: Some(t.span),
                })?,
                AstDecl::Op(o) => out.add_op(FlatOp {
                    sig: OpSig::from_decl(o),
                    status: match (&o.body, o.required) {
                        (Some(b), _) => Status::Defined(b.clone()),
                        (None, true) => Status::Required,
                        (None, false) => Status::Declared,
                    },
                    provenance: Provenance::own(&ast.name),
                    span: Some(o.span),
                })?,
                AstDecl::Axiom(a) => out.add_axiom(FlatAxiom {
                    name: a.name.clone(),
                    params: a.params.clone(),
                    body: a.body.clone(),
                    provenance: Provenance::own(&ast.name),
                    span: Some(a.span),
                }),
            }
        }
        if let Some(tag) = &ast.external {
            bind_external(&mut out, tag);
        }
        if ast.kind == ModuleKind::Signature {
            out.axioms.clear();
        }
        Ok(out)
    }
}

/// Binds every bodiless, non-required element to the host module; required
/// elements become the parameters of the host instance.
fn bind_external(m: &mut FlatModule, tag: &ExternalTag) {
    let mut requirements = BTreeMap::new();
    for t in m.types.values() {
        if t.status == Status::Required {
            requirements.insert(t.name.clone(), Requirement::Type(t.name.clone()));
        }
    }
    let required_ops: Vec<&OpKey> = m
        .ops
        .iter()
        .filter(|(_, op)| op.status == Status::Required)
        .map(|(k, _)| k)
        .collect();
    for k in &required_ops {
        let overloaded = required_ops.iter().filter(|o| o.name == k.name).count() > 1;
        let local = if overloaded {
            format!("{}({})", k.name, k.params.join(","))
        } else {
            k.name.clone()
        };
        requirements.insert(local, Requirement::Op((*k).clone()));
    }
    let binding = |host_name: &str| ExternalBinding {
        backend: tag.backend.clone(),
        host_path: tag.host_path.clone(),
        host_name: host_name.to_string(),
        requirements: requirements.clone(),
    };
    for t in m.types.values_mut() {
        if t.status == Status::Declared {
            t.status = Status::External(binding(&t.name));
        }
    }
    for op in m.ops.values_mut() {
        if op.status == Status::Declared {
            op.status = Status::External(binding(&op.sig.name));
        }
    }
}

/// Flattens `name` in a fresh flattener.
pub fn flatten(name: &str, env: &ModuleEnv) -> Result<FlatModule, ModError> {
    Flattener::new(env).flatten(name)
}
