//! The Python backend.
//!
//! Layout of a build: `mg_runtime.py` (shared shim), `<Program>.py` with one
//! `def` or host alias per operation, `<Program>_oracles.py` with one test
//! function per oracle, and `manifest.txt`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::diag::{DiagKind, Diagnostic, Diagnostics};
use crate::frontend::ast::{Mode, OpKind};
use crate::modsys::{ExternalBinding, OpKey, Requirement, Status, PREDICATE};
use crate::oracle::OracleSuite;
use crate::semantics::{TArg, TBlock, TExpr, TExprKind, TStmt, TypedModule};
use crate::source::SourceMap;

use super::{mangle, Binding, ManifestEntry};

pub(crate) const RUNTIME: &str = include_str!("mg_runtime.py");

/// Indenting line writer.
#[derive(Default)]
struct Out {
    text: String,
    depth: usize,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        for _ in 0..self.depth {
            self.text.push_str("    ");
        }
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn blank(&mut self) {
        self.text.push('\n');
    }
}

fn var(name: &str) -> String {
    format!("v_{name}")
}

fn tuple(items: &[String]) -> String {
    match items {
        [one] => format!("({one},)"),
        _ => format!("({})", items.join(", ")),
    }
}

fn py_str(s: &str) -> String {
    // JSON string syntax is valid Python for the identifiers and paths we emit.
    serde_json::to_string(s).expect("strings serialize")
}

/// How expressions refer to program-level names: directly inside the
/// program module, through `P.` from the oracle harness.
struct Lower<'a> {
    prog: &'a TypedModule,
    prefix: &'a str,
    /// Parameters of the body being lowered; `value p` copies them.
    params: BTreeSet<String>,
    /// Calls are checked against their guard and discard on violation.
    axiom: bool,
    sources: Option<&'a SourceMap>,
}

impl Lower<'_> {
    fn op(&self, k: &OpKey) -> String {
        format!("{}{}", self.prefix, mangle(k))
    }

    fn has_guard(&self, k: &OpKey) -> bool {
        self.prog.guards.contains_key(k)
    }

    fn call(&self, k: &OpKey, args: Vec<String>) -> String {
        if self.axiom && self.has_guard(k) {
            let mut a = vec![
                py_str(&k.name),
                format!("{}_g_{}", self.prefix, mangle(k)),
                self.op(k),
            ];
            a.extend(args);
            format!("_rt.direct({})", a.join(", "))
        } else {
            format!("{}({})", self.op(k), args.join(", "))
        }
    }

    fn expr(&self, e: &TExpr) -> String {
        match &e.kind {
            TExprKind::Var(v) => var(v),
            TExprKind::Call { op, args } => {
                self.call(op, args.iter().map(|a| self.expr(a)).collect())
            }
            TExprKind::Eq(a, b) => format!(
                "{}_eq_{}({}, {})",
                self.prefix,
                a.ty,
                self.expr(a),
                self.expr(b)
            ),
            TExprKind::Not(a) => format!("(not {})", self.expr(a)),
            TExprKind::And(a, b) => format!("({} and {})", self.expr(a), self.expr(b)),
        }
    }

    /// An owned value: bare variables are copied so no two variables share
    /// a mutable host object.
    fn owned(&self, e: &TExpr) -> String {
        match &e.kind {
            TExprKind::Var(v) if e.ty != PREDICATE => {
                format!("{}_cp_{}({})", self.prefix, e.ty, var(v))
            }
            _ => self.expr(e),
        }
    }

    fn block(&self, b: &TBlock, out: &mut Out) {
        let before = out.text.len();
        for s in &b.stmts {
            self.stmt(s, out);
        }
        if out.text.len() == before {
            out.line("pass");
        }
    }

    fn stmt(&self, s: &TStmt, out: &mut Out) {
        match s {
            TStmt::Var { name, init, .. } => match init {
                Some(e) => out.line(format!("{} = {}", var(name), self.owned(e))),
                None => out.line(format!("{} = None", var(name))),
            },
            TStmt::Assign { name, value, .. } => {
                out.line(format!("{} = {}", var(name), self.owned(value)))
            }
            TStmt::Call { op, args, .. } => self.call_stmt(op, args, out),
            TStmt::If {
                cond,
                then_block,
                else_block,
                ..
            } => self.if_chain("if", cond, then_block, else_block.as_ref(), out),
            TStmt::Assert { expr, span } => {
                let loc = self
                    .sources
                    .map_or_else(|| "<unknown>".to_string(), |s| s.locate(*span));
                out.line(format!("_rt.check({}, {})", self.expr(expr), py_str(&loc)));
            }
            TStmt::Value { expr, .. } => {
                let v = match &expr.kind {
                    TExprKind::Var(v) if self.params.contains(v) => self.owned(expr),
                    _ => self.expr(expr),
                };
                out.line(format!("return {v}"));
            }
            TStmt::Block(b) => self.block(b, out),
        }
    }

    fn if_chain(
        &self,
        kw: &str,
        cond: &TExpr,
        then_block: &TBlock,
        else_block: Option<&TBlock>,
        out: &mut Out,
    ) {
        out.line(format!("{kw} {}:", self.expr(cond)));
        out.depth += 1;
        self.block(then_block, out);
        out.depth -= 1;
        match else_block.map(|b| b.stmts.as_slice()) {
            None => {}
            Some(
                [TStmt::If {
                    cond,
                    then_block,
                    else_block,
                    ..
                }],
            ) => self.if_chain("elif", cond, then_block, else_block.as_ref(), out),
            Some(_) => {
                out.line("else:");
                out.depth += 1;
                self.block(else_block.expect("matched Some"), out);
                out.depth -= 1;
            }
        }
    }

    fn call_stmt(&self, op: &OpKey, args: &[TArg], out: &mut Out) {
        if self.is_noop(op, args) {
            return;
        }
        let vals = args
            .iter()
            .map(|a| match a.mode {
                Mode::Out => "None".to_string(),
                _ => self.expr(&a.expr),
            })
            .collect();
        let call = self.call(op, vals);
        let targets: Vec<String> = args.iter().filter_map(TArg::var).map(var).collect();
        match targets.len() {
            0 => out.line(call),
            1 => out.line(format!("{}, = {call}", targets[0])),
            _ => out.line(format!("{} = {call}", targets.join(", "))),
        }
    }
}

impl Lower<'_> {
    /// A call with plain variable arguments to an unguarded procedure with
    /// an empty body has no effect: it hands back its upd arguments as they
    /// were. Such calls, typically visitor events, are not emitted.
    fn is_noop(&self, op: &OpKey, args: &[TArg]) -> bool {
        let unguarded = self.prog.flat.op(op).is_some_and(|o| o.sig.guard.is_none());
        let empty = self
            .prog
            .bodies
            .get(op)
            .is_some_and(|b| b.block.stmts.is_empty());
        unguarded
            && empty
            && args
                .iter()
                .all(|a| matches!(a.expr.kind, TExprKind::Var(_)))
    }
}

type InstanceKey = (String, String, BTreeMap<String, Requirement>);

fn instance_key(b: &ExternalBinding) -> InstanceKey {
    (
        b.backend.clone(),
        b.host_path.clone(),
        b.requirements.clone(),
    )
}

pub(crate) struct ProgramModule {
    pub text: String,
    pub manifest: Vec<ManifestEntry>,
    pub diagnostics: Diagnostics,
}

/// Emits `<Program>.py`.
pub(crate) fn program_module(
    prog: &TypedModule,
    backend: &str,
    guard_checks: bool,
) -> ProgramModule {
    let flat = &prog.flat;
    let mut diags = Diagnostics::new();
    let mut skipped = BTreeSet::new();

    // Host instances, numbered in key order.
    let mut instances: BTreeMap<InstanceKey, usize> = BTreeMap::new();
    let bindings = flat
        .types
        .values()
        .filter_map(|t| t.status.binding())
        .chain(flat.ops.values().filter_map(|o| o.status.binding()));
    for b in bindings {
        if b.backend != backend {
            if skipped.insert((b.backend.clone(), b.host_path.clone())) {
                diags.push(Diagnostic::warning(
                    DiagKind::BackendMismatch,
                    format!(
                        "binding to {} {} skipped: building for backend {backend}",
                        b.backend, b.host_path
                    ),
                ));
            }
            continue;
        }
        let n = instances.len();
        instances.entry(instance_key(b)).or_insert(n);
    }
    // Renumber in key order so output does not depend on discovery order.
    for (i, v) in instances.values_mut().enumerate() {
        *v = i;
    }

    // External ops without a runtime guard check are plain aliases of the
    // host function; they must be assigned before any instance that
    // receives them as a callback is created.
    let aliased = |k: &OpKey| -> bool { !(guard_checks && prog.guards.contains_key(k)) };
    let alias_owner = |k: &OpKey| -> Option<usize> {
        let op = flat.ops.get(k)?;
        let b = op.status.binding()?;
        if b.backend != backend || !aliased(k) {
            return None;
        }
        instances.get(&instance_key(b)).copied()
    };
    let order = instance_order(&instances, &alias_owner);
    let use_aliases = order.is_some();
    let order = order.unwrap_or_else(|| (0..instances.len()).collect());

    let mut out = Out::default();
    out.line(format!(
        "\"\"\"Program {} emitted by mglite for the {backend} backend{}.\"\"\"",
        flat.name,
        if guard_checks {
            ""
        } else {
            " without guard checks"
        }
    ));
    out.blank();
    out.line("import mg_runtime as _rt");
    let mut manifest = Vec::new();

    // Guard predicates, used by guard checks and by oracle harnesses.
    for (k, g) in &prog.guards {
        let Some(op) = flat.ops.get(k) else { continue };
        let params: Vec<String> = op.sig.params.iter().map(|p| var(&p.name)).collect();
        let l = Lower {
            prog,
            prefix: "",
            params: BTreeSet::new(),
            axiom: false,
            sources: None,
        };
        out.blank();
        out.blank();
        out.line(format!("def _g_{}({}):", mangle(k), params.join(", ")));
        out.depth += 1;
        out.line(format!("return {}", l.expr(g)));
        out.depth -= 1;
    }

    let mut aliases: BTreeMap<usize, Vec<(String, String)>> = BTreeMap::new();
    for (k, op) in &flat.ops {
        let m = mangle(k);
        let params: Vec<String> = op.sig.params.iter().map(|p| var(&p.name)).collect();
        let guard = |out: &mut Out| {
            if guard_checks && prog.guards.contains_key(k) {
                out.line(format!("if not _g_{m}({}):", params.join(", ")));
                out.line(format!(
                    "    raise _rt.GuardViolation({})",
                    py_str(&op.sig.name)
                ));
            }
        };
        let binding = match &op.status {
            Status::External(b) if b.backend == backend => {
                let inst = instances[&instance_key(b)];
                if use_aliases && aliased(k) {
                    aliases
                        .entry(inst)
                        .or_default()
                        .push((m.clone(), format!("_I{inst}.{}", b.host_name)));
                } else {
                    out.blank();
                    out.blank();
                    out.line(format!("def {m}({}):", params.join(", ")));
                    out.depth += 1;
                    guard(&mut out);
                    out.line(format!(
                        "return _I{inst}.{}({})",
                        b.host_name,
                        params.join(", ")
                    ));
                    out.depth -= 1;
                }
                Binding::Host {
                    backend: b.backend.clone(),
                    path: b.host_path.clone(),
                    name: b.host_name.clone(),
                }
            }
            Status::External(b) => {
                out.blank();
                out.blank();
                out.line(format!("def {m}(*args):"));
                out.line(format!(
                    "    raise _rt.Unbound({})",
                    py_str(&format!(
                        "{} is bound to backend {}",
                        op.sig.signature(),
                        b.backend
                    ))
                ));
                Binding::Skipped {
                    backend: b.backend.clone(),
                }
            }
            Status::Defined(_) => {
                out.blank();
                out.blank();
                out.line(format!("def {m}({}):", params.join(", ")));
                out.depth += 1;
                guard(&mut out);
                match prog.bodies.get(k) {
                    Some(body) => {
                        let l = Lower {
                            prog,
                            prefix: "",
                            params: body.params.iter().map(|p| p.name.clone()).collect(),
                            axiom: false,
                            sources: None,
                        };
                        if op.sig.kind == OpKind::Procedure {
                            for s in &body.block.stmts {
                                l.stmt(s, &mut out);
                            }
                            let ret: Vec<String> = body
                                .params
                                .iter()
                                .filter(|p| p.mode.is_mutable())
                                .map(|p| var(&p.name))
                                .collect();
                            out.line(format!("return {}", tuple(&ret)));
                        } else {
                            l.block(&body.block, &mut out);
                        }
                    }
                    None => out.line("raise _rt.Unbound(\"body did not type-check\")"),
                }
                out.depth -= 1;
                Binding::Emitted
            }
            Status::Required | Status::Declared => {
                out.blank();
                out.blank();
                out.line(format!("def {m}(*args):"));
                out.line(format!(
                    "    raise _rt.Unbound({})",
                    py_str(&format!("{} has no implementation", op.sig.signature()))
                ));
                Binding::Missing
            }
        };
        manifest.push(ManifestEntry {
            mangled: m,
            origin: op.sig.signature(),
            binding,
        });
    }

    // Host instances and their aliases.
    out.blank();
    out.blank();
    out.line("# Host instances.");
    let by_index: BTreeMap<usize, &InstanceKey> = instances.iter().map(|(k, v)| (*v, k)).collect();
    for i in order {
        let (_, path, reqs) = by_index[&i];
        let ops: Vec<String> = reqs
            .iter()
            .filter_map(|(local, r)| match r {
                Requirement::Op(k) => Some(format!("{}: {}", py_str(local), mangle(k))),
                Requirement::Type(_) => None,
            })
            .collect();
        out.line(format!(
            "_I{i} = _rt.load({}).instantiate({{{}}})",
            py_str(path),
            ops.join(", ")
        ));
        for (m, target) in aliases.remove(&i).unwrap_or_default() {
            out.line(format!("{m} = {target}"));
        }
    }

    // Type hooks and tables.
    out.blank();
    out.line("_eq_Predicate = _rt.eq_predicate");
    let mut types = Vec::new();
    for (name, t) in &flat.types {
        let Some(b) = t.status.binding() else {
            continue;
        };
        if b.backend != backend {
            continue;
        }
        let inst = instances[&instance_key(b)];
        let hooks = format!("_I{inst}.types[{}]", py_str(&b.host_name));
        out.line(format!("_eq_{name} = {hooks}.eq"));
        out.line(format!("_cp_{name} = {hooks}.copy"));
        let reqs: Vec<String> = b
            .requirements
            .iter()
            .filter_map(|(local, r)| match r {
                Requirement::Type(t) => Some(format!("{}: {}", py_str(local), py_str(t))),
                Requirement::Op(_) => None,
            })
            .collect();
        types.push(format!(
            "    {}: (_I{inst}, {}, {{{}}}),",
            py_str(name),
            py_str(&b.host_name),
            reqs.join(", ")
        ));
    }
    out.blank();
    out.line("TYPES = {");
    for t in types {
        out.line(t);
    }
    out.line("}");
    out.blank();
    out.line("OPS = {");
    for (k, op) in &flat.ops {
        let params: Vec<String> = op
            .sig
            .params
            .iter()
            .map(|p| {
                format!(
                    "({}, {}, {})",
                    py_str(p.mode.keyword()),
                    py_str(&p.name),
                    py_str(&p.ty)
                )
            })
            .collect();
        let ret = k.ret.as_deref().map_or_else(|| "None".to_string(), py_str);
        let params = tuple(&params);
        out.line(format!(
            "    {}: ({}, {}, {params}, {ret}),",
            py_str(&mangle(k)),
            py_str(&op.sig.kind.to_string()),
            py_str(&k.name),
        ));
    }
    out.line("}");

    ProgramModule {
        text: out.text,
        manifest,
        diagnostics: diags,
    }
}

/// Instance creation order such that every aliased callback exists before
/// the instance receiving it; `None` on a dependency cycle.
fn instance_order(
    instances: &BTreeMap<InstanceKey, usize>,
    alias_owner: &dyn Fn(&OpKey) -> Option<usize>,
) -> Option<Vec<usize>> {
    let mut deps: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for ((_, _, reqs), &i) in instances {
        let d = deps.entry(i).or_default();
        for r in reqs.values() {
            if let Requirement::Op(k) = r {
                if let Some(j) = alias_owner(k) {
                    d.insert(j);
                }
            }
        }
    }
    let mut order = Vec::new();
    let mut done = BTreeSet::new();
    while order.len() < deps.len() {
        let next = deps
            .iter()
            .find(|(i, d)| !done.contains(*i) && d.iter().all(|j| done.contains(j) || j == *i))
            .map(|(i, _)| *i)?;
        // An instance needing its own aliases cannot be ordered either.
        if deps[&next].contains(&next) {
            return None;
        }
        done.insert(next);
        order.push(next);
    }
    Some(order)
}

/// Emits `<Program>_oracles.py` for the given suites of one program.
pub(crate) fn oracle_harness(
    prog: &TypedModule,
    suites: &[OracleSuite],
    sources: &SourceMap,
) -> String {
    let mut out = Out::default();
    out.line(format!(
        "\"\"\"Axiom oracles of program {}, emitted by mglite.\"\"\"",
        prog.flat.name
    ));
    out.blank();
    out.line("import sys");
    out.blank();
    out.line("import mg_runtime as _rt");
    out.line(format!("import {} as P", prog.flat.name));
    let mut entries = Vec::new();
    let mut n = 0;
    for s in suites {
        for o in &s.oracles {
            let fname = format!("oracle_{n}");
            n += 1;
            let params: Vec<String> = o.params.iter().map(|p| var(&p.name)).collect();
            let l = Lower {
                prog,
                prefix: "P.",
                params: BTreeSet::new(),
                axiom: true,
                sources: Some(sources),
            };
            out.blank();
            out.blank();
            out.line(format!("def {fname}({}):", params.join(", ")));
            out.depth += 1;
            out.line(format!("\"\"\"{} from {}.\"\"\"", o.name, s.satisfaction));
            l.block(&o.axiom.block, &mut out);
            out.depth -= 1;
            let ps: Vec<String> = o
                .params
                .iter()
                .map(|p| format!("({}, {})", py_str(&p.name), py_str(&p.ty)))
                .collect();
            entries.push(format!(
                "    _rt.Oracle({}, {}, [{}], {fname}),",
                py_str(&o.name),
                py_str(&s.satisfaction),
                ps.join(", ")
            ));
        }
    }
    out.blank();
    out.blank();
    out.line("ORACLES = [");
    for e in entries {
        out.line(e);
    }
    out.line("]");
    out.blank();
    out.line("if __name__ == \"__main__\":");
    out.line("    sys.exit(_rt.oracle_main(P, ORACLES))");
    out.text
}

pub(crate) fn manifest_text(m: &[ManifestEntry]) -> String {
    let mut s = String::from("# mangled\torigin\tbinding\n");
    for e in m {
        let _ = writeln!(s, "{}\t{}\t{}", e.mangled, e.origin, e.binding);
    }
    s
}
