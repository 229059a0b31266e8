//! Tree-walking reference interpreter over typed programs.
//!
//! It runs defined bodies directly and dispatches externally bound
//! operations to a [`HostLibrary`]. The interpreter is the semantic
//! yardstick for emitted code and the engine behind axiom oracles.

mod host;
mod reference;
mod value;

pub use host::{Callbacks, EnumerateFn, Fault, HostFn, HostLibrary, HostType, ParseFn};
pub use reference::{containers, int_domain, mutants, reference_host, Mutant, MAX_CONTAINER};
pub use value::{Color, Cost, Edge, Graph, PQueue, Value};

use std::collections::BTreeMap;
use std::time::Instant;

use crate::frontend::ast::{Mode, OpKind, Param};
use crate::modsys::{ExternalBinding, FlatModule, OpKey, Requirement, Status, PREDICATE};
use crate::semantics::{TArg, TBlock, TExpr, TExprKind, TStmt, TypedAxiom, TypedModule};
use crate::source::Span;

/// Why evaluation stopped early.
enum Stop {
    Fault(Fault),
    /// An `assert` evaluated to false.
    Assert(Span),
    /// A call made directly by an axiom body violated the callee's guard.
    Discard(String),
    Value(Value),
}

impl From<Fault> for Stop {
    fn from(f: Fault) -> Self {
        Stop::Fault(f)
    }
}

/// Result of running one axiom on one input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomOutcome {
    Pass,
    Fail { span: Span },
    Discard { op: String },
}

/// Checks the clock once per this many evaluation steps.
const CLOCK_EVERY: u32 = 1024;

pub struct Interpreter<'a> {
    prog: &'a TypedModule,
    host: &'a HostLibrary,
    guard_checks: bool,
    deadline: Option<Instant>,
    ticks: u32,
    /// True while statements of an axiom body itself are running.
    in_axiom: bool,
    frames: Vec<Frame>,
}

#[derive(Default)]
struct Frame {
    vars: Vec<(String, Value)>,
    marks: Vec<usize>,
}

impl Frame {
    fn get(&self, name: &str) -> Option<&Value> {
        self.vars
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
    }

    fn set(&mut self, name: &str, v: Value) {
        if let Some(slot) = self.vars.iter_mut().rev().find(|(n, _)| n == name) {
            slot.1 = v;
        } else {
            self.vars.push((name.to_string(), v));
        }
    }
}

impl<'a> Interpreter<'a> {
    pub fn new(prog: &'a TypedModule, host: &'a HostLibrary) -> Self {
        Interpreter {
            prog,
            host,
            guard_checks: true,
            deadline: None,
            ticks: 0,
            in_axiom: false,
            frames: Vec::new(),
        }
    }

    pub fn guard_checks(mut self, on: bool) -> Self {
        self.guard_checks = on;
        self
    }

    pub fn deadline(mut self, at: Option<Instant>) -> Self {
        self.deadline = at;
        self
    }

    pub fn program(&self) -> &'a TypedModule {
        self.prog
    }

    /// Calls `op`. Procedures take every parameter (`out` ones as
    /// [`Value::Unset`]) and return their upd/out values in order;
    /// functions and predicates return one value.
    pub fn call(&mut self, op: &OpKey, args: Vec<Value>) -> Result<Vec<Value>, Fault> {
        match self.invoke(op, args, false) {
            Ok(v) => Ok(v),
            Err(s) => Err(stop_to_fault(s)),
        }
    }

    /// Runs an axiom body on one input vector.
    pub fn run_axiom(&mut self, ax: &TypedAxiom, args: Vec<Value>) -> Result<AxiomOutcome, Fault> {
        let mut frame = Frame::default();
        for (p, a) in ax.params.iter().zip(args) {
            frame.vars.push((p.name.clone(), a));
        }
        self.frames.push(frame);
        let was = std::mem::replace(&mut self.in_axiom, true);
        let r = self.block(&ax.block);
        self.in_axiom = was;
        self.frames.pop();
        match r {
            Ok(()) => Ok(AxiomOutcome::Pass),
            Err(Stop::Assert(span)) => Ok(AxiomOutcome::Fail { span }),
            Err(Stop::Discard(op)) => Ok(AxiomOutcome::Discard { op }),
            Err(Stop::Fault(f)) => Err(f),
            Err(Stop::Value(_)) => Ok(AxiomOutcome::Pass),
        }
    }

    fn tick(&mut self) -> Result<(), Fault> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(CLOCK_EVERY) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(Fault::Timeout);
                }
            }
        }
        Ok(())
    }

    fn invoke(&mut self, key: &OpKey, args: Vec<Value>, direct: bool) -> Result<Vec<Value>, Stop> {
        self.tick()?;
        let op =
            self.prog.flat.ops.get(key).ok_or_else(|| {
                Fault::Host(format!("no operation {key} in {}", self.prog.flat.name))
            })?;
        if direct || self.guard_checks {
            if let Some(g) = self.prog.guards.get(key) {
                if !self.eval_guard(g, &op.sig.params, &args)? {
                    let name = op.sig.name.clone();
                    return Err(if direct {
                        Stop::Discard(name)
                    } else {
                        Stop::Fault(Fault::GuardViolation { op: name })
                    });
                }
            }
        }
        let was = std::mem::replace(&mut self.in_axiom, false);
        let r = match &op.status {
            Status::Defined(_) => match self.prog.bodies.get(key) {
                Some(body) => self.run_body(&body.params, &body.block, op.sig.kind, args),
                None => Err(Fault::Host(format!("body of {key} did not type-check")).into()),
            },
            Status::External(b) => self.call_host(b, args),
            Status::Required | Status::Declared => {
                Err(Fault::Host(format!("{} has no implementation", op.sig.signature())).into())
            }
        };
        self.in_axiom = was;
        r
    }

    fn call_host(&mut self, b: &ExternalBinding, args: Vec<Value>) -> Result<Vec<Value>, Stop> {
        let f = self
            .host
            .op(&b.host_path, &b.host_name)
            .cloned()
            .ok_or_else(|| Fault::Unbound {
                path: b.host_path.clone(),
                name: b.host_name.clone(),
            })?;
        let mut cb = Requirements {
            interp: self,
            reqs: &b.requirements,
        };
        f(&mut cb, args).map_err(Stop::Fault)
    }

    fn eval_guard(&mut self, g: &TExpr, params: &[Param], args: &[Value]) -> Result<bool, Stop> {
        let mut frame = Frame::default();
        for (p, a) in params.iter().zip(args) {
            frame.vars.push((p.name.clone(), a.clone()));
        }
        self.frames.push(frame);
        let was = std::mem::replace(&mut self.in_axiom, false);
        let r = self.expr(g);
        self.in_axiom = was;
        self.frames.pop();
        truth(r?)
    }

    fn run_body(
        &mut self,
        params: &[Param],
        block: &TBlock,
        kind: OpKind,
        args: Vec<Value>,
    ) -> Result<Vec<Value>, Stop> {
        if args.len() != params.len() {
            return Err(Fault::Host(format!(
                "expected {} arguments, got {}",
                params.len(),
                args.len()
            ))
            .into());
        }
        let mut frame = Frame::default();
        for (p, a) in params.iter().zip(args) {
            frame.vars.push((p.name.clone(), a));
        }
        self.frames.push(frame);
        let r = self.block(block);
        let frame = self.frames.pop().unwrap_or_default();
        match (r, kind) {
            (Err(Stop::Value(v)), OpKind::Function | OpKind::Predicate) => Ok(vec![v]),
            (Ok(()), OpKind::Procedure) => Ok(params
                .iter()
                .filter(|p| p.mode.is_mutable())
                .map(|p| frame.get(&p.name).cloned().unwrap_or(Value::Unset))
                .collect()),
            (Ok(()), _) => Err(Fault::Host("function ended without a value".into()).into()),
            (Err(Stop::Value(_)), OpKind::Procedure) => {
                Err(Fault::Host("procedure returned a value".into()).into())
            }
            (Err(e), _) => Err(e),
        }
    }

    fn frame(&mut self) -> &mut Frame {
        self.frames.last_mut().expect("a frame is active")
    }

    fn lookup(&self, name: &str) -> Result<Value, Fault> {
        match self.frames.last().and_then(|f| f.get(name)) {
            Some(Value::Unset) | None => {
                Err(Fault::Host(format!("`{name}` read before assignment")))
            }
            Some(v) => Ok(v.clone()),
        }
    }

    fn block(&mut self, b: &TBlock) -> Result<(), Stop> {
        let mark = self.frame().vars.len();
        self.frame().marks.push(mark);
        let r = b.stmts.iter().try_for_each(|s| self.stmt(s));
        let f = self.frame();
        let mark = f.marks.pop().unwrap_or(0);
        f.vars.truncate(mark);
        r
    }

    fn stmt(&mut self, s: &TStmt) -> Result<(), Stop> {
        self.tick()?;
        match s {
            TStmt::Var { name, init, .. } => {
                let v = match init {
                    Some(e) => self.expr(e)?,
                    None => Value::Unset,
                };
                self.frame().vars.push((name.clone(), v));
            }
            TStmt::Assign { name, value, .. } => {
                let v = self.expr(value)?;
                self.frame().set(name, v);
            }
            TStmt::Call { op, args, .. } => self.call_stmt(op, args)?,
            TStmt::If {
                cond,
                then_block,
                else_block,
                ..
            } => {
                let c = self.expr(cond)?;
                if truth(c)? {
                    self.block(then_block)?;
                } else if let Some(e) = else_block {
                    self.block(e)?;
                }
            }
            TStmt::Assert { expr, span } => {
                let c = self.expr(expr)?;
                if !truth(c)? {
                    return Err(Stop::Assert(*span));
                }
            }
            TStmt::Value { expr, .. } => {
                let v = self.expr(expr)?;
                return Err(Stop::Value(v));
            }
            TStmt::Block(b) => self.block(b)?,
        }
        Ok(())
    }

    fn call_stmt(&mut self, op: &OpKey, args: &[TArg]) -> Result<(), Stop> {
        let mut vals = Vec::with_capacity(args.len());
        for a in args {
            vals.push(match a.mode {
                Mode::Obs => self.expr(&a.expr)?,
                Mode::Upd => self.expr(&a.expr)?,
                Mode::Out => Value::Unset,
            });
        }
        let direct = self.in_axiom;
        let results = self.invoke(op, vals, direct)?;
        let targets: Vec<&str> = args.iter().filter_map(TArg::var).collect();
        if results.len() != targets.len() {
            return Err(Fault::Host(format!(
                "{op} returned {} values for {} upd/out arguments",
                results.len(),
                targets.len()
            ))
            .into());
        }
        for (t, v) in targets.into_iter().zip(results) {
            self.frame().set(t, v);
        }
        Ok(())
    }

    fn expr(&mut self, e: &TExpr) -> Result<Value, Stop> {
        match &e.kind {
            TExprKind::Var(name) => Ok(self.lookup(name)?),
            TExprKind::Call { op, args } => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.expr(a)?);
                }
                let direct = self.in_axiom;
                let mut r = self.invoke(op, vals, direct)?;
                if r.len() != 1 {
                    return Err(Fault::Host(format!("{op} returned {} values", r.len())).into());
                }
                Ok(r.remove(0))
            }
            TExprKind::Eq(a, b) => {
                let x = self.expr(a)?;
                let y = self.expr(b)?;
                Ok(Value::Bool(x == y))
            }
            TExprKind::Not(a) => Ok(Value::Bool(!truth(self.expr(a)?)?)),
            TExprKind::And(a, b) => {
                if !truth(self.expr(a)?)? {
                    return Ok(Value::Bool(false));
                }
                Ok(Value::Bool(truth(self.expr(b)?)?))
            }
        }
    }
}

fn truth(v: Value) -> Result<bool, Stop> {
    v.as_bool()
        .ok_or_else(|| Stop::Fault(Fault::Host(format!("expected a predicate value, got {v}"))))
}

fn stop_to_fault(s: Stop) -> Fault {
    match s {
        Stop::Fault(f) => f,
        Stop::Assert(_) => Fault::Host("assert outside an axiom".into()),
        Stop::Discard(op) => Fault::GuardViolation { op },
        Stop::Value(_) => Fault::Host("stray value".into()),
    }
}

struct Requirements<'i, 'a> {
    interp: &'i mut Interpreter<'a>,
    reqs: &'i BTreeMap<String, Requirement>,
}

impl Callbacks for Requirements<'_, '_> {
    fn call_required(&mut self, local: &str, args: Vec<Value>) -> Result<Vec<Value>, Fault> {
        match self.reqs.get(local) {
            Some(Requirement::Op(key)) => {
                let key = key.clone();
                self.interp.invoke(&key, args, false).map_err(stop_to_fault)
            }
            _ => Err(Fault::Host(format!(
                "host instance has no required operation `{local}`"
            ))),
        }
    }
}

/// The host binding behind a type of `scope`, if it has one.
pub fn type_binding<'m>(scope: &'m FlatModule, ty: &str) -> Option<&'m ExternalBinding> {
    scope.types.get(ty).and_then(|t| t.status.binding())
}

/// Why a test domain could not be built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainError {
    /// The type has no host binding or the host registers no generator.
    MissingGenerator(String),
}

/// The finite test domain of `ty` in `scope`, at most `limit` values.
pub fn type_domain(
    scope: &FlatModule,
    host: &HostLibrary,
    ty: &str,
    limit: usize,
) -> Result<Vec<Value>, DomainError> {
    domain_rec(scope, host, ty, limit, &mut Vec::new())
}

fn domain_rec(
    scope: &FlatModule,
    host: &HostLibrary,
    ty: &str,
    limit: usize,
    stack: &mut Vec<String>,
) -> Result<Vec<Value>, DomainError> {
    if ty == PREDICATE {
        return Ok([false, true]
            .into_iter()
            .map(Value::Bool)
            .take(limit)
            .collect());
    }
    let missing = || DomainError::MissingGenerator(ty.to_string());
    if stack.iter().any(|t| t == ty) {
        return Err(missing());
    }
    let b = type_binding(scope, ty).ok_or_else(missing)?;
    let enumerate = host
        .host_type(&b.host_path, &b.host_name)
        .and_then(|t| t.enumerate)
        .ok_or_else(missing)?;
    stack.push(ty.to_string());
    let mut params = BTreeMap::new();
    for (local, req) in &b.requirements {
        if let Requirement::Type(t) = req {
            // A parameter without a generator only matters if used.
            if let Ok(d) = domain_rec(scope, host, t, usize::MAX, stack) {
                params.insert(local.clone(), d);
            }
        }
    }
    stack.pop();
    Ok(enumerate(limit, &params))
}

/// Parses `text` as a value of `ty` with the host's parse hook.
pub fn parse_value(
    scope: &FlatModule,
    host: &HostLibrary,
    ty: &str,
    text: &str,
) -> Result<Value, String> {
    if ty == PREDICATE {
        return match text.trim() {
            "true" => Ok(Value::Bool(true)),
            "false" => Ok(Value::Bool(false)),
            t => Err(format!("`{t}` is not true or false")),
        };
    }
    let b = type_binding(scope, ty).ok_or_else(|| format!("type {ty} has no host binding"))?;
    let parse = host
        .host_type(&b.host_path, &b.host_name)
        .and_then(|t| t.parse)
        .ok_or_else(|| {
            format!(
                "host type {}.{} cannot be parsed from text",
                b.host_path, b.host_name
            )
        })?;
    parse(text)
}

/// Whether `ty` has a registered host type, and hence equality and copy.
pub fn has_equality(scope: &FlatModule, host: &HostLibrary, ty: &str) -> bool {
    ty == PREDICATE
        || type_binding(scope, ty)
            .is_some_and(|b| host.host_type(&b.host_path, &b.host_name).is_some())
}

#[cfg(test)]
mod tests;
