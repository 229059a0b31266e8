//! Axioms as executable test oracles.
//!
//! A satisfaction `P models C[r]` yields one oracle per axiom of `C[r]`,
//! type-checked in the scope of program `P`. The runner feeds each oracle
//! inputs drawn from the host's finite test domains and counts passes,
//! failures and discards.

mod report;
mod rng;

pub use report::{OracleReport, OracleResult, Verdict};
pub use rng::{fnv1a64, SplitMix64};

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crate::diag::{DiagKind, Diagnostic, Diagnostics};
use crate::frontend::ast::{ModuleBody, ModuleKind, Param};
use crate::interp::{
    has_equality, type_domain, AxiomOutcome, DomainError, Fault, HostLibrary, Interpreter, Value,
};
use crate::modsys::{check_program_complete, check_satisfaction, Flattener, ModError};
use crate::semantics::{
    check_axiom, check_scope, TBlock, TExpr, TExprKind, TStmt, TypedAxiom, TypedModule,
};
use crate::source::SourceMap;

/// One axiom of a satisfaction's concept, ready to run against the program.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub name: String,
    /// The satisfaction it was generated from.
    pub satisfaction: String,
    pub params: Vec<Param>,
    pub axiom: TypedAxiom,
}

/// A satisfaction's program together with its oracles.
#[derive(Debug, Clone)]
pub struct OracleSuite {
    pub satisfaction: String,
    pub program: TypedModule,
    pub oracles: Vec<Oracle>,
}

fn diag(kind: DiagKind, msg: impl Into<String>) -> Diagnostics {
    let mut d = Diagnostics::new();
    d.push(Diagnostic::error(kind, msg));
    d
}

/// Builds the oracles of satisfaction `name`.
pub fn generate_oracles(name: &str, fl: &mut Flattener<'_>) -> Result<OracleSuite, Diagnostics> {
    let env = fl.env();
    let Some(s) = env.get(name) else {
        return Err(diag(
            DiagKind::UnknownModule,
            format!("unknown satisfaction `{name}`"),
        ));
    };
    let ModuleBody::Satisfaction { lhs, rhs } = &s.body else {
        return Err(diag(
            DiagKind::NotAModuleExpression,
            format!("`{name}` is a {}, not a satisfaction", s.kind),
        ));
    };
    let sat = check_satisfaction(s, fl);
    if sat.has_errors() {
        let mut d = diag(
            DiagKind::SatisfactionNotSyntacticallyValid,
            format!("satisfaction {name} does not hold syntactically"),
        );
        d.extend(sat);
        return Err(d);
    }
    let program = fl
        .flatten(&lhs.name)
        .map_err(|e| Diagnostics::from_iter([e.to_diagnostic()]))?;
    if program.kind != ModuleKind::Program {
        return Err(diag(
            DiagKind::TargetNotExecutable,
            format!("{} is a {}, not a program", program.name, program.kind),
        ));
    }
    let complete = check_program_complete(&program);
    if complete.has_errors() {
        let mut d = diag(
            DiagKind::TargetNotExecutable,
            format!("program {} is not complete", program.name),
        );
        d.extend(complete);
        return Err(d);
    }
    let (typed, checked) = check_scope(&program);
    if checked.has_errors() {
        let mut d = diag(
            DiagKind::TargetNotExecutable,
            format!("program {} does not type-check", program.name),
        );
        d.extend(checked);
        return Err(d);
    }
    let concept = fl
        .flatten_expr(rhs)
        .map_err(|e| Diagnostics::from_iter([e.to_diagnostic()]))?;
    let mut oracles = Vec::new();
    let mut errors = Diagnostics::new();
    for ax in &concept.axioms {
        match check_axiom(ax, &typed.flat) {
            Ok(axiom) => oracles.push(Oracle {
                name: ax.name.clone(),
                satisfaction: name.to_string(),
                params: ax.params.clone(),
                axiom,
            }),
            Err(d) => errors.extend(d),
        }
    }
    if errors.has_errors() {
        return Err(errors);
    }
    Ok(OracleSuite {
        satisfaction: name.to_string(),
        program: typed,
        oracles,
    })
}

/// Axiom names and parameter types of a flattened module, in flatten order.
pub fn list_axioms(
    module: &str,
    fl: &mut Flattener<'_>,
) -> Result<Vec<(String, Vec<String>)>, ModError> {
    let m = fl.flatten(module)?;
    Ok(m.axioms
        .iter()
        .map(|a| {
            (
                a.name.clone(),
                a.params.iter().map(|p| p.ty.clone()).collect(),
            )
        })
        .collect())
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Inputs per oracle.
    pub budget: usize,
    pub seed: u64,
    /// Above this share of discarded inputs an oracle is inconclusive.
    pub max_discard_ratio: f64,
    pub timeout: Duration,
    pub guard_checks: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            budget: 1000,
            seed: 0,
            max_discard_ratio: 0.9,
            timeout: Duration::from_secs(5),
            guard_checks: true,
        }
    }
}

/// Types compared with `==` anywhere in `b`.
pub fn equality_types(b: &TBlock, out: &mut BTreeSet<String>) {
    fn expr(e: &TExpr, out: &mut BTreeSet<String>) {
        match &e.kind {
            TExprKind::Var(_) => {}
            TExprKind::Call { args, .. } => args.iter().for_each(|a| expr(a, out)),
            TExprKind::Eq(a, b) => {
                out.insert(a.ty.clone());
                expr(a, out);
                expr(b, out);
            }
            TExprKind::Not(a) => expr(a, out),
            TExprKind::And(a, b) => {
                expr(a, out);
                expr(b, out);
            }
        }
    }
    for s in &b.stmts {
        match s {
            TStmt::Var { init, .. } => init.iter().for_each(|e| expr(e, out)),
            TStmt::Assign { value, .. } => expr(value, out),
            TStmt::Call { args, .. } => args.iter().for_each(|a| expr(&a.expr, out)),
            TStmt::If {
                cond,
                then_block,
                else_block,
                ..
            } => {
                expr(cond, out);
                equality_types(then_block, out);
                if let Some(e) = else_block {
                    equality_types(e, out);
                }
            }
            TStmt::Assert { expr: e, .. } | TStmt::Value { expr: e, .. } => expr(e, out),
            TStmt::Block(b) => equality_types(b, out),
        }
    }
}

/// Every hook the oracles need from the host: equality for compared types
/// and a generator for each parameter type.
pub fn check_hooks(suite: &OracleSuite, host: &HostLibrary) -> Diagnostics {
    let scope = &suite.program.flat;
    let mut d = Diagnostics::new();
    let mut eq = BTreeSet::new();
    let mut params = BTreeSet::new();
    for o in &suite.oracles {
        equality_types(&o.axiom.block, &mut eq);
        params.extend(o.params.iter().map(|p| p.ty.clone()));
    }
    for t in eq {
        if !has_equality(scope, host, &t) {
            d.push(Diagnostic::error(
                DiagKind::MissingEqualityHook,
                format!("type {t} is compared with `==` but the host has no equality for it"),
            ));
        }
    }
    for t in params {
        if let Err(DomainError::MissingGenerator(t)) = type_domain(scope, host, &t, 1) {
            d.push(Diagnostic::error(
                DiagKind::MissingGenerator,
                format!("no test generator for type {t}"),
            ));
        }
    }
    d
}

/// The input vectors of an oracle: the full product of its parameter
/// domains when that fits the budget, otherwise `budget` seeded draws.
pub fn inputs(domains: &[Vec<Value>], budget: usize, seed: u64, oracle: &str) -> Vec<Vec<Value>> {
    let size = domains
        .iter()
        .try_fold(1usize, |acc, d| acc.checked_mul(d.len()))
        .unwrap_or(usize::MAX);
    if size <= budget {
        let mut out = vec![Vec::new()];
        for d in domains {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    d.iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v.clone());
                        p
                    })
                })
                .collect();
        }
        return out;
    }
    let mut rng = SplitMix64::new(seed ^ fnv1a64(oracle.as_bytes()));
    (0..budget)
        .map(|_| {
            domains
                .iter()
                .map(|d| d[(rng.next_u64() % d.len() as u64) as usize].clone())
                .collect()
        })
        .collect()
}

/// Runs every oracle of `suite` against the program on `host`.
pub fn run_oracles(
    suite: &OracleSuite,
    host: &HostLibrary,
    cfg: &RunConfig,
    sources: &SourceMap,
) -> Result<OracleReport, Diagnostics> {
    let hooks = check_hooks(suite, host);
    if hooks.has_errors() {
        return Err(hooks);
    }
    let scope = &suite.program.flat;
    let mut results = Vec::new();
    for o in &suite.oracles {
        let domains: Vec<Vec<Value>> = o
            .params
            .iter()
            .map(|p| type_domain(scope, host, &p.ty, usize::MAX))
            .collect::<Result<_, _>>()
            .map_err(|DomainError::MissingGenerator(t)| {
                Diagnostics::from_iter([Diagnostic::error(
                    DiagKind::MissingGenerator,
                    format!("no test generator for type {t}"),
                )])
            })?;
        results.push(run_one(o, suite, host, cfg, sources, &domains));
    }
    Ok(OracleReport {
        budget: cfg.budget,
        seed: cfg.seed,
        results,
    })
}

fn run_one(
    o: &Oracle,
    suite: &OracleSuite,
    host: &HostLibrary,
    cfg: &RunConfig,
    sources: &SourceMap,
    domains: &[Vec<Value>],
) -> OracleResult {
    let mut r = OracleResult::new(o);
    let deadline = Instant::now() + cfg.timeout;
    let mut interp = Interpreter::new(&suite.program, host)
        .guard_checks(cfg.guard_checks)
        .deadline(Some(deadline));
    let show = |input: &[Value]| -> Vec<String> {
        o.params
            .iter()
            .zip(input)
            .map(|(p, v)| format!("{} = {v}", p.name))
            .collect()
    };
    for input in inputs(domains, cfg.budget, cfg.seed, &o.name) {
        if Instant::now() >= deadline {
            r.verdict = Verdict::Timeout;
            r.message = Some(format!("exceeded {:?}", cfg.timeout));
            return r;
        }
        match interp.run_axiom(&o.axiom, input.clone()) {
            Ok(AxiomOutcome::Pass) => r.pass += 1,
            Ok(AxiomOutcome::Discard { .. }) => r.discard += 1,
            Ok(AxiomOutcome::Fail { span }) => {
                r.fail += 1;
                if r.witness.is_none() {
                    r.witness = Some(show(&input));
                    r.failed_assert = Some(sources.locate(span));
                }
            }
            Err(Fault::GuardViolation { op }) => {
                r.fail += 1;
                if r.witness.is_none() {
                    r.witness = Some(show(&input));
                    r.message = Some(format!("guard of `{op}` violated inside the program"));
                }
            }
            Err(Fault::Timeout) => {
                r.verdict = Verdict::Timeout;
                r.witness = Some(show(&input));
                r.message = Some(format!("exceeded {:?}", cfg.timeout));
                return r;
            }
            Err(f) => {
                r.verdict = Verdict::Fault;
                r.witness = Some(show(&input));
                r.message = Some(f.to_string());
                return r;
            }
        }
    }
    r.settle(cfg.max_discard_ratio);
    r
}

#[cfg(test)]
mod tests;
