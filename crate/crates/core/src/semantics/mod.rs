//! Modular type checking of flattened scopes.
//!
//! Every body is checked against the declarations visible in its scope and
//! nothing else. Calls resolve to one monomorphic operation, with `: T`
//! annotations or the expected type picking between overloads that differ
//! only in return type. The same pass enforces parameter modes and definite
//! assignment.

mod checker;
mod typed;

pub use typed::*;

use std::collections::BTreeMap;

use checker::{BodyChecker, Ctx};

use crate::diag::{DiagKind, Diagnostic, Diagnostics};
use crate::frontend::ast::{Block, OpKind};
use crate::modsys::{FlatAxiom, FlatModule, OpSig, PREDICATE};

/// Picks the single operation `name(arg_types)` in `scope`, using
/// `expected_ret` to break ties between return-type overloads.
pub fn resolve_call(
    name: &str,
    arg_types: &[&str],
    expected_ret: Option<&str>,
    scope: &FlatModule,
) -> Result<OpSig, Diagnostic> {
    let named: Vec<&OpSig> = scope.ops_named(name).map(|o| &o.sig).collect();
    if named.is_empty() {
        return Err(Diagnostic::error(
            DiagKind::NoSuchOperation,
            format!("no operation named `{name}`"),
        ));
    }
    let arity: Vec<&OpSig> = named
        .iter()
        .copied()
        .filter(|s| s.params.len() == arg_types.len())
        .collect();
    if arity.is_empty() {
        return Err(Diagnostic::error(
            DiagKind::ArityMismatch,
            format!("`{name}` takes no {} argument(s)", arg_types.len()),
        ));
    }
    let typed: Vec<&OpSig> = arity
        .into_iter()
        .filter(|s| s.params.iter().zip(arg_types).all(|(p, t)| p.ty == *t))
        .collect();
    let chosen: Vec<&OpSig> = match expected_ret {
        Some(r) => typed
            .iter()
            .copied()
            .filter(|s| s.ret.as_deref() == Some(r))
            .collect(),
        None => typed,
    };
    match chosen.as_slice() {
        [] => Err(Diagnostic::error(
            DiagKind::NoSuchOperation,
            format!(
                "no operation {name}({}){}",
                arg_types.join(", "),
                expected_ret.map(|r| format!(": {r}")).unwrap_or_default()
            ),
        )),
        [one] => Ok((*one).clone()),
        many => {
            let sigs: Vec<String> = many.iter().map(|s| s.signature()).collect();
            Err(Diagnostic::error(
                DiagKind::AmbiguousReturnOverload,
                format!("ambiguous call to `{name}`: {}", sigs.join(", ")),
            ))
        }
    }
}

fn ctx_for(op: &OpSig) -> Ctx {
    match op.kind {
        OpKind::Procedure => Ctx::Procedure,
        OpKind::Function | OpKind::Predicate => {
            Ctx::Function(op.ret.clone().unwrap_or_else(|| PREDICATE.to_string()))
        }
    }
}

/// Type-checks `body` as the body of `op`, including the mode discipline.
pub fn check_body(op: &OpSig, body: &Block, scope: &FlatModule) -> Result<TypedBody, Diagnostics> {
    let mut c = BodyChecker::new(scope, ctx_for(op), &op.params);
    for d in signature_types(op, &c) {
        c.diags.push(d);
    }
    let block = c.body(body, body.span);
    if c.diags.has_errors() {
        Err(c.diags)
    } else {
        Ok(TypedBody {
            params: op.params.clone(),
            block,
        })
    }
}

/// Mode and definite-assignment diagnostics of a procedure body.
pub fn check_modes(proc: &OpSig, body: &Block, scope: &FlatModule) -> Diagnostics {
    let mut c = BodyChecker::new(scope, ctx_for(proc), &proc.params);
    c.body(body, body.span);
    c.diags
        .into_iter()
        .filter(|d| {
            matches!(
                d.kind,
                DiagKind::WriteToObs
                    | DiagKind::ReadBeforeAssign
                    | DiagKind::OutNotAssigned
                    | DiagKind::NotAssignable
                    | DiagKind::AliasedArgument
            )
        })
        .collect()
}

/// Diagnostics for the guard of `op`; empty when it has none.
pub fn check_guard(op: &OpSig, scope: &FlatModule) -> Diagnostics {
    guard_inner(op, scope).1
}

fn guard_inner(op: &OpSig, scope: &FlatModule) -> (Option<TExpr>, Diagnostics) {
    let Some(g) = &op.guard else {
        return (None, Diagnostics::new());
    };
    let mut c = BodyChecker::new(scope, Ctx::Guard, &op.params);
    let t = c.guard(g);
    (t, c.diags)
}

fn signature_types(op: &OpSig, c: &BodyChecker<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if let Some(r) = &op.ret {
        if !c.type_exists(r) {
            out.push(Diagnostic::error(
                DiagKind::UnknownType,
                format!("unknown return type `{r}` of {}", op.signature()),
            ));
        }
    }
    out
}

/// Type-checks an axiom body in `scope`, which need not be the scope the
/// axiom was declared in.
pub fn check_axiom(ax: &FlatAxiom, scope: &FlatModule) -> Result<TypedAxiom, Diagnostics> {
    let (typed, d) = axiom_inner(ax, scope);
    if d.has_errors() {
        Err(d)
    } else {
        Ok(typed)
    }
}

fn axiom_inner(ax: &FlatAxiom, scope: &FlatModule) -> (TypedAxiom, Diagnostics) {
    let mut c = BodyChecker::new(scope, Ctx::Axiom, &ax.params);
    let block = c.body(&ax.body, ax.span.unwrap_or(ax.body.span));
    let typed = TypedAxiom {
        name: ax.name.clone(),
        params: ax.params.clone(),
        block,
        span: ax.span,
    };
    (typed, c.diags)
}

/// Checks every signature, guard, body and axiom of a flattened scope.
/// Elements that check cleanly are returned in typed form.
pub fn check_scope(scope: &FlatModule) -> (TypedModule, Diagnostics) {
    let mut diags = Diagnostics::new();
    let mut bodies = BTreeMap::new();
    let mut guards = BTreeMap::new();
    let mut axioms = Vec::new();

    for (key, op) in &scope.ops {
        let mut c = BodyChecker::new(scope, ctx_for(&op.sig), &op.sig.params);
        for d in signature_types(&op.sig, &c) {
            diags.push(d.at_opt(op.span));
        }
        if let Some(b) = op.status.body() {
            let block = c.body(b, op.span.unwrap_or(b.span));
            let failed = c.diags.has_errors();
            diags.extend(c.diags);
            if !failed {
                bodies.insert(
                    key.clone(),
                    TypedBody {
                        params: op.sig.params.clone(),
                        block,
                    },
                );
            }
        } else {
            diags.extend(c.diags);
        }
        let (g, gd) = guard_inner(&op.sig, scope);
        let clean = !gd.has_errors();
        diags.extend(gd);
        if let (Some(g), true) = (g, clean) {
            guards.insert(key.clone(), g);
        }
    }

    for ax in &scope.axioms {
        let (typed, d) = axiom_inner(ax, scope);
        let failed = d.has_errors();
        diags.extend(d);
        if !failed {
            axioms.push(typed);
        }
    }

    let typed = TypedModule {
        flat: scope.clone(),
        bodies,
        guards,
        axioms,
    };
    (typed, dedup(diags))
}

/// Drops repeated diagnostics, keeping first occurrences in order.
pub fn dedup(d: Diagnostics) -> Diagnostics {
    let mut seen = Vec::new();
    d.into_iter()
        .filter(|x| {
            let key = (x.kind, x.message.clone(), x.span);
            if seen.contains(&key) {
                false
            } else {
                seen.push(key);
                true
            }
        })
        .collect()
}

#[cfg(test)]
mod tests;
