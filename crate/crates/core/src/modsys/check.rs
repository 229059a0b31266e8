//! Program completeness, the closed-scope property and satisfaction checks.

use std::collections::BTreeSet;

use super::env::Flattener;
use super::flat::*;
use super::renaming::{block_names, expr_names};
use crate::diag::{DiagKind, Diagnostic, Diagnostics};
use crate::frontend::ast::*;
use crate::source::Span;

/// A type or operation name mentioned in a module but not declared in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unresolved {
    pub name: String,
    pub is_type: bool,
    /// The element that mentions it.
    pub referrer: String,
    pub span: Option<Span>,
}

/// Names referenced by signatures, bodies, guards and axioms that do not
/// resolve in `m`, each reported once, at its first referrer.
pub fn unresolved_names(m: &FlatModule) -> Vec<Unresolved> {
    let mut out: Vec<Unresolved> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut report = |types: BTreeSet<String>, ops: BTreeSet<String>, referrer: String, span| {
        for t in types {
            if t != PREDICATE && !m.types.contains_key(&t) && seen.insert((true, t.clone())) {
                out.push(Unresolved {
                    name: t,
                    is_type: true,
                    referrer: referrer.clone(),
                    span,
                });
            }
        }
        for o in ops {
            if !m.has_op_named(&o) && seen.insert((false, o.clone())) {
                out.push(Unresolved {
                    name: o,
                    is_type: false,
                    referrer: referrer.clone(),
                    span,
                });
            }
        }
    };
    for op in m.ops.values() {
        let (mut types, mut ops) = (BTreeSet::new(), BTreeSet::new());
        types.extend(op.sig.params.iter().map(|p| p.ty.clone()));
        types.extend(op.sig.ret.clone());
        if let Some(g) = &op.sig.guard {
            expr_names(g, &mut types, &mut ops);
        }
        if let Some(b) = op.status.body() {
            block_names(b, &mut types, &mut ops);
        }
        report(types, ops, op.sig.signature(), op.span);
    }
    for ax in &m.axioms {
        let (mut types, mut ops) = (BTreeSet::new(), BTreeSet::new());
        types.extend(ax.params.iter().map(|p| p.ty.clone()));
        block_names(&ax.body, &mut types, &mut ops);
        report(types, ops, format!("axiom {}", ax.name), ax.span);
    }
    out
}

/// Empty iff every type and operation of the program is concrete and every
/// referenced name resolves.
pub fn check_program_complete(p: &FlatModule) -> Diagnostics {
    let mut d = Diagnostics::new();
    for t in p.types.values() {
        if !t.status.is_concrete() {
            d.push(
                Diagnostic::error(
                    DiagKind::UnfulfilledRequirement,
                    format!("type {} is not implemented in program {}", t.name, p.name),
                )
                .at_opt(t.span),
            );
        }
    }
    for op in p.ops.values() {
        match op.status {
            Status::Required => d.push(
                Diagnostic::error(
                    DiagKind::UnfulfilledRequirement,
                    format!(
                        "{} is not implemented in program {}",
                        op.sig.signature(),
                        p.name
                    ),
                )
                .at_opt(op.span),
            ),
            Status::Declared => d.push(
                Diagnostic::error(
                    DiagKind::MissingBody,
                    format!("{} has no body or external binding", op.sig.signature()),
                )
                .at_opt(op.span),
            ),
            _ => {}
        }
    }
    for u in unresolved_names(p) {
        let what = if u.is_type { "type" } else { "operation" };
        d.push(
            Diagnostic::error(
                DiagKind::UnfulfilledRequirement,
                format!(
                    "{what} {} used by {} is not available in program {}",
                    u.name, u.referrer, p.name
                ),
            )
            .at_opt(u.span),
        );
    }
    d
}

/// Checks `lhs models rhs[r]` syntactically: every type and operation of the
/// renamed rhs must exist identically in the lhs. Axioms are not evaluated.
pub fn check_satisfaction(s: &AstModule, fl: &mut Flattener<'_>) -> Diagnostics {
    let mut d = Diagnostics::new();
    let ModuleBody::Satisfaction { lhs, rhs } = &s.body else {
        d.push(
            Diagnostic::error(
                DiagKind::NotAModuleExpression,
                format!("`{}` is not a satisfaction", s.name),
            )
            .at(s.span),
        );
        return d;
    };
    if !lhs.renaming.is_empty() {
        d.push(
            Diagnostic::error(
                DiagKind::NotAModuleExpression,
                "a renaming is only supported on the right of `models`",
            )
            .at(lhs.span),
        );
        return d;
    }
    let l = fl.flatten(&lhs.name).map_err(|e| {
        let mut e = e.to_diagnostic();
        e.span = e.span.or(Some(lhs.span));
        e
    });
    let r = fl.flatten_expr(rhs).map_err(|e| e.to_diagnostic());
    let (l, r) = match (l, r) {
        (Ok(l), Ok(r)) => (l, r),
        (l, r) => {
            d.extend(l.err());
            d.extend(r.err());
            return d;
        }
    };
    // A missing type is folded into the report of each missing operation
    // mentioning it, so that one absent use yields one kind of diagnostic.
    let missing_types: Vec<&String> = r
        .types
        .keys()
        .filter(|t| !l.types.contains_key(*t))
        .collect();
    let mut covered = std::collections::BTreeSet::new();
    for (key, rop) in &r.ops {
        if l.ops.contains_key(key) {
            continue;
        }
        let mentioned: Vec<&str> = missing_types
            .iter()
            .filter(|t| key.params.contains(t) || key.ret.as_ref() == Some(**t))
            .map(|t| t.as_str())
            .collect();
        covered.extend(mentioned.iter().copied());
        let also = if mentioned.is_empty() {
            String::new()
        } else {
            format!(" (nor type {})", mentioned.join(", "))
        };
        d.push(
            Diagnostic::error(
                DiagKind::MissingOperation,
                format!(
                    "{} has no operation `{}` required by {}{also}",
                    l.name,
                    rop.sig.signature(),
                    rhs
                ),
            )
            .at(s.span),
        );
    }
    for t in missing_types
        .into_iter()
        .filter(|t| !covered.contains(t.as_str()))
    {
        d.push(
            Diagnostic::error(
                DiagKind::MissingType,
                format!("{} has no type {t} required by {}", l.name, rhs),
            )
            .at(s.span),
        );
    }
    for (key, rop) in &r.ops {
        let Some(lop) = l.ops.get(key) else { continue };
        if lop.sig.kind != rop.sig.kind || lop.sig.modes() != rop.sig.modes() {
            d.push(
                Diagnostic::error(
                    DiagKind::SignatureMismatch,
                    format!(
                        "{} provides {} where {} is required",
                        l.name,
                        lop.sig.signature(),
                        rop.sig.signature()
                    ),
                )
                .at(s.span),
            );
        } else if rop.sig.guard.is_some() && !guards_alpha_equal(&lop.sig, &rop.sig) {
            d.push(
                Diagnostic::error(
                    DiagKind::SignatureMismatch,
                    format!(
                        "guard of {} in {} differs from the required `{}`",
                        lop.sig.signature(),
                        l.name,
                        rop.sig
                            .guard
                            .as_ref()
                            .map(ToString::to_string)
                            .unwrap_or_default()
                    ),
                )
                .at(s.span),
            );
        }
    }
    d
}
