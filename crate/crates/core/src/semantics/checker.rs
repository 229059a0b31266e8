//! The body checker: types expressions, resolves calls and tracks definite
//! assignment in one forward pass. Bodies have no loops, so the flow
//! analysis needs no fixpoint.

use crate::diag::{DiagKind, Diagnostic, Diagnostics};
use crate::frontend::ast::*;
use crate::modsys::{FlatModule, FlatOp, OpKey, PREDICATE};
use crate::source::Span;

use super::typed::*;

/// What kind of body is being checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Ctx {
    /// Functions and predicates; the declared return type.
    Function(String),
    Procedure,
    Axiom,
    Guard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Origin {
    Param(Mode),
    Local,
}

#[derive(Debug, Clone)]
struct VarInfo {
    name: String,
    /// Empty when the declaration failed to type; uses stay silent.
    ty: String,
    origin: Origin,
    assigned: bool,
    used: bool,
    span: Span,
}

/// Result of typing an expression without a usable expectation.
enum Synth {
    Known(TExpr),
    /// A call whose overloads differ only in return type.
    Ambiguous(Vec<OpKey>),
    Failed,
}

pub(crate) struct BodyChecker<'s> {
    scope: &'s FlatModule,
    ctx: Ctx,
    vars: Vec<VarInfo>,
    marks: Vec<usize>,
    pub(crate) diags: Diagnostics,
}

impl<'s> BodyChecker<'s> {
    pub(crate) fn new(scope: &'s FlatModule, ctx: Ctx, params: &[Param]) -> Self {
        let mut c = BodyChecker {
            scope,
            ctx,
            vars: Vec::new(),
            marks: Vec::new(),
            diags: Diagnostics::new(),
        };
        for p in params {
            if c.lookup(&p.name).is_some() {
                c.err(
                    DiagKind::DuplicateVariable,
                    format!("parameter `{}` is declared twice", p.name),
                    p.span,
                );
                continue;
            }
            let ty = if c.type_exists(&p.ty) {
                p.ty.clone()
            } else {
                c.err(
                    DiagKind::UnknownType,
                    format!("unknown type `{}`", p.ty),
                    p.span,
                );
                String::new()
            };
            c.vars.push(VarInfo {
                name: p.name.clone(),
                ty,
                origin: Origin::Param(p.mode),
                assigned: p.mode != Mode::Out,
                used: true,
                span: p.span,
            });
        }
        c
    }

    fn err(&mut self, kind: DiagKind, msg: impl Into<String>, span: Span) {
        self.diags.push(Diagnostic::error(kind, msg).at(span));
    }

    fn warn(&mut self, kind: DiagKind, msg: impl Into<String>, span: Span) {
        self.diags.push(Diagnostic::warning(kind, msg).at(span));
    }

    fn error_count(&self) -> usize {
        self.diags.iter().filter(|d| d.is_error()).count()
    }

    pub(crate) fn type_exists(&self, ty: &str) -> bool {
        ty == PREDICATE || self.scope.types.contains_key(ty)
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        self.vars.iter().rposition(|v| v.name == name)
    }

    // ---- scopes and flow state ----

    fn push_scope(&mut self) {
        self.marks.push(self.vars.len());
    }

    fn pop_scope(&mut self) {
        let mark = self.marks.pop().unwrap_or(0);
        let dropped: Vec<VarInfo> = self.vars.drain(mark..).collect();
        for v in dropped {
            if v.origin == Origin::Local && !v.used {
                self.warn(
                    DiagKind::UnusedVariable,
                    format!("variable `{}` is never read", v.name),
                    v.span,
                );
            }
        }
    }

    fn snapshot(&self) -> Vec<bool> {
        self.vars.iter().map(|v| v.assigned).collect()
    }

    fn restore(&mut self, s: &[bool]) {
        for (v, a) in self.vars.iter_mut().zip(s) {
            v.assigned = *a;
        }
    }

    // ---- entry points ----

    /// Checks a whole body; returns the typed block.
    pub(crate) fn body(&mut self, block: &Block, decl_span: Span) -> TBlock {
        self.push_scope();
        let (tb, terminates) = self.stmts(&block.stmts);
        match self.ctx.clone() {
            Ctx::Function(_) if !terminates => self.err(
                DiagKind::MissingValueOnPath,
                "not every path of this function ends in `value`",
                decl_span,
            ),
            Ctx::Procedure => {
                let unassigned: Vec<String> = self
                    .vars
                    .iter()
                    .filter(|v| v.origin == Origin::Param(Mode::Out) && !v.assigned)
                    .map(|v| v.name.clone())
                    .collect();
                for name in unassigned {
                    self.err(
                        DiagKind::OutNotAssigned,
                        format!("out parameter `{name}` is not assigned on every path"),
                        decl_span,
                    );
                }
            }
            _ => {}
        }
        self.pop_scope();
        tb
    }

    /// Checks a guard expression over the parameters.
    pub(crate) fn guard(&mut self, g: &AstExpr) -> Option<TExpr> {
        let before = self.error_count();
        let t = self.expr(g, None);
        let t = self.require_known(t, g.span)?;
        if t.ty != PREDICATE {
            if self.error_count() == before {
                self.err(
                    DiagKind::GuardNotPredicate,
                    format!("guard has type {}, not {PREDICATE}", t.ty),
                    g.span,
                );
            }
            return None;
        }
        Some(t)
    }

    // ---- statements ----

    fn stmts(&mut self, stmts: &[AstStmt]) -> (TBlock, bool) {
        let mut out = TBlock::default();
        let mut terminated = false;
        let mut warned = false;
        for s in stmts {
            if terminated && !warned {
                self.warn(
                    DiagKind::UnreachableStatement,
                    "statement after `value` is never executed",
                    s.span,
                );
                warned = true;
            }
            let (ts, term) = self.stmt(s);
            out.stmts.extend(ts);
            terminated |= term;
        }
        (out, terminated)
    }

    fn block(&mut self, b: &Block) -> (TBlock, bool) {
        self.push_scope();
        let r = self.stmts(&b.stmts);
        self.pop_scope();
        r
    }

    fn stmt(&mut self, s: &AstStmt) -> (Option<TStmt>, bool) {
        match &s.kind {
            StmtKind::Var { name, ty, init } => (
                self.var_decl(name, ty.as_deref(), init.as_ref(), s.span),
                false,
            ),
            StmtKind::Assign { name, value } => (self.assign(name, value, s.span), false),
            StmtKind::Call { name, args } => (self.call_stmt(name, args, s.span), false),
            StmtKind::If {
                cond,
                then_block,
                else_branch,
            } => self.if_stmt(cond, then_block, else_branch.as_ref(), s.span),
            StmtKind::Assert(e) => {
                if self.ctx != Ctx::Axiom {
                    self.err(
                        DiagKind::AssertOutsideAxiom,
                        "`assert` is only allowed in axioms",
                        s.span,
                    );
                }
                let t = self.expr(e, Some(PREDICATE));
                let t = self.require_known(t, e.span);
                (t.map(|expr| TStmt::Assert { expr, span: s.span }), false)
            }
            StmtKind::Value(e) => match self.ctx.clone() {
                Ctx::Function(ret) => {
                    let t = self.expr(e, Some(&ret));
                    let t = self.require_known(t, e.span);
                    (t.map(|expr| TStmt::Value { expr, span: s.span }), true)
                }
                Ctx::Procedure => {
                    self.err(
                        DiagKind::ValueInProcedure,
                        "procedures cannot return a value",
                        s.span,
                    );
                    (None, false)
                }
                Ctx::Axiom | Ctx::Guard => {
                    self.err(
                        DiagKind::ValueOutsideFunction,
                        "`value` is only allowed in functions and predicates",
                        s.span,
                    );
                    (None, false)
                }
            },
            StmtKind::Block(b) => {
                let (tb, term) = self.block(b);
                (Some(TStmt::Block(tb)), term)
            }
        }
    }

    fn var_decl(
        &mut self,
        name: &str,
        ty: Option<&str>,
        init: Option<&AstExpr>,
        span: Span,
    ) -> Option<TStmt> {
        if self.lookup(name).is_some() {
            self.err(
                DiagKind::DuplicateVariable,
                format!("variable `{name}` is already declared"),
                span,
            );
        }
        let declared = match ty {
            Some(t) if !self.type_exists(t) => {
                self.err(DiagKind::UnknownType, format!("unknown type `{t}`"), span);
                Some(String::new())
            }
            Some(t) => Some(t.to_string()),
            None => None,
        };
        let typed_init = match (init, &declared) {
            (Some(e), Some(t)) if !t.is_empty() => {
                let r = self.expr(e, Some(t));
                self.require_known(r, e.span)
            }
            (Some(e), _) => {
                let r = self.expr(e, None);
                self.require_known(r, e.span)
            }
            (None, _) => None,
        };
        let var_ty = match (&declared, &typed_init) {
            (Some(t), _) => t.clone(),
            (None, Some(e)) => e.ty.clone(),
            (None, None) => {
                if init.is_none() {
                    self.err(
                        DiagKind::CannotInferType,
                        format!("variable `{name}` needs a type or an initializer"),
                        span,
                    );
                }
                String::new()
            }
        };
        self.vars.push(VarInfo {
            name: name.to_string(),
            ty: var_ty.clone(),
            origin: Origin::Local,
            assigned: init.is_some(),
            used: false,
            span,
        });
        if var_ty.is_empty() || (init.is_some() && typed_init.is_none()) {
            return None;
        }
        Some(TStmt::Var {
            name: name.to_string(),
            ty: var_ty,
            init: typed_init,
            span,
        })
    }

    /// Checks that `name` may be written; returns its index.
    fn writable(&mut self, name: &str, span: Span) -> Option<usize> {
        let Some(i) = self.lookup(name) else {
            self.unknown_var(name, span);
            return None;
        };
        if self.vars[i].origin == Origin::Param(Mode::Obs) {
            self.err(
                DiagKind::WriteToObs,
                format!("`{name}` is read-only (obs) and cannot be written"),
                span,
            );
            return None;
        }
        Some(i)
    }

    fn assign(&mut self, name: &str, value: &AstExpr, span: Span) -> Option<TStmt> {
        let idx = self.writable(name, span);
        let ty = idx.map(|i| self.vars[i].ty.clone()).unwrap_or_default();
        let t = if ty.is_empty() {
            let r = self.expr(value, None);
            self.require_known(r, value.span);
            None
        } else {
            let r = self.expr(value, Some(&ty));
            self.require_known(r, value.span)
        };
        if let Some(i) = idx {
            self.vars[i].assigned = true;
        }
        Some(TStmt::Assign {
            name: name.to_string(),
            value: t?,
            span,
        })
    }

    fn if_stmt(
        &mut self,
        cond: &AstExpr,
        then_block: &Block,
        else_branch: Option<&ElseBranch>,
        span: Span,
    ) -> (Option<TStmt>, bool) {
        let c = self.expr(cond, Some(PREDICATE));
        let c = self.require_known(c, cond.span);
        let before = self.snapshot();
        let (tb, t_term) = self.block(then_block);
        let after_then = self.snapshot();
        self.restore(&before);
        let (eb, e_term) = match else_branch {
            None => (None, false),
            Some(ElseBranch::Block(b)) => {
                let (b, t) = self.block(b);
                (Some(b), t)
            }
            Some(ElseBranch::If(inner)) => {
                self.push_scope();
                let (s, t) = self.stmt(inner);
                self.pop_scope();
                (
                    Some(TBlock {
                        stmts: s.into_iter().collect(),
                    }),
                    t,
                )
            }
        };
        let after_else = self.snapshot();
        let joined: Vec<bool> = match (t_term, e_term) {
            (true, false) => after_else,
            (false, true) => after_then,
            _ => after_then
                .iter()
                .zip(&after_else)
                .map(|(a, b)| *a && *b)
                .collect(),
        };
        self.restore(&joined);
        let stmt = c.map(|cond| TStmt::If {
            cond,
            then_block: tb,
            else_block: eb,
            span,
        });
        (stmt, t_term && e_term)
    }

    fn call_stmt(&mut self, name: &str, args: &[AstExpr], span: Span) -> Option<TStmt> {
        let all: Vec<&FlatOp> = self.scope.ops_named(name).collect();
        if all.is_empty() {
            self.err(
                DiagKind::NoSuchOperation,
                format!("no operation named `{name}`"),
                span,
            );
            self.discard_args(args);
            return None;
        }
        let procs: Vec<&FlatOp> = all
            .iter()
            .copied()
            .filter(|o| o.sig.kind == OpKind::Procedure)
            .collect();
        if procs.is_empty() {
            self.err(
                DiagKind::FunctionInCallStatement,
                format!("`{name}` is not a procedure; only procedures are called with `call`"),
                span,
            );
            self.discard_args(args);
            return None;
        }
        let arity: Vec<&FlatOp> = procs
            .iter()
            .copied()
            .filter(|o| o.sig.params.len() == args.len())
            .collect();
        if arity.is_empty() {
            let expected: Vec<String> = procs
                .iter()
                .map(|o| o.sig.params.len().to_string())
                .collect();
            self.err(
                DiagKind::ArityMismatch,
                format!(
                    "`{name}` takes {} argument(s), {} given",
                    expected.join(" or "),
                    args.len()
                ),
                span,
            );
            self.discard_args(args);
            return None;
        }

        // Argument types without flow effects for plain variables; those
        // are read (or written) once the callee and its modes are known.
        let mut synths: Vec<Option<Synth>> = Vec::with_capacity(args.len());
        let mut shapes: Vec<Shape> = Vec::with_capacity(args.len());
        for a in args {
            if let Some(v) = plain_var(a) {
                let ty = self.lookup(v).map(|i| self.vars[i].ty.clone());
                shapes.push(match ty {
                    Some(t) if t.is_empty() => Shape::Unknown,
                    Some(t) => Shape::Type(t),
                    None => Shape::Unknown,
                });
                synths.push(None);
            } else {
                let s = self.expr(a, None);
                shapes.push(shape_of(&s));
                synths.push(Some(s));
            }
        }
        let matching: Vec<&FlatOp> = arity
            .iter()
            .copied()
            .filter(|o| {
                o.sig
                    .params
                    .iter()
                    .zip(&shapes)
                    .all(|(p, s)| s.admits(&p.ty))
            })
            .collect();
        let op = match matching.as_slice() {
            [op] => *op,
            [] => {
                self.err(
                    DiagKind::NoSuchOperation,
                    format!(
                        "no procedure `{name}` accepts ({})",
                        shapes
                            .iter()
                            .map(Shape::describe)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                    span,
                );
                self.finish_unmatched(args, &synths);
                return None;
            }
            many => {
                let sigs: Vec<String> = many.iter().map(|o| o.sig.signature()).collect();
                self.err(
                    DiagKind::AmbiguousReturnOverload,
                    format!(
                        "call to `{name}` is ambiguous between {}",
                        sigs.join(" and ")
                    ),
                    span,
                );
                self.finish_unmatched(args, &synths);
                return None;
            }
        };

        // Aliasing between mutable positions and plain obs arguments.
        let mut mutable_vars: Vec<&str> = Vec::new();
        for (p, a) in op.sig.params.iter().zip(args) {
            if let (true, Some(v)) = (p.mode.is_mutable(), plain_var(a)) {
                if mutable_vars.contains(&v) {
                    self.err(
                        DiagKind::AliasedArgument,
                        format!("`{v}` is passed to more than one upd/out position"),
                        a.span,
                    );
                }
                mutable_vars.push(v);
            }
        }
        for (p, a) in op.sig.params.iter().zip(args) {
            if let (false, Some(v)) = (p.mode.is_mutable(), plain_var(a)) {
                if mutable_vars.contains(&v) {
                    self.err(
                        DiagKind::AliasedArgument,
                        format!("`{v}` is passed both as obs and as upd/out"),
                        a.span,
                    );
                }
            }
        }

        let mut targs = Vec::with_capacity(args.len());
        let mut ok = true;
        let mut outs: Vec<usize> = Vec::new();
        let params = op.sig.params.clone();
        for ((p, a), synth) in params.iter().zip(args).zip(synths) {
            match p.mode {
                Mode::Obs => {
                    let t = match synth {
                        Some(Synth::Known(t)) => self.coerce(t, &p.ty, a.span),
                        Some(Synth::Ambiguous(_)) => {
                            let r = self.expr(a, Some(&p.ty));
                            self.require_known(r, a.span)
                        }
                        Some(Synth::Failed) => None,
                        None => {
                            let r = self.expr(a, Some(&p.ty));
                            self.require_known(r, a.span)
                        }
                    };
                    match t {
                        Some(expr) => targs.push(TArg { mode: p.mode, expr }),
                        None => ok = false,
                    }
                }
                Mode::Upd | Mode::Out => {
                    let Some(v) = plain_var(a) else {
                        self.err(
                            DiagKind::NotAssignable,
                            format!(
                                "argument for {} parameter `{}` must be a variable",
                                p.mode, p.name
                            ),
                            a.span,
                        );
                        ok = false;
                        continue;
                    };
                    let Some(i) = self.writable(v, a.span) else {
                        ok = false;
                        continue;
                    };
                    let ty = self.vars[i].ty.clone();
                    if ty.is_empty() {
                        ok = false;
                        continue;
                    }
                    if ty != p.ty {
                        self.err(
                            DiagKind::TypeMismatch,
                            format!(
                                "`{v}` has type {ty}, parameter `{}` expects {}",
                                p.name, p.ty
                            ),
                            a.span,
                        );
                        ok = false;
                        continue;
                    }
                    if p.mode == Mode::Upd {
                        self.read_var(i, a.span);
                    }
                    outs.push(i);
                    targs.push(TArg {
                        mode: p.mode,
                        expr: TExpr {
                            kind: TExprKind::Var(v.to_string()),
                            ty,
                            span: a.span,
                        },
                    });
                }
            }
        }
        for i in outs {
            self.vars[i].assigned = true;
        }
        ok.then(|| TStmt::Call {
            op: op.sig.key(),
            args: targs,
            span,
        })
    }

    /// Types the arguments of a call that failed to resolve, for their
    /// own diagnostics only.
    fn finish_unmatched(&mut self, args: &[AstExpr], synths: &[Option<Synth>]) {
        for (a, s) in args.iter().zip(synths) {
            if s.is_none() {
                if let Some(v) = plain_var(a) {
                    match self.lookup(v) {
                        Some(i) => self.vars[i].used = true,
                        None => self.unknown_var(v, a.span),
                    }
                }
            }
        }
    }

    fn discard_args(&mut self, args: &[AstExpr]) {
        for a in args {
            if let Some(v) = plain_var(a) {
                match self.lookup(v) {
                    Some(i) => self.vars[i].used = true,
                    None => self.unknown_var(v, a.span),
                }
            } else {
                self.expr(a, None);
            }
        }
    }

    fn unknown_var(&mut self, name: &str, span: Span) {
        if self.ctx == Ctx::Guard {
            self.err(
                DiagKind::GuardReferencesNonParameter,
                format!("guard refers to `{name}`, which is not a parameter"),
                span,
            );
        } else {
            self.err(
                DiagKind::UnknownVariable,
                format!("unknown variable `{name}`"),
                span,
            );
        }
    }

    fn read_var(&mut self, i: usize, span: Span) {
        self.vars[i].used = true;
        if !self.vars[i].assigned {
            let name = self.vars[i].name.clone();
            self.err(
                DiagKind::ReadBeforeAssign,
                format!("`{name}` is read before it is assigned"),
                span,
            );
            // Report once.
            self.vars[i].assigned = true;
        }
    }

    // ---- expressions ----

    /// Reports unresolved ambiguity.
    fn require_known(&mut self, s: Synth, span: Span) -> Option<TExpr> {
        match s {
            Synth::Known(t) => Some(t),
            Synth::Failed => None,
            Synth::Ambiguous(cands) => {
                let list: Vec<String> = cands.iter().map(ToString::to_string).collect();
                self.err(
                    DiagKind::AmbiguousReturnOverload,
                    format!(
                        "overloads differ only in return type ({}); add a `: T` annotation",
                        list.join(", ")
                    ),
                    span,
                );
                None
            }
        }
    }

    fn coerce(&mut self, t: TExpr, expected: &str, span: Span) -> Option<TExpr> {
        if t.ty == expected {
            Some(t)
        } else {
            self.err(
                DiagKind::TypeMismatch,
                format!("expected {expected}, found {}", t.ty),
                span,
            );
            None
        }
    }

    fn expr(&mut self, e: &AstExpr, expected: Option<&str>) -> Synth {
        let s = match &e.kind {
            ExprKind::Var(name) => match self.lookup(name) {
                None => {
                    self.unknown_var(name, e.span);
                    Synth::Failed
                }
                Some(i) => {
                    self.read_var(i, e.span);
                    let ty = self.vars[i].ty.clone();
                    if ty.is_empty() {
                        Synth::Failed
                    } else {
                        Synth::Known(TExpr {
                            kind: TExprKind::Var(name.clone()),
                            ty,
                            span: e.span,
                        })
                    }
                }
            },
            ExprKind::Call {
                name,
                args,
                annotation,
            } => self.call_expr(name, args, annotation.as_deref(), expected, e.span),
            ExprKind::Annotated { expr, ty } => {
                if !self.type_exists(ty) {
                    self.err(
                        DiagKind::UnknownType,
                        format!("unknown type `{ty}`"),
                        e.span,
                    );
                    return Synth::Failed;
                }
                let r = self.expr(expr, Some(ty));
                match self.require_known(r, expr.span) {
                    Some(t) => Synth::Known(t),
                    None => Synth::Failed,
                }
            }
            ExprKind::Eq(a, b) => self.equality(a, b, e.span),
            ExprKind::Not(inner) => {
                let r = self.expr(inner, Some(PREDICATE));
                match self.require_known(r, inner.span) {
                    Some(t) => match self.coerce(t, PREDICATE, inner.span) {
                        Some(t) => Synth::Known(TExpr {
                            kind: TExprKind::Not(Box::new(t)),
                            ty: PREDICATE.into(),
                            span: e.span,
                        }),
                        None => Synth::Failed,
                    },
                    None => Synth::Failed,
                }
            }
            ExprKind::And(a, b) => {
                let ra = self.expr(a, Some(PREDICATE));
                let ta = self
                    .require_known(ra, a.span)
                    .and_then(|t| self.coerce(t, PREDICATE, a.span));
                let rb = self.expr(b, Some(PREDICATE));
                let tb = self
                    .require_known(rb, b.span)
                    .and_then(|t| self.coerce(t, PREDICATE, b.span));
                match (ta, tb) {
                    (Some(x), Some(y)) => Synth::Known(TExpr {
                        kind: TExprKind::And(Box::new(x), Box::new(y)),
                        ty: PREDICATE.into(),
                        span: e.span,
                    }),
                    _ => Synth::Failed,
                }
            }
        };
        match (s, expected) {
            (Synth::Known(t), Some(exp)) => match self.coerce(t, exp, e.span) {
                Some(t) => Synth::Known(t),
                None => Synth::Failed,
            },
            (s, _) => s,
        }
    }

    fn equality(&mut self, a: &AstExpr, b: &AstExpr, span: Span) -> Synth {
        let before = self.error_count();
        let sa = self.expr(a, None);
        let sb = self.expr(b, None);
        let (ta, tb) = match (sa, sb) {
            (Synth::Failed, _) | (_, Synth::Failed) => return Synth::Failed,
            (Synth::Known(x), Synth::Known(y)) => (x, y),
            (Synth::Known(x), Synth::Ambiguous(_)) => {
                let ty = x.ty.clone();
                let r = self.expr(b, Some(&ty));
                match self.require_known(r, b.span) {
                    Some(y) => (x, y),
                    None => return Synth::Failed,
                }
            }
            (Synth::Ambiguous(_), Synth::Known(y)) => {
                let ty = y.ty.clone();
                let r = self.expr(a, Some(&ty));
                match self.require_known(r, a.span) {
                    Some(x) => (x, y),
                    None => return Synth::Failed,
                }
            }
            (Synth::Ambiguous(ca), Synth::Ambiguous(cb)) => {
                let common: Vec<String> = ca
                    .iter()
                    .filter_map(|k| k.ret.clone())
                    .filter(|t| cb.iter().any(|k| k.ret.as_ref() == Some(t)))
                    .collect();
                if common.len() != 1 {
                    let mut all = ca;
                    all.extend(cb);
                    return self
                        .require_known(Synth::Ambiguous(all), span)
                        .map_or(Synth::Failed, Synth::Known);
                }
                let ra = self.expr(a, Some(&common[0]));
                let rb = self.expr(b, Some(&common[0]));
                match (
                    self.require_known(ra, a.span),
                    self.require_known(rb, b.span),
                ) {
                    (Some(x), Some(y)) => (x, y),
                    _ => return Synth::Failed,
                }
            }
        };
        if ta.ty != tb.ty {
            if self.error_count() == before {
                self.err(
                    DiagKind::EqualityTypeMismatch,
                    format!("`==` between {} and {}", ta.ty, tb.ty),
                    span,
                );
            }
            return Synth::Failed;
        }
        Synth::Known(TExpr {
            kind: TExprKind::Eq(Box::new(ta), Box::new(tb)),
            ty: PREDICATE.into(),
            span,
        })
    }

    fn call_expr(
        &mut self,
        name: &str,
        args: &[AstExpr],
        annotation: Option<&str>,
        expected: Option<&str>,
        span: Span,
    ) -> Synth {
        if let Some(t) = annotation {
            if !self.type_exists(t) {
                self.err(DiagKind::UnknownType, format!("unknown type `{t}`"), span);
                return Synth::Failed;
            }
        }
        let before = self.error_count();
        let synths: Vec<Synth> = args.iter().map(|a| self.expr(a, None)).collect();
        let arg_errors = self.error_count() > before;

        let all: Vec<&FlatOp> = self.scope.ops_named(name).collect();
        if all.is_empty() {
            self.err(
                DiagKind::NoSuchOperation,
                format!("no operation named `{name}`"),
                span,
            );
            return Synth::Failed;
        }
        let funcs: Vec<&FlatOp> = all
            .iter()
            .copied()
            .filter(|o| o.sig.kind != OpKind::Procedure)
            .collect();
        if funcs.is_empty() {
            self.err(
                DiagKind::ProcedureInExpression,
                format!("procedure `{name}` cannot be used in an expression; use `call`"),
                span,
            );
            return Synth::Failed;
        }
        let arity: Vec<&FlatOp> = funcs
            .iter()
            .copied()
            .filter(|o| o.sig.params.len() == args.len())
            .collect();
        if arity.is_empty() {
            let expected_n: Vec<String> = funcs
                .iter()
                .map(|o| o.sig.params.len().to_string())
                .collect();
            self.err(
                DiagKind::ArityMismatch,
                format!(
                    "`{name}` takes {} argument(s), {} given",
                    expected_n.join(" or "),
                    args.len()
                ),
                span,
            );
            return Synth::Failed;
        }
        let shapes: Vec<Shape> = synths.iter().map(shape_of).collect();
        let matching: Vec<&FlatOp> = arity
            .iter()
            .copied()
            .filter(|o| {
                o.sig
                    .params
                    .iter()
                    .zip(&shapes)
                    .all(|(p, s)| s.admits(&p.ty))
            })
            .collect();
        if matching.is_empty() {
            if !arg_errors {
                self.err(
                    DiagKind::NoSuchOperation,
                    format!(
                        "no overload of `{name}` accepts ({})",
                        shapes
                            .iter()
                            .map(Shape::describe)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                    span,
                );
            }
            return Synth::Failed;
        }
        let want = annotation.or(expected);
        let chosen: Vec<&FlatOp> = match want {
            Some(w) => {
                let by_ret: Vec<&FlatOp> = matching
                    .iter()
                    .copied()
                    .filter(|o| o.sig.ret.as_deref() == Some(w))
                    .collect();
                if by_ret.is_empty() && annotation.is_some() {
                    if !arg_errors {
                        self.err(
                            DiagKind::TypeMismatch,
                            format!("no overload of `{name}` returns {w}"),
                            span,
                        );
                    }
                    return Synth::Failed;
                }
                // With only a contextual expectation, a unique candidate of
                // another type is reported by the caller as a mismatch.
                if by_ret.is_empty() {
                    matching
                } else {
                    by_ret
                }
            }
            None => matching,
        };
        if arg_errors {
            return Synth::Failed;
        }
        let op = match chosen.as_slice() {
            [op] => *op,
            many => {
                return Synth::Ambiguous(many.iter().map(|o| o.sig.key()).collect());
            }
        };
        let mut targs = Vec::with_capacity(args.len());
        let params = op.sig.params.clone();
        for ((p, a), s) in params.iter().zip(args).zip(synths) {
            let t = match s {
                Synth::Known(t) => self.coerce(t, &p.ty, a.span),
                Synth::Ambiguous(_) => {
                    let r = self.expr(a, Some(&p.ty));
                    self.require_known(r, a.span)
                }
                Synth::Failed => None,
            };
            match t {
                Some(t) => targs.push(t),
                None => return Synth::Failed,
            }
        }
        let key = op.sig.key();
        let ty = key.ret.clone().unwrap_or_default();
        Synth::Known(TExpr {
            kind: TExprKind::Call {
                op: key,
                args: targs,
            },
            ty,
            span,
        })
    }
}

/// What is known about an argument's type before resolution.
enum Shape {
    Type(String),
    OneOf(Vec<String>),
    Unknown,
}

impl Shape {
    fn admits(&self, ty: &str) -> bool {
        match self {
            Shape::Type(t) => t == ty,
            Shape::OneOf(ts) => ts.iter().any(|t| t == ty),
            Shape::Unknown => true,
        }
    }

    fn describe(&self) -> String {
        match self {
            Shape::Type(t) => t.clone(),
            Shape::OneOf(ts) => ts.join(" | "),
            Shape::Unknown => "?".into(),
        }
    }
}

fn shape_of(s: &Synth) -> Shape {
    match s {
        Synth::Known(t) => Shape::Type(t.ty.clone()),
        Synth::Ambiguous(c) => Shape::OneOf(c.iter().filter_map(|k| k.ret.clone()).collect()),
        Synth::Failed => Shape::Unknown,
    }
}

/// `x` or `x: T`.
fn plain_var(e: &AstExpr) -> Option<&str> {
    match &e.kind {
        ExprKind::Var(v) => Some(v),
        _ => None,
    }
}
