//! Renamings: finite, simultaneously applied name substitutions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::frontend::ast::*;

/// A signature morphism restricted to names: `from => to` pairs applied
/// simultaneously, so `[a => b, b => a]` swaps.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Renaming {
    pairs: BTreeMap<String, String>,
}

impl Renaming {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fails with the first duplicated source name.
    pub fn from_pairs<I, A, B>(pairs: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            let a = a.into();
            if map.insert(a.clone(), b.into()).is_some() {
                return Err(a);
            }
        }
        Ok(Renaming { pairs: map })
    }

    pub fn from_ast(pairs: &[RenamePair]) -> Self {
        Renaming {
            pairs: pairs
                .iter()
                .map(|p| (p.from.clone(), p.to.clone()))
                .collect(),
        }
    }

    pub fn apply<'a>(&'a self, name: &'a str) -> &'a str {
        self.pairs.get(name).map(String::as_str).unwrap_or(name)
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.pairs.get(name).map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// True when every pair maps a name to itself.
    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|(a, b)| a == b)
    }

    pub fn sources(&self) -> impl Iterator<Item = &str> {
        self.pairs.keys().map(String::as_str)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    /// `after ∘ self` over `names`: each name goes through `self`, then
    /// `after`. Pairs mapping a name to itself are dropped.
    pub fn then<'a>(&self, after: &Renaming, names: impl IntoIterator<Item = &'a str>) -> Renaming {
        let mut pairs = BTreeMap::new();
        let names: BTreeSet<&str> = names.into_iter().collect();
        for n in names {
            let target = after.apply(self.apply(n));
            if target != n {
                pairs.insert(n.to_string(), target.to_string());
            }
        }
        Renaming { pairs }
    }
}

impl fmt::Display for Renaming {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " {a} => {b}")?;
        }
        f.write_str(" ]")
    }
}

// Substitution over syntax. Only names that denote types or operations are
// touched: variables and parameter names live in a separate namespace.

pub(crate) fn rename_expr(e: &mut AstExpr, r: &Renaming) {
    match &mut e.kind {
        ExprKind::Var(_) => {}
        ExprKind::Call {
            name,
            args,
            annotation,
        } => {
            *name = r.apply(name).to_string();
            if let Some(t) = annotation {
                *t = r.apply(t).to_string();
            }
            args.iter_mut().for_each(|a| rename_expr(a, r));
        }
        ExprKind::Annotated { expr, ty } => {
            *ty = r.apply(ty).to_string();
            rename_expr(expr, r);
        }
        ExprKind::Eq(a, b) | ExprKind::And(a, b) => {
            rename_expr(a, r);
            rename_expr(b, r);
        }
        ExprKind::Not(inner) => rename_expr(inner, r),
    }
}

pub(crate) fn rename_block(b: &mut Block, r: &Renaming) {
    b.stmts.iter_mut().for_each(|s| rename_stmt(s, r));
}

fn rename_stmt(s: &mut AstStmt, r: &Renaming) {
    match &mut s.kind {
        StmtKind::Var { ty, init, .. } => {
            if let Some(t) = ty {
                *t = r.apply(t).to_string();
            }
            if let Some(e) = init {
                rename_expr(e, r);
            }
        }
        StmtKind::Assign { value, .. } => rename_expr(value, r),
        StmtKind::Call { name, args } => {
            *name = r.apply(name).to_string();
            args.iter_mut().for_each(|a| rename_expr(a, r));
        }
        StmtKind::If {
            cond,
            then_block,
            else_branch,
        } => {
            rename_expr(cond, r);
            rename_block(then_block, r);
            match else_branch {
                Some(ElseBranch::Block(b)) => rename_block(b, r),
                Some(ElseBranch::If(inner)) => rename_stmt(inner, r),
                None => {}
            }
        }
        StmtKind::Assert(e) | StmtKind::Value(e) => rename_expr(e, r),
        StmtKind::Block(b) => rename_block(b, r),
    }
}

pub(crate) fn rename_params(params: &mut [Param], r: &Renaming) {
    for p in params {
        p.ty = r.apply(&p.ty).to_string();
    }
}

/// Every type or operation name mentioned in an expression.
pub(crate) fn expr_names(e: &AstExpr, types: &mut BTreeSet<String>, ops: &mut BTreeSet<String>) {
    match &e.kind {
        ExprKind::Var(_) => {}
        ExprKind::Call {
            name,
            args,
            annotation,
        } => {
            ops.insert(name.clone());
            if let Some(t) = annotation {
                types.insert(t.clone());
            }
            args.iter().for_each(|a| expr_names(a, types, ops));
        }
        ExprKind::Annotated { expr, ty } => {
            types.insert(ty.clone());
            expr_names(expr, types, ops);
        }
        ExprKind::Eq(a, b) | ExprKind::And(a, b) => {
            expr_names(a, types, ops);
            expr_names(b, types, ops);
        }
        ExprKind::Not(inner) => expr_names(inner, types, ops),
    }
}

pub(crate) fn block_names(b: &Block, types: &mut BTreeSet<String>, ops: &mut BTreeSet<String>) {
    for s in &b.stmts {
        stmt_names(s, types, ops);
    }
}

fn stmt_names(s: &AstStmt, types: &mut BTreeSet<String>, ops: &mut BTreeSet<String>) {
    match &s.kind {
        StmtKind::Var { ty, init, .. } => {
            if let Some(t) = ty {
                types.insert(t.clone());
            }
            if let Some(e) = init {
                expr_names(e, types, ops);
            }
        }
        StmtKind::Assign { value, .. } => expr_names(value, types, ops),
        StmtKind::Call { name, args } => {
            ops.insert(name.clone());
            args.iter().for_each(|a| expr_names(a, types, ops));
        }
        StmtKind::If {
            cond,
            then_block,
            else_branch,
        } => {
            expr_names(cond, types, ops);
            block_names(then_block, types, ops);
            match else_branch {
                Some(ElseBranch::Block(b)) => block_names(b, types, ops),
                Some(ElseBranch::If(inner)) => stmt_names(inner, types, ops),
                None => {}
            }
        }
        StmtKind::Assert(e) | StmtKind::Value(e) => expr_names(e, types, ops),
        StmtKind::Block(b) => block_names(b, types, ops),
    }
}
