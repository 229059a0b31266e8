//! Typed bodies: every call resolved to one operation, every expression and
//! variable typed.

use std::collections::BTreeMap;

use crate::frontend::ast::{Mode, Param};
use crate::modsys::{FlatModule, OpKey};
use crate::source::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TExpr {
    pub kind: TExprKind,
    pub ty: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TExprKind {
    Var(String),
    Call {
        op: OpKey,
        args: Vec<TExpr>,
    },
    /// Operands share the type recorded on the left one.
    Eq(Box<TExpr>, Box<TExpr>),
    Not(Box<TExpr>),
    And(Box<TExpr>, Box<TExpr>),
}

/// A procedure argument. Mutable modes always carry a variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TArg {
    pub mode: Mode,
    pub expr: TExpr,
}

impl TArg {
    /// The variable bound by an `upd`/`out` argument.
    pub fn var(&self) -> Option<&str> {
        match &self.expr.kind {
            TExprKind::Var(v) if self.mode.is_mutable() => Some(v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TStmt {
    Var {
        name: String,
        ty: String,
        init: Option<TExpr>,
        span: Span,
    },
    Assign {
        name: String,
        value: TExpr,
        span: Span,
    },
    Call {
        op: OpKey,
        args: Vec<TArg>,
        span: Span,
    },
    If {
        cond: TExpr,
        then_block: TBlock,
        /// `else if` chains nest as a block holding a single `If`.
        else_block: Option<TBlock>,
        span: Span,
    },
    Assert {
        expr: TExpr,
        span: Span,
    },
    Value {
        expr: TExpr,
        span: Span,
    },
    Block(TBlock),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TBlock {
    pub stmts: Vec<TStmt>,
}

/// A checked operation body or axiom body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedBody {
    pub params: Vec<Param>,
    pub block: TBlock,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedAxiom {
    pub name: String,
    pub params: Vec<Param>,
    pub block: TBlock,
    pub span: Option<Span>,
}

/// A flattened scope together with the typed form of everything in it
/// that checked cleanly.
#[derive(Debug, Clone)]
pub struct TypedModule {
    pub flat: FlatModule,
    pub bodies: BTreeMap<OpKey, TypedBody>,
    pub guards: BTreeMap<OpKey, TExpr>,
    pub axioms: Vec<TypedAxiom>,
}

impl TypedModule {
    pub fn axiom(&self, name: &str) -> Option<&TypedAxiom> {
        self.axioms.iter().find(|a| a.name == name)
    }
}
