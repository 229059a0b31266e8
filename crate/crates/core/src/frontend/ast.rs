//! Unresolved syntax trees, one [`AstModule`] per top-level declaration.

use std::fmt;

use crate::source::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleKind {
    Signature,
    Concept,
    Implementation,
    Program,
    Satisfaction,
}

impl ModuleKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ModuleKind::Signature => "signature",
            ModuleKind::Concept => "concept",
            ModuleKind::Implementation => "implementation",
            ModuleKind::Program => "program",
            ModuleKind::Satisfaction => "satisfaction",
        }
    }
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// `external <backend> <host.path>` tag on an implementation or program.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExternalTag {
    pub backend: String,
    pub host_path: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AstModule {
    pub kind: ModuleKind,
    pub name: String,
    pub external: Option<ExternalTag>,
    pub body: ModuleBody,
    pub span: Span,
}

impl AstModule {
    pub fn decls(&self) -> &[AstDecl] {
        match &self.body {
            ModuleBody::Decls(d) => d,
            ModuleBody::Satisfaction { .. } => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleBody {
    Decls(Vec<AstDecl>),
    Satisfaction { lhs: ModuleExpr, rhs: ModuleExpr },
}

/// `Name` or `Name[ a => b, ... ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleExpr {
    pub name: String,
    pub renaming: Vec<RenamePair>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenamePair {
    pub from: String,
    pub to: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AstDecl {
    Type(TypeDecl),
    Op(OpDecl),
    Use(ModuleExpr),
    Axiom(AxiomDecl),
}

impl AstDecl {
    pub fn span(&self) -> Span {
        match self {
            AstDecl::Type(t) => t.span,
            AstDecl::Op(o) => o.span,
            AstDecl::Use(u) => u.span,
            AstDecl::Axiom(a) => a.span,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDecl {
    pub name: String,
    pub required: bool,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpKind {
    Function,
    Procedure,
    Predicate,
}

impl OpKind {
    pub fn keyword(self) -> &'static str {
        match self {
            OpKind::Function => "function",
            OpKind::Procedure => "procedure",
            OpKind::Predicate => "predicate",
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Obs,
    Upd,
    Out,
}

impl Mode {
    pub fn keyword(self) -> &'static str {
        match self {
            Mode::Obs => "obs",
            Mode::Upd => "upd",
            Mode::Out => "out",
        }
    }

    /// Whether an argument in this position is written by the callee.
    pub fn is_mutable(self) -> bool {
        !matches!(self, Mode::Obs)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    /// Always `Obs` for functions, predicates and axioms.
    pub mode: Mode,
    pub ty: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpDecl {
    pub kind: OpKind,
    pub name: String,
    pub params: Vec<Param>,
    /// Declared return type; `None` for procedures and predicates.
    pub ret: Option<String>,
    pub guard: Option<AstExpr>,
    pub body: Option<Block>,
    pub required: bool,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomDecl {
    pub name: String,
    pub params: Vec<Param>,
    pub body: Block,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub stmts: Vec<AstStmt>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AstStmt {
    pub kind: StmtKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Var {
        name: String,
        ty: Option<String>,
        init: Option<AstExpr>,
    },
    Assign {
        name: String,
        value: AstExpr,
    },
    Call {
        name: String,
        args: Vec<AstExpr>,
    },
    If {
        cond: AstExpr,
        then_block: Block,
        else_branch: Option<ElseBranch>,
    },
    Assert(AstExpr),
    Value(AstExpr),
    Block(Block),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElseBranch {
    Block(Block),
    /// `else if ...`
    If(Box<AstStmt>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AstExpr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Var(String),
    Call {
        name: String,
        args: Vec<AstExpr>,
        annotation: Option<String>,
    },
    /// `(e): T` on anything that is not a call.
    Annotated {
        expr: Box<AstExpr>,
        ty: String,
    },
    Eq(Box<AstExpr>, Box<AstExpr>),
    Not(Box<AstExpr>),
    And(Box<AstExpr>, Box<AstExpr>),
}

impl AstExpr {
    pub fn var(name: impl Into<String>, span: Span) -> Self {
        AstExpr {
            kind: ExprKind::Var(name.into()),
            span,
        }
    }
}

/// Resets every span to the default, so that trees parsed from different
/// texts compare structurally.
pub trait ClearSpans {
    fn clear_spans(&mut self);
}

impl<T: ClearSpans> ClearSpans for Vec<T> {
    fn clear_spans(&mut self) {
        self.iter_mut().for_each(ClearSpans::clear_spans);
    }
}

impl<T: ClearSpans> ClearSpans for Option<T> {
    fn clear_spans(&mut self) {
        if let Some(x) = self {
            x.clear_spans();
        }
    }
}

impl<T: ClearSpans> ClearSpans for Box<T> {
    fn clear_spans(&mut self) {
        (**self).clear_spans();
    }
}

impl ClearSpans for AstModule {
    fn clear_spans(&mut self) {
        self.span = Span::default();
        match &mut self.body {
            ModuleBody::Decls(d) => d.clear_spans(),
            ModuleBody::Satisfaction { lhs, rhs } => {
                lhs.clear_spans();
                rhs.clear_spans();
            }
        }
    }
}

impl ClearSpans for ModuleExpr {
    fn clear_spans(&mut self) {
        self.span = Span::default();
        self.renaming.clear_spans();
    }
}

impl ClearSpans for RenamePair {
    fn clear_spans(&mut self) {
        self.span = Span::default();
    }
}

impl ClearSpans for AstDecl {
    fn clear_spans(&mut self) {
        match self {
            AstDecl::Type(t) => t.span = Span::default(),
            AstDecl::Op(o) => o.clear_spans(),
            AstDecl::Use(u) => u.clear_spans(),
            AstDecl::Axiom(a) => {
                a.span = Span::default();
                a.params.clear_spans();
                a.body.clear_spans();
            }
        }
    }
}

impl ClearSpans for OpDecl {
    fn clear_spans(&mut self) {
        self.span = Span::default();
        self.params.clear_spans();
        self.guard.clear_spans();
        self.body.clear_spans();
    }
}

impl ClearSpans for Param {
    fn clear_spans(&mut self) {
        self.span = Span::default();
    }
}

impl ClearSpans for Block {
    fn clear_spans(&mut self) {
        self.span = Span::default();
        self.stmts.clear_spans();
    }
}

impl ClearSpans for AstStmt {
    fn clear_spans(&mut self) {
        self.span = Span::default();
        match &mut self.kind {
            StmtKind::Var { init, .. } => init.clear_spans(),
            StmtKind::Assign { value, .. } => value.clear_spans(),
            StmtKind::Call { args, .. } => args.clear_spans(),
            StmtKind::If {
                cond,
                then_block,
                else_branch,
            } => {
                cond.clear_spans();
                then_block.clear_spans();
                match else_branch {
                    Some(ElseBranch::Block(b)) => b.clear_spans(),
                    Some(ElseBranch::If(s)) => s.clear_spans(),
                    None => {}
                }
            }
            StmtKind::Assert(e) | StmtKind::Value(e) => e.clear_spans(),
            StmtKind::Block(b) => b.clear_spans(),
        }
    }
}

impl ClearSpans for AstExpr {
    fn clear_spans(&mut self) {
        self.span = Span::default();
        match &mut self.kind {
            ExprKind::Var(_) => {}
            ExprKind::Call { args, .. } => args.clear_spans(),
            ExprKind::Annotated { expr, .. } => expr.clear_spans(),
            ExprKind::Eq(a, b) | ExprKind::And(a, b) => {
                a.clear_spans();
                b.clear_spans();
            }
            ExprKind::Not(e) => e.clear_spans(),
        }
    }
}
