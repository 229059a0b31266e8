//! Flattened modules and the two operations that build them: renaming and
//! scope merging.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::renaming::{rename_block, rename_expr, rename_params, Renaming};
use super::ModError;
use crate::frontend::ast::*;
use crate::source::Span;

/// Return type of every predicate. Never user-declared.
pub const PREDICATE: &str = "Predicate";

/// Identity of an operation inside a scope: name, parameter types and
/// return type (`None` for procedures).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpKey {
    pub name: String,
    pub params: Vec<String>,
    pub ret: Option<String>,
}

impl OpKey {
    pub fn new(name: impl Into<String>, params: &[&str], ret: Option<&str>) -> Self {
        OpKey {
            name: name.into(),
            params: params.iter().map(|p| p.to_string()).collect(),
            ret: ret.map(str::to_string),
        }
    }

    pub fn renamed(&self, r: &Renaming) -> OpKey {
        OpKey {
            name: r.apply(&self.name).to_string(),
            params: self.params.iter().map(|p| r.apply(p).to_string()).collect(),
            ret: self.ret.as_ref().map(|t| r.apply(t).to_string()),
        }
    }
}

impl fmt::Display for OpKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name, self.params.join(", "))?;
        if let Some(r) = &self.ret {
            write!(f, ": {r}")?;
        }
        Ok(())
    }
}

/// Operation signature with parameter names, modes and guard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpSig {
    pub kind: OpKind,
    pub name: String,
    pub params: Vec<Param>,
    /// `Some(PREDICATE)` for predicates, `None` for procedures.
    pub ret: Option<String>,
    pub guard: Option<AstExpr>,
}

impl OpSig {
    pub fn from_decl(d: &OpDecl) -> Self {
        let ret = match d.kind {
            OpKind::Function => d.ret.clone(),
            OpKind::Predicate => Some(PREDICATE.to_string()),
            OpKind::Procedure => None,
        };
        OpSig {
            kind: d.kind,
            name: d.name.clone(),
            params: d.params.clone(),
            ret,
            guard: d.guard.clone(),
        }
    }

    pub fn key(&self) -> OpKey {
        OpKey {
            name: self.name.clone(),
            params: self.params.iter().map(|p| p.ty.clone()).collect(),
            ret: self.ret.clone(),
        }
    }

    pub fn modes(&self) -> Vec<Mode> {
        self.params.iter().map(|p| p.mode).collect()
    }

    /// `kind name(modes types): ret` without parameter names, as used in
    /// diagnostics.
    pub fn signature(&self) -> String {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|p| {
                if self.kind == OpKind::Procedure {
                    format!("{} {}", p.mode, p.ty)
                } else {
                    p.ty.clone()
                }
            })
            .collect();
        let mut s = format!("{} {}({})", self.kind, self.name, params.join(", "));
        if self.kind == OpKind::Function {
            if let Some(r) = &self.ret {
                s.push_str(": ");
                s.push_str(r);
            }
        }
        s
    }

    fn renamed(&self, r: &Renaming) -> OpSig {
        let mut s = self.clone();
        s.name = r.apply(&s.name).to_string();
        rename_params(&mut s.params, r);
        s.ret = s.ret.map(|t| r.apply(&t).to_string());
        if let Some(g) = &mut s.guard {
            rename_expr(g, r);
        }
        s
    }
}

/// Full declaration text including parameter names and guard.
impl fmt::Display for OpSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}(", self.kind, self.name)?;
        for (i, p) in self.params.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if self.kind == OpKind::Procedure {
                write!(f, "{} ", p.mode)?;
            }
            write!(f, "{}: {}", p.name, p.ty)?;
        }
        f.write_str(")")?;
        if self.kind == OpKind::Function {
            if let Some(r) = &self.ret {
                write!(f, ": {r}")?;
            }
        }
        if let Some(g) = &self.guard {
            write!(f, " guard {g}")?;
        }
        Ok(())
    }
}

/// What a host instance is parameterised by: the required elements in scope
/// when the external block was flattened, keyed by their host-local name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Requirement {
    Type(String),
    Op(OpKey),
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Requirement::Type(t) => f.write_str(t),
            Requirement::Op(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExternalBinding {
    pub backend: String,
    pub host_path: String,
    /// Element name at binding time; later renamings do not change it.
    pub host_name: String,
    pub requirements: BTreeMap<String, Requirement>,
}

impl ExternalBinding {
    fn renamed(&self, r: &Renaming) -> ExternalBinding {
        let requirements = self
            .requirements
            .iter()
            .map(|(local, req)| {
                let req = match req {
                    Requirement::Type(t) => Requirement::Type(r.apply(t).to_string()),
                    Requirement::Op(k) => Requirement::Op(k.renamed(r)),
                };
                (local.clone(), req)
            })
            .collect();
        ExternalBinding {
            requirements,
            ..self.clone()
        }
    }

    /// Host instance identity: same module, same actual requirements.
    pub fn instance(&self) -> (&str, &str, &BTreeMap<String, Requirement>) {
        (&self.backend, &self.host_path, &self.requirements)
    }

    /// Whether the host module must be instantiated with callbacks.
    pub fn needs_instance(&self) -> bool {
        self.requirements
            .values()
            .any(|r| matches!(r, Requirement::Op(_)))
    }
}

impl fmt::Display for ExternalBinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "external {} {}.{}",
            self.backend, self.host_path, self.host_name
        )
    }
}

/// Status of a type or operation. Types are never `Defined`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    /// Explicitly `require`d.
    Required,
    /// Bodiless declaration; behaves as required downstream.
    Declared,
    Defined(Block),
    External(ExternalBinding),
}

impl Status {
    pub fn is_concrete(&self) -> bool {
        matches!(self, Status::Defined(_) | Status::External(_))
    }

    pub fn body(&self) -> Option<&Block> {
        match self {
            Status::Defined(b) => Some(b),
            _ => None,
        }
    }

    pub fn binding(&self) -> Option<&ExternalBinding> {
        match self {
            Status::External(b) => Some(b),
            _ => None,
        }
    }

    fn label(&self) -> String {
        match self {
            Status::Required => "required".into(),
            Status::Declared => "declared".into(),
            Status::Defined(_) => "defined".into(),
            Status::External(b) => b.to_string(),
        }
    }
}

/// One use/renaming step in an element's history.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    /// `Some(M)` for `use M[r]`, `None` for a direct renaming.
    pub module: Option<String>,
    pub renaming: Renaming,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.module {
            Some(m) => write!(f, "via use {m}")?,
            None => f.write_str("via rename")?,
        }
        if !self.renaming.is_empty() {
            write!(f, " {}", self.renaming)?;
        }
        Ok(())
    }
}

/// Where an element was declared and the steps that carried it here,
/// innermost first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Provenance {
    pub declared_in: String,
    pub via: Vec<Step>,
}

impl Provenance {
    pub fn own(module: &str) -> BTreeSet<Provenance> {
        BTreeSet::from([Provenance {
            declared_in: module.to_string(),
            via: Vec::new(),
        }])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatType {
    pub name: String,
    pub status: Status,
    pub provenance: BTreeSet<Provenance>,
    pub span: Option<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatOp {
    pub sig: OpSig,
    pub status: Status,
    pub provenance: BTreeSet<Provenance>,
    pub span: Option<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatAxiom {
    pub name: String,
    pub params: Vec<Param>,
    pub body: Block,
    pub provenance: BTreeSet<Provenance>,
    pub span: Option<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatModule {
    pub kind: ModuleKind,
    pub name: String,
    pub types: BTreeMap<String, FlatType>,
    pub ops: BTreeMap<OpKey, FlatOp>,
    /// In flatten order.
    pub axioms: Vec<FlatAxiom>,
}

impl FlatModule {
    pub fn new(kind: ModuleKind, name: impl Into<String>) -> Self {
        FlatModule {
            kind,
            name: name.into(),
            types: BTreeMap::new(),
            ops: BTreeMap::new(),
            axioms: Vec::new(),
        }
    }

    pub fn ops_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a FlatOp> + 'a {
        let start = OpKey {
            name: name.to_string(),
            params: Vec::new(),
            ret: None,
        };
        self.ops
            .range(start..)
            .take_while(move |(k, _)| k.name == name)
            .map(|(_, op)| op)
    }

    pub fn has_op_named(&self, name: &str) -> bool {
        self.ops_named(name).next().is_some()
    }

    pub fn op(&self, key: &OpKey) -> Option<&FlatOp> {
        self.ops.get(key)
    }

    /// Type and operation names, the domain a renaming may mention.
    pub fn names(&self) -> BTreeSet<&str> {
        self.types
            .keys()
            .map(String::as_str)
            .chain(self.ops.keys().map(|k| k.name.as_str()))
            .collect()
    }

    pub fn axiom(&self, name: &str) -> Option<&FlatAxiom> {
        self.axioms.iter().find(|a| a.name == name)
    }

    /// Copy without provenance or spans, with axioms in a canonical order:
    /// the form in which structural laws are stated.
    pub fn normalized(&self) -> FlatModule {
        let mut m = self.clone();
        for t in m.types.values_mut() {
            t.provenance.clear();
            t.span = None;
        }
        for op in m.ops.values_mut() {
            op.provenance.clear();
            op.span = None;
            op.sig.params.clear_spans();
            op.sig.guard.clear_spans();
            if let Status::Defined(b) = &mut op.status {
                b.clear_spans();
            }
        }
        for a in &mut m.axioms {
            a.provenance.clear();
            a.span = None;
            a.params.clear_spans();
            a.body.clear_spans();
        }
        m.axioms.sort_by_cached_key(|a| {
            let mut text = String::new();
            crate::frontend::pretty::pretty_block(&mut text, &a.body, 0);
            (a.name.clone(), text)
        });
        m
    }

    // Insertion under the merge rules.

    pub(crate) fn add_type(&mut self, t: FlatType) -> Result<(), ModError> {
        if t.name == PREDICATE {
            return Err(ModError::KindMismatch {
                name: t.name,
                detail: "`Predicate` is built in and cannot be declared".into(),
                span: t.span,
            });
        }
        if self.has_op_named(&t.name) {
            return Err(ModError::KindMismatch {
                detail: format!("`{}` is both a type and an operation", t.name),
                name: t.name,
                span: t.span,
            });
        }
        match self.types.get_mut(&t.name) {
            None => {
                self.types.insert(t.name.clone(), t);
            }
            Some(existing) => {
                let status = merge_status(&existing.status, &t.status).ok_or_else(|| {
                    ModError::ConflictingDefinition {
                        detail: format!(
                            "type {} is bound as `{}` and as `{}`",
                            t.name,
                            existing.status.label(),
                            t.status.label()
                        ),
                        span: t.span.or(existing.span),
                    }
                })?;
                existing.status = status;
                existing.provenance.extend(t.provenance);
                existing.span = existing.span.or(t.span);
            }
        }
        Ok(())
    }

    pub(crate) fn add_op(&mut self, op: FlatOp) -> Result<(), ModError> {
        if self.types.contains_key(&op.sig.name) {
            return Err(ModError::KindMismatch {
                detail: format!("`{}` is both a type and an operation", op.sig.name),
                name: op.sig.name.clone(),
                span: op.span,
            });
        }
        let key = op.sig.key();
        let Some(existing) = self.ops.get_mut(&key) else {
            self.ops.insert(key, op);
            return Ok(());
        };
        let conflict = |why: &str| ModError::ConflictingDefinition {
            detail: format!("{} declared twice with {why}", op.sig.signature()),
            span: op.span.or(existing.span),
        };
        if existing.sig.kind != op.sig.kind || existing.sig.modes() != op.sig.modes() {
            return Err(conflict("different kinds or modes"));
        }
        if !guards_alpha_equal(&existing.sig, &op.sig) {
            return Err(conflict("different guards"));
        }
        if let (Status::Defined(_), Status::Defined(_)) = (&existing.status, &op.status) {
            if param_names(&existing.sig) != param_names(&op.sig) {
                return Err(conflict("different bodies"));
            }
        }
        let status = merge_status(&existing.status, &op.status)
            .ok_or_else(|| conflict("different bodies"))?;
        // Keep the parameter names that the surviving body refers to.
        if !existing.status.is_concrete() && op.status.is_concrete() {
            existing.sig = op.sig;
        }
        existing.status = status;
        existing.provenance.extend(op.provenance);
        existing.span = existing.span.or(op.span);
        Ok(())
    }

    pub(crate) fn add_axiom(&mut self, ax: FlatAxiom) {
        let key = canonical_axiom(&ax);
        if let Some(existing) = self
            .axioms
            .iter_mut()
            .find(|a| a.name == ax.name && canonical_axiom(a) == key)
        {
            existing.provenance.extend(ax.provenance);
        } else {
            self.axioms.push(ax);
        }
    }

    /// Adds every element of `other` under the merge rules.
    pub(crate) fn absorb(&mut self, other: FlatModule) -> Result<(), ModError> {
        for t in other.types.into_values() {
            self.add_type(t)?;
        }
        for op in other.ops.into_values() {
            self.add_op(op)?;
        }
        for ax in other.axioms {
            self.add_axiom(ax);
        }
        Ok(())
    }
}

fn param_names(s: &OpSig) -> Vec<&str> {
    s.params.iter().map(|p| p.name.as_str()).collect()
}

fn merge_status(a: &Status, b: &Status) -> Option<Status> {
    use Status::*;
    match (a, b) {
        (Required, x) | (x, Required) => Some(x.clone()),
        (Declared, x) | (x, Declared) => Some(x.clone()),
        (Defined(x), Defined(y)) => {
            let (mut x2, mut y2) = (x.clone(), y.clone());
            x2.clear_spans();
            y2.clear_spans();
            (x2 == y2).then(|| Defined(x.clone()))
        }
        (External(x), External(y)) => (x == y).then(|| External(x.clone())),
        _ => None,
    }
}

/// Replaces parameter references by positional placeholders and drops spans.
fn alpha_canonical(e: &AstExpr, params: &[Param]) -> AstExpr {
    let mut e = e.clone();
    fn walk(e: &mut AstExpr, params: &[Param]) {
        e.span = Span::default();
        match &mut e.kind {
            ExprKind::Var(n) => {
                if let Some(i) = params.iter().position(|p| &p.name == n) {
                    *n = format!("#{i}");
                }
            }
            ExprKind::Call { args, .. } => args.iter_mut().for_each(|a| walk(a, params)),
            ExprKind::Annotated { expr, .. } => walk(expr, params),
            ExprKind::Eq(a, b) | ExprKind::And(a, b) => {
                walk(a, params);
                walk(b, params);
            }
            ExprKind::Not(x) => walk(x, params),
        }
    }
    walk(&mut e, params);
    e
}

/// Guards are equal up to consistent renaming of parameters.
pub fn guards_alpha_equal(a: &OpSig, b: &OpSig) -> bool {
    match (&a.guard, &b.guard) {
        (None, None) => true,
        (Some(x), Some(y)) => alpha_canonical(x, &a.params) == alpha_canonical(y, &b.params),
        _ => false,
    }
}

fn canonical_axiom(a: &FlatAxiom) -> (Vec<(String, String)>, Block) {
    let mut body = a.body.clone();
    body.clear_spans();
    (
        a.params
            .iter()
            .map(|p| (p.name.clone(), p.ty.clone()))
            .collect(),
        body,
    )
}

/// Union of two flattened scopes, named after `a`.
pub fn merge_scopes(a: &FlatModule, b: &FlatModule) -> Result<FlatModule, ModError> {
    let mut out = a.clone();
    out.absorb(b.clone())?;
    Ok(out)
}

/// Applies `r` simultaneously to every name in `m`.
pub fn apply_renaming(m: &FlatModule, r: &Renaming) -> Result<FlatModule, ModError> {
    rename_module(m, r, None, None)
}

pub(crate) fn rename_module(
    m: &FlatModule,
    r: &Renaming,
    via_module: Option<&str>,
    span: Option<Span>,
) -> Result<FlatModule, ModError> {
    for src in r.sources() {
        if !m.types.contains_key(src) && !m.has_op_named(src) {
            return Err(ModError::UnknownRenameSource {
                source_name: src.to_string(),
                module: m.name.clone(),
                span,
            });
        }
    }
    if let Some((from, _)) = r.pairs().find(|(_, to)| *to == PREDICATE) {
        return Err(ModError::RenameCollision {
            detail: format!("`{from}` cannot be renamed to the built-in `{PREDICATE}`"),
            span,
        });
    }
    let step = Step {
        module: via_module.map(str::to_string),
        renaming: r.clone(),
    };
    let carry = |prov: &BTreeSet<Provenance>| -> BTreeSet<Provenance> {
        prov.iter()
            .map(|p| {
                let mut p = p.clone();
                p.via.push(step.clone());
                p
            })
            .collect()
    };
    let collision = |e: ModError| match e {
        ModError::ConflictingDefinition { detail, .. } | ModError::KindMismatch { detail, .. } => {
            ModError::RenameCollision {
                detail: format!("renaming {r} of {}: {detail}", m.name),
                span,
            }
        }
        other => other,
    };

    let mut out = FlatModule::new(m.kind, m.name.clone());
    for t in m.types.values() {
        let status = match &t.status {
            Status::External(b) => Status::External(b.renamed(r)),
            s => s.clone(),
        };
        out.add_type(FlatType {
            name: r.apply(&t.name).to_string(),
            status,
            provenance: carry(&t.provenance),
            span: t.span,
        })
        .map_err(collision)?;
    }
    for op in m.ops.values() {
        let status = match &op.status {
            Status::External(b) => Status::External(b.renamed(r)),
            Status::Defined(b) => {
                let mut b = b.clone();
                rename_block(&mut b, r);
                Status::Defined(b)
            }
            s => s.clone(),
        };
        out.add_op(FlatOp {
            sig: op.sig.renamed(r),
            status,
            provenance: carry(&op.provenance),
            span: op.span,
        })
        .map_err(collision)?;
    }
    for ax in &m.axioms {
        let mut ax2 = ax.clone();
        rename_params(&mut ax2.params, r);
        rename_block(&mut ax2.body, r);
        ax2.provenance = carry(&ax.provenance);
        out.add_axiom(ax2);
    }
    Ok(out)
}
