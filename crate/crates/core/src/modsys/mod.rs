//! The module system: renaming, scope merging, flattening of module
//! expressions, program completeness and satisfaction checking.

mod check;
mod dump;
mod env;
mod flat;
mod renaming;

pub use check::{check_program_complete, check_satisfaction, unresolved_names, Unresolved};
pub use dump::dump_flat;
pub use env::{flatten, Flattener, ModuleEnv};
pub use flat::{
    apply_renaming, guards_alpha_equal, merge_scopes, ExternalBinding, FlatAxiom, FlatModule,
    FlatOp, FlatType, OpKey, OpSig, Provenance, Requirement, Status, Step, PREDICATE,
};
pub use renaming::Renaming;

use thiserror::Error;

use crate::diag::{DiagKind, Diagnostic};
use crate::source::Span;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModError {
    #[error("unknown module `{name}`")]
    UnknownModule { name: String, span: Option<Span> },
    #[error("`{name}` is a satisfaction, not a module that can be used")]
    NotAModuleExpression { name: String, span: Option<Span> },
    #[error("cyclic use: {}", cycle.join(" -> "))]
    CyclicUse {
        cycle: Vec<String>,
        span: Option<Span>,
    },
    #[error("renaming source `{source_name}` names no type or operation of {module}")]
    UnknownRenameSource {
        source_name: String,
        module: String,
        span: Option<Span>,
    },
    #[error("{detail}")]
    RenameCollision { detail: String, span: Option<Span> },
    #[error("{detail}")]
    ConflictingDefinition { detail: String, span: Option<Span> },
    #[error("{detail}")]
    KindMismatch {
        name: String,
        detail: String,
        span: Option<Span>,
    },
}

impl ModError {
    pub fn kind(&self) -> DiagKind {
        match self {
            ModError::UnknownModule { .. } => DiagKind::UnknownModule,
            ModError::NotAModuleExpression { .. } => DiagKind::NotAModuleExpression,
            ModError::CyclicUse { .. } => DiagKind::CyclicUse,
            ModError::UnknownRenameSource { .. } => DiagKind::UnknownRenameSource,
            ModError::RenameCollision { .. } => DiagKind::RenameCollision,
            ModError::ConflictingDefinition { .. } => DiagKind::ConflictingDefinition,
            ModError::KindMismatch { .. } => DiagKind::KindMismatch,
        }
    }

    pub fn span(&self) -> Option<Span> {
        match self {
            ModError::UnknownModule { span, .. }
            | ModError::NotAModuleExpression { span, .. }
            | ModError::CyclicUse { span, .. }
            | ModError::UnknownRenameSource { span, .. }
            | ModError::RenameCollision { span, .. }
            | ModError::ConflictingDefinition { span, .. }
            | ModError::KindMismatch { span, .. } => *span,
        }
    }

    pub fn to_diagnostic(&self) -> Diagnostic {
        Diagnostic::error(self.kind(), self.to_string()).at_opt(self.span())
    }
}

impl From<ModError> for Diagnostic {
    fn from(e: ModError) -> Self {
        e.to_diagnostic()
    }
}
