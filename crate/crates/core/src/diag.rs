//! Diagnostics shared by every compiler phase.
//!
//! Rendered as `path:line:col: error: message`, one per line.

use std::fmt;

use crate::source::{SourceMap, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

/// Stable identifier of every diagnostic the compiler can report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagKind {
    SyntaxError,
    // module system
    UnknownModule,
    DuplicateModule,
    NotAModuleExpression,
    CyclicUse,
    UnknownRenameSource,
    RenameCollision,
    ConflictingDefinition,
    KindMismatch,
    UnfulfilledRequirement,
    MissingBody,
    MissingType,
    MissingOperation,
    SignatureMismatch,
    // typing
    UnknownType,
    UnknownVariable,
    DuplicateVariable,
    NoSuchOperation,
    AmbiguousReturnOverload,
    ArityMismatch,
    TypeMismatch,
    EqualityTypeMismatch,
    MissingValueOnPath,
    ValueInProcedure,
    ValueOutsideFunction,
    AssertOutsideAxiom,
    NotAssignable,
    ProcedureInExpression,
    FunctionInCallStatement,
    CannotInferType,
    // modes and guards
    WriteToObs,
    ReadBeforeAssign,
    OutNotAssigned,
    AliasedArgument,
    GuardNotPredicate,
    GuardReferencesNonParameter,
    // warnings
    UnusedVariable,
    UnreachableStatement,
    // backends and oracles
    UnsupportedBackend,
    BackendMismatch,
    MissingEqualityHook,
    MissingGenerator,
    HostSymbolClash,
    SatisfactionNotSyntacticallyValid,
    TargetNotExecutable,
}

impl DiagKind {
    pub fn name(self) -> &'static str {
        use DiagKind::*;
        match self {
            SyntaxError => "SyntaxError",
            UnknownModule => "UnknownModule",
            DuplicateModule => "DuplicateModule",
            NotAModuleExpression => "NotAModuleExpression",
            CyclicUse => "CyclicUse",
            UnknownRenameSource => "UnknownRenameSource",
            RenameCollision => "RenameCollision",
            ConflictingDefinition => "ConflictingDefinition",
            KindMismatch => "KindMismatch",
            UnfulfilledRequirement => "UnfulfilledRequirement",
            MissingBody => "MissingBody",
            MissingType => "MissingType",
            MissingOperation => "MissingOperation",
            SignatureMismatch => "SignatureMismatch",
            UnknownType => "UnknownType",
            UnknownVariable => "UnknownVariable",
            DuplicateVariable => "DuplicateVariable",
            NoSuchOperation => "NoSuchOperation",
            AmbiguousReturnOverload => "AmbiguousReturnOverload",
            ArityMismatch => "ArityMismatch",
            TypeMismatch => "TypeMismatch",
            EqualityTypeMismatch => "EqualityTypeMismatch",
            MissingValueOnPath => "MissingValueOnPath",
            ValueInProcedure => "ValueInProcedure",
            ValueOutsideFunction => "ValueOutsideFunction",
            AssertOutsideAxiom => "AssertOutsideAxiom",
            NotAssignable => "NotAssignable",
            ProcedureInExpression => "ProcedureInExpression",
            FunctionInCallStatement => "FunctionInCallStatement",
            CannotInferType => "CannotInferType",
            WriteToObs => "WriteToObs",
            ReadBeforeAssign => "ReadBeforeAssign",
            OutNotAssigned => "OutNotAssigned",
            AliasedArgument => "AliasedArgument",
            GuardNotPredicate => "GuardNotPredicate",
            GuardReferencesNonParameter => "GuardReferencesNonParameter",
            UnusedVariable => "UnusedVariable",
            UnreachableStatement => "UnreachableStatement",
            UnsupportedBackend => "UnsupportedBackend",
            BackendMismatch => "BackendMismatch",
            MissingEqualityHook => "MissingEqualityHook",
            MissingGenerator => "MissingGenerator",
            HostSymbolClash => "HostSymbolClash",
            SatisfactionNotSyntacticallyValid => "SatisfactionNotSyntacticallyValid",
            TargetNotExecutable => "TargetNotExecutable",
        }
    }
}

impl fmt::Display for DiagKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub kind: DiagKind,
    pub message: String,
    pub span: Option<Span>,
}

impl Diagnostic {
    pub fn error(kind: DiagKind, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            kind,
            message: message.into(),
            span: None,
        }
    }

    pub fn warning(kind: DiagKind, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            kind,
            message: message.into(),
            span: None,
        }
    }

    pub fn at(mut self, span: Span) -> Self {
        self.span = Some(span);
        self
    }

    pub fn at_opt(mut self, span: Option<Span>) -> Self {
        self.span = span;
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// `path:line:col: error: message`; diagnostics without a location omit
    /// the position prefix.
    pub fn render(&self, sources: &SourceMap) -> String {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        match self.span {
            Some(span) if (span.file.0 as usize) < sources.len() => {
                let lc = sources.line_col(span.file, span.start);
                format!(
                    "{}:{}:{}: {}: {}",
                    sources.path(span.file).display(),
                    lc.line,
                    lc.col,
                    sev,
                    self.message
                )
            }
            _ => format!("{}: {}", sev, self.message),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

/// Ordered collection of diagnostics.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, d: Diagnostic) {
        self.0.push(d);
    }

    pub fn extend(&mut self, other: impl IntoIterator<Item = Diagnostic>) {
        self.0.extend(other);
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn has_errors(&self) -> bool {
        self.0.iter().any(Diagnostic::is_error)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Diagnostic> {
        self.0.iter()
    }

    pub fn kinds(&self) -> Vec<DiagKind> {
        self.0.iter().map(|d| d.kind).collect()
    }

    /// Turns warnings into errors (`--deny-warnings`).
    pub fn deny_warnings(&mut self) {
        for d in &mut self.0 {
            d.severity = Severity::Error;
        }
    }

    pub fn render(&self, sources: &SourceMap) -> String {
        let mut out = String::new();
        for d in &self.0 {
            out.push_str(&d.render(sources));
            out.push('\n');
        }
        out
    }
}

impl IntoIterator for Diagnostics {
    type Item = Diagnostic;
    type IntoIter = std::vec::IntoIter<Diagnostic>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a Diagnostics {
    type Item = &'a Diagnostic;
    type IntoIter = std::slice::Iter<'a, Diagnostic>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl From<Diagnostic> for Diagnostics {
    fn from(d: Diagnostic) -> Self {
        Diagnostics(vec![d])
    }
}

impl FromIterator<Diagnostic> for Diagnostics {
    fn from_iter<T: IntoIterator<Item = Diagnostic>>(iter: T) -> Self {
        Diagnostics(iter.into_iter().collect())
    }
}
