//! Recursive descent parser for `.mg` sources.
//!
//! ```text
//! file       := module*
//! module     := "satisfaction" IDENT "=" modexpr "models" modexpr ";"
//!             | kind IDENT "=" ["external" IDENT path] "{" decl* "}" [";"]
//! modexpr    := IDENT ["[" IDENT "=>" IDENT ("," IDENT "=>" IDENT)* [","] "]"]
//! decl       := "use" modexpr ";"
//!             | ["require"] "type" IDENT ";"
//!             | ["require"] opdecl
//!             | "axiom" IDENT "(" params ")" block [";"]
//! opdecl     := "function" IDENT "(" params ")" ":" IDENT [guard] opbody
//!             | "predicate" IDENT "(" params ")" [guard] opbody
//!             | "procedure" IDENT "(" mparams ")" [guard] opbody
//! opbody     := ";" | ["="] block [";"]
//! stmt       := "var" IDENT [":" IDENT] ["=" expr] ";"
//!             | IDENT "=" expr ";"
//!             | "call" IDENT "(" args ")" ";"
//!             | "if" expr "then" block ["else" (block | if)] [";"]
//!             | "assert" expr ";" | "value" expr ";" | block [";"]
//! expr       := eq ("&&" eq)*
//! eq         := unary ["==" unary]
//! unary      := "!" unary | primary [":" IDENT]
//! primary    := IDENT ["(" args ")"] | "(" expr ")"
//! ```

use thiserror::Error;

use super::ast::*;
use super::lexer::{tokenize, Token, TokenKind};
use crate::diag::{DiagKind, Diagnostic, Diagnostics};
use crate::source::{FileId, Span};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{message}")]
pub struct ParseError {
    pub message: String,
    /// Offending source text (empty at end of file).
    pub lexeme: String,
    pub span: Span,
}

impl ParseError {
    pub fn into_diagnostic(self) -> Diagnostic {
        let msg = if self.lexeme.is_empty() {
            self.message
        } else {
            format!("{} (found `{}`)", self.message, self.lexeme)
        };
        Diagnostic::error(DiagKind::SyntaxError, msg).at(self.span)
    }
}

type PResult<T> = Result<T, ParseError>;

/// Parses a whole file into modules, in source order.
pub fn parse(file: FileId, text: &str) -> Result<Vec<AstModule>, Diagnostics> {
    let tokens = tokenize(file, text).map_err(|e| {
        Diagnostics::from(
            ParseError {
                message: e.message,
                lexeme: e.lexeme,
                span: e.span,
            }
            .into_diagnostic(),
        )
    })?;
    let mut p = Parser::new(text, tokens);
    let mut modules = Vec::new();
    let mut diags = Diagnostics::new();
    while !p.at(&TokenKind::Eof) {
        match p.module() {
            Ok(m) => modules.push(m),
            Err(e) => {
                diags.push(e.into_diagnostic());
                p.recover_to_module();
            }
        }
    }
    if diags.is_empty() {
        Ok(modules)
    } else {
        Err(diags)
    }
}

/// Parses a single expression, keeping `: T` annotations.
pub fn parse_expr_annotated(file: FileId, text: &str) -> Result<AstExpr, ParseError> {
    let tokens = tokenize(file, text).map_err(|e| ParseError {
        message: e.message,
        lexeme: e.lexeme,
        span: e.span,
    })?;
    let mut p = Parser::new(text, tokens);
    let e = p.expr()?;
    p.expect(TokenKind::Eof, "end of expression")?;
    Ok(e)
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, tokens: Vec<Token>) -> Self {
        Parser {
            text,
            tokens,
            pos: 0,
        }
    }

    fn peek(&self) -> &TokenKind {
        &self.tokens[self.pos].kind
    }

    fn peek_at(&self, n: usize) -> &TokenKind {
        let i = (self.pos + n).min(self.tokens.len() - 1);
        &self.tokens[i].kind
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    fn prev_span(&self) -> Span {
        self.tokens[self.pos.saturating_sub(1)].span
    }

    fn at(&self, k: &TokenKind) -> bool {
        self.peek() == k
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, k: &TokenKind) -> bool {
        if self.at(k) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        let tok = &self.tokens[self.pos];
        let lexeme = self.text[tok.span.start as usize..tok.span.end as usize].to_string();
        ParseError {
            message: format!("expected {expected}, found {}", tok.kind),
            lexeme,
            span: tok.span,
        }
    }

    fn expect(&mut self, k: TokenKind, expected: &str) -> PResult<Span> {
        if self.at(&k) {
            Ok(self.bump().span)
        } else {
            Err(self.error(expected))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Span)> {
        match self.peek().clone() {
            TokenKind::Ident(name) => {
                let span = self.bump().span;
                Ok((name, span))
            }
            _ => Err(self.error(what)),
        }
    }

    fn recover_to_module(&mut self) {
        self.bump();
        while !matches!(
            self.peek(),
            TokenKind::Eof
                | TokenKind::Signature
                | TokenKind::Concept
                | TokenKind::Implementation
                | TokenKind::Program
                | TokenKind::Satisfaction
        ) {
            self.bump();
        }
    }

    fn module(&mut self) -> PResult<AstModule> {
        let start = self.span();
        let kind = match self.peek() {
            TokenKind::Signature => ModuleKind::Signature,
            TokenKind::Concept => ModuleKind::Concept,
            TokenKind::Implementation => ModuleKind::Implementation,
            TokenKind::Program => ModuleKind::Program,
            TokenKind::Satisfaction => ModuleKind::Satisfaction,
            _ => return Err(self.error("a module declaration")),
        };
        self.bump();
        let (name, _) = self.ident("a module name")?;
        self.expect(TokenKind::Assign, "`=`")?;

        if kind == ModuleKind::Satisfaction {
            let lhs = self.module_expr()?;
            self.expect(TokenKind::Models, "`models`")?;
            let rhs = self.module_expr()?;
            self.expect(TokenKind::Semi, "`;`")?;
            return Ok(AstModule {
                kind,
                name,
                external: None,
                body: ModuleBody::Satisfaction { lhs, rhs },
                span: start.to(self.prev_span()),
            });
        }

        let external = if self.at(&TokenKind::External) {
            let ext_span = self.bump().span;
            if !matches!(kind, ModuleKind::Implementation | ModuleKind::Program) {
                return Err(ParseError {
                    message: format!("a {kind} cannot be external"),
                    lexeme: "external".into(),
                    span: ext_span,
                });
            }
            let (backend, _) = self.ident("a backend name")?;
            let host_path = self.dotted_path()?;
            Some(ExternalTag { backend, host_path })
        } else {
            None
        };

        self.expect(TokenKind::LBrace, "`{`")?;
        let mut decls = Vec::new();
        while !self.at(&TokenKind::RBrace) {
            if self.at(&TokenKind::Eof) {
                return Err(self.error("`}`"));
            }
            let d = self.decl()?;
            self.validate_decl(kind, external.is_some(), &d)?;
            decls.push(d);
        }
        self.bump();
        self.eat(&TokenKind::Semi);
        Ok(AstModule {
            kind,
            name,
            external,
            body: ModuleBody::Decls(decls),
            span: start.to(self.prev_span()),
        })
    }

    fn validate_decl(&self, kind: ModuleKind, external: bool, d: &AstDecl) -> PResult<()> {
        let fail = |message: String, span: Span| {
            Err(ParseError {
                message,
                lexeme: self.text[span.start as usize..span.end as usize]
                    .split_whitespace()
                    .take(2)
                    .collect::<Vec<_>>()
                    .join(" "),
                span,
            })
        };
        match d {
            AstDecl::Axiom(a) if kind == ModuleKind::Signature => {
                fail("a signature may not contain axioms".into(), a.span)
            }
            AstDecl::Axiom(a) if external => {
                fail("an external block may not contain axioms".into(), a.span)
            }
            AstDecl::Op(o) if o.body.is_some() && kind == ModuleKind::Signature => fail(
                "a signature may not contain operation bodies".into(),
                o.span,
            ),
            AstDecl::Op(o) if o.body.is_some() && kind == ModuleKind::Concept => {
                fail("a concept may not contain operation bodies".into(), o.span)
            }
            AstDecl::Op(o) if o.body.is_some() && external => fail(
                "an external block may only contain declarations and `use`".into(),
                o.span,
            ),
            _ => Ok(()),
        }
    }

    fn dotted_path(&mut self) -> PResult<String> {
        let (mut path, _) = self.ident("a host path")?;
        while self.eat(&TokenKind::Dot) {
            let (seg, _) = self.ident("a host path segment")?;
            path.push('.');
            path.push_str(&seg);
        }
        Ok(path)
    }

    fn module_expr(&mut self) -> PResult<ModuleExpr> {
        let (name, start) = self.ident("a module name")?;
        let mut renaming: Vec<RenamePair> = Vec::new();
        if self.eat(&TokenKind::LBracket) {
            loop {
                if self.at(&TokenKind::RBracket) {
                    break;
                }
                let (from, fspan) = self.ident("a name to rename")?;
                self.expect(TokenKind::FatArrow, "`=>` in renaming")?;
                let (to, tspan) = self.ident("a renaming target")?;
                if renaming.iter().any(|p| p.from == from) {
                    return Err(ParseError {
                        message: format!("`{from}` is renamed twice in one renaming list"),
                        lexeme: from,
                        span: fspan,
                    });
                }
                renaming.push(RenamePair {
                    from,
                    to,
                    span: fspan.to(tspan),
                });
                if !self.eat(&TokenKind::Comma) {
                    break;
                }
            }
            self.expect(TokenKind::RBracket, "`,` or `]` in renaming")?;
        }
        Ok(ModuleExpr {
            name,
            renaming,
            span: start.to(self.prev_span()),
        })
    }

    fn decl(&mut self) -> PResult<AstDecl> {
        let start = self.span();
        match self.peek() {
            TokenKind::Use => {
                self.bump();
                let mut e = self.module_expr()?;
                self.expect(TokenKind::Semi, "`;`")?;
                e.span = start.to(self.prev_span());
                Ok(AstDecl::Use(e))
            }
            TokenKind::Axiom => {
                self.bump();
                let (name, _) = self.ident("an axiom name")?;
                let params = self.params(false)?;
                let body = self.block()?;
                self.eat(&TokenKind::Semi);
                Ok(AstDecl::Axiom(AxiomDecl {
                    name,
                    params,
                    body,
                    span: start.to(self.prev_span()),
                }))
            }
            _ => {
                let required = self.eat(&TokenKind::Require);
                match self.peek() {
                    TokenKind::Type => {
                        self.bump();
                        let (name, _) = self.ident("a type name")?;
                        self.expect(TokenKind::Semi, "`;`")?;
                        Ok(AstDecl::Type(TypeDecl {
                            name,
                            required,
                            span: start.to(self.prev_span()),
                        }))
                    }
                    TokenKind::Function | TokenKind::Procedure | TokenKind::Predicate => {
                        self.op_decl(required, start).map(AstDecl::Op)
                    }
                    _ if required => {
                        Err(self.error("`type`, `function`, `procedure` or `predicate`"))
                    }
                    _ => Err(self.error("a declaration")),
                }
            }
        }
    }

    fn op_decl(&mut self, required: bool, start: Span) -> PResult<OpDecl> {
        let kind = match self.bump().kind {
            TokenKind::Function => OpKind::Function,
            TokenKind::Procedure => OpKind::Procedure,
            _ => OpKind::Predicate,
        };
        let (name, _) = self.ident("an operation name")?;
        let params = self.params(kind == OpKind::Procedure)?;
        let ret = if kind == OpKind::Function {
            self.expect(TokenKind::Colon, "`:` and a return type")?;
            Some(self.ident("a return type")?.0)
        } else {
            None
        };
        let guard = if self.eat(&TokenKind::Guard) {
            Some(self.expr()?)
        } else {
            None
        };
        let body = if self.eat(&TokenKind::Semi) {
            None
        } else {
            self.eat(&TokenKind::Assign);
            if !self.at(&TokenKind::LBrace) {
                return Err(self.error("`;` or an operation body"));
            }
            let b = self.block()?;
            self.eat(&TokenKind::Semi);
            Some(b)
        };
        let span = start.to(self.prev_span());
        if required && body.is_some() {
            return Err(ParseError {
                message: "a required operation cannot have a body".into(),
                lexeme: name,
                span,
            });
        }
        Ok(OpDecl {
            kind,
            name,
            params,
            ret,
            guard,
            body,
            required,
            span,
        })
    }

    fn params(&mut self, with_modes: bool) -> PResult<Vec<Param>> {
        self.expect(TokenKind::LParen, "`(`")?;
        let mut params = Vec::new();
        if !self.at(&TokenKind::RParen) {
            loop {
                let start = self.span();
                let mode = match self.peek() {
                    TokenKind::Obs | TokenKind::Upd | TokenKind::Out if !with_modes => {
                        return Err(ParseError {
                            message: "only procedure parameters carry modes".into(),
                            lexeme: self.peek().to_string().trim_matches('`').to_string(),
                            span: self.span(),
                        })
                    }
                    TokenKind::Obs => Mode::Obs,
                    TokenKind::Upd => Mode::Upd,
                    TokenKind::Out => Mode::Out,
                    _ if with_modes => {
                        return Err(self.error("a parameter mode (`obs`, `upd` or `out`)"))
                    }
                    _ => Mode::Obs,
                };
                if with_modes {
                    self.bump();
                }
                let (name, _) = self.ident("a parameter name")?;
                self.expect(TokenKind::Colon, "`:`")?;
                let (ty, _) = self.ident("a parameter type")?;
                params.push(Param {
                    name,
                    mode,
                    ty,
                    span: start.to(self.prev_span()),
                });
                if !self.eat(&TokenKind::Comma) {
                    break;
                }
            }
        }
        self.expect(TokenKind::RParen, "`,` or `)`")?;
        Ok(params)
    }

    fn block(&mut self) -> PResult<Block> {
        let start = self.expect(TokenKind::LBrace, "`{`")?;
        let mut stmts = Vec::new();
        while !self.at(&TokenKind::RBrace) {
            if self.at(&TokenKind::Eof) {
                return Err(self.error("`}`"));
            }
            stmts.push(self.stmt()?);
        }
        self.bump();
        Ok(Block {
            stmts,
            span: start.to(self.prev_span()),
        })
    }

    fn stmt(&mut self) -> PResult<AstStmt> {
        let start = self.span();
        let kind = match self.peek().clone() {
            TokenKind::Var => {
                self.bump();
                let (name, _) = self.ident("a variable name")?;
                let ty = if self.eat(&TokenKind::Colon) {
                    Some(self.ident("a type")?.0)
                } else {
                    None
                };
                let init = if self.eat(&TokenKind::Assign) {
                    Some(self.expr()?)
                } else {
                    None
                };
                self.expect(TokenKind::Semi, "`;`")?;
                StmtKind::Var { name, ty, init }
            }
            TokenKind::Call => {
                self.bump();
                let (name, _) = self.ident("a procedure name")?;
                let args = self.args()?;
                self.expect(TokenKind::Semi, "`;`")?;
                StmtKind::Call { name, args }
            }
            TokenKind::If => {
                let s = self.if_stmt()?;
                self.eat(&TokenKind::Semi);
                return Ok(AstStmt {
                    kind: s.kind,
                    span: start.to(self.prev_span()),
                });
            }
            TokenKind::Assert => {
                self.bump();
                let e = self.expr()?;
                self.expect(TokenKind::Semi, "`;`")?;
                StmtKind::Assert(e)
            }
            TokenKind::Value => {
                self.bump();
                let e = self.expr()?;
                self.expect(TokenKind::Semi, "`;`")?;
                StmtKind::Value(e)
            }
            TokenKind::LBrace => {
                let b = self.block()?;
                self.eat(&TokenKind::Semi);
                StmtKind::Block(b)
            }
            TokenKind::Ident(name) if self.peek_at(1) == &TokenKind::Assign => {
                self.bump();
                self.bump();
                let value = self.expr()?;
                self.expect(TokenKind::Semi, "`;`")?;
                StmtKind::Assign { name, value }
            }
            TokenKind::Ident(_) if self.peek_at(1) == &TokenKind::LParen => {
                return Err(ParseError {
                    message: "procedure calls need `call`; function results must be used".into(),
                    lexeme: self.peek().to_string(),
                    span: self.span(),
                })
            }
            _ => return Err(self.error("a statement")),
        };
        Ok(AstStmt {
            kind,
            span: start.to(self.prev_span()),
        })
    }

    fn if_stmt(&mut self) -> PResult<AstStmt> {
        let start = self.expect(TokenKind::If, "`if`")?;
        let cond = self.expr()?;
        self.expect(TokenKind::Then, "`then`")?;
        let then_block = self.block()?;
        let else_branch = if self.eat(&TokenKind::Else) {
            if self.at(&TokenKind::If) {
                Some(ElseBranch::If(Box::new(self.if_stmt()?)))
            } else {
                Some(ElseBranch::Block(self.block()?))
            }
        } else {
            None
        };
        Ok(AstStmt {
            kind: StmtKind::If {
                cond,
                then_block,
                else_branch,
            },
            span: start.to(self.prev_span()),
        })
    }

    fn args(&mut self) -> PResult<Vec<AstExpr>> {
        self.expect(TokenKind::LParen, "`(`")?;
        let mut args = Vec::new();
        if !self.at(&TokenKind::RParen) {
            loop {
                args.push(self.expr()?);
                if !self.eat(&TokenKind::Comma) {
                    break;
                }
            }
        }
        self.expect(TokenKind::RParen, "`,` or `)`")?;
        Ok(args)
    }

    fn expr(&mut self) -> PResult<AstExpr> {
        let mut lhs = self.eq_expr()?;
        while self.eat(&TokenKind::AndAnd) {
            let rhs = self.eq_expr()?;
            let span = lhs.span.to(rhs.span);
            lhs = AstExpr {
                kind: ExprKind::And(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn eq_expr(&mut self) -> PResult<AstExpr> {
        let lhs = self.unary()?;
        if self.eat(&TokenKind::EqEq) {
            let rhs = self.unary()?;
            if self.at(&TokenKind::EqEq) {
                return Err(self.error("`&&` or end of expression (`==` does not chain)"));
            }
            let span = lhs.span.to(rhs.span);
            return Ok(AstExpr {
                kind: ExprKind::Eq(Box::new(lhs), Box::new(rhs)),
                span,
            });
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<AstExpr> {
        if self.at(&TokenKind::Bang) {
            let start = self.bump().span;
            let inner = self.unary()?;
            let span = start.to(inner.span);
            return Ok(AstExpr {
                kind: ExprKind::Not(Box::new(inner)),
                span,
            });
        }
        let mut e = self.primary()?;
        if self.eat(&TokenKind::Colon) {
            let (ty, tspan) = self.ident("a type annotation")?;
            let span = e.span.to(tspan);
            e = match e.kind {
                ExprKind::Call {
                    name,
                    args,
                    annotation: None,
                } => AstExpr {
                    kind: ExprKind::Call {
                        name,
                        args,
                        annotation: Some(ty),
                    },
                    span,
                },
                other => AstExpr {
                    kind: ExprKind::Annotated {
                        expr: Box::new(AstExpr {
                            kind: other,
                            span: e.span,
                        }),
                        ty,
                    },
                    span,
                },
            };
        }
        Ok(e)
    }

    fn primary(&mut self) -> PResult<AstExpr> {
        match self.peek().clone() {
            TokenKind::Ident(name) => {
                let start = self.bump().span;
                if self.at(&TokenKind::LParen) {
                    let args = self.args()?;
                    Ok(AstExpr {
                        kind: ExprKind::Call {
                            name,
                            args,
                            annotation: None,
                        },
                        span: start.to(self.prev_span()),
                    })
                } else {
                    Ok(AstExpr::var(name, start))
                }
            }
            TokenKind::LParen => {
                let start = self.bump().span;
                let mut e = self.expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                e.span = start.to(self.prev_span());
                Ok(e)
            }
            TokenKind::If => Err(ParseError {
                message: "`if` is a statement, not an expression".into(),
                lexeme: "if".into(),
                span: self.span(),
            }),
            _ => Err(self.error("an expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_ok(text: &str) -> Vec<AstModule> {
        parse(FileId(0), text).unwrap_or_else(|d| panic!("{d:?}"))
    }

    fn parse_err(text: &str) -> Diagnostic {
        parse(FileId(0), text).unwrap_err().0.remove(0)
    }

    #[test]
    fn empty_file_has_no_modules() {
        assert!(parse_ok("").is_empty());
        assert!(parse_ok("  // only a comment\n").is_empty());
    }

    #[test]
    fn annotated_call_keeps_annotation() {
        let e = parse_expr_annotated(FileId(0), "empty(): Queue").unwrap();
        match e.kind {
            ExprKind::Call {
                name,
                args,
                annotation,
            } => {
                assert_eq!(name, "empty");
                assert!(args.is_empty());
                assert_eq!(annotation.as_deref(), Some("Queue"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn plain_call_has_no_annotation() {
        let e = parse_expr_annotated(FileId(0), "front(q)").unwrap();
        let ExprKind::Call {
            name,
            args,
            annotation,
        } = e.kind
        else {
            panic!()
        };
        assert_eq!(name, "front");
        assert_eq!(annotation, None);
        assert_eq!(args.len(), 1);
        assert_eq!(args[0].kind, ExprKind::Var("q".into()));
    }

    #[test]
    fn equality_of_nested_calls() {
        let e = parse_expr_annotated(FileId(0), "bop(t1, bop(t2, t3)) == bop(bop(t1, t2), t3)")
            .unwrap();
        let ExprKind::Eq(l, r) = e.kind else { panic!() };
        assert!(matches!(&l.kind, ExprKind::Call { name, .. } if name == "bop"));
        assert!(
            matches!(&r.kind, ExprKind::Call { name, args, .. } if name == "bop"
            && matches!(&args[0].kind, ExprKind::Call { .. }))
        );
    }

    #[test]
    fn precedence_bang_over_eq_over_and() {
        let e = parse_expr_annotated(FileId(0), "!a == b && c").unwrap();
        let ExprKind::And(l, _) = e.kind else {
            panic!()
        };
        let ExprKind::Eq(ll, _) = l.kind else {
            panic!()
        };
        assert!(matches!(ll.kind, ExprKind::Not(_)));
    }

    #[test]
    fn expression_if_is_rejected() {
        assert!(parse_expr_annotated(FileId(0), "if a then b").is_err());
    }

    #[test]
    fn unbalanced_braces_report_location() {
        let d = parse_err("concept C = {\n  type T;\n");
        assert_eq!(d.kind, DiagKind::SyntaxError);
        assert!(d.message.contains("expected `}`"), "{}", d.message);
    }

    #[test]
    fn malformed_renaming() {
        let d = parse_err("program P = { use M[ a => ]; }");
        assert!(d.message.contains("renaming target"), "{}", d.message);
        let d = parse_err("program P = { use M[ a => b, a => c ]; }");
        assert!(d.message.contains("renamed twice"), "{}", d.message);
    }

    #[test]
    fn signature_rejects_axioms() {
        let d = parse_err("signature S = { axiom a() { assert p(); } }");
        assert!(d.message.contains("signature"));
    }

    #[test]
    fn external_block_rejects_bodies() {
        let d = parse_err(
            "implementation I = external Python lib.x { function f(): T { value g(); } }",
        );
        assert!(d.message.contains("external"));
    }

    #[test]
    fn procedure_params_need_modes() {
        let d = parse_err("concept C = { procedure p(x: T); }");
        assert!(d.message.contains("mode"));
        let d = parse_err("concept C = { function f(obs x: T): T; }");
        assert!(d.message.contains("modes"));
    }

    #[test]
    fn recovers_at_next_module() {
        let diags = parse(
            FileId(0),
            "concept A = { type ; }\nconcept B = { oops }\nconcept C = {}",
        )
        .unwrap_err();
        assert_eq!(diags.len(), 2);
    }

    #[test]
    fn spans_lie_within_text() {
        let text = "concept C = { type T; function f(a: T): T guard p(a); }";
        let m = &parse_ok(text)[0];
        assert!((m.span.end as usize) <= text.len());
        let AstDecl::Op(op) = &m.decls()[1] else {
            panic!()
        };
        assert_eq!(
            &text[op.span.start as usize..op.span.end as usize],
            "function f(a: T): T guard p(a);"
        );
    }
}
