//! Canonical source rendering of ASTs. `parse(pretty(m))` yields `m` up to spans.

use std::fmt::{self, Write};

use super::ast::*;

pub fn pretty_modules(modules: &[AstModule]) -> String {
    let mut out = String::new();
    for (i, m) in modules.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        pretty_module(&mut out, m);
    }
    out
}

pub fn pretty_module(out: &mut String, m: &AstModule) {
    match &m.body {
        ModuleBody::Satisfaction { lhs, rhs } => {
            let _ = writeln!(out, "satisfaction {} =\n  {} models {};", m.name, lhs, rhs);
        }
        ModuleBody::Decls(decls) => {
            let _ = write!(out, "{} {} = ", m.kind, m.name);
            if let Some(ext) = &m.external {
                let _ = write!(out, "external {} {} ", ext.backend, ext.host_path);
            }
            out.push_str("{\n");
            for d in decls {
                pretty_decl(out, d, 1);
            }
            out.push_str("}\n");
        }
    }
}

fn indent(out: &mut String, level: usize) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn pretty_decl(out: &mut String, d: &AstDecl, level: usize) {
    indent(out, level);
    match d {
        AstDecl::Type(t) => {
            if t.required {
                out.push_str("require ");
            }
            let _ = writeln!(out, "type {};", t.name);
        }
        AstDecl::Use(u) => {
            let _ = writeln!(out, "use {u};");
        }
        AstDecl::Op(o) => {
            if o.required {
                out.push_str("require ");
            }
            let _ = write!(out, "{} {}(", o.kind, o.name);
            write_params(out, &o.params, o.kind == OpKind::Procedure);
            out.push(')');
            if let Some(r) = &o.ret {
                let _ = write!(out, ": {r}");
            }
            if let Some(g) = &o.guard {
                let _ = write!(out, " guard {g}");
            }
            match &o.body {
                None => out.push_str(";\n"),
                Some(b) => {
                    out.push(' ');
                    pretty_block(out, b, level);
                    out.push('\n');
                }
            }
        }
        AstDecl::Axiom(a) => {
            let _ = write!(out, "axiom {}(", a.name);
            write_params(out, &a.params, false);
            out.push_str(") ");
            pretty_block(out, &a.body, level);
            out.push('\n');
        }
    }
}

fn write_params(out: &mut String, params: &[Param], modes: bool) {
    for (i, p) in params.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        if modes {
            let _ = write!(out, "{} ", p.mode);
        }
        let _ = write!(out, "{}: {}", p.name, p.ty);
    }
}

/// Writes `{ ... }` starting at the current column; closing brace at `level`.
pub fn pretty_block(out: &mut String, b: &Block, level: usize) {
    out.push_str("{\n");
    for s in &b.stmts {
        indent(out, level + 1);
        pretty_stmt(out, s, level + 1);
        out.push('\n');
    }
    indent(out, level);
    out.push('}');
}

fn pretty_stmt(out: &mut String, s: &AstStmt, level: usize) {
    match &s.kind {
        StmtKind::Var { name, ty, init } => {
            let _ = write!(out, "var {name}");
            if let Some(t) = ty {
                let _ = write!(out, ": {t}");
            }
            if let Some(e) = init {
                let _ = write!(out, " = {e}");
            }
            out.push(';');
        }
        StmtKind::Assign { name, value } => {
            let _ = write!(out, "{name} = {value};");
        }
        StmtKind::Call { name, args } => {
            let _ = write!(out, "call {name}(");
            write_args(out, args);
            out.push_str(");");
        }
        StmtKind::If { .. } => {
            pretty_if(out, s, level);
            out.push(';');
        }
        StmtKind::Assert(e) => {
            let _ = write!(out, "assert {e};");
        }
        StmtKind::Value(e) => {
            let _ = write!(out, "value {e};");
        }
        StmtKind::Block(b) => {
            pretty_block(out, b, level);
        }
    }
}

fn pretty_if(out: &mut String, s: &AstStmt, level: usize) {
    let StmtKind::If {
        cond,
        then_block,
        else_branch,
    } = &s.kind
    else {
        unreachable!("pretty_if on a non-if statement")
    };
    let _ = write!(out, "if {cond} then ");
    pretty_block(out, then_block, level);
    match else_branch {
        None => {}
        Some(ElseBranch::Block(b)) => {
            out.push_str(" else ");
            pretty_block(out, b, level);
        }
        Some(ElseBranch::If(inner)) => {
            out.push_str(" else ");
            pretty_if(out, inner, level);
        }
    }
}

fn write_args(out: &mut String, args: &[AstExpr]) {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{a}");
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.renaming.is_empty() {
            f.write_str("[ ")?;
            for (i, p) in self.renaming.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{} => {}", p.from, p.to)?;
            }
            f.write_str(" ]")?;
        }
        Ok(())
    }
}

// Precedence levels: 0 = `&&`, 1 = `==`, 2 = unary/primary.
fn write_expr(f: &mut fmt::Formatter<'_>, e: &AstExpr, min_prec: u8) -> fmt::Result {
    let prec = match &e.kind {
        ExprKind::And(..) => 0,
        ExprKind::Eq(..) => 1,
        _ => 2,
    };
    let paren = prec < min_prec;
    if paren {
        f.write_str("(")?;
    }
    match &e.kind {
        ExprKind::Var(n) => f.write_str(n)?,
        ExprKind::Call {
            name,
            args,
            annotation,
        } => {
            write!(f, "{name}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write_expr(f, a, 0)?;
            }
            f.write_str(")")?;
            if let Some(t) = annotation {
                write!(f, ": {t}")?;
            }
        }
        ExprKind::Annotated { expr, ty } => {
            // The inner expression is never a call (calls absorb annotations),
            // so only variables print bare.
            match &expr.kind {
                ExprKind::Var(n) => f.write_str(n)?,
                _ => {
                    f.write_str("(")?;
                    write_expr(f, expr, 0)?;
                    f.write_str(")")?;
                }
            }
            write!(f, ": {ty}")?;
        }
        ExprKind::Eq(a, b) => {
            write_expr(f, a, 2)?;
            f.write_str(" == ")?;
            write_expr(f, b, 2)?;
        }
        ExprKind::Not(inner) => {
            f.write_str("!")?;
            write_expr(f, inner, 2)?;
        }
        ExprKind::And(a, b) => {
            write_expr(f, a, 0)?;
            f.write_str(" && ")?;
            write_expr(f, b, 1)?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for AstExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self, 0)
    }
}
