//! Canonical text dump of a flattened module, used by golden tests and the
//! `flatten` command.

use std::fmt::Write;

use super::flat::*;
use crate::frontend::pretty::pretty_block;

/// Sorted and deterministic. Layout:
///
/// ```text
/// flat <kind> <name>
/// type <name>
///   status <status>
///   declared in <module>
///     via use <M> [ a => b ]
/// op <signature>
///   ...
/// axiom <name>(<params>)
///   ...
/// ```
pub fn dump_flat(m: &FlatModule) -> String {
    let mut out = format!("flat {} {}\n", m.kind, m.name);
    for t in m.types.values() {
        let _ = writeln!(out, "type {}", t.name);
        status(&mut out, &t.status);
        provenance(&mut out, &t.provenance);
    }
    for op in m.ops.values() {
        let _ = writeln!(out, "op {}", op.sig);
        status(&mut out, &op.status);
        provenance(&mut out, &op.provenance);
        if let Some(b) = op.status.body() {
            out.push_str("  body ");
            pretty_block(&mut out, b, 1);
            out.push('\n');
        }
    }
    let mut axioms: Vec<(String, &FlatAxiom)> = m
        .axioms
        .iter()
        .map(|a| {
            let mut text = String::new();
            pretty_block(&mut text, &a.body, 1);
            (text, a)
        })
        .collect();
    axioms.sort_by(|(ta, a), (tb, b)| (&a.name, ta).cmp(&(&b.name, tb)));
    for (body, a) in axioms {
        let params: Vec<String> = a
            .params
            .iter()
            .map(|p| format!("{}: {}", p.name, p.ty))
            .collect();
        let _ = writeln!(out, "axiom {}({})", a.name, params.join(", "));
        provenance(&mut out, &a.provenance);
        let _ = writeln!(out, "  body {body}");
    }
    out
}

fn status(out: &mut String, s: &Status) {
    match s {
        Status::Required => out.push_str("  status required\n"),
        Status::Declared => out.push_str("  status declared\n"),
        Status::Defined(_) => out.push_str("  status defined\n"),
        Status::External(b) => {
            let _ = writeln!(out, "  status {b}");
            for (local, req) in &b.requirements {
                let _ = writeln!(out, "    with {local} => {req}");
            }
        }
    }
}

fn provenance(out: &mut String, prov: &std::collections::BTreeSet<Provenance>) {
    for p in prov {
        let _ = writeln!(out, "  declared in {}", p.declared_in);
        for step in &p.via {
            let _ = writeln!(out, "    {step}");
        }
    }
}
