//! Emitted Python against the reference interpreter.

use mglite_core::corpus::{
    batch_interp, batch_python, build_python, probe_disagreements, probe_interp, probe_python,
    typed_program, FIXTURES,
};
use mglite_core::frontend::ast::ModuleKind;
use mglite_core::interp::{reference_host, Graph};
use mglite_core::modsys::{Flattener, ModuleEnv};

use super::{corpus, python};

pub const GRAPH_PROGRAMS: &[&str] = &["BFSProgram", "DFSProgram", "DijkstraProgram"];

pub fn programs(env: &ModuleEnv) -> Vec<String> {
    env.modules()
        .filter(|m| m.kind == ModuleKind::Program)
        .map(|m| m.name.clone())
        .collect()
}

/// Every fixture as (file name, text), sorted by name.
pub fn fixtures() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(corpus().join(FIXTURES))
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read_to_string(&p).unwrap(),
            )
        })
        .collect();
    out.sort();
    out
}

/// Probes every program on both engines. Returns the disagreements and
/// the number of calls compared.
pub fn probe_all(env: &ModuleEnv, budget: usize, seed: u64) -> (Vec<String>, usize) {
    let mut fl = Flattener::new(env);
    let host = reference_host();
    let (mut bad, mut total) = (Vec::new(), 0);
    for p in programs(env) {
        let typed = typed_program(&mut fl, &p).unwrap();
        let dir = tempfile::tempdir().unwrap();
        build_python(&mut fl, &p, dir.path(), true).unwrap();
        let ours = probe_interp(&typed, &host, budget, seed);
        let theirs = probe_python(&python(), dir.path(), &p, budget, seed).unwrap();
        if ours.len() != theirs.len() {
            bad.push(format!(
                "{p}: {} interpreter probes, {} python probes",
                ours.len(),
                theirs.len()
            ));
        }
        bad.extend(
            probe_disagreements(&ours, &theirs)
                .into_iter()
                .map(|d| format!("{p}: {d}")),
        );
        total += ours.len();
    }
    (bad, total)
}

/// Runs every graph program from every vertex of every fixture on both
/// engines. Returns the disagreements and the number of runs compared.
pub fn fixtures_all(env: &ModuleEnv) -> (Vec<String>, usize) {
    let mut fl = Flattener::new(env);
    let host = reference_host();
    let fx = fixtures();
    let (mut bad, mut total) = (Vec::new(), 0);
    for p in GRAPH_PROGRAMS {
        let typed = typed_program(&mut fl, p).unwrap();
        let dir = tempfile::tempdir().unwrap();
        build_python(&mut fl, p, dir.path(), true).unwrap();
        let mut calls = Vec::new();
        let mut names = Vec::new();
        for (name, text) in &fx {
            let n = Graph::parse(text).unwrap().num_vertices();
            calls.extend((0..n).map(|s| vec![text.clone(), s.to_string()]));
            names.extend((0..n).map(|s| format!("{name} from {s}")));
        }
        let ours = batch_interp(&typed, &host, "main", &calls, true).unwrap();
        let theirs = batch_python(&python(), dir.path(), &typed, "main", &calls).unwrap();
        if ours.len() != calls.len() || theirs.len() != calls.len() {
            bad.push(format!("{p}: result count mismatch"));
        }
        for ((c, a), b) in names.iter().zip(&ours).zip(&theirs) {
            if !a.agrees(b) {
                bad.push(format!("{p} on {c}: interpreter {a:?}, python {b:?}"));
            }
        }
        total += calls.len();
    }
    (bad, total)
}
