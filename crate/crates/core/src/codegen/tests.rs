use std::path::{Path, PathBuf};
use std::process::Command;

use super::*;
use crate::modsys::ModuleEnv;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus() -> ModuleEnv {
    let (env, d) = ModuleEnv::load(&[], &[root().join("corpus")]).unwrap();
    assert!(!d.has_errors(), "{d:?}");
    env
}

fn built(env: &ModuleEnv, program: &str, guard_checks: bool) -> EmittedProgram {
    let spec = BackendSpec::new(PYTHON).unwrap().guard_checks(guard_checks);
    build(&mut Flattener::new(env), program, &spec).unwrap()
}

fn python(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let path = format!("{}:{}", root().join("hostlib").display(), dir.display());
    let o = Command::new("python3")
        .args(args)
        .current_dir(dir)
        .env("PYTHONPATH", path)
        .output()
        .expect("python3 runs");
    (
        o.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&o.stdout).into_owned(),
        String::from_utf8_lossy(&o.stderr).into_owned(),
    )
}

#[test]
fn unsupported_backend_is_rejected() {
    let e = BackendSpec::new("Cxx").unwrap_err();
    assert_eq!(e.to_diagnostic().kind, DiagKind::UnsupportedBackend);
}

#[test]
fn manifest_lists_every_op_once() {
    let env = corpus();
    for p in ["ExampleProgram", "BFSProgram", "DijkstraProgram"] {
        let out = built(&env, p, true);
        let flat = Flattener::new(&env).flatten(p).unwrap();
        assert_eq!(out.manifest.len(), flat.ops.len());
        let names: std::collections::BTreeSet<_> =
            out.manifest.iter().map(|m| &m.mangled).collect();
        assert_eq!(names.len(), flat.ops.len());
        assert!(out.files["manifest.txt"].lines().count() == flat.ops.len() + 1);
    }
}

#[test]
fn builds_are_deterministic() {
    let env = corpus();
    let a = built(&env, "BFSProgram", true);
    let b = built(&env, "BFSProgram", true);
    assert_eq!(a.files, b.files);
}

#[test]
fn example_program_layout() {
    let env = corpus();
    let out = built(&env, "ExampleProgram", true);
    let keys: Vec<&str> = out.files.keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        vec![
            "ExampleProgram.py",
            "ExampleProgram_oracles.py",
            "manifest.txt",
            "mg_runtime.py"
        ]
    );
    let m = &out.files["manifest.txt"];
    assert!(m.contains(
        "add__int_int__int\tfunction add(int, int): int\texternal Python lib.int_impl.add"
    ));
    assert!(m.contains("timesThree__int__int\tfunction timesThree(int): int\temitted"));
}

#[test]
fn bfs_mirrors_the_loop_structure() {
    let env = corpus();
    let out = built(&env, "BFSProgram", true);
    let text = &out.files["BFSProgram.py"];
    let step = text
        .split("\n\n\n")
        .find(|d| d.starts_with("def bfsOuterLoopStep__"))
        .expect("outer step emitted");
    assert!(step.contains("= bfsInnerLoopRepeat__OutEdgeIterator_VertexList_FIFOQueue_ColorPropertyMap_Graph_VertexDescriptor__("));
    assert!(text.contains("bfsOuterLoopRepeat__VertexList_FIFOQueue_ColorPropertyMap_Graph__ = _I"));
    assert!(text.contains("_rt.load(\"lib.while_loop3_1\")"));
    assert!(text.contains("_rt.load(\"lib.for_loop3_2\")"));
}

#[test]
fn times_three_of_two_is_six() {
    let env = corpus();
    let dir = tempfile::tempdir().unwrap();
    built(&env, "ExampleProgram", true)
        .write_to(dir.path())
        .unwrap();
    let (code, out, err) = python(
        dir.path(),
        &[
            "mg_runtime.py",
            "call",
            "ExampleProgram",
            "timesThree__int__int",
            "--arg",
            "2",
        ],
    );
    assert_eq!((code, out.as_str()), (0, "6\n"), "{err}");
}

#[test]
fn emitted_pop_on_empty_queue_violates_its_guard() {
    let env = corpus();
    let dir = tempfile::tempdir().unwrap();
    built(&env, "IntQueueProgram", true)
        .write_to(dir.path())
        .unwrap();
    let script = "import mg_runtime as rt, IntQueueProgram as P\n\
        try:\n    P.pop__FIFOQueue__(P.empty____FIFOQueue())\nexcept rt.GuardViolation as e:\n    print(e.op)\n";
    let (code, out, err) = python(dir.path(), &["-c", script]);
    assert_eq!((code, out.as_str()), (0, "pop\n"), "{err}");
}

#[test]
fn harnesses_run_green() {
    let env = corpus();
    for p in [
        "ExampleProgram",
        "IntStackProgram",
        "IntQueueProgram",
        "CountdownProgram",
    ] {
        let dir = tempfile::tempdir().unwrap();
        built(&env, p, true).write_to(dir.path()).unwrap();
        let h = format!("{p}_oracles.py");
        let (code, out, err) = python(dir.path(), &[&h, "--budget", "5000", "--seed", "1"]);
        assert_eq!(code, 0, "{p}:\n{out}{err}");
        assert!(out.contains("0 failed"), "{out}");
    }
}

#[test]
fn harness_without_satisfactions_is_empty_and_green() {
    let env = corpus();
    let dir = tempfile::tempdir().unwrap();
    built(&env, "DijkstraProgram", true)
        .write_to(dir.path())
        .unwrap();
    let (code, out, err) = python(dir.path(), &["DijkstraProgram_oracles.py"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("0 oracles"), "{out}");
}
