use std::path::PathBuf;

use super::*;
use crate::interp::{mutants, reference_host};
use crate::modsys::ModuleEnv;

fn corpus() -> ModuleEnv {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let (env, d) = ModuleEnv::load(&[], &[dir]).unwrap();
    assert!(!d.has_errors(), "{d:?}");
    env
}

fn run(env: &ModuleEnv, sat: &str, host: &HostLibrary, budget: usize) -> OracleReport {
    let mut fl = Flattener::new(env);
    let suite = generate_oracles(sat, &mut fl).unwrap();
    let cfg = RunConfig {
        budget,
        ..RunConfig::default()
    };
    run_oracles(&suite, host, &cfg, env.sources()).unwrap()
}

fn mutant(name: &str) -> HostLibrary {
    let m = mutants().into_iter().find(|m| m.name == name).unwrap();
    (m.apply)(reference_host())
}

#[test]
fn add_semigroup_passes_exhaustively() {
    let env = corpus();
    let r = run(
        &env,
        "ExampleProgramHasAddSemigroup",
        &reference_host(),
        5000,
    );
    assert!(r.ok(), "{}", r.to_text());
    let o = r.result("bopIsAssociative").unwrap();
    assert_eq!((o.attempted, o.fail, o.discard), (17 * 17 * 17, 0, 0));
}

#[test]
fn subtracting_add_is_caught_with_a_witness() {
    let env = corpus();
    let r = run(
        &env,
        "ExampleProgramHasAddSemigroup",
        &mutant("add-subtracts"),
        5000,
    );
    let o = r.result("bopIsAssociative").unwrap();
    assert_eq!(o.verdict, Verdict::Fail);
    assert!(o.fail > 0);
    let w = o.witness.as_ref().unwrap();
    assert_eq!(w.len(), 3);
    assert!(o
        .failed_assert
        .as_ref()
        .unwrap()
        .contains("building_blocks.mg:"));
    // The reported witness really is a counterexample.
    let vals: Vec<i64> = w
        .iter()
        .map(|s| s.split(" = ").nth(1).unwrap().parse().unwrap())
        .collect();
    assert_ne!(vals[0] - (vals[1] - vals[2]), (vals[0] - vals[1]) - vals[2]);
}

#[test]
fn stack_program_passes_and_its_mutant_fails() {
    let env = corpus();
    let ok = run(&env, "IntStackProgramIsStack", &reference_host(), 1000);
    assert!(ok.ok(), "{}", ok.to_text());
    let bad = run(
        &env,
        "IntStackProgramIsStack",
        &mutant("stack-pops-bottom"),
        1000,
    );
    assert_eq!(
        bad.result("pushPopTopBehavior").unwrap().verdict,
        Verdict::Fail
    );
}

#[test]
fn sampling_is_reproducible() {
    let env = corpus();
    let a = run(
        &env,
        "ExampleProgramHasMulSemigroup",
        &mutant("mul-off-by-one"),
        100,
    );
    let b = run(
        &env,
        "ExampleProgramHasMulSemigroup",
        &mutant("mul-off-by-one"),
        100,
    );
    assert_eq!(a, b);
    assert_eq!(a.results[0].attempted, 100);
}

#[test]
fn sampled_inputs_follow_the_seeded_stream() {
    let d = vec![vec![Value::Int(0), Value::Int(1), Value::Int(2)]; 3];
    let xs = inputs(&d, 5, 7, "o");
    let mut rng = SplitMix64::new(7 ^ fnv1a64(b"o"));
    for x in &xs {
        for v in x {
            assert_eq!(v.as_int(), Some((rng.next_u64() % 3) as i64));
        }
    }
    assert_eq!(inputs(&d, 27, 0, "o").len(), 27);
    assert_eq!(
        inputs(&d, 27, 0, "o")[1],
        vec![Value::Int(0), Value::Int(0), Value::Int(1)]
    );
}

#[test]
fn lists_axioms_in_flatten_order() {
    let env = corpus();
    let mut fl = Flattener::new(&env);
    assert_eq!(
        list_axioms("Semigroup", &mut fl).unwrap(),
        vec![("bopIsAssociative".to_string(), vec!["T".to_string(); 3])]
    );
    assert!(list_axioms("Magma", &mut fl).unwrap().is_empty());
    let names: Vec<String> = list_axioms("Stack", &mut fl)
        .unwrap()
        .into_iter()
        .map(|a| a.0)
        .collect();
    assert!(names.contains(&"pushPopTopBehavior".to_string()));
    assert!(names.contains(&"emptyIsEmpty".to_string()));
}

#[test]
fn bad_satisfaction_names_are_diagnosed() {
    let env = corpus();
    let mut fl = Flattener::new(&env);
    let e = generate_oracles("Nope", &mut fl).unwrap_err();
    assert!(e.iter().any(|d| d.kind == DiagKind::UnknownModule));
    let e = generate_oracles("Stack", &mut fl).unwrap_err();
    assert!(e.iter().any(|d| d.kind == DiagKind::NotAModuleExpression));
}

#[test]
fn report_renders_both_ways() {
    let env = corpus();
    let r = run(
        &env,
        "ExampleProgramHasAddSemigroup",
        &mutant("add-subtracts"),
        5000,
    );
    assert!(r.to_text().contains("bopIsAssociative"));
    assert!(r.to_text().contains("witness: t1 = "));
    let j: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(j["results"][0]["verdict"], "fail");
}
