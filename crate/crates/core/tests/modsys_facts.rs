//! Flattening and satisfaction facts about the corpus.

mod common;

use common::{edited, load};
use mglite_core::modsys::{check_satisfaction, Flattener};
use mglite_core::DiagKind;

#[test]
fn example_program_flattens_to_int_and_four_ops() {
    let env = load();
    let m = Flattener::new(&env).flatten("ExampleProgram").unwrap();
    assert_eq!(m.types.keys().collect::<Vec<_>>(), ["int"]);
    let ops: Vec<&str> = m.ops.keys().map(|k| k.name.as_str()).collect();
    assert_eq!(ops, ["add", "mul", "timesThree", "timesThreeUpdateRef"]);
    assert!(m.axioms.is_empty());
}

#[test]
fn stack_has_five_ops_and_two_axioms() {
    let env = load();
    let m = Flattener::new(&env).flatten("Stack").unwrap();
    assert_eq!(m.ops.len(), 5);
    assert_eq!(m.axioms.len(), 2);
    let mut names: Vec<&str> = m.axioms.iter().map(|a| a.name.as_str()).collect();
    names.sort();
    assert_eq!(names, ["emptyIsEmpty", "pushPopTopBehavior"]);
}

#[test]
fn graph_concept_keeps_membership_out() {
    let env = load();
    let m = Flattener::new(&env).flatten("Graph").unwrap();
    assert_eq!((m.types.len(), m.ops.len(), m.axioms.len()), (3, 2, 0));
}

#[test]
fn building_block_and_cross_satisfactions_hold() {
    let env = load();
    let mut fl = Flattener::new(&env);
    for name in [
        "ExampleProgramHasAddSemigroup",
        "ExampleProgramHasMulSemigroup",
        "CommutativeZeroLR",
        "CommutativeZeroRL",
    ] {
        let d = check_satisfaction(env.get(name).unwrap(), &mut fl);
        assert!(d.is_empty(), "{name}: {d:?}");
    }
}

#[test]
fn dropping_the_implementation_breaks_the_add_satisfaction() {
    let env = edited("building_blocks.mg", "  use PyConcreteSemigroup;\n", "");
    let mut fl = Flattener::new(&env);
    let d = check_satisfaction(env.get("ExampleProgramHasAddSemigroup").unwrap(), &mut fl);
    assert_eq!(d.kinds(), [DiagKind::MissingOperation], "{d:?}");
    assert_eq!(
        d.iter().next().unwrap().message,
        "ExampleProgram has no operation `function add(int, int): int` required by Semigroup[ T => int, bop => add ] (nor type int)"
    );
}
