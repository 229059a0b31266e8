use super::*;
use crate::modsys::{flatten, ModuleEnv};
use crate::semantics::check_scope;

const SRC: &str = r#"
signature Ints = { type int; function add(a: int, b: int): int; predicate greater(a: int, b: int); };
implementation PyInt = external Python lib.int_impl { use Ints; };
concept Q = {
    require type A;
    type Stack;
    function empty(): Stack;
    predicate isEmpty(q: Stack);
    procedure push(obs a: A, upd q: Stack);
    procedure pop(upd q: Stack) guard !isEmpty(q);
    function top(q: Stack): A guard !isEmpty(q);
};
implementation PyStack = external Python lib.stack { use Q; };
program P = {
    use PyInt;
    use PyStack[ A => int ];
    procedure timesThreeUpdateRef(upd i: int) { i = add(add(i, i), i); }
    function timesThree(i: int): int {
        var mutable_i = i;
        call timesThreeUpdateRef(mutable_i);
        value mutable_i;
    }
    procedure popEmpty(out s: Stack) { s = empty(); call pop(s); }
    function max(a: int, b: int): int {
        if greater(a, b) then { value a; } else { value b; }
    }
    function pushed(a: int): Stack {
        var s = empty();
        var t = s;
        call push(a, t);
        value s;
    }
    axiom pushTop(s: Stack, a: int) {
        var t = s;
        call push(a, t);
        assert top(t) == a;
    }
    axiom topOfAny(s: Stack, a: int) {
        assert top(s) == a;
    }
};
"#;

fn program() -> TypedModule {
    let (env, d) = ModuleEnv::from_text("p.mg", SRC);
    assert!(d.is_empty(), "{d:?}");
    let flat = flatten("P", &env).unwrap();
    let (t, d) = check_scope(&flat);
    assert!(!d.has_errors(), "{d:?}");
    t
}

fn key(t: &TypedModule, name: &str) -> OpKey {
    t.flat.ops_named(name).next().unwrap().sig.key()
}

#[test]
fn times_three_of_two_is_six() {
    let t = program();
    let host = reference_host();
    let mut i = Interpreter::new(&t, &host);
    assert_eq!(
        i.call(&key(&t, "timesThree"), vec![Value::Int(2)]),
        Ok(vec![Value::Int(6)])
    );
    assert_eq!(
        i.call(&key(&t, "timesThreeUpdateRef"), vec![Value::Int(-3)]),
        Ok(vec![Value::Int(-9)])
    );
}

#[test]
fn branches_pick_the_right_value() {
    let t = program();
    let host = reference_host();
    let mut i = Interpreter::new(&t, &host);
    let k = key(&t, "max");
    assert_eq!(
        i.call(&k, vec![Value::Int(3), Value::Int(5)]),
        Ok(vec![Value::Int(5)])
    );
    assert_eq!(
        i.call(&k, vec![Value::Int(7), Value::Int(5)]),
        Ok(vec![Value::Int(7)])
    );
}

#[test]
fn copies_are_independent() {
    let t = program();
    let host = reference_host();
    let mut i = Interpreter::new(&t, &host);
    assert_eq!(
        i.call(&key(&t, "pushed"), vec![Value::Int(4)]),
        Ok(vec![Value::seq([])])
    );
}

#[test]
fn guard_violation_names_the_op() {
    let t = program();
    let host = reference_host();
    let mut i = Interpreter::new(&t, &host);
    let r = i.call(&key(&t, "popEmpty"), vec![Value::Unset]);
    assert_eq!(r, Err(Fault::GuardViolation { op: "pop".into() }));
    // Without guard checks the host itself faults.
    let mut i = Interpreter::new(&t, &host).guard_checks(false);
    assert!(matches!(
        i.call(&key(&t, "popEmpty"), vec![Value::Unset]),
        Err(Fault::Host(_))
    ));
}

#[test]
fn axioms_pass_fail_and_discard() {
    let t = program();
    let host = reference_host();
    let mut i = Interpreter::new(&t, &host);
    let s = Value::seq([Value::Int(1)]);
    let ax = t.axiom("pushTop").unwrap();
    assert_eq!(
        i.run_axiom(ax, vec![s.clone(), Value::Int(0)]),
        Ok(AxiomOutcome::Pass)
    );
    let ax = t.axiom("topOfAny").unwrap();
    assert_eq!(
        i.run_axiom(ax, vec![s.clone(), Value::Int(1)]),
        Ok(AxiomOutcome::Pass)
    );
    assert!(matches!(
        i.run_axiom(ax, vec![s, Value::Int(0)]),
        Ok(AxiomOutcome::Fail { .. })
    ));
    assert_eq!(
        i.run_axiom(ax, vec![Value::seq([]), Value::Int(0)]),
        Ok(AxiomOutcome::Discard { op: "top".into() })
    );
}

#[test]
fn mutant_changes_behaviour() {
    let t = program();
    let m = mutants()
        .into_iter()
        .find(|m| m.name == "add-subtracts")
        .unwrap();
    let host = (m.apply)(reference_host());
    let mut i = Interpreter::new(&t, &host);
    assert_eq!(
        i.call(&key(&t, "timesThree"), vec![Value::Int(2)]),
        Ok(vec![Value::Int(-2)])
    );
}

#[test]
fn domains_follow_requirements() {
    let t = program();
    let host = reference_host();
    assert_eq!(
        type_domain(&t.flat, &host, "int", usize::MAX)
            .unwrap()
            .len(),
        17
    );
    assert_eq!(
        type_domain(&t.flat, &host, "Stack", usize::MAX)
            .unwrap()
            .len(),
        15
    );
    assert_eq!(type_domain(&t.flat, &host, "Stack", 7).unwrap().len(), 7);
    assert_eq!(
        type_domain(&t.flat, &host, "Nope", 1),
        Err(DomainError::MissingGenerator("Nope".into()))
    );
    assert_eq!(
        parse_value(&t.flat, &host, "int", " 12 "),
        Ok(Value::Int(12))
    );
    assert!(parse_value(&t.flat, &host, "Stack", "[]").is_err());
}

#[test]
fn unbound_host_symbol_faults() {
    let t = program();
    let host = HostLibrary::new();
    let mut i = Interpreter::new(&t, &host);
    assert!(matches!(
        i.call(&key(&t, "timesThree"), vec![Value::Int(1)]),
        Err(Fault::Unbound { .. })
    ));
}
