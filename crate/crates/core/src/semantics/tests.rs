use super::*;
use crate::modsys::{flatten, FlatModule, ModuleEnv, OpKey};

const BASE: &str = r#"
signature Base = {
    type int;
    type Queue;
    type Stack;
    type A;
    function add(a: int, b: int): int;
    function empty(): Queue;
    function empty(): Stack;
    function front(q: Queue): A;
    predicate isEmpty(q: Queue);
    procedure bump(upd i: int);
    procedure fill(out i: int);
    procedure two(upd a: int, upd b: int);
    procedure peek(obs a: int, upd b: int);
};
"#;

fn scope_with(extra: &str) -> FlatModule {
    let text = format!("{BASE}\nimplementation T = {{ use Base; {extra} }};");
    let (env, d) = ModuleEnv::from_text("t.mg", &text);
    assert!(d.is_empty(), "{d:?}");
    flatten("T", &env).expect("flattens")
}

fn kinds_of(extra: &str) -> Vec<DiagKind> {
    check_scope(&scope_with(extra)).1.kinds()
}

fn errors_of(extra: &str) -> Vec<DiagKind> {
    check_scope(&scope_with(extra))
        .1
        .iter()
        .filter(|d| d.is_error())
        .map(|d| d.kind)
        .collect()
}

#[test]
fn resolves_by_argument_type() {
    let s = scope_with("");
    let sig = resolve_call("front", &["Queue"], None, &s).unwrap();
    assert_eq!(sig.key(), OpKey::new("front", &["Queue"], Some("A")));
}

#[test]
fn expected_return_selects_overload() {
    let s = scope_with("");
    let sig = resolve_call("empty", &[], Some("Queue"), &s).unwrap();
    assert_eq!(sig.ret.as_deref(), Some("Queue"));
    let err = resolve_call("empty", &[], None, &s).unwrap_err();
    assert_eq!(err.kind, DiagKind::AmbiguousReturnOverload);
}

#[test]
fn resolution_errors() {
    let s = scope_with("");
    assert_eq!(
        resolve_call("nope", &[], None, &s).unwrap_err().kind,
        DiagKind::NoSuchOperation
    );
    assert_eq!(
        resolve_call("add", &["int"], None, &s).unwrap_err().kind,
        DiagKind::ArityMismatch
    );
    assert_eq!(
        resolve_call("add", &["int", "A"], None, &s)
            .unwrap_err()
            .kind,
        DiagKind::NoSuchOperation
    );
}

#[test]
fn times_three_is_well_typed() {
    let k = kinds_of(
        "procedure timesThreeUpdateRef(upd i: int) { i = add(add(i, i), i); }
         function timesThree(i: int): int {
             var mutable_i = i;
             call timesThreeUpdateRef(mutable_i);
             value mutable_i;
         }",
    );
    assert!(k.is_empty(), "{k:?}");
}

#[test]
fn annotation_and_context_disambiguate() {
    assert!(kinds_of("function f(): Queue { var q = empty(): Queue; value q; }").is_empty());
    assert!(kinds_of("function f(): Queue { value empty(); }").is_empty());
    assert!(kinds_of("function f(): Queue { var q: Queue = empty(); value q; }").is_empty());
    assert_eq!(
        errors_of("function f(): Queue { var q = empty(); value empty(); }"),
        vec![DiagKind::AmbiguousReturnOverload]
    );
}

#[test]
fn ambiguous_argument_resolved_by_parameter() {
    let k = kinds_of("predicate p() { value isEmpty(empty()); }");
    assert!(k.is_empty(), "{k:?}");
}

#[test]
fn missing_value_on_else_path() {
    assert_eq!(
        errors_of("function f(q: Queue): A { if isEmpty(q) then { value front(q); } }"),
        vec![DiagKind::MissingValueOnPath]
    );
    assert!(errors_of(
        "function f(q: Queue): A { if isEmpty(q) then { value front(q); } else { value front(q); } }"
    )
    .is_empty());
}

#[test]
fn value_rules() {
    assert_eq!(
        errors_of("procedure p(upd i: int) { value i; }"),
        vec![DiagKind::ValueInProcedure]
    );
    assert_eq!(
        errors_of("axiom ax(i: int) { value i; }"),
        vec![DiagKind::ValueOutsideFunction]
    );
    assert_eq!(
        errors_of("function f(i: int): int { value i; i = i; }"),
        vec![DiagKind::WriteToObs]
    );
    assert!(kinds_of("function f(i: int): int { value i; value i; }")
        .contains(&DiagKind::UnreachableStatement));
}

#[test]
fn type_errors() {
    assert_eq!(
        errors_of("function f(q: Queue): int { value front(q); }"),
        vec![DiagKind::TypeMismatch]
    );
    assert_eq!(
        errors_of("predicate f(q: Queue, i: int) { value q == i; }"),
        vec![DiagKind::EqualityTypeMismatch]
    );
    assert_eq!(
        errors_of("predicate f(i: int) { value !i; }"),
        vec![DiagKind::TypeMismatch]
    );
    assert_eq!(
        errors_of("function f(i: Nat): int { value i; }"),
        vec![DiagKind::UnknownType]
    );
    assert_eq!(
        errors_of("function f(i: int): int { value j; }"),
        vec![DiagKind::UnknownVariable]
    );
    assert_eq!(
        errors_of("function f(i: int): int { var x; value i; }"),
        vec![DiagKind::CannotInferType]
    );
    assert_eq!(
        errors_of("function f(i: int): int { var i = i; value i; }"),
        vec![DiagKind::DuplicateVariable]
    );
}

#[test]
fn call_kind_rules() {
    assert_eq!(
        errors_of("function f(i: int): int { value bump(i); }"),
        vec![DiagKind::ProcedureInExpression]
    );
    assert_eq!(
        errors_of("procedure p(upd i: int) { call add(i, i); }"),
        vec![DiagKind::FunctionInCallStatement]
    );
    assert_eq!(
        errors_of("procedure p(upd i: int) { call bump(add(i, i)); }"),
        vec![DiagKind::NotAssignable]
    );
}

#[test]
fn write_to_obs() {
    assert_eq!(
        errors_of("procedure p(obs i: int) { i = add(add(i, i), i); }"),
        vec![DiagKind::WriteToObs]
    );
    assert_eq!(
        errors_of("procedure p(obs i: int) { call bump(i); }"),
        vec![DiagKind::WriteToObs]
    );
    // Function parameters are obs, so upd positions need a local copy.
    assert_eq!(
        errors_of("function f(i: int): int { call bump(i); value i; }"),
        vec![DiagKind::WriteToObs]
    );
}

#[test]
fn out_argument_assigns() {
    let k = kinds_of("function f(): int { var x: int; call fill(x); value x; }");
    assert!(k.is_empty(), "{k:?}");
}

#[test]
fn read_before_assign() {
    assert_eq!(
        errors_of("function f(): int { var x: int; value x; }"),
        vec![DiagKind::ReadBeforeAssign]
    );
    assert_eq!(
        errors_of("procedure p(out o: int) { var x: int; call bump(x); o = x; }"),
        vec![DiagKind::ReadBeforeAssign]
    );
    assert_eq!(
        errors_of("procedure p(out o: int) { o = add(o, o); }"),
        vec![DiagKind::ReadBeforeAssign]
    );
}

#[test]
fn out_not_assigned_on_every_path() {
    assert_eq!(
        errors_of("procedure p(obs q: Queue, out o: int) { if isEmpty(q) then { call fill(o); } }"),
        vec![DiagKind::OutNotAssigned]
    );
    assert!(errors_of(
        "procedure p(obs q: Queue, out o: int) {
            if isEmpty(q) then { call fill(o); } else { o = add(o, o); }
        }"
    )
    .contains(&DiagKind::ReadBeforeAssign));
    assert!(errors_of(
        "procedure p(obs q: Queue, out o: int) {
            if isEmpty(q) then { call fill(o); } else { call fill(o); }
        }"
    )
    .is_empty());
}

#[test]
fn aliasing_is_rejected() {
    assert_eq!(
        errors_of("procedure p(upd i: int) { call two(i, i); }"),
        vec![DiagKind::AliasedArgument]
    );
    assert_eq!(
        errors_of("procedure p(upd i: int) { call peek(i, i); }"),
        vec![DiagKind::AliasedArgument]
    );
}

#[test]
fn guard_rules() {
    assert!(kinds_of("function pop(q: Queue): A guard !isEmpty(q) { value front(q); }").is_empty());
    assert_eq!(
        errors_of("function f(q: Queue): A guard front(q);"),
        vec![DiagKind::GuardNotPredicate]
    );
    assert_eq!(
        errors_of("function f(q: Queue): A guard isEmpty(r);"),
        vec![DiagKind::GuardReferencesNonParameter]
    );
}

#[test]
fn axioms_may_assert() {
    assert!(kinds_of("axiom ax(q: Queue) { assert isEmpty(q) == isEmpty(q); }").is_empty());
    assert_eq!(
        errors_of("function f(q: Queue): Queue { assert isEmpty(q); value q; }"),
        vec![DiagKind::AssertOutsideAxiom]
    );
}

#[test]
fn unused_local_warns() {
    let d = check_scope(&scope_with(
        "function f(i: int): int { var x = i; value i; }",
    ))
    .1;
    assert_eq!(d.kinds(), vec![DiagKind::UnusedVariable]);
    assert!(!d.has_errors());
}

#[test]
fn typed_body_records_resolution() {
    let (t, d) = check_scope(&scope_with(
        "function f(): Queue { var q = empty(): Queue; value q; }",
    ));
    assert!(d.is_empty());
    let body = &t.bodies[&OpKey::new("f", &[], Some("Queue"))];
    let TStmt::Var {
        init: Some(init), ..
    } = &body.block.stmts[0]
    else {
        panic!("expected var");
    };
    assert_eq!(
        init.kind,
        TExprKind::Call {
            op: OpKey::new("empty", &[], Some("Queue")),
            args: vec![]
        }
    );
}
