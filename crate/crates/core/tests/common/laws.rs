//! Algebraic laws of renaming as proptest properties over randomized
//! renamings of flattened corpus modules. Each law returns the minimal
//! failing case, if any.

use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use mglite_core::frontend::ast::ModuleKind;
use mglite_core::modsys::{apply_renaming, FlatModule, Flattener, Renaming};
use mglite_core::semantics::check_scope;

use super::load;

/// Every flattened corpus module except satisfactions.
pub fn modules() -> Vec<FlatModule> {
    let env = load();
    let mut fl = Flattener::new(&env);
    env.modules()
        .filter(|m| m.kind != ModuleKind::Satisfaction)
        .map(|m| fl.flatten(&m.name).unwrap())
        .collect()
}

fn names(m: &FlatModule) -> Vec<String> {
    m.names().into_iter().map(str::to_string).collect()
}

/// Picks `picks` (source index, target index) pairs over the module's names
/// followed by `fresh` unused names; duplicate sources keep the first pick.
fn renaming(m: &FlatModule, picks: &[(usize, usize)], fresh: &[&str]) -> Renaming {
    let ns = names(m);
    let targets: Vec<String> = ns
        .iter()
        .cloned()
        .chain(fresh.iter().map(|s| s.to_string()))
        .collect();
    let mut pairs = BTreeMap::new();
    for &(s, t) in picks {
        let src = &ns[s % ns.len()];
        let dst = &targets[t % targets.len()];
        if src != dst {
            pairs.entry(src.clone()).or_insert(dst.clone());
        }
    }
    Renaming::from_pairs(pairs).unwrap()
}

/// A renaming of the module's names to distinct fresh names.
fn injective(m: &FlatModule, picks: &[usize]) -> Renaming {
    let ns = names(m);
    let mut pairs = BTreeMap::new();
    for &s in picks {
        let src = &ns[s % ns.len()];
        let dst = format!("fresh{}", s % ns.len());
        pairs.insert(src.clone(), dst);
    }
    Renaming::from_pairs(pairs).unwrap()
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn same(a: &FlatModule, b: &FlatModule) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.normalized(), b.normalized());
    Ok(())
}

pub fn identity(ms: &[FlatModule], cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(0..ms.len()), |i| {
            let m = &ms[i];
            same(&apply_renaming(m, &Renaming::new()).unwrap(), m)?;
            // A renaming mapping names to themselves is the identity too.
            let ns = names(m);
            let r = Renaming::from_pairs(ns.iter().map(|n| (n.clone(), n.clone()))).unwrap();
            same(&apply_renaming(m, &r).unwrap(), m)
        })
        .map_err(|e| e.to_string())
}

pub fn composition(ms: &[FlatModule], cases: u32) -> Result<(), String> {
    let fresh = ["fresh0", "fresh1", "fresh2"];
    let strategy = (
        0..ms.len(),
        prop::collection::vec((0usize..64, 0usize..64), 0..5),
        prop::collection::vec((0usize..64, 0usize..64), 0..5),
    );
    runner(cases)
        .run(&strategy, |(i, p1, p2)| {
            let m = &ms[i];
            let r1 = renaming(m, &p1, &fresh);
            let Ok(m1) = apply_renaming(m, &r1) else {
                return Ok(());
            };
            let r2 = renaming(&m1, &p2, &fresh);
            let Ok(m2) = apply_renaming(&m1, &r2) else {
                return Ok(());
            };
            let composed = r1.then(&r2, m.names());
            let direct = apply_renaming(m, &composed)
                .map_err(|e| TestCaseError::fail(format!("{composed}: {e}")))?;
            same(&direct, &m2)
        })
        .map_err(|e| e.to_string())
}

pub fn swap(ms: &[FlatModule], cases: u32) -> Result<(), String> {
    let strategy = (0..ms.len(), 0usize..64, 0usize..64);
    runner(cases)
        .run(&strategy, |(i, a, b)| {
            let m = &ms[i];
            let ns = names(m);
            let (x, y) = (&ns[a % ns.len()], &ns[b % ns.len()]);
            if x == y {
                return same(&apply_renaming(m, &Renaming::new()).unwrap(), m);
            }
            let swap =
                Renaming::from_pairs([(x.clone(), y.clone()), (y.clone(), x.clone())]).unwrap();
            match apply_renaming(m, &swap) {
                Ok(once) => same(&apply_renaming(&once, &swap).unwrap(), m),
                // Swapping a type with an operation may collide; such a
                // swap must then be rejected both ways round.
                Err(_) => {
                    let back =
                        Renaming::from_pairs([(y.clone(), x.clone()), (x.clone(), y.clone())])
                            .unwrap();
                    prop_assert!(apply_renaming(m, &back).is_err());
                    Ok(())
                }
            }
        })
        .map_err(|e| e.to_string())
}

pub fn inverse(ms: &[FlatModule], cases: u32) -> Result<(), String> {
    let strategy = (0..ms.len(), prop::collection::vec(0usize..64, 1..6));
    runner(cases)
        .run(&strategy, |(i, picks)| {
            let m = &ms[i];
            let r = injective(m, &picks);
            let renamed = apply_renaming(m, &r).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let inverse =
                Renaming::from_pairs(r.pairs().map(|(a, b)| (b.to_string(), a.to_string())))
                    .unwrap();
            same(&apply_renaming(&renamed, &inverse).unwrap(), m)?;
            let before = check_scope(m).1.kinds();
            let after = check_scope(&renamed).1.kinds();
            prop_assert_eq!(before, after);
            Ok(())
        })
        .map_err(|e| e.to_string())
}
