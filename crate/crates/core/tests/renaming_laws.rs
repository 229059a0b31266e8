//! Algebraic laws of renaming, checked on randomized renamings of every
//! flattenable corpus module.

mod common;

use common::laws;

const CASES: u32 = 1000;

#[test]
fn identity_renaming_changes_nothing() {
    laws::identity(&laws::modules(), CASES).unwrap();
}

#[test]
fn sequential_renamings_compose() {
    laws::composition(&laws::modules(), CASES).unwrap();
}

#[test]
fn swapping_twice_restores_the_module() {
    laws::swap(&laws::modules(), CASES).unwrap();
}

#[test]
fn injective_renamings_are_invertible_and_keep_modules_well_typed() {
    laws::inverse(&laws::modules(), CASES).unwrap();
}
