//! Axiom oracle runs against the reference host.

use mglite_core::interp::HostLibrary;
use mglite_core::modsys::{Flattener, ModuleEnv};
use mglite_core::oracle::{generate_oracles, run_oracles, OracleReport, RunConfig};

/// Runs the oracles of `sat` at budget 5000, seed 1.
pub fn run(env: &ModuleEnv, sat: &str, host: &HostLibrary) -> OracleReport {
    let mut fl = Flattener::new(env);
    let suite = generate_oracles(sat, &mut fl).unwrap();
    let cfg = RunConfig {
        budget: 5000,
        seed: 1,
        ..RunConfig::default()
    };
    run_oracles(&suite, host, &cfg, env.sources()).unwrap()
}

pub const SUITES: &[&str] = &[
    "ExampleProgramHasAddSemigroup",
    "ExampleProgramHasMulSemigroup",
    "IntStackProgramIsStack",
    "IntQueueProgramIsFIFOQueue",
    "CountdownProgramIsWhileLoop",
];

/// The satisfactions whose oracles exercise a host module.
pub fn suites_for(path: &str) -> &'static [&'static str] {
    match path {
        "lib.int_impl" => &[
            "ExampleProgramHasAddSemigroup",
            "ExampleProgramHasMulSemigroup",
        ],
        "lib.stack" => &["IntStackProgramIsStack"],
        "lib.fifo_queue" => &["IntQueueProgramIsFIFOQueue"],
        "lib.while_loop" => &["CountdownProgramIsWhileLoop"],
        other => panic!("no suite covers {other}"),
    }
}
