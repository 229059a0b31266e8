//! Helpers shared by the integration tests and the acceptance target.
#![allow(dead_code)]

pub mod equiv;
pub mod graphs;
pub mod laws;
pub mod mutants;
pub mod oracles;

use std::path::{Path, PathBuf};

use mglite_core::corpus::PythonHost;
use mglite_core::modsys::ModuleEnv;
use mglite_core::SourceUnit;

pub fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn corpus() -> PathBuf {
    root().join("corpus")
}

pub fn python() -> PythonHost {
    PythonHost::new(root().join("hostlib"))
}

/// The corpus, which must load without diagnostics.
pub fn load() -> ModuleEnv {
    let (env, d) = ModuleEnv::load(&[], &[corpus()]).unwrap();
    assert!(d.is_empty(), "{d:?}");
    env
}

/// The corpus with one edit applied to `file`. The edit site must be
/// unique.
pub fn edited(file: &str, find: &str, replace: &str) -> ModuleEnv {
    let mut env = ModuleEnv::new();
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "mg"))
        .collect();
    paths.sort();
    for p in paths {
        let mut text = std::fs::read_to_string(&p).unwrap();
        if p.file_name().unwrap() == file {
            assert_eq!(
                text.matches(find).count(),
                1,
                "edit site `{find}` must be unique"
            );
            text = text.replacen(find, replace, 1);
        }
        let d = env.add_source(SourceUnit::new(p, text));
        assert!(d.is_empty(), "{d:?}");
    }
    env
}
