//! The host library seen by the interpreter: operations and type hooks
//! keyed by binding path and host symbol.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use thiserror::Error;

use super::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Fault {
    #[error("guard of `{op}` violated")]
    GuardViolation { op: String },
    #[error("{0}")]
    Host(String),
    #[error("no host implementation for {path}.{name}")]
    Unbound { path: String, name: String },
    #[error("timed out")]
    Timeout,
}

/// Lets a host operation call the operations its instance was given.
pub trait Callbacks {
    /// Calls the required operation known to the host as `local`. Functions
    /// return their value; procedures their upd/out values in order.
    fn call_required(&mut self, local: &str, args: Vec<Value>) -> Result<Vec<Value>, Fault>;
}

/// Host operation with the tuple-return convention.
pub type HostFn = Rc<dyn Fn(&mut dyn Callbacks, Vec<Value>) -> Result<Vec<Value>, Fault>>;

/// Finite test domain given the domains of the type's own requirements
/// (by local name), truncated to `limit` values.
pub type EnumerateFn = fn(usize, &BTreeMap<String, Vec<Value>>) -> Vec<Value>;

pub type ParseFn = fn(&str) -> Result<Value, String>;

/// Hooks of a host type. Registration implies structural equality, copy
/// and the canonical text form; generation and parsing are optional.
#[derive(Clone, Copy, Default)]
pub struct HostType {
    pub enumerate: Option<EnumerateFn>,
    pub parse: Option<ParseFn>,
}

#[derive(Clone, Default)]
pub struct HostLibrary {
    ops: HashMap<(String, String), HostFn>,
    types: HashMap<(String, String), HostType>,
}

impl HostLibrary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register_op(
        &mut self,
        path: &str,
        name: &str,
        f: impl Fn(&mut dyn Callbacks, Vec<Value>) -> Result<Vec<Value>, Fault> + 'static,
    ) {
        self.ops.insert((path.into(), name.into()), Rc::new(f));
    }

    pub fn register_type(&mut self, path: &str, name: &str, t: HostType) {
        self.types.insert((path.into(), name.into()), t);
    }

    /// Replaces one operation, as host mutants do.
    pub fn with_op(
        mut self,
        path: &str,
        name: &str,
        f: impl Fn(&mut dyn Callbacks, Vec<Value>) -> Result<Vec<Value>, Fault> + 'static,
    ) -> Self {
        self.register_op(path, name, f);
        self
    }

    pub fn op(&self, path: &str, name: &str) -> Option<&HostFn> {
        self.ops.get(&(path.to_string(), name.to_string()))
    }

    pub fn host_type(&self, path: &str, name: &str) -> Option<&HostType> {
        self.types.get(&(path.to_string(), name.to_string()))
    }
}

impl std::fmt::Debug for HostLibrary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut ops: Vec<String> = self.ops.keys().map(|(p, n)| format!("{p}.{n}")).collect();
        ops.sort();
        f.debug_struct("HostLibrary").field("ops", &ops).finish()
    }
}
