//! Host identifiers for overloaded operations.
//!
//! `add(int, int): int` becomes `add__int_int__int`: name, parameter types
//! and return type joined by `__`, parameters by `_`. Underscores inside
//! identifiers are escaped as `_0`, so the scheme can be decoded and is
//! therefore injective.

use crate::modsys::OpKey;

fn escape(id: &str, out: &mut String) {
    for c in id.chars() {
        if c == '_' {
            out.push_str("_0");
        } else {
            out.push(c);
        }
    }
}

pub fn mangle(key: &OpKey) -> String {
    let mut out = String::new();
    escape(&key.name, &mut out);
    out.push_str("__");
    for (i, p) in key.params.iter().enumerate() {
        if i > 0 {
            out.push('_');
        }
        escape(p, &mut out);
    }
    out.push_str("__");
    if let Some(r) = &key.ret {
        escape(r, &mut out);
    }
    out
}

/// Inverse of [`mangle`]; `None` for strings it cannot produce.
pub fn demangle(s: &str) -> Option<OpKey> {
    // Split into identifiers and single separators.
    let mut parts: Vec<Option<String>> = Vec::new();
    let mut cur = String::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        if c != '_' {
            cur.push(c);
        } else if chars.peek() == Some(&'0') {
            chars.next();
            cur.push('_');
        } else {
            if !cur.is_empty() {
                parts.push(Some(std::mem::take(&mut cur)));
            }
            parts.push(None);
        }
    }
    if !cur.is_empty() {
        parts.push(Some(cur));
    }
    let mut it = parts.into_iter().peekable();
    let name = it.next()??;
    let seps = |it: &mut std::iter::Peekable<std::vec::IntoIter<Option<String>>>| {
        let mut n = 0;
        while it.peek() == Some(&None) {
            it.next();
            n += 1;
        }
        n
    };
    let mut params = Vec::new();
    match seps(&mut it) {
        2 => loop {
            params.push(it.next()??);
            match seps(&mut it) {
                1 => continue,
                2 => break,
                _ => return None,
            }
        },
        4 => {}
        _ => return None,
    }
    let ret = it.next().map(|r| r.ok_or(())).transpose().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some(OpKey { name, params, ret })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(name: &str, params: &[&str], ret: Option<&str>) -> OpKey {
        OpKey::new(name, params, ret)
    }

    #[test]
    fn scheme_instances() {
        assert_eq!(
            mangle(&key("add", &["int", "int"], Some("int"))),
            "add__int_int__int"
        );
        assert_eq!(mangle(&key("empty", &[], Some("Stack"))), "empty____Stack");
        assert_eq!(mangle(&key("pop", &["Stack"], None)), "pop__Stack__");
        assert_ne!(
            mangle(&key("empty", &[], Some("Queue"))),
            mangle(&key("empty", &[], Some("Stack")))
        );
        assert_ne!(
            mangle(&key("front", &["FIFOQueue"], Some("VertexDescriptor"))),
            mangle(&key("top", &["Stack"], Some("VertexDescriptor")))
        );
    }

    #[test]
    fn underscores_do_not_collide() {
        let a = key("a_b", &["c"], None);
        let b = key("a", &["b_c"], None);
        let c = key("a", &["b", "c"], None);
        let d = key("_x", &["_y", "z_"], Some("_"));
        for k in [&a, &b, &c, &d] {
            assert_eq!(demangle(&mangle(k)).as_ref(), Some(k), "{}", mangle(k));
        }
        assert_ne!(mangle(&a), mangle(&b));
        assert_ne!(mangle(&b), mangle(&c));
    }

    #[test]
    fn rejects_foreign_strings() {
        assert_eq!(demangle("add"), None);
        assert_eq!(demangle("add___int"), None);
        assert_eq!(demangle(""), None);
    }
}
