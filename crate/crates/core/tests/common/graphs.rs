//! Seeded random digraphs, textbook graph searches and the BFS cost
//! benchmark.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};

use mglite_core::corpus::{batch_interp, batch_python, build_python, typed_program, Outcome};
use mglite_core::interp::reference_host;
use mglite_core::modsys::{Flattener, ModuleEnv};
use mglite_core::oracle::SplitMix64;

use super::{python, root};

pub const GRAPHS: usize = 100;

/// Adjacency lists in ascending target order, with weights.
#[derive(Debug, Clone)]
pub struct Digraph {
    pub out: Vec<Vec<(usize, u64)>>,
}

impl Digraph {
    pub fn random(rng: &mut SplitMix64, max_n: u64, weighted: bool) -> Digraph {
        let n = 1 + (rng.next_u64() % max_n) as usize;
        let m = (rng.next_u64() % (3 * n as u64 + 1)) as usize;
        let mut pairs = BTreeSet::new();
        for _ in 0..m {
            let u = (rng.next_u64() % n as u64) as usize;
            let v = (rng.next_u64() % n as u64) as usize;
            pairs.insert((u, v));
        }
        let mut out = vec![Vec::new(); n];
        for (u, v) in pairs {
            let w = if weighted { 1 + rng.next_u64() % 9 } else { 1 };
            out[u].push((v, w));
        }
        Digraph { out }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn fixture(&self) -> String {
        let edges: Vec<String> = self
            .out
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().map(move |(v, w)| format!("{u} {v} {w}")))
            .collect();
        format!("{} {}\n{}\n", self.n(), edges.len(), edges.join("\n"))
    }
}

/// Breadth-first discovery order.
pub fn textbook_bfs(g: &Digraph, s: usize) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = vec![s];
    let mut q = VecDeque::from([s]);
    seen[s] = true;
    while let Some(u) = q.pop_front() {
        for &(v, _) in &g.out[u] {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
                q.push_back(v);
            }
        }
    }
    order
}

/// Discovery order of the stack-based search that marks vertices when
/// they are pushed and expands the most recently pushed one first.
pub fn textbook_dfs(g: &Digraph, s: usize) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = vec![s];
    let mut st = vec![s];
    seen[s] = true;
    while let Some(u) = st.pop() {
        for &(v, _) in &g.out[u] {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
                st.push(v);
            }
        }
    }
    order
}

pub fn textbook_dijkstra(g: &Digraph, s: usize) -> Vec<Option<u64>> {
    let mut dist = vec![None; g.n()];
    let mut heap = BinaryHeap::from([Reverse((0u64, s))]);
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u].is_some() {
            continue;
        }
        dist[u] = Some(d);
        for &(v, w) in &g.out[u] {
            if dist[v].is_none() {
                heap.push(Reverse((d + w, v)));
            }
        }
    }
    dist
}

/// Shortest distances by enumerating every simple path.
pub fn brute_force_distances(g: &Digraph, s: usize) -> Vec<Option<u64>> {
    fn walk(g: &Digraph, u: usize, d: u64, on_path: &mut Vec<bool>, best: &mut Vec<Option<u64>>) {
        if best[u].is_none_or(|b| d < b) {
            best[u] = Some(d);
        }
        for &(v, w) in &g.out[u] {
            if !on_path[v] {
                on_path[v] = true;
                walk(g, v, d + w, on_path, best);
                on_path[v] = false;
            }
        }
    }
    let mut best = vec![None; g.n()];
    let mut on_path = vec![false; g.n()];
    on_path[s] = true;
    walk(g, s, 0, &mut on_path, &mut best);
    best
}

pub fn show_list(v: &[usize]) -> String {
    format!(
        "[{}]",
        v.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )
}

pub fn show_dist(d: &[Option<u64>]) -> String {
    let items: Vec<String> = d
        .iter()
        .enumerate()
        .map(|(v, d)| format!("{v}: {}", d.map_or("inf".to_string(), |d| d.to_string())))
        .collect();
    format!("{{{}}}", items.join(", "))
}

pub fn cases(seed: u64, weighted: bool) -> Vec<(Digraph, usize)> {
    let mut rng = SplitMix64::new(seed);
    (0..GRAPHS)
        .map(|_| {
            let g = Digraph::random(&mut rng, 50, weighted);
            let s = (rng.next_u64() % g.n() as u64) as usize;
            (g, s)
        })
        .collect()
}

/// Runs `main` of `program` on every case, on both engines, and returns
/// the cases that differ from `expected`.
pub fn check_program(
    program: &str,
    cases: &[(Digraph, usize)],
    expected: impl Fn(&Digraph, usize) -> String,
) -> Vec<String> {
    let dir = root().join("corpus");
    let (env, _) = ModuleEnv::load(&[], &[dir]).unwrap();
    let mut fl = Flattener::new(&env);
    let typed = typed_program(&mut fl, program).unwrap();
    let out = tempfile::tempdir().unwrap();
    build_python(&mut fl, program, out.path(), true).unwrap();
    let calls: Vec<Vec<String>> = cases
        .iter()
        .map(|(g, s)| vec![g.fixture(), s.to_string()])
        .collect();
    let emitted = batch_python(&python(), out.path(), &typed, "main", &calls).unwrap();
    let interp = batch_interp(&typed, &reference_host(), "main", &calls, true).unwrap();
    let mut mismatches = Vec::new();
    for (i, (g, s)) in cases.iter().enumerate() {
        let want = Outcome::Ok(vec![expected(g, *s)]);
        if emitted[i] != want || interp[i] != want {
            mismatches.push(format!(
                "{program} case {i} from {s}: textbook {want:?}, emitted {:?}, interpreter {:?}",
                emitted[i], interp[i]
            ));
        }
    }
    mismatches
}

/// Times the emitted BFS with guards off against a plain host BFS on a
/// random digraph with 10^4 vertices and 5*10^4 edges. Returns the
/// emitted/hand-written ratio and the benchmark's report line.
pub fn bfs_cost_ratio() -> (f64, String) {
    let dir = root().join("corpus");
    let (env, _) = ModuleEnv::load(&[], &[dir]).unwrap();
    let mut fl = Flattener::new(&env);
    let out = tempfile::tempdir().unwrap();
    build_python(&mut fl, "BFSProgram", out.path(), false).unwrap();
    let mut rng = SplitMix64::new(2024);
    let (n, m) = (10_000u64, 50_000);
    let mut text = format!("{n} {m}\n");
    for _ in 0..m {
        text += &format!("{} {}\n", rng.next_u64() % n, rng.next_u64() % n);
    }
    std::fs::write(out.path().join("big.graph"), text).unwrap();
    std::fs::write(out.path().join("bench.py"), BENCH).unwrap();
    let r = python()
        .script(out.path(), "bench.py", &["big.graph".into()])
        .unwrap();
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let line = String::from_utf8_lossy(&r.stdout).trim().to_string();
    let ratio: f64 = line.split_whitespace().last().unwrap().parse().unwrap();
    (ratio, line)
}

const BENCH: &str = r#"
import sys, time
from collections import deque
import mg_runtime as rt
import BFSProgram as P

text = open(sys.argv[1]).read()
g = rt.parse_arg(P, "Graph", text)
lines = text.split("\n")
n = int(lines[0].split()[0])
adj = [[] for _ in range(n)]
for line in lines[1:]:
    if line.strip():
        u, v = map(int, line.split()[:2])
        adj[u].append(v)
for a in adj:
    a.sort()

def hand(s):
    seen = [False] * n
    seen[s] = True
    order = [s]
    q = deque([s])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                order.append(v)
                q.append(v)
    return order

def best(f):
    t = []
    for _ in range(3):
        t0 = time.perf_counter()
        r = f()
        t.append(time.perf_counter() - t0)
    return min(t), r

main = getattr(P, next(k for k, op in P.OPS.items() if op[1] == "main"))
te, emitted = best(lambda: main(g, 0))
th, expected = best(lambda: hand(0))
assert list(emitted) == expected, "emitted BFS disagrees with the hand-written one"
print("emitted %.4fs hand-written %.4fs ratio %.2f" % (te, th, te / th))
"#;
