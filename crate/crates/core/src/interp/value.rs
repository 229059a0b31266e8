//! Runtime values of the reference interpreter.
//!
//! Containers sit behind `Rc` and are copied on write, so cloning a value is
//! cheap and mutation never leaks into another variable.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::rc::Rc;

/// A path cost; `None` is infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cost(pub Option<i64>);

impl Cost {
    pub const INF: Cost = Cost(None);

    pub fn plus(self, other: Cost) -> Cost {
        match (self.0, other.0) {
            (Some(a), Some(b)) => Cost(Some(a + b)),
            _ => Cost::INF,
        }
    }
}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self.0, other.0) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => std::cmp::Ordering::Equal,
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(c) => write!(f, "{c}"),
            None => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    White,
    Gray,
    Black,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::White => "white",
            Color::Gray => "gray",
            Color::Black => "black",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: usize,
    pub tgt: usize,
    pub weight: i64,
}

/// Directed multigraph with out-edges kept in ascending target order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    out: Vec<Vec<Edge>>,
    edges: usize,
}

impl Graph {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Graph, String> {
        let mut out = vec![Vec::new(); vertices];
        let mut count = 0;
        for e in edges {
            if e.src >= vertices || e.tgt >= vertices {
                return Err(format!(
                    "edge {} -> {} out of range for {vertices} vertices",
                    e.src, e.tgt
                ));
            }
            out[e.src].push(e);
            count += 1;
        }
        for adj in &mut out {
            // Stable, so parallel edges keep their fixture order.
            adj.sort_by_key(|e| e.tgt);
        }
        Ok(Graph { out, edges: count })
    }

    /// Parses `V E` followed by `E` lines `u v [w]`; the weight defaults
    /// to 1.
    pub fn parse(text: &str) -> Result<Graph, String> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or("empty graph fixture")?;
        let nums = parse_ints(header)?;
        let [v, e] = nums[..] else {
            return Err(format!("bad graph header `{header}`, expected `V E`"));
        };
        let (v, e) = (to_usize(v)?, to_usize(e)?);
        let mut edges = Vec::with_capacity(e);
        for line in lines {
            let n = parse_ints(line)?;
            let (src, tgt, weight) = match n[..] {
                [a, b] => (a, b, 1),
                [a, b, w] => (a, b, w),
                _ => return Err(format!("bad edge line `{line}`")),
            };
            edges.push(Edge {
                src: to_usize(src)?,
                tgt: to_usize(tgt)?,
                weight,
            });
        }
        if edges.len() != e {
            return Err(format!(
                "graph header promises {e} edges, found {}",
                edges.len()
            ));
        }
        Graph::new(v, edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.out.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges
    }

    pub fn out_edges(&self, v: usize) -> &[Edge] {
        &self.out[v]
    }
}

fn parse_ints(line: &str) -> Result<Vec<i64>, String> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| format!("`{t}` is not an integer"))
        })
        .collect()
}

fn to_usize(x: i64) -> Result<usize, String> {
    usize::try_from(x).map_err(|_| format!("negative count or vertex {x}"))
}

/// Lazy-deletion priority queue over vertices. It carries its own copy of
/// the distance map; entries whose distance no longer matches it are stale.
/// Equality ignores stale entries.
#[derive(Debug, Clone, Eq)]
pub struct PQueue {
    pub dist: BTreeMap<i64, Cost>,
    pub entries: BTreeSet<(Cost, i64)>,
}

impl PQueue {
    pub fn drop_stale(&mut self) {
        while let Some(&(d, v)) = self.entries.iter().next() {
            if self.dist.get(&v).is_some_and(|cur| *cur == d) {
                break;
            }
            self.entries.remove(&(d, v));
        }
    }

    pub fn front(&self) -> Option<i64> {
        self.live().next().map(|(_, v)| *v)
    }

    /// Entries that are not stale, in priority order.
    pub fn live(&self) -> impl Iterator<Item = &(Cost, i64)> {
        self.entries
            .iter()
            .filter(|(d, v)| self.dist.get(v) == Some(d))
    }
}

impl PartialEq for PQueue {
    fn eq(&self, other: &Self) -> bool {
        self.dist == other.dist && self.live().eq(other.live())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    /// An `out` argument before the callee assigns it.
    Unset,
    Bool(bool),
    Int(i64),
    Cost(Cost),
    Color(Color),
    /// Stacks (top at the back), FIFO queues and lists.
    Seq(Rc<VecDeque<Value>>),
    /// Vertex-keyed property maps.
    Map(Rc<BTreeMap<i64, Value>>),
    PQueue(Rc<PQueue>),
    Graph(Rc<Graph>),
    Edge(Edge),
    OutEdgeIter {
        graph: Rc<Graph>,
        vertex: usize,
        pos: usize,
    },
    VertexIter {
        count: usize,
        pos: usize,
    },
}

impl Value {
    pub fn seq(items: impl IntoIterator<Item = Value>) -> Value {
        Value::Seq(Rc::new(items.into_iter().collect()))
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            _ => None,
        }
    }
}

fn join<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl IntoIterator<Item = T>,
) -> fmt::Result {
    for (i, x) in items.into_iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// The canonical text form shared with the Python host's `show` hooks.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Unset => f.write_str("unset"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(i) => write!(f, "{i}"),
            Value::Cost(c) => write!(f, "{c}"),
            Value::Color(c) => write!(f, "{c}"),
            Value::Seq(s) => {
                f.write_str("[")?;
                join(f, s.iter())?;
                f.write_str("]")
            }
            Value::Map(m) => {
                f.write_str("{")?;
                join(f, m.iter().map(|(k, v)| format!("{k}: {v}")))?;
                f.write_str("}")
            }
            Value::PQueue(q) => {
                f.write_str("pqueue[")?;
                join(f, q.live().map(|(d, v)| format!("{v}@{d}")))?;
                f.write_str("]")
            }
            Value::Graph(g) => write!(
                f,
                "graph({} vertices, {} edges)",
                g.num_vertices(),
                g.num_edges()
            ),
            Value::Edge(e) => write!(f, "{}->{}", e.src, e.tgt),
            Value::OutEdgeIter { vertex, pos, .. } => write!(f, "out-edges({vertex})@{pos}"),
            Value::VertexIter { count, pos } => write!(f, "vertices({count})@{pos}"),
        }
    }
}
