//! Rust reference implementation of the host library. It mirrors the
//! Python `lib` package symbol for symbol, including its test domains and
//! text forms, so interpreter and emitted code can be compared.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::rc::Rc;

use super::host::{Callbacks, Fault, HostLibrary, HostType};
use super::value::{Color, Cost, Edge, Graph, PQueue, Value};

/// Largest container in generated test inputs.
pub const MAX_CONTAINER: usize = 3;
/// Integers in generated test inputs lie in `-INT_RADIUS..=INT_RADIUS`.
pub const INT_RADIUS: i64 = 8;
/// Vertex descriptors in generated test inputs.
pub const TEST_VERTICES: i64 = 4;

fn fault(op: &str, msg: impl std::fmt::Display) -> Fault {
    Fault::Host(format!("{op}: {msg}"))
}

fn int(op: &str, v: &Value) -> Result<i64, Fault> {
    v.as_int()
        .ok_or_else(|| fault(op, format!("expected an integer, got {v}")))
}

fn boolean(op: &str, v: &Value) -> Result<bool, Fault> {
    v.as_bool()
        .ok_or_else(|| fault(op, format!("expected a predicate value, got {v}")))
}

fn seq(op: &str, v: Value) -> Result<Rc<VecDeque<Value>>, Fault> {
    match v {
        Value::Seq(s) => Ok(s),
        other => Err(fault(op, format!("expected a sequence, got {other}"))),
    }
}

fn map(op: &str, v: Value) -> Result<Rc<BTreeMap<i64, Value>>, Fault> {
    match v {
        Value::Map(m) => Ok(m),
        other => Err(fault(op, format!("expected a property map, got {other}"))),
    }
}

fn cost(op: &str, v: &Value) -> Result<Cost, Fault> {
    match v {
        Value::Cost(c) => Ok(*c),
        other => Err(fault(op, format!("expected a cost, got {other}"))),
    }
}

fn graph(op: &str, v: &Value) -> Result<Rc<Graph>, Fault> {
    match v {
        Value::Graph(g) => Ok(g.clone()),
        other => Err(fault(op, format!("expected a graph, got {other}"))),
    }
}

fn edge(op: &str, v: &Value) -> Result<Edge, Fault> {
    match v {
        Value::Edge(e) => Ok(*e),
        other => Err(fault(op, format!("expected an edge, got {other}"))),
    }
}

fn pqueue(op: &str, v: Value) -> Result<Rc<PQueue>, Fault> {
    match v {
        Value::PQueue(q) => Ok(q),
        other => Err(fault(op, format!("expected a priority queue, got {other}"))),
    }
}

fn vertex(op: &str, v: &Value, g: &Graph) -> Result<usize, Fault> {
    let i = int(op, v)?;
    usize::try_from(i)
        .ok()
        .filter(|&u| u < g.num_vertices())
        .ok_or_else(|| fault(op, format!("vertex {i} out of range")))
}

fn arity<const N: usize>(op: &str, args: Vec<Value>) -> Result<[Value; N], Fault> {
    let n = args.len();
    args.try_into()
        .map_err(|_| fault(op, format!("expected {N} argument(s), got {n}")))
}

fn one(v: Value) -> Result<Vec<Value>, Fault> {
    Ok(vec![v])
}

/// `0, 1, -1, 2, -2, ...` up to the radius.
pub fn int_domain(limit: usize, _: &BTreeMap<String, Vec<Value>>) -> Vec<Value> {
    let mut out = vec![Value::Int(0)];
    for k in 1..=INT_RADIUS {
        out.push(Value::Int(k));
        out.push(Value::Int(-k));
    }
    out.truncate(limit);
    out
}

/// All sequences of length at most [`MAX_CONTAINER`] over the first two
/// element values, shortest first, then in lexicographic element order.
pub fn containers(elems: &[Value], limit: usize) -> Vec<Value> {
    let elems = &elems[..elems.len().min(2)];
    let mut out = vec![VecDeque::new()];
    let mut layer = vec![VecDeque::new()];
    for _ in 0..MAX_CONTAINER {
        let mut next = Vec::new();
        for s in &layer {
            for e in elems {
                let mut t = s.clone();
                t.push_back(e.clone());
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.truncate(limit);
    out.into_iter().map(|s| Value::Seq(Rc::new(s))).collect()
}

fn containers_of(
    param: &'static str,
) -> impl Fn(usize, &BTreeMap<String, Vec<Value>>) -> Vec<Value> {
    move |limit, params| containers(params.get(param).map_or(&[][..], |v| v), limit)
}

fn vertex_domain(limit: usize, _: &BTreeMap<String, Vec<Value>>) -> Vec<Value> {
    (0..TEST_VERTICES).map(Value::Int).take(limit).collect()
}

fn color_domain(limit: usize, _: &BTreeMap<String, Vec<Value>>) -> Vec<Value> {
    [Color::White, Color::Gray, Color::Black]
        .into_iter()
        .map(Value::Color)
        .take(limit)
        .collect()
}

fn cost_domain(limit: usize, _: &BTreeMap<String, Vec<Value>>) -> Vec<Value> {
    [Cost(Some(0)), Cost(Some(1)), Cost(Some(2)), Cost::INF]
        .into_iter()
        .map(Value::Cost)
        .take(limit)
        .collect()
}

fn stack_domain(limit: usize, p: &BTreeMap<String, Vec<Value>>) -> Vec<Value> {
    containers_of("A")(limit, p)
}

fn vertex_list_domain(limit: usize, p: &BTreeMap<String, Vec<Value>>) -> Vec<Value> {
    containers_of("VertexDescriptor")(limit, p)
}

fn parse_int(s: &str) -> Result<Value, String> {
    s.trim()
        .parse::<i64>()
        .map(Value::Int)
        .map_err(|_| format!("`{}` is not an integer", s.trim()))
}

fn parse_graph(s: &str) -> Result<Value, String> {
    Graph::parse(s).map(|g| Value::Graph(Rc::new(g)))
}

fn parse_cost(s: &str) -> Result<Value, String> {
    match s.trim() {
        "inf" => Ok(Value::Cost(Cost::INF)),
        t => t
            .parse::<i64>()
            .map(|c| Value::Cost(Cost(Some(c))))
            .map_err(|_| format!("`{t}` is not a cost")),
    }
}

fn parse_color(s: &str) -> Result<Value, String> {
    match s.trim() {
        "white" => Ok(Value::Color(Color::White)),
        "gray" => Ok(Value::Color(Color::Gray)),
        "black" => Ok(Value::Color(Color::Black)),
        t => Err(format!("`{t}` is not a color")),
    }
}

fn ty(
    enumerate: Option<super::host::EnumerateFn>,
    parse: Option<super::host::ParseFn>,
) -> HostType {
    HostType { enumerate, parse }
}

/// The complete reference host.
pub fn reference_host() -> HostLibrary {
    let mut h = HostLibrary::new();
    int_impl(&mut h);
    stack(&mut h);
    fifo_queue(&mut h);
    priority_queue(&mut h);
    loops(&mut h);
    graph_lib(&mut h);
    colors(&mut h);
    vertex_list(&mut h);
    costs(&mut h);
    h
}

fn int_impl(h: &mut HostLibrary) {
    const P: &str = "lib.int_impl";
    h.register_type(P, "int", ty(Some(int_domain), Some(parse_int)));
    let binop = |name: &'static str, f: fn(i64, i64) -> Option<i64>| {
        move |_: &mut dyn Callbacks, args: Vec<Value>| {
            let [a, b] = arity(name, args)?;
            let r = f(int(name, &a)?, int(name, &b)?).ok_or_else(|| fault(name, "overflow"))?;
            one(Value::Int(r))
        }
    };
    h.register_op(P, "add", binop("add", i64::checked_add));
    h.register_op(P, "mul", binop("mul", i64::checked_mul));
    h.register_op(P, "greater", |_, args| {
        let [a, b] = arity("greater", args)?;
        one(Value::Bool(int("greater", &a)? > int("greater", &b)?))
    });
    h.register_op(P, "predecessor", |_, args| {
        let [a] = arity("predecessor", args)?;
        let r = int("predecessor", &a)?
            .checked_sub(1)
            .ok_or_else(|| fault("predecessor", "overflow"))?;
        one(Value::Int(r))
    });
}

fn stack(h: &mut HostLibrary) {
    const P: &str = "lib.stack";
    h.register_type(P, "Stack", ty(Some(stack_domain), None));
    sequence_common(h, P);
    h.register_op(P, "pop", |_, args| {
        let [q] = arity("pop", args)?;
        let mut q = seq("pop", q)?;
        Rc::make_mut(&mut q)
            .pop_back()
            .ok_or_else(|| fault("pop", "empty stack"))?;
        one(Value::Seq(q))
    });
    h.register_op(P, "top", |_, args| {
        let [q] = arity("top", args)?;
        let q = seq("top", q)?;
        q.back()
            .cloned()
            .map(|v| vec![v])
            .ok_or_else(|| fault("top", "empty stack"))
    });
}

fn fifo_queue(h: &mut HostLibrary) {
    const P: &str = "lib.fifo_queue";
    h.register_type(P, "FIFOQueue", ty(Some(stack_domain), None));
    sequence_common(h, P);
    h.register_op(P, "pop", |_, args| {
        let [q] = arity("pop", args)?;
        let mut q = seq("pop", q)?;
        Rc::make_mut(&mut q)
            .pop_front()
            .ok_or_else(|| fault("pop", "empty queue"))?;
        one(Value::Seq(q))
    });
    h.register_op(P, "front", |_, args| {
        let [q] = arity("front", args)?;
        let q = seq("front", q)?;
        q.front()
            .cloned()
            .map(|v| vec![v])
            .ok_or_else(|| fault("front", "empty queue"))
    });
}

/// `empty`, `isEmpty` and `push` (at the back) for stacks and queues.
fn sequence_common(h: &mut HostLibrary, p: &str) {
    h.register_op(p, "empty", |_, args| {
        let [] = arity("empty", args)?;
        one(Value::seq([]))
    });
    h.register_op(p, "isEmpty", |_, args| {
        let [q] = arity("isEmpty", args)?;
        one(Value::Bool(seq("isEmpty", q)?.is_empty()))
    });
    h.register_op(p, "push", |_, args| {
        let [a, q] = arity("push", args)?;
        let mut q = seq("push", q)?;
        Rc::make_mut(&mut q).push_back(a);
        one(Value::Seq(q))
    });
}

fn priority_queue(h: &mut HostLibrary) {
    const P: &str = "lib.priority_queue";
    h.register_type(P, "PriorityQueue", ty(None, None));
    h.register_op(P, "emptyPriorityQueue", |_, args| {
        let [m] = arity("emptyPriorityQueue", args)?;
        let m = map("emptyPriorityQueue", m)?;
        let dist = m
            .iter()
            .map(|(k, v)| Ok((*k, cost("emptyPriorityQueue", v)?)))
            .collect::<Result<_, Fault>>()?;
        one(Value::PQueue(Rc::new(PQueue {
            dist,
            entries: BTreeSet::new(),
        })))
    });
    h.register_op(P, "isEmpty", |_, args| {
        let [q] = arity("isEmpty", args)?;
        one(Value::Bool(pqueue("isEmpty", q)?.front().is_none()))
    });
    h.register_op(P, "push", |_, args| {
        let [a, q] = arity("push", args)?;
        let v = int("push", &a)?;
        let mut q = pqueue("push", q)?;
        let pq = Rc::make_mut(&mut q);
        let d = pq.dist.get(&v).copied().unwrap_or(Cost::INF);
        pq.entries.insert((d, v));
        one(Value::PQueue(q))
    });
    h.register_op(P, "pop", |_, args| {
        let [q] = arity("pop", args)?;
        let mut q = pqueue("pop", q)?;
        let pq = Rc::make_mut(&mut q);
        pq.drop_stale();
        let first = *pq
            .entries
            .iter()
            .next()
            .ok_or_else(|| fault("pop", "empty priority queue"))?;
        pq.entries.remove(&first);
        pq.drop_stale();
        one(Value::PQueue(q))
    });
    h.register_op(P, "front", |_, args| {
        let [q] = arity("front", args)?;
        let v = pqueue("front", q)?
            .front()
            .ok_or_else(|| fault("front", "empty priority queue"))?;
        one(Value::Int(v))
    });
    h.register_op(P, "updatePriority", |_, args| {
        let [a, c, q] = arity("updatePriority", args)?;
        let v = int("updatePriority", &a)?;
        let c = cost("updatePriority", &c)?;
        let mut q = pqueue("updatePriority", q)?;
        Rc::make_mut(&mut q).dist.insert(v, c);
        one(Value::PQueue(q))
    });
}

fn loops(h: &mut HostLibrary) {
    h.register_op("lib.while_loop", "repeat", |cb, args| {
        let [mut s, c] = arity("repeat", args)?;
        while boolean(
            "repeat",
            &first(cb.call_required("cond", vec![s.clone(), c.clone()])?)?,
        )? {
            s = first(cb.call_required("step", vec![s, c.clone()])?)?;
        }
        one(s)
    });
    h.register_op("lib.while_loop3_1", "repeat", |cb, args| {
        let [s1, s2, s3, c1] = arity("repeat", args)?;
        let mut st = vec![s1, s2, s3];
        loop {
            let mut a = st.clone();
            a.push(c1.clone());
            if !boolean("repeat", &first(cb.call_required("cond", a)?)?)? {
                return Ok(st);
            }
            let mut a = st;
            a.push(c1.clone());
            st = cb.call_required("step", a)?;
        }
    });
    h.register_op("lib.for_loop3_2", "repeat", |cb, args| {
        let [itr, s1, s2, s3, c1, c2] = arity("repeat", args)?;
        let mut itr = itr;
        let mut st = vec![s1, s2, s3];
        while !boolean(
            "repeat",
            &first(cb.call_required("iterEnd", vec![itr.clone()])?)?,
        )? {
            let mut a = vec![itr.clone()];
            a.extend(st);
            a.push(c1.clone());
            a.push(c2.clone());
            st = cb.call_required("step", a)?;
            itr = first(cb.call_required("iterNext", vec![itr])?)?;
        }
        Ok(st)
    });
}

fn first(v: Vec<Value>) -> Result<Value, Fault> {
    v.into_iter()
        .next()
        .ok_or_else(|| Fault::Host("callback returned nothing".into()))
}

fn graph_lib(h: &mut HostLibrary) {
    const P: &str = "lib.graph";
    h.register_type(P, "Graph", ty(None, Some(parse_graph)));
    h.register_type(
        P,
        "VertexDescriptor",
        ty(Some(vertex_domain), Some(parse_int)),
    );
    h.register_type(P, "EdgeDescriptor", ty(None, None));
    h.register_type(P, "OutEdgeIterator", ty(None, None));
    h.register_type(P, "VertexIterator", ty(None, None));
    h.register_op(P, "outEdges", |_, args| {
        let [v, g, _out] = arity("outEdges", args)?;
        let g = graph("outEdges", &g)?;
        let vertex = vertex("outEdges", &v, &g)?;
        one(Value::OutEdgeIter {
            graph: g,
            vertex,
            pos: 0,
        })
    });
    h.register_op(P, "vertices", |_, args| {
        let [g, _out] = arity("vertices", args)?;
        let g = graph("vertices", &g)?;
        one(Value::VertexIter {
            count: g.num_vertices(),
            pos: 0,
        })
    });
    h.register_op(P, "src", |_, args| {
        let [e, _g] = arity("src", args)?;
        one(Value::Int(edge("src", &e)?.src as i64))
    });
    h.register_op(P, "tgt", |_, args| {
        let [e, _g] = arity("tgt", args)?;
        one(Value::Int(edge("tgt", &e)?.tgt as i64))
    });
    h.register_op(P, "weight", |_, args| {
        let [e, _g] = arity("weight", args)?;
        one(Value::Cost(Cost(Some(edge("weight", &e)?.weight))))
    });
    h.register_op(P, "outEdgeIterEnd", |_, args| {
        let [it] = arity("outEdgeIterEnd", args)?;
        match it {
            Value::OutEdgeIter { graph, vertex, pos } => {
                one(Value::Bool(pos >= graph.out_edges(vertex).len()))
            }
            other => Err(fault(
                "outEdgeIterEnd",
                format!("expected an iterator, got {other}"),
            )),
        }
    });
    h.register_op(P, "outEdgeIterNext", |_, args| {
        let [it] = arity("outEdgeIterNext", args)?;
        match it {
            Value::OutEdgeIter { graph, vertex, pos } => one(Value::OutEdgeIter {
                graph,
                vertex,
                pos: pos + 1,
            }),
            other => Err(fault(
                "outEdgeIterNext",
                format!("expected an iterator, got {other}"),
            )),
        }
    });
    h.register_op(P, "edgeIterUnpack", |_, args| {
        let [it] = arity("edgeIterUnpack", args)?;
        match it {
            Value::OutEdgeIter { graph, vertex, pos } => graph
                .out_edges(vertex)
                .get(pos)
                .map(|e| vec![Value::Edge(*e)])
                .ok_or_else(|| fault("edgeIterUnpack", "iterator at end")),
            other => Err(fault(
                "edgeIterUnpack",
                format!("expected an iterator, got {other}"),
            )),
        }
    });
}

fn vertices_of(op: &str, it: &Value) -> Result<std::ops::Range<usize>, Fault> {
    match it {
        Value::VertexIter { count, pos } => Ok(*pos..*count),
        other => Err(fault(
            op,
            format!("expected a vertex iterator, got {other}"),
        )),
    }
}

fn colors(h: &mut HostLibrary) {
    const P: &str = "lib.color";
    h.register_type(P, "Color", ty(Some(color_domain), Some(parse_color)));
    h.register_op(P, "white", |_, _| one(Value::Color(Color::White)));
    h.register_op(P, "gray", |_, _| one(Value::Color(Color::Gray)));
    h.register_op(P, "black", |_, _| one(Value::Color(Color::Black)));

    const M: &str = "lib.color_map";
    h.register_type(M, "ColorPropertyMap", ty(None, None));
    property_map(h, M, "initMap", "get", "put");
}

/// Vertex-keyed map operations: `init(itr, x)`, `get(m, v)` and
/// `put(upd m, v, x)`.
fn property_map(
    h: &mut HostLibrary,
    p: &str,
    init: &'static str,
    get: &'static str,
    put: &'static str,
) {
    h.register_op(p, init, move |_, args| {
        let [it, x] = arity(init, args)?;
        let m = vertices_of(init, &it)?
            .map(|v| (v as i64, x.clone()))
            .collect();
        one(Value::Map(Rc::new(m)))
    });
    h.register_op(p, get, move |_, args| {
        let [m, v] = arity(get, args)?;
        let k = int(get, &v)?;
        map(get, m)?
            .get(&k)
            .cloned()
            .map(|x| vec![x])
            .ok_or_else(|| fault(get, format!("vertex {k} not in map")))
    });
    h.register_op(p, put, move |_, args| {
        let [m, v, x] = arity(put, args)?;
        let k = int(put, &v)?;
        let mut m = map(put, m)?;
        Rc::make_mut(&mut m).insert(k, x);
        one(Value::Map(m))
    });
}

fn vertex_list(h: &mut HostLibrary) {
    const P: &str = "lib.vertex_list";
    h.register_type(P, "VertexList", ty(Some(vertex_list_domain), None));
    h.register_op(P, "emptyVertexList", |_, _| one(Value::seq([])));
    h.register_op(P, "append", |_, args| {
        let [l, v] = arity("append", args)?;
        let mut l = seq("append", l)?;
        Rc::make_mut(&mut l).push_back(v);
        one(Value::Seq(l))
    });
}

fn costs(h: &mut HostLibrary) {
    const P: &str = "lib.cost";
    h.register_type(P, "Cost", ty(Some(cost_domain), Some(parse_cost)));
    h.register_op(P, "zeroCost", |_, _| one(Value::Cost(Cost(Some(0)))));
    h.register_op(P, "inf", |_, _| one(Value::Cost(Cost::INF)));
    h.register_op(P, "plus", |_, args| {
        let [a, b] = arity("plus", args)?;
        one(Value::Cost(cost("plus", &a)?.plus(cost("plus", &b)?)))
    });
    h.register_op(P, "less", |_, args| {
        let [a, b] = arity("less", args)?;
        one(Value::Bool(cost("less", &a)? < cost("less", &b)?))
    });

    const M: &str = "lib.cost_map";
    h.register_type(M, "VertexCostMap", ty(None, None));
    property_map(h, M, "initCostMap", "getCost", "putCost");
}

/// A deliberately wrong single-operation replacement in the reference host.
pub struct Mutant {
    pub name: &'static str,
    pub path: &'static str,
    pub op: &'static str,
    pub apply: fn(HostLibrary) -> HostLibrary,
}

/// One or more mutants per corpus data structure or loop.
pub fn mutants() -> Vec<Mutant> {
    vec![
        Mutant {
            name: "add-subtracts",
            path: "lib.int_impl",
            op: "add",
            apply: |h| {
                h.with_op("lib.int_impl", "add", |_, args| {
                    let [a, b] = arity("add", args)?;
                    one(Value::Int(int("add", &a)? - int("add", &b)?))
                })
            },
        },
        Mutant {
            name: "mul-off-by-one",
            path: "lib.int_impl",
            op: "mul",
            apply: |h| {
                h.with_op("lib.int_impl", "mul", |_, args| {
                    let [a, b] = arity("mul", args)?;
                    // a*b+1 is not associative, unlike a+b+1.
                    one(Value::Int(int("mul", &a)? * int("mul", &b)? + 1))
                })
            },
        },
        Mutant {
            name: "stack-pops-bottom",
            path: "lib.stack",
            op: "pop",
            apply: |h| {
                h.with_op("lib.stack", "pop", |_, args| {
                    let [q] = arity("pop", args)?;
                    let mut q = seq("pop", q)?;
                    Rc::make_mut(&mut q)
                        .pop_front()
                        .ok_or_else(|| fault("pop", "empty stack"))?;
                    one(Value::Seq(q))
                })
            },
        },
        Mutant {
            name: "stack-empty-not-empty",
            path: "lib.stack",
            op: "empty",
            apply: |h| {
                h.with_op("lib.stack", "empty", |_, _| {
                    one(Value::seq([Value::Int(0)]))
                })
            },
        },
        Mutant {
            name: "queue-front-is-newest",
            path: "lib.fifo_queue",
            op: "front",
            apply: |h| {
                h.with_op("lib.fifo_queue", "front", |_, args| {
                    let [q] = arity("front", args)?;
                    let q = seq("front", q)?;
                    q.back()
                        .cloned()
                        .map(|v| vec![v])
                        .ok_or_else(|| fault("front", "empty queue"))
                })
            },
        },
        Mutant {
            name: "queue-pushes-at-front",
            path: "lib.fifo_queue",
            op: "push",
            apply: |h| {
                h.with_op("lib.fifo_queue", "push", |_, args| {
                    let [a, q] = arity("push", args)?;
                    let mut q = seq("push", q)?;
                    Rc::make_mut(&mut q).push_front(a);
                    one(Value::Seq(q))
                })
            },
        },
        Mutant {
            name: "while-steps-once-more",
            path: "lib.while_loop",
            op: "repeat",
            apply: |h| {
                h.with_op("lib.while_loop", "repeat", |cb, args| {
                    let [mut s, c] = arity("repeat", args)?;
                    while boolean(
                        "repeat",
                        &first(cb.call_required("cond", vec![s.clone(), c.clone()])?)?,
                    )? {
                        s = first(cb.call_required("step", vec![s, c.clone()])?)?;
                    }
                    s = first(cb.call_required("step", vec![s, c])?)?;
                    one(s)
                })
            },
        },
    ]
}
