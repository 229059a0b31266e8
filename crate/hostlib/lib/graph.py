"""Directed multigraphs over vertices 0..V-1 with out-edges in ascending
target order, their edges and iterators.

Fixture format: a `V E` line, then E lines `u v [w]` (weight defaults to
1). Blank lines and lines starting with `#` are ignored.
"""

from lib._host import TEST_VERTICES, HostFault, Hooks, Instance, atomic, parse_int


class Edge:
    __slots__ = ("src", "tgt", "weight")

    def __init__(self, src, tgt, weight=1):
        self.src, self.tgt, self.weight = src, tgt, weight

    def __eq__(self, o):
        return isinstance(o, Edge) and (self.src, self.tgt, self.weight) == (o.src, o.tgt, o.weight)

    def __hash__(self):
        return hash((self.src, self.tgt, self.weight))

    def __str__(self):
        return "%d->%d" % (self.src, self.tgt)


class Graph:
    __slots__ = ("out", "edges")

    def __init__(self, vertices, edges):
        out = [[] for _ in range(vertices)]
        for e in edges:
            if not (0 <= e.src < vertices and 0 <= e.tgt < vertices):
                raise ValueError("edge %d -> %d out of range for %d vertices" % (e.src, e.tgt, vertices))
            out[e.src].append(e)
        for adj in out:
            adj.sort(key=lambda e: e.tgt)  # stable: parallel edges keep fixture order
        self.out = out
        self.edges = len(edges)

    def num_vertices(self):
        return len(self.out)

    def __eq__(self, o):
        return isinstance(o, Graph) and self.out == o.out

    def __str__(self):
        return "graph(%d vertices, %d edges)" % (len(self.out), self.edges)


class OutEdgeIter:
    __slots__ = ("graph", "vertex", "pos")

    def __init__(self, graph, vertex, pos):
        self.graph, self.vertex, self.pos = graph, vertex, pos

    def __eq__(self, o):
        return isinstance(o, OutEdgeIter) and (self.graph, self.vertex, self.pos) == (o.graph, o.vertex, o.pos)

    def __str__(self):
        return "out-edges(%d)@%d" % (self.vertex, self.pos)


class VertexIter:
    __slots__ = ("count", "pos")

    def __init__(self, count, pos=0):
        self.count, self.pos = count, pos

    def __eq__(self, o):
        return isinstance(o, VertexIter) and (self.count, self.pos) == (o.count, o.pos)

    def __str__(self):
        return "vertices(%d)@%d" % (self.count, self.pos)


atomic(Edge, Graph, OutEdgeIter, VertexIter)


def _ints(line):
    try:
        return [int(t) for t in line.split()]
    except ValueError:
        raise ValueError("bad line `%s`" % line) from None


def parse_graph(text):
    lines = [l.strip() for l in text.splitlines()]
    lines = [l for l in lines if l and not l.startswith("#")]
    if not lines:
        raise ValueError("empty graph fixture")
    header = _ints(lines[0])
    if len(header) != 2:
        raise ValueError("bad graph header `%s`, expected `V E`" % lines[0])
    v, e = header
    if v < 0 or e < 0:
        raise ValueError("negative count in `%s`" % lines[0])
    edges = []
    for line in lines[1:]:
        n = _ints(line)
        if len(n) == 2:
            edges.append(Edge(n[0], n[1]))
        elif len(n) == 3:
            edges.append(Edge(n[0], n[1], n[2]))
        else:
            raise ValueError("bad edge line `%s`" % line)
    if len(edges) != e:
        raise ValueError("graph header promises %d edges, found %d" % (e, len(edges)))
    return Graph(v, edges)


def _vertices(limit=None, params=None):
    return list(range(TEST_VERTICES))[:limit]


TYPES = {
    "Graph": Hooks(parse=parse_graph),
    "VertexDescriptor": Hooks(parse=parse_int, enumerate=_vertices),
    "EdgeDescriptor": Hooks(),
    "OutEdgeIterator": Hooks(),
    "VertexIterator": Hooks(),
}


def outEdges(v, g, itr=None):
    if not (type(v) is int and 0 <= v < len(g.out)):
        raise HostFault("outEdges", "vertex %s out of range" % v)
    return (OutEdgeIter(g, v, 0),)


def vertices(g, itr=None):
    return (VertexIter(len(g.out)),)


def src(e, g):
    return e.src


def tgt(e, g):
    return e.tgt


def weight(e, g):
    return e.weight


def outEdgeIterEnd(it):
    return it.pos >= len(it.graph.out[it.vertex])


def outEdgeIterNext(it):
    return (OutEdgeIter(it.graph, it.vertex, it.pos + 1),)


def edgeIterUnpack(it):
    adj = it.graph.out[it.vertex]
    if it.pos >= len(adj):
        raise HostFault("edgeIterUnpack", "iterator at end")
    return adj[it.pos]


def instantiate(ops=None):
    return Instance(
        {
            "outEdges": outEdges,
            "vertices": vertices,
            "src": src,
            "tgt": tgt,
            "weight": weight,
            "outEdgeIterEnd": outEdgeIterEnd,
            "outEdgeIterNext": outEdgeIterNext,
            "edgeIterUnpack": edgeIterUnpack,
        },
        TYPES,
    )
