"""Graphs, iterators and property maps."""

import copy

import pytest

from lib import color, color_map, cost, cost_map, graph
from lib._host import INF, HostFault, show

SMALL = "4 3\n0 1\n0 2\n1 3\n"
WEIGHTED = "# comment\n3 3\n0 2 1\n0 1 4\n\n2 1 2\n"


def out_edges(g, u):
    (it,) = graph.outEdges(u, g)
    out = []
    while not graph.outEdgeIterEnd(it):
        out.append(graph.edgeIterUnpack(it))
        (it,) = graph.outEdgeIterNext(it)
    return out


def test_parse_reads_weights_and_skips_comments():
    g = graph.parse_graph(WEIGHTED)
    assert g.num_vertices() == 3
    assert [(e.src, e.tgt, e.weight) for e in out_edges(g, 0)] == [(0, 1, 4), (0, 2, 1)]
    assert graph.weight(out_edges(g, 2)[0], g) == 2


@pytest.mark.parametrize(
    "text",
    ["", "3\n", "2 1\n0 5\n", "2 2\n0 1\n", "x y\n", "-1 0\n", "2 1\n0 1 2 3\n"],
)
def test_bad_fixtures_are_value_errors(text):
    with pytest.raises(ValueError):
        graph.parse_graph(text)


def test_out_edges_enumerate_exactly_the_edges_from_a_vertex():
    g = graph.parse_graph(SMALL)
    for u in range(4):
        es = out_edges(g, u)
        assert all(graph.src(e, g) == u for e in es)
        assert [graph.tgt(e, g) for e in es] == sorted(graph.tgt(e, g) for e in es)
    assert [graph.tgt(e, g) for e in out_edges(g, 0)] == [1, 2]
    assert sum(len(out_edges(g, u)) for u in range(4)) == 3


def test_parallel_edges_keep_fixture_order():
    g = graph.parse_graph("2 2\n0 1 5\n0 1 3\n")
    assert [e.weight for e in out_edges(g, 0)] == [5, 3]


def test_iterators_are_values():
    g = graph.parse_graph(SMALL)
    (it,) = graph.outEdges(0, g)
    before = copy.copy(it)
    (nxt,) = graph.outEdgeIterNext(it)
    assert it == before and nxt != it


def test_misuse_faults():
    g = graph.parse_graph(SMALL)
    with pytest.raises(HostFault):
        graph.outEdges(9, g)
    (it,) = graph.outEdges(3, g)
    with pytest.raises(HostFault):
        graph.edgeIterUnpack(it)


def test_init_map_covers_every_vertex():
    g = graph.parse_graph(SMALL)
    (vs,) = graph.vertices(g)
    m = color_map.OPS["initMap"](vs, color.white())
    assert m == {v: "white" for v in range(4)}
    (m2,) = color_map.OPS["put"](color_map.TYPES["ColorPropertyMap"].copy(m), 2, color.gray())
    assert color_map.OPS["get"](m2, 2) == "gray"
    assert color_map.OPS["get"](m, 2) == "white"
    with pytest.raises(HostFault):
        color_map.OPS["get"](m, 7)


def test_cost_maps_and_costs():
    g = graph.parse_graph(WEIGHTED)
    (vs,) = graph.vertices(g)
    m = cost_map.OPS["initCostMap"](vs, cost.inf())
    (m,) = cost_map.OPS["putCost"](m, 0, cost.zeroCost())
    assert show(m) == "{0: 0, 1: inf, 2: inf}"
    assert cost.plus(INF, 1) == INF and cost.less(2, INF) and not cost.less(INF, INF)
    assert cost.TYPES["Cost"].parse("inf") == INF
    assert cost.TYPES["Cost"].enumerate() == [0, 1, 2, INF]


def test_colors_are_distinct_and_parse():
    assert len({color.white(), color.gray(), color.black()}) == 3
    assert color.TYPES["Color"].parse(" gray ") == "gray"
    with pytest.raises(ValueError):
        color.TYPES["Color"].parse("red")
