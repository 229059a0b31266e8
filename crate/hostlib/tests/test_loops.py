"""Host loops instantiated with program operations."""

import pytest

from lib import for_loop3_2, graph, while_loop, while_loop3_1


def countdown():
    return while_loop.instantiate(
        {"cond": lambda s, c: s > c, "step": lambda s, c: (s - 1,)}
    ).repeat


@pytest.mark.parametrize("start", range(6))
def test_while_loop_behaviour(start):
    repeat = countdown()
    # whileLoopBehavior: if cond holds, repeat == step then repeat;
    # otherwise repeat leaves the state alone.
    if start > 0:
        assert repeat(start, 0) == repeat(start - 1, 0)
    else:
        assert repeat(start, 0) == (start,)
    assert repeat(start, 0) == (min(start, 0),)


def test_three_state_while_loop_threads_every_state():
    inst = while_loop3_1.instantiate(
        {
            "cond": lambda a, b, c, lim: a < lim,
            "step": lambda a, b, c, lim: (a + 1, b + [a], c * 2),
        }
    )
    assert inst.repeat(0, [], 1, 3) == (3, [0, 1, 2], 8)


def test_for_loop_visits_every_iterator_position_in_order():
    g = graph.parse_graph("3 3\n0 2\n0 1\n1 2\n")
    seen = []

    def step(it, s1, s2, s3, c1, c2):
        e = graph.edgeIterUnpack(it)
        seen.append(e.tgt)
        return (s1 + 1, s2, s3)

    inst = for_loop3_2.instantiate(
        {"iterEnd": graph.outEdgeIterEnd, "iterNext": graph.outEdgeIterNext, "step": step}
    )
    (it,) = graph.outEdges(0, g)
    assert inst.repeat(it, 0, "x", None, g, 0) == (2, "x", None)
    assert seen == [1, 2]
