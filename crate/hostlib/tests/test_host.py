"""Shared plumbing: text forms, ownership and test domains."""

import math
from collections import deque

from lib import _host
from lib._host import INF, containers, int_domain, own, parse_int, show


def test_show_matches_the_interpreter_forms():
    assert show(None) == "unset"
    assert show(True) == "true" and show(False) == "false"
    assert show(INF) == "inf"
    assert show([1, [2, 3]]) == "[1, [2, 3]]"
    assert show(deque([0, 1])) == "[0, 1]"
    assert show({2: "gray", 0: "white"}) == "{0: white, 2: gray}"


def test_int_domain_zigzags_over_the_radius():
    d = int_domain()
    assert len(d) == 17
    assert d[:5] == [0, 1, -1, 2, -2]
    assert sorted(d) == list(range(-8, 9))
    assert int_domain(limit=3) == [0, 1, -1]


def test_containers_are_short_sequences_over_two_elements():
    d = containers(int_domain())
    assert len(d) == 1 + 2 + 4 + 8
    assert d[0] == [] and d[1:3] == [[0], [1]]
    assert all(len(s) <= _host.MAX_CONTAINER and set(s) <= {0, 1} for s in d)
    assert len(containers(int_domain(), limit=7)) == 7
    assert all(isinstance(s, deque) for s in containers([0, 1], make=deque))


def test_own_copies_mutable_values_only():
    xs = [[1], 2]
    ys = own(xs)
    ys[0].append(3)
    assert xs == [[1], 2]
    s = "white"
    assert own(s) is s
    assert math.isinf(own(INF))


def test_parse_int_rejects_junk():
    assert parse_int(" -4 ") == -4
    try:
        parse_int("four")
    except ValueError as e:
        assert "four" in str(e)
    else:
        raise AssertionError("parsed junk")
