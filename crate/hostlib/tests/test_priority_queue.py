"""The lazy-deletion priority queue."""

import pytest

from lib import priority_queue as pq
from lib._host import INF, HostFault, show


def queue(dist, *vs):
    q = pq.emptyPriorityQueue(dist)
    for v in vs:
        (q,) = pq.push(v, q)
    return q


def test_front_is_the_cheapest_live_entry():
    q = queue({0: 3, 1: 1, 2: 2}, 0, 1, 2)
    assert pq.front(q) == 1
    (q,) = pq.pop(q)
    assert pq.front(q) == 2


def test_improved_priorities_make_old_entries_stale():
    q = queue({0: 5, 1: 3}, 0, 1)
    (q,) = pq.updatePriority(0, 1, q)
    # The old (5, 0) entry is stale and there is no live entry for 0 yet.
    assert pq.front(q) == 1
    (q,) = pq.push(0, q)
    assert pq.front(q) == 0
    assert show(q) == "pqueue[0@1, 1@3]"


def test_entries_form_a_set():
    q = queue({0: 1}, 0, 0)
    (q,) = pq.pop(q)
    assert pq.isEmpty(q)


def test_equality_ignores_stale_entries():
    a = queue({0: 5}, 0)
    (a,) = pq.updatePriority(0, 2, a)
    b = queue({0: 2})
    assert a == b


def test_the_queue_owns_its_distances():
    dist = {0: 1}
    q = queue(dist, 0)
    dist[0] = 9
    assert pq.front(q) == 0 and not pq.isEmpty(q)
    c = pq.TYPES["PriorityQueue"].copy(q)
    pq.updatePriority(0, INF, c)
    assert not pq.isEmpty(q) and pq.isEmpty(c)


def test_empty_queue_faults():
    for op in (pq.pop, pq.front):
        with pytest.raises(HostFault):
            op(queue({}))
