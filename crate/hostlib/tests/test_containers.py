"""Stack, FIFO queue and vertex list: concept axioms over exhaustive small
domains, and value semantics."""

import copy

import pytest

from lib import fifo_queue, stack, vertex_list
from lib._host import HostFault, int_domain

ELEMS = int_domain()[:2]


def stacks():
    return stack.TYPES["Stack"].enumerate(params={"A": ELEMS})


def queues():
    return fifo_queue.TYPES["FIFOQueue"].enumerate(params={"A": ELEMS})


def test_domains_respect_limits():
    assert len(stacks()) == 15
    assert len(stack.TYPES["Stack"].enumerate(limit=7, params={"A": ELEMS})) == 7
    assert len(queues()) == 15


def test_empty_is_empty():
    assert stack.isEmpty(stack.empty())
    assert fifo_queue.isEmpty(fifo_queue.empty())


@pytest.mark.parametrize("a", ELEMS)
def test_stack_push_then_top_and_pop(a):
    for s in stacks():
        before = copy.deepcopy(s)
        (t,) = stack.push(a, stack.TYPES["Stack"].copy(s))
        assert stack.top(t) == a
        (t,) = stack.pop(t)
        assert t == before
        assert s == before


@pytest.mark.parametrize("a", ELEMS)
def test_queue_front_is_the_oldest_element(a):
    for q in queues():
        (t,) = fifo_queue.push(a, fifo_queue.TYPES["FIFOQueue"].copy(q))
        assert fifo_queue.front(t) == (q[0] if q else a)
        (t,) = fifo_queue.pop(t)
        expected = list(q)[1:] + [a] if q else []
        assert list(t) == expected


def test_empty_containers_fault():
    for op in (stack.pop, stack.top):
        with pytest.raises(HostFault):
            op(stack.empty())
    for op in (fifo_queue.pop, fifo_queue.front):
        with pytest.raises(HostFault):
            op(fifo_queue.empty())


def test_observers_never_mutate_their_arguments():
    for s in stacks():
        before = copy.deepcopy(s)
        stack.isEmpty(s)
        if s:
            stack.top(s)
        assert s == before
    for q in queues():
        before = copy.deepcopy(q)
        fifo_queue.isEmpty(q)
        if q:
            fifo_queue.front(q)
        assert q == before


def test_pushed_elements_are_owned():
    inner = [1]
    (s,) = stack.push(inner, stack.empty())
    inner.append(2)
    assert stack.top(s) == [1]
    top = stack.top(s)
    top.append(3)
    assert stack.top(s) == [1]


def test_copies_are_independent():
    for ty, mod in (("Stack", stack), ("FIFOQueue", fifo_queue)):
        hooks = mod.TYPES[ty]
        (x,) = mod.push(0, mod.empty())
        y = hooks.copy(x)
        mod.push(1, y)
        assert len(x) == 1 and len(y) == 2


def test_vertex_list_appends_in_order():
    (l,) = vertex_list.append(vertex_list.emptyVertexList(), 2)
    (l,) = vertex_list.append(l, 0)
    assert l == [2, 0]
    c = vertex_list.TYPES["VertexList"].copy(l)
    vertex_list.append(c, 1)
    assert l == [2, 0]
    assert len(vertex_list.TYPES["VertexList"].enumerate(params={"VertexDescriptor": [0, 1, 2]})) == 15
