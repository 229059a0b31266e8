"""FIFO queue over a deque; the front is the oldest element."""

from collections import deque

from lib._host import HostFault, Hooks, Instance, containers, own


def _copy(q):
    return deque(own(x) for x in q)


def _enumerate(limit=None, params=None):
    return containers((params or {}).get("A", []), limit, deque)


TYPES = {"FIFOQueue": Hooks(copy=_copy, enumerate=_enumerate)}


def empty():
    return deque()


def isEmpty(q):
    return not q


def push(a, q):
    q.append(own(a))
    return (q,)


def pop(q):
    if not q:
        raise HostFault("pop", "empty queue")
    q.popleft()
    return (q,)


def front(q):
    if not q:
        raise HostFault("front", "empty queue")
    return own(q[0])


def instantiate(ops=None):
    return Instance(
        {"empty": empty, "isEmpty": isEmpty, "push": push, "pop": pop, "front": front},
        TYPES,
    )
