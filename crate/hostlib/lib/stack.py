"""LIFO stack over a Python list; the top is the last element."""

from lib._host import HostFault, Hooks, Instance, containers, own


def _copy(s):
    return [own(x) for x in s]


def _enumerate(limit=None, params=None):
    return containers((params or {}).get("A", []), limit)


TYPES = {"Stack": Hooks(copy=_copy, enumerate=_enumerate)}


def empty():
    return []


def isEmpty(q):
    return not q


def push(a, q):
    q.append(own(a))
    return (q,)


def pop(q):
    if not q:
        raise HostFault("pop", "empty stack")
    q.pop()
    return (q,)


def top(q):
    if not q:
        raise HostFault("top", "empty stack")
    return own(q[-1])


def instantiate(ops=None):
    return Instance(
        {"empty": empty, "isEmpty": isEmpty, "push": push, "pop": pop, "top": top},
        TYPES,
    )
