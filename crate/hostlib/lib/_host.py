"""Shared plumbing: type hooks, instances, value ownership, text forms."""

import copy as _copy
import math
import operator
from collections import deque

MAX_CONTAINER = 3
INT_RADIUS = 8
TEST_VERTICES = 4
INF = math.inf


class Hooks:
    """Per-type hooks. Every registered type has equality, copy and show;
    parse and enumerate are optional."""

    __slots__ = ("eq", "copy", "show", "parse", "enumerate")

    def __init__(self, copy=None, parse=None, enumerate=None, eq=operator.eq):
        self.eq = eq
        self.copy = copy or own
        self.show = show
        self.parse = parse
        self.enumerate = enumerate


class Instance:
    def __init__(self, ops, types):
        self.__dict__.update(ops)
        self.types = types


class HostFault(Exception):
    """Misuse of a host operation, such as popping an empty container."""

    def __init__(self, op, msg):
        super().__init__("%s: %s" % (op, msg))


_ATOMIC = {int, bool, float, str, type(None)}


def atomic(*classes):
    """Registers immutable classes that never need copying."""
    _ATOMIC.update(classes)
    return classes[0] if classes else None


def own(v):
    """An independent copy of v; immutable values are returned as is."""
    if type(v) in _ATOMIC:
        return v
    return _copy.deepcopy(v)


def show(v):
    """The canonical text form, shared with the compiler's interpreter."""
    if v is None:
        return "unset"
    if v is True:
        return "true"
    if v is False:
        return "false"
    if isinstance(v, float):
        return "inf" if v == INF else repr(v)
    if isinstance(v, (list, deque)):
        return "[" + ", ".join(show(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join("%s: %s" % (show(k), show(v[k])) for k in sorted(v)) + "}"
    return str(v)


def int_domain(limit=None, params=None):
    """0, 1, -1, 2, -2, ... up to the radius."""
    out = [0]
    for k in range(1, INT_RADIUS + 1):
        out += [k, -k]
    return out[:limit]


def containers(elems, limit=None, make=list):
    """All sequences of length at most MAX_CONTAINER over the first two
    element values, shortest first, then in lexicographic element order."""
    elems = list(elems)[:2]
    out = [[]]
    layer = [[]]
    for _ in range(MAX_CONTAINER):
        layer = [s + [e] for s in layer for e in elems]
        out += layer
    return [make(s) for s in out[:limit]]


def parse_int(text):
    try:
        return int(text.strip())
    except ValueError:
        raise ValueError("`%s` is not an integer" % text.strip()) from None
