"""Vertices in the order they were appended."""

from lib._host import Hooks, Instance, containers, own


def _copy(l):
    return [own(x) for x in l]


def _enumerate(limit=None, params=None):
    return containers((params or {}).get("VertexDescriptor", []), limit)


TYPES = {"VertexList": Hooks(copy=_copy, enumerate=_enumerate)}


def emptyVertexList():
    return []


def append(l, v):
    l.append(own(v))
    return (l,)


def instantiate(ops=None):
    return Instance({"emptyVertexList": emptyVertexList, "append": append}, TYPES)
