"""Per-vertex path costs."""

from lib import _property_map
from lib._host import Instance

TYPES = {"VertexCostMap": _property_map.hooks()}
OPS = _property_map.operations("initCostMap", "getCost", "putCost")


def instantiate(ops=None):
    return Instance(OPS, TYPES)
