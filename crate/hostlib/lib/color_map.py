"""Per-vertex colors."""

from lib import _property_map
from lib._host import Instance

TYPES = {"ColorPropertyMap": _property_map.hooks()}
OPS = _property_map.operations("initMap", "get", "put")


def instantiate(ops=None):
    return Instance(OPS, TYPES)
