"""The three vertex colors of a graph search, as strings."""

from lib._host import Hooks, Instance

COLORS = ("white", "gray", "black")


def _parse(text):
    t = text.strip()
    if t not in COLORS:
        raise ValueError("`%s` is not a color" % t)
    return t


def _enumerate(limit=None, params=None):
    return list(COLORS)[:limit]


TYPES = {"Color": Hooks(parse=_parse, enumerate=_enumerate)}


def white():
    return "white"


def gray():
    return "gray"


def black():
    return "black"


def instantiate(ops=None):
    return Instance({"white": white, "gray": gray, "black": black}, TYPES)
