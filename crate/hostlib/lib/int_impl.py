"""Machine integers."""

from lib._host import Hooks, Instance, int_domain, parse_int

TYPES = {"int": Hooks(parse=parse_int, enumerate=int_domain)}


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def greater(a, b):
    return a > b


def predecessor(a):
    return a - 1


def instantiate(ops=None):
    return Instance(
        {"add": add, "mul": mul, "greater": greater, "predecessor": predecessor},
        TYPES,
    )
