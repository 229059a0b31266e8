"""`repeat` for a while loop over one state and one context."""

from lib._host import Instance


def instantiate(ops):
    cond, step = ops["cond"], ops["step"]

    def repeat(s, c):
        while cond(s, c):
            (s,) = step(s, c)
        return (s,)

    return Instance({"repeat": repeat}, {})
