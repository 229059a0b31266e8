"""`repeat` for a while loop over three states and one context."""

from lib._host import Instance


def instantiate(ops):
    cond, step = ops["cond"], ops["step"]

    def repeat(s1, s2, s3, c1):
        while cond(s1, s2, s3, c1):
            s1, s2, s3 = step(s1, s2, s3, c1)
        return (s1, s2, s3)

    return Instance({"repeat": repeat}, {})
