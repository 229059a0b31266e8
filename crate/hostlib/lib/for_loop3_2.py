"""`repeat` for a for-each loop: runs step at every iterator position."""

from lib._host import Instance


def instantiate(ops):
    iter_end, iter_next, step = ops["iterEnd"], ops["iterNext"], ops["step"]

    def repeat(itr, s1, s2, s3, c1, c2):
        while not iter_end(itr):
            s1, s2, s3 = step(itr, s1, s2, s3, c1, c2)
            (itr,) = iter_next(itr)
        return (s1, s2, s3)

    return Instance({"repeat": repeat}, {})
