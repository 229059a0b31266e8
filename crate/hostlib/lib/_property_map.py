"""Vertex-keyed maps over dicts: init(itr, x), get(m, v), put(upd m, v, x)."""

from lib._host import HostFault, Hooks, own


def _copy(m):
    return {k: own(v) for k, v in m.items()}


def hooks():
    return Hooks(copy=_copy)


def operations(init_name, get_name, put_name):
    def init(itr, x):
        return {v: own(x) for v in range(itr.pos, itr.count)}

    def get(m, v):
        try:
            return own(m[v])
        except KeyError:
            raise HostFault(get_name, "vertex %s not in map" % v) from None

    def put(m, v, x):
        m[v] = own(x)
        return (m,)

    return {init_name: init, get_name: get, put_name: put}
