"""Min-priority queue over vertices with lazy deletion.

The queue keeps its own copy of the distance map. `push(v)` inserts the
entry (dist[v], v); `updatePriority` changes dist[v], which makes older
entries for v stale. Stale entries are skipped by `front` and `isEmpty`
and dropped by `pop`. Entries form a set: pushing an identical live entry
twice keeps one.
"""

import heapq

from lib._host import INF, HostFault, Hooks, Instance, show


class PQueue:
    __slots__ = ("dist", "heap", "members")

    def __init__(self, dist, heap=None, members=None):
        self.dist = dist
        self.heap = heap if heap is not None else []
        self.members = members if members is not None else set()

    def _stale(self, entry):
        d, v = entry
        return self.dist.get(v, None) != d

    def drop_stale(self):
        while self.heap and self._stale(self.heap[0]):
            self.members.discard(heapq.heappop(self.heap))

    def live(self):
        return sorted(e for e in self.members if not self._stale(e))

    def __eq__(self, other):
        return isinstance(other, PQueue) and self.dist == other.dist and self.live() == other.live()

    def __deepcopy__(self, memo):
        return PQueue(dict(self.dist), list(self.heap), set(self.members))

    def __str__(self):
        return "pqueue[" + ", ".join("%d@%s" % (v, show(d)) for d, v in self.live()) + "]"


def _copy(q):
    return PQueue(dict(q.dist), list(q.heap), set(q.members))


TYPES = {"PriorityQueue": Hooks(copy=_copy)}


def emptyPriorityQueue(m):
    return PQueue(dict(m))


def isEmpty(q):
    q.drop_stale()
    return not q.heap


def push(a, q):
    e = (q.dist.get(a, INF), a)
    if e not in q.members:
        q.members.add(e)
        heapq.heappush(q.heap, e)
    return (q,)


def pop(q):
    q.drop_stale()
    if not q.heap:
        raise HostFault("pop", "empty priority queue")
    q.members.discard(heapq.heappop(q.heap))
    q.drop_stale()
    return (q,)


def front(q):
    q.drop_stale()
    if not q.heap:
        raise HostFault("front", "empty priority queue")
    return q.heap[0][1]


def updatePriority(a, c, q):
    q.dist[a] = c
    return (q,)


def instantiate(ops=None):
    return Instance(
        {
            "emptyPriorityQueue": emptyPriorityQueue,
            "isEmpty": isEmpty,
            "push": push,
            "pop": pop,
            "front": front,
            "updatePriority": updatePriority,
        },
        TYPES,
    )
