"""Pure-Python distance primitives.

Mirrors the compiled module ``_ckern``; :mod:`coverpack.backend` picks one of
the two at import time.  All functions work on CSR adjacency buffers
(``indptr``, ``nbrs`` as ``array('i')``) so the two implementations stay
interchangeable.

A cap of -1 means "unbounded".  Distances use -1 for "unreachable".
"""

from array import array
from collections import deque


def bfs_limited(n, indptr, nbrs, sources, cap):
    """Multi-source BFS distances, truncated at ``cap``."""
    dist = array("i", [-1]) * n
    queue = deque()
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            queue.append(s)
    while queue:
        u = queue.popleft()
        du = dist[u]
        if 0 <= cap <= du:
            continue
        for i in range(indptr[u], indptr[u + 1]):
            v = nbrs[i]
            if dist[v] < 0:
                dist[v] = du + 1
                queue.append(v)
    return dist


def bfs_avoiding(n, indptr, nbrs, source, blocked, cap):
    """BFS from ``source`` that never walks through blocked vertices.

    ``blocked`` is a length-n bytes-like 0/1 mask.  Returns ``(dist, entry)``
    where ``dist[v]`` is the distance over unblocked vertices only and
    ``entry[x]``, for blocked ``x``, is the length of a shortest path whose
    interior avoids the blocked set (-1 if none within ``cap``).
    """
    dist = array("i", [-1]) * n
    entry = array("i", [-1]) * n
    if blocked[source]:
        raise ValueError("source vertex is blocked")
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if 0 <= cap <= du:
            continue
        for i in range(indptr[u], indptr[u + 1]):
            v = nbrs[i]
            if blocked[v]:
                if entry[v] < 0:
                    entry[v] = du + 1
            elif dist[v] < 0:
                dist[v] = du + 1
                queue.append(v)
    return dist, entry


def ball_of(n, indptr, nbrs, v, radius):
    """Sorted list of vertices at distance <= radius from ``v`` (incl. v)."""
    return ball_multi(n, indptr, nbrs, (v,), radius)


def ball_multi(n, indptr, nbrs, sources, radius):
    """Sorted list of vertices at distance <= radius from the source set."""
    dist = array("i", [-1]) * n
    queue = []
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            queue.append(s)
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        du = dist[u]
        if 0 <= radius <= du:
            continue
        for i in range(indptr[u], indptr[u + 1]):
            v = nbrs[i]
            if dist[v] < 0:
                dist[v] = du + 1
                queue.append(v)
    queue.sort()
    return queue
