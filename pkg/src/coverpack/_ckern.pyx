# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled distance primitives (see _pykern.py for the reference versions)."""

from array import array

from cpython.mem cimport PyMem_Free, PyMem_Malloc


def bfs_limited(int n, indptr, nbrs, sources, int cap):
    cdef int[:] ip = indptr
    cdef int[:] nb = nbrs
    out = array("i", [-1]) * n
    cdef int[:] dist = out
    cdef int* queue = <int*> PyMem_Malloc(n * sizeof(int))
    if queue == NULL:
        raise MemoryError()
    cdef int head = 0, tail = 0
    cdef int s, u, v, du
    cdef Py_ssize_t i
    try:
        for s in sources:
            if dist[s] < 0:
                dist[s] = 0
                queue[tail] = s
                tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if cap >= 0 and du >= cap:
                continue
            for i in range(ip[u], ip[u + 1]):
                v = nb[i]
                if dist[v] < 0:
                    dist[v] = du + 1
                    queue[tail] = v
                    tail += 1
    finally:
        PyMem_Free(queue)
    return out


def bfs_avoiding(int n, indptr, nbrs, int source, blocked, int cap):
    cdef int[:] ip = indptr
    cdef int[:] nb = nbrs
    cdef const unsigned char[:] blk = blocked
    dist_out = array("i", [-1]) * n
    entry_out = array("i", [-1]) * n
    cdef int[:] dist = dist_out
    cdef int[:] entry = entry_out
    if blk[source]:
        raise ValueError("source vertex is blocked")
    cdef int* queue = <int*> PyMem_Malloc(n * sizeof(int))
    if queue == NULL:
        raise MemoryError()
    cdef int head = 0, tail = 0
    cdef int u, v, du
    cdef Py_ssize_t i
    try:
        dist[source] = 0
        queue[tail] = source
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if cap >= 0 and du >= cap:
                continue
            for i in range(ip[u], ip[u + 1]):
                v = nb[i]
                if blk[v]:
                    if entry[v] < 0:
                        entry[v] = du + 1
                elif dist[v] < 0:
                    dist[v] = du + 1
                    queue[tail] = v
                    tail += 1
    finally:
        PyMem_Free(queue)
    return dist_out, entry_out


def ball_of(int n, indptr, nbrs, int v, int radius):
    return ball_multi(n, indptr, nbrs, (v,), radius)


def ball_multi(int n, indptr, nbrs, sources, int radius):
    dist = bfs_limited(n, indptr, nbrs, sources, radius)
    cdef int[:] d = dist
    cdef int u
    out = []
    for u in range(n):
        if d[u] >= 0:
            out.append(u)
    return out
