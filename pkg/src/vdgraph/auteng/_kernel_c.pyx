# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled partition-refinement kernel; same contract as ``_kernel_py``."""

from libc.stdlib cimport malloc, calloc, free

ctypedef unsigned long long u64

cdef u64 FNV_PRIME = 1099511628211ULL
cdef u64 TRACE_SEED = 14695981039346656037ULL


cdef inline u64 _mix(u64 h, long long x) nogil:
    return (h ^ <u64>x) * FNV_PRIME


def refine(int[:] off, int[:] nbr, int[:] lab, int[:] cell, int[:] size, splitters):
    cdef int n = lab.shape[0]
    cdef u64 h = TRACE_SEED
    if n == 0:
        return h
    cdef char *inq = <char *>calloc(n, sizeof(char))
    cdef int *queue = <int *>malloc(n * sizeof(int))
    cdef int *count = <int *>calloc(n, sizeof(int))
    cdef int *touched = <int *>malloc(n * sizeof(int))
    cdef char *cellmark = <char *>calloc(n, sizeof(char))
    cdef int *starts = <int *>malloc(n * sizeof(int))
    cdef int *block = <int *>malloc(n * sizeof(int))
    cdef int *values = <int *>malloc(n * sizeof(int))
    cdef int *pieces = <int *>malloc(n * sizeof(int))
    cdef int qhead = 0, qlen = 0
    cdef int w, i, j, x, y, ntouched, nstarts, s, sz, nvals, a, b, t, val, pos, start, npieces, big, p
    cdef bint found
    try:
        for s in splitters:
            if not inq[s]:
                inq[s] = 1
                queue[(qhead + qlen) % n] = s
                qlen += 1
        while qlen > 0:
            w = queue[qhead]
            qhead = (qhead + 1) % n
            qlen -= 1
            inq[w] = 0
            ntouched = 0
            for i in range(w, w + size[w]):
                x = lab[i]
                for j in range(off[x], off[x + 1]):
                    y = nbr[j]
                    if count[y] == 0:
                        touched[ntouched] = y
                        ntouched += 1
                    count[y] += 1
            nstarts = 0
            for i in range(ntouched):
                s = cell[touched[i]]
                if not cellmark[s]:
                    cellmark[s] = 1
                    starts[nstarts] = s
                    nstarts += 1
            # insertion sort of touched cell starts
            for a in range(1, nstarts):
                t = starts[a]
                b = a - 1
                while b >= 0 and starts[b] > t:
                    starts[b + 1] = starts[b]
                    b -= 1
                starts[b + 1] = t
            for a in range(nstarts):
                s = starts[a]
                cellmark[s] = 0
                sz = size[s]
                if sz == 1:
                    continue
                nvals = 0
                for i in range(sz):
                    block[i] = lab[s + i]
                    val = count[block[i]]
                    found = False
                    for j in range(nvals):
                        if values[j] == val:
                            found = True
                            break
                    if not found:
                        values[nvals] = val
                        nvals += 1
                if nvals == 1:
                    continue
                for i in range(1, nvals):
                    t = values[i]
                    b = i - 1
                    while b >= 0 and values[b] > t:
                        values[b + 1] = values[b]
                        b -= 1
                    values[b + 1] = t
                h = _mix(h, w)
                h = _mix(h, s)
                pos = s
                npieces = 0
                for j in range(nvals):
                    val = values[j]
                    start = pos
                    for i in range(sz):
                        if count[block[i]] == val:
                            lab[pos] = block[i]
                            cell[block[i]] = start
                            pos += 1
                    size[start] = pos - start
                    pieces[npieces] = start
                    npieces += 1
                    h = _mix(h, val)
                    h = _mix(h, pos - start)
                if inq[s]:
                    for j in range(1, npieces):
                        p = pieces[j]
                        inq[p] = 1
                        queue[(qhead + qlen) % n] = p
                        qlen += 1
                else:
                    big = pieces[0]
                    for j in range(1, npieces):
                        if size[pieces[j]] > size[big]:
                            big = pieces[j]
                    for j in range(npieces):
                        p = pieces[j]
                        if p != big:
                            inq[p] = 1
                            queue[(qhead + qlen) % n] = p
                            qlen += 1
            for i in range(ntouched):
                count[touched[i]] = 0
    finally:
        free(inq); free(queue); free(count); free(touched); free(cellmark)
        free(starts); free(block); free(values); free(pieces)
    return h


def individualize(int[:] lab, int[:] cell, int[:] size, int v):
    cdef int s = cell[v]
    cdef int sz = size[s]
    cdef int i = s, k
    while lab[i] != v:
        i += 1
    lab[i] = lab[s]
    lab[s] = v
    size[s] = 1
    size[s + 1] = sz - 1
    for k in range(s + 1, s + sz):
        cell[lab[k]] = s + 1
    return s


def target_cell(int[:] size, int n):
    cdef int best = -1, best_size = n + 1, s = 0, sz
    while s < n:
        sz = size[s]
        if 1 < sz < best_size:
            best = s
            best_size = sz
            if sz == 2:
                break
        s += sz
    return best
