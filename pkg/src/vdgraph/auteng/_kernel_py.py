"""Pure-Python partition-refinement kernel.

Partition state is three ``array('i')`` buffers of length n:

* ``lab``  -- vertices listed cell by cell;
* ``cell`` -- ``cell[v]`` is the start position of the cell holding ``v``;
* ``size`` -- ``size[s]`` is the length of the cell starting at ``s``.

Cell positions depend only on the graph structure, never on vertex numbers,
so the final partition and the trace hash are isomorphism invariant. The
compiled kernel must reproduce this module bit for bit.
"""

from collections import deque

MASK = (1 << 64) - 1
FNV_PRIME = 1099511628211
TRACE_SEED = 14695981039346656037


def _mix(h, x):
    return ((h ^ x) * FNV_PRIME) & MASK


def refine(off, nbr, lab, cell, size, splitters):
    """Refine in place to the coarsest equitable partition.

    ``splitters`` lists start positions of the cells to split against; the
    partition must already be equitable with respect to every cell not
    listed (or with respect to their unions). Returns the trace hash.
    """
    n = len(lab)
    inq = [False] * n
    queue = deque()
    for s in splitters:
        if not inq[s]:
            inq[s] = True
            queue.append(s)
    count = [0] * n
    h = TRACE_SEED
    while queue:
        w = queue.popleft()
        inq[w] = False
        touched = []
        for i in range(w, w + size[w]):
            x = lab[i]
            for j in range(off[x], off[x + 1]):
                y = nbr[j]
                if count[y] == 0:
                    touched.append(y)
                count[y] += 1
        starts = sorted({cell[y] for y in touched})
        for s in starts:
            sz = size[s]
            if sz == 1:
                continue
            block = [lab[i] for i in range(s, s + sz)]
            values = sorted({count[v] for v in block})
            if len(values) == 1:
                continue
            h = _mix(h, w)
            h = _mix(h, s)
            pos = s
            pieces = []
            for val in values:
                start = pos
                for v in block:
                    if count[v] == val:
                        lab[pos] = v
                        cell[v] = start
                        pos += 1
                size[start] = pos - start
                pieces.append(start)
                h = _mix(h, val)
                h = _mix(h, pos - start)
            if inq[s]:
                for p in pieces[1:]:
                    inq[p] = True
                    queue.append(p)
            else:
                big = pieces[0]
                for p in pieces[1:]:
                    if size[p] > size[big]:
                        big = p
                for p in pieces:
                    if p != big:
                        inq[p] = True
                        queue.append(p)
        for y in touched:
            count[y] = 0
    return h


def individualize(lab, cell, size, v):
    """Split ``v`` off the front of its cell; returns the singleton's start."""
    s = cell[v]
    sz = size[s]
    i = s
    while lab[i] != v:
        i += 1
    lab[i] = lab[s]
    lab[s] = v
    size[s] = 1
    size[s + 1] = sz - 1
    for k in range(s + 1, s + sz):
        cell[lab[k]] = s + 1
    return s


def target_cell(size, n):
    """Start of the first smallest non-singleton cell, or -1 if discrete."""
    best = -1
    best_size = n + 1
    s = 0
    while s < n:
        sz = size[s]
        if 1 < sz < best_size:
            best = s
            best_size = sz
            if sz == 2:
                break
        s += sz
    return best
