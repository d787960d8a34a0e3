# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels; same contract as ``_kernels_py``."""


def bareiss_rank(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    cdef list m = [list(src) for src in rows]
    cdef Py_ssize_t nrows = len(m)
    if nrows == 0:
        return 0
    cdef Py_ssize_t ncols = len(m[0])
    cdef Py_ssize_t rank = 0, c, r, j, piv
    cdef object p, a, prev = 1
    cdef list prow, row
    for c in range(ncols):
        piv = rank
        while piv < nrows and (<list>m[piv])[c] == 0:
            piv += 1
        if piv == nrows:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        prow = <list>m[rank]
        p = prow[c]
        for r in range(rank + 1, nrows):
            row = <list>m[r]
            a = row[c]
            if a == 0:
                if p != prev:
                    for j in range(c + 1, ncols):
                        row[j] = row[j] * p // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (row[j] * p - a * prow[j]) // prev
                row[c] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank
