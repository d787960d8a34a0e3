"""Pure-Python integer kernels (fallback for the compiled ``_kernels``)."""


def bareiss_rank(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    ``rows`` is a list of equal-length lists of ``int``; it is not modified.
    Every intermediate entry is a minor of the input, so the division by the
    previous pivot is exact.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    if not nrows:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = rank
        while piv < nrows and m[piv][c] == 0:
            piv += 1
        if piv == nrows:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        p = prow[c]
        for r in range(rank + 1, nrows):
            row = m[r]
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
