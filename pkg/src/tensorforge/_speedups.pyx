# cython: language_level=3
"""Compiled elimination kernels.

Line-for-line twin of `_kernels_py.py`; `linalg` imports whichever is
available. Both kernels mutate their row lists in place and pick pivots as
the first nonzero entry in the column, so the compiled and pure paths
produce identical results, not merely equivalent ones.

The arithmetic stays on Python objects (arbitrary-size ints, Fractions);
the speedup comes from compiling the loop and indexing machinery.
"""

from fractions import Fraction

import cython


def bareiss_rank(list rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    cdef Py_ssize_t m = len(rows)
    if m == 0:
        return 0
    cdef Py_ssize_t n = len(<list>rows[0])
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef list row_r, row_i
    prev = 1
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if (<list>rows[i])[c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        p = (<list>rows[r])[c]
        row_r = <list>rows[r]
        for i in range(r + 1, m):
            row_i = <list>rows[i]
            x = row_i[c]
            if x:
                for j in range(c + 1, n):
                    # exact by the Bareiss divisibility invariant
                    row_i[j] = (p * row_i[j] - x * row_r[j]) // prev
            else:
                for j in range(c + 1, n):
                    row_i[j] = (p * row_i[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
    return r


def rref(list rows):
    """Reduced row echelon form over Fraction; returns the pivot column list."""
    cdef Py_ssize_t m = len(rows)
    if m == 0:
        return []
    cdef Py_ssize_t n = len(<list>rows[0])
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, piv
    cdef list row_r, row_i
    one = Fraction(1)
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if (<list>rows[i])[c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        p = (<list>rows[r])[c]
        if p != 1:
            inv = one / p
            rows[r] = [x * inv for x in <list>rows[r]]
        row_r = <list>rows[r]
        for i in range(m):
            if i == r:
                continue
            f = (<list>rows[i])[c]
            if f:
                row_i = <list>rows[i]
                rows[i] = [a - f * b for a, b in zip(row_i, row_r)]
        pivots.append(c)
        r += 1
    return pivots
