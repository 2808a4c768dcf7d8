"""Pure-Python elimination kernels.

Line-for-line twin of `_speedups.pyx`; `linalg` imports whichever is available.
Both kernels mutate their row lists in place and pick pivots as the first
nonzero entry in the column, so the compiled and pure paths produce identical
results, not merely equivalent ones.
"""

from fractions import Fraction


def bareiss_rank(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if rows[i][c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        row_r = rows[r]
        for i in range(r + 1, m):
            row_i = rows[i]
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


def rref(rows):
    """Reduced row echelon form over Fraction; returns the pivot column list."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    pivots = []
    r = 0
    one = Fraction(1)
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if rows[i][c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        if p != 1:
            inv = one / p
            rows[r] = [x * inv for x in rows[r]]
        row_r = rows[r]
        for i in range(m):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row_i = rows[i]
                rows[i] = [a - f * b for a, b in zip(row_i, row_r)]
        pivots.append(c)
        r += 1
    return pivots
