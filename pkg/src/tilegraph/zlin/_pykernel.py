"""Pure-Python diagonalisation kernel over the integers.

Same algorithm, operation for operation, as the compiled kernel: both
produce identical diagonals and identical transformed targets.
"""


def _swap_rows(mat, i, k):
    if mat is not None and i != k:
        mat[i], mat[k] = mat[k], mat[i]


def _axpy_row(mat, i, k, f):
    """row_i += f * row_k"""
    if mat is not None:
        ri, rk = mat[i], mat[k]
        for j, x in enumerate(rk):
            if x:
                ri[j] += f * x


def diagonalize(A, row_targets=None, col_targets=None, inv_targets=None):
    """Reduce ``A`` (list of row lists, modified in place) to diagonal form.

    Row operations are mirrored on ``row_targets`` (one row per row of
    ``A``).  A column operation ``col_j += f col_k`` is mirrored as the row
    operation ``row_j += f row_k`` on ``col_targets`` and as its inverse
    ``row_k -= f row_j`` on ``inv_targets`` (both have one row per column of
    ``A``).  With identity targets this yields ``U``, ``V^T`` and ``V^-1``
    for ``U A V = D``.

    Pivots are chosen with minimal absolute value, scanning row-major and
    stopping at the first unit.  Returns the positive pivots in order; the
    diagonal is not normalised to a divisibility chain.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    k = 0
    while k < m and k < n:
        best = 0
        bi = bj = -1
        for i in range(k, m):
            row = A[i]
            for j in range(k, n):
                x = row[j]
                if x:
                    ax = x if x > 0 else -x
                    if best == 0 or ax < best:
                        best, bi, bj = ax, i, j
                        if ax == 1:
                            break
            if best == 1:
                break
        if best == 0:
            break
        _move_pivot(A, k, bi, bj, row_targets, col_targets, inv_targets)
        while True:
            _make_positive(A, k, row_targets)
            p = A[k][k]
            clean = True
            pivot_row = A[k]
            nz = [j for j in range(k, n) if pivot_row[j]]
            for i in range(k + 1, m):
                ai = A[i]
                a = ai[k]
                if a:
                    f = a // p
                    if f:
                        for j in nz:
                            ai[j] -= f * pivot_row[j]
                        _axpy_row(row_targets, i, k, -f)
                    if ai[k]:
                        clean = False
            col_rows = [i for i in range(k, m) if A[i][k]]
            for j in range(k + 1, n):
                a = pivot_row[j]
                if a:
                    f = a // p
                    if f:
                        for i in col_rows:
                            A[i][j] -= f * A[i][k]
                        _axpy_row(col_targets, j, k, -f)
                        _axpy_row(inv_targets, k, j, f)
                    if pivot_row[j]:
                        clean = False
            if clean:
                break
            best = 0
            bi = bj = -1
            for i in range(k + 1, m):
                x = abs(A[i][k])
                if x and (best == 0 or x < best):
                    best, bi, bj = x, i, k
            for j in range(k + 1, n):
                x = abs(pivot_row[j])
                if x and (best == 0 or x < best):
                    best, bi, bj = x, k, j
            _move_pivot(A, k, bi, bj, row_targets, col_targets, inv_targets)
        diag.append(A[k][k])
        k += 1
    return diag


def _make_positive(A, k, row_targets):
    if A[k][k] < 0:
        A[k] = [-x for x in A[k]]
        if row_targets is not None:
            row_targets[k] = [-x for x in row_targets[k]]


def _move_pivot(A, k, bi, bj, row_targets, col_targets, inv_targets):
    if bi != k:
        A[bi], A[k] = A[k], A[bi]
        _swap_rows(row_targets, bi, k)
    if bj != k:
        for row in A:
            row[bj], row[k] = row[k], row[bj]
        _swap_rows(col_targets, bj, k)
        _swap_rows(inv_targets, bj, k)
