"""Dense matrices over a :class:`~genrec.gfgeom.field.Field` (lists of rows)."""

from __future__ import annotations


def identity(F, d):
    return [[1 if i == j else 0 for j in range(d)] for i in range(d)]


def mat_mul(F, A, B):
    add, mul = F.add_table, F.mul_table
    cols = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in cols:
            s = 0
            for a, b in zip(row, col):
                if a and b:
                    s = add[s][mul[a][b]]
            out_row.append(s)
        out.append(out_row)
    return out


def mat_vec(F, A, v):
    add, mul = F.add_table, F.mul_table
    out = []
    for row in A:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s = add[s][mul[a][b]]
        out.append(s)
    return out


def mat_pow(F, A, k):
    result = identity(F, len(A))
    while k:
        if k & 1:
            result = mat_mul(F, result, A)
        A = mat_mul(F, A, A)
        k >>= 1
    return result


def _eliminate(F, rows, ncols):
    """Row-reduce in place; return the pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        scale = F.inv(rows[r][c])
        rows[r] = [F.mul(scale, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(F, A):
    rows = [list(r) for r in A]
    return len(_eliminate(F, rows, len(A[0]) if A else 0))


def determinant(F, A):
    d = len(A)
    rows = [list(r) for r in A]
    det = 1
    for c in range(d):
        pr = next((i for i in range(c, d) if rows[i][c]), None)
        if pr is None:
            return 0
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            det = F.neg(det)
        det = F.mul(det, rows[c][c])
        inv = F.inv(rows[c][c])
        for i in range(c + 1, d):
            if rows[i][c]:
                f = F.mul(rows[i][c], inv)
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return det


def solve(F, A, b):
    """Solve A x = b for invertible square A; None when A is singular."""
    d = len(A)
    rows = [list(A[i]) + [b[i]] for i in range(d)]
    pivots = _eliminate(F, rows, d)
    if len(pivots) < d:
        return None
    return [rows[i][d] for i in range(d)]


def transpose(A):
    return [list(r) for r in zip(*A)]


def normalize_matrix(F, A):
    """Scale so the first nonzero entry (row-major) is 1; matrices mod scalars."""
    lead = next(x for row in A for x in row if x)
    s = F.inv(lead)
    return [[F.mul(s, x) for x in row] for row in A]
