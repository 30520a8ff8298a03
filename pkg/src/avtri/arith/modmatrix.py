"""Small dense matrices over F_ell (lists of lists of ints mod ell).

Everything here is plain Gaussian elimination at desk scale: matrices are
2g x 2g or the regular representation of an order (<= 8 x 8).
"""

from __future__ import annotations


def mat_identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_add(a, b, ell: int):
    return [[(x + y) % ell for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

def mat_sub(a, b, ell: int):
    return [[(x - y) % ell for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c: int, ell: int):
    return [[x * c % ell for x in row] for row in a]


def mat_mul(a, b, ell: int):
    n, k, m = len(a), len(b), len(b[0])
    bt = [[b[i][j] for i in range(k)] for j in range(m)]
    return [[sum(ra[i] * col[i] for i in range(k)) % ell for col in bt] for ra in a]


def mat_vec(a, v, ell: int):
    return [sum(x * y for x, y in zip(row, v)) % ell for row in a]


def mat_pow(a, e: int, ell: int):
    n = len(a)
    result = mat_identity(n)
    cur = a
    while e > 0:
        if e & 1:
            result = mat_mul(result, cur, ell)
        cur = mat_mul(cur, cur, ell)
        e >>= 1
    return result


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_eq(a, b) -> bool:
    return all(ra == rb for ra, rb in zip(a, b))


def _rref(aug, ell: int) -> tuple[list[list[int]], list[int]]:
    """Row-reduce in place; returns (matrix, pivot column list)."""
    rows = len(aug)
    cols = len(aug[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] % ell != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, ell)
        aug[r] = [x * inv % ell for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] % ell:
                f = aug[i][c]
                aug[i] = [(x - f * y) % ell for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return aug, pivots


def mat_rank(a, ell: int) -> int:
    if not a:
        return 0
    aug = [list(row) for row in a]
    _, pivots = _rref(aug, ell)
    return len(pivots)


def mat_inv(a, ell: int):
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    red, pivots = _rref(aug, ell)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix not invertible")
    return [row[n:] for row in red]


def solve(a, b, ell: int):
    """One solution x of A x = b, or None; A is rows x cols, b length rows."""
    rows, cols = len(a), len(a[0])
    aug = [list(a[i]) + [b[i] % ell] for i in range(rows)]
    red, pivots = _rref(aug, ell)
    if cols in pivots:
        return None
    x = [0] * cols
    for r, c in enumerate(pivots):
        x[c] = red[r][cols]
    return x


def nullspace(a, ell: int) -> list[list[int]]:
    rows, cols = len(a), len(a[0])
    aug = [list(row) for row in a]
    red, pivots = _rref(aug, ell)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for r, c in enumerate(pivots):
            v[c] = (-red[r][fc]) % ell
        basis.append(v)
    return basis


def charpoly(a, ell: int) -> list[int]:
    """Monic characteristic polynomial mod ell, low-degree first (Hessenberg)."""
    n = len(a)
    h = [[x % ell for x in row] for row in a]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = pow(h[j + 1][j], -1, ell)
        for i in range(j + 2, n):
            if h[i][j]:
                f = h[i][j] * inv % ell
                h[i] = [(x - f * y) % ell for x, y in zip(h[i], h[j + 1])]
                for row in h:
                    row[j + 1] = (row[j + 1] + f * row[i]) % ell
    return _hessenberg_charpoly(h, ell, n)


def _hessenberg_charpoly(h, ell: int, n: int):
    # p_0 = 1; p_k = (x - h[k-1][k-1]) p_{k-1}
    #         - sum_{i<k-1} h[i][k-1] (prod of subdiagonals) p_i
    polys = [[1]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = [0] + list(prev)
        cur = [(cur[i] - (h[k - 1][k - 1] * prev[i] if i < len(prev) else 0)) % ell for i in range(len(cur))]
        prod = 1
        for i in range(k - 2, -1, -1):
            prod = prod * h[i + 1][i] % ell
            coef = h[i][k - 1] * prod % ell
            if coef:
                pi = polys[i]
                for t in range(len(pi)):
                    cur[t] = (cur[t] - coef * pi[t]) % ell
        polys.append(cur)
    return polys[n]


def minpoly(a, ell: int) -> list[int]:
    """Monic minimal polynomial of the matrix mod ell, low-degree first."""
    n = len(a)
    powers = [mat_identity(n)]
    for _ in range(n):
        powers.append(mat_mul(powers[-1], a, ell))
    vecs = [[m[i][j] for i in range(n) for j in range(n)] for m in powers]
    for d in range(1, n + 1):
        # x^d = sum c_i x^i ?
        cols = [[vecs[i][k] for i in range(d)] for k in range(n * n)]
        sol = solve(cols, vecs[d], ell)
        if sol is not None:
            return [(-c) % ell for c in sol] + [1]
    raise AssertionError("Cayley-Hamilton violated")
