"""Point counts, Frobenius characteristic polynomials, ordinarity.

Small-field counts come from honest enumeration; everything at larger
extension degrees is derived exactly from the characteristic polynomial via
#A(F_q^k) = det(C^k - I) for C its integer companion matrix (the zeta
identities), which is what the torsion machinery needs at degrees whose
fields are far beyond enumeration.
"""

from __future__ import annotations

from ..arith import poly as P

ENUMERATION_CAP = 1 << 24


class SizeCapExceeded(ValueError):
    pass


def curve_point_count(F, f_coeffs: list) -> int:
    """#C(F) for y^2 = f(x) (odd deg f, one point at infinity), by enumeration."""
    if F.order > ENUMERATION_CAP:
        raise SizeCapExceeded(f"field of order {F.order} exceeds enumeration cap 2^24")
    squares: dict = {}
    for y in F.elements():
        z = F.mul(y, y)
        squares[z] = squares.get(z, 0) + 1
    n = 1
    for x in F.elements():
        z = P.peval(F, f_coeffs, x)
        n += squares.get(z, 0)
    return n


def companion(chi: list[int]) -> list[list[int]]:
    n = len(chi) - 1
    mat = [[0] * n for _ in range(n)]
    for i in range(1, n):
        mat[i][i - 1] = 1
    for i in range(n):
        mat[i][n - 1] = -chi[i]
    return mat


def _int_mat_mul(a, b):
    n = len(a)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _int_mat_pow(a, e: int):
    n = len(a)
    result = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    cur = a
    while e > 0:
        if e & 1:
            result = _int_mat_mul(result, cur)
        cur = _int_mat_mul(cur, cur)
        e >>= 1
    return result


def _int_det(a) -> int:
    n = len(a)
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        if a[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in a[1:]]
        total += (-1) ** j * a[0][j] * _int_det(minor)
    return total


def order_from_charpoly(chi: list[int], k: int) -> int:
    """#A(F_q^k) = prod_i (alpha_i^k - 1) for the Weil numbers alpha_i."""
    C = companion(chi)
    Ck = _int_mat_pow(C, k)
    n = len(C)
    M = [[Ck[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    N = _int_det(M)
    assert N > 0, "group order must be positive; bad characteristic polynomial?"
    return N


def charpoly_g1(p: int, n1: int) -> list[int]:
    t = p + 1 - n1
    return [p, -t, 1]


def charpoly_g2(p: int, n1: int, n2: int) -> list[int]:
    p1 = p + 1 - n1
    p2 = p * p + 1 - n2
    e1 = p1
    twice_e2 = e1 * p1 - p2
    assert twice_e2 % 2 == 0, "inconsistent curve counts"
    e2 = twice_e2 // 2
    return [p * p, -p * e1, e2, -e1, 1]


def middle_coefficient(chi: list[int]) -> int:
    g = (len(chi) - 1) // 2
    return chi[g]


def ordinary_from_charpoly(chi: list[int], p: int) -> bool:
    return middle_coefficient(chi) % p != 0
