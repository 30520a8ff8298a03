"""Baby-step giant-step discrete logs in small groups."""

from __future__ import annotations

import math

BSGS_CAP = 1 << 20


class NotInSubgroupError(ValueError):
    """The target is not a power/multiple of the base element."""


def bsgs_dlog(g, h, n: int, op, identity) -> int:
    """x in [0, n) with g^x = h under the given group operation.

    op is the group law, identity its neutral element; n is the order of g
    (so g^(n-1) serves as the inverse without any group-specific inversion).
    Elements must be hashable.
    """
    if n <= 0 or n >= BSGS_CAP:
        raise ValueError(f"group order {n} outside (0, 2^20)")
    if h == identity:
        return 0
    m = math.isqrt(n - 1) + 1
    table = {}
    cur = identity
    for j in range(m):
        table.setdefault(cur, j)
        cur = op(cur, g)
    # g^(-m) = g^(n - m mod n)
    step = _pow(g, (n - m) % n, op, identity)
    gamma = h
    for i in range(m + 1):
        j = table.get(gamma)
        if j is not None:
            return (i * m + j) % n
        gamma = op(gamma, step)
    raise NotInSubgroupError("element is not in the subgroup generated by the base")


def _pow(g, e: int, op, identity):
    result = identity
    cur = g
    while e > 0:
        if e & 1:
            result = op(result, cur)
        cur = op(cur, cur)
        e >>= 1
    return result


def dlog_field(field, g_raw, h_raw, n: int) -> int:
    """Multiplicative log in a finite field subgroup of order n."""
    return bsgs_dlog(g_raw, h_raw, n, field.mul, field.one)
