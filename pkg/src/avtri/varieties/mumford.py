"""Mumford representation and Cantor's algorithm on y^2 = f(x).

Works uniformly for deg f = 3 (genus 1) and deg f = 5 (genus 2); divisors
are (u, v) coefficient tuples over a field object, u monic, deg v < deg u,
u | v^2 - f.  cantor_add also returns the rational function relating the
class representatives, which is what Miller's algorithm consumes: writing
Dbar = E(u, v) - deg(u) * infinity,

    Dbar1 + Dbar2 - Dbar3 = div( d(x) * prod_i (y - v_i(x)) / u_i'(x) )

with d the gcd extracted in composition and (v_i, u_i') the pre-step v and
post-step u of each reduction step.
"""

from __future__ import annotations

from ..arith import poly as P


def identity_divisor(F) -> tuple[tuple, tuple]:
    return ((F.one,), ())


def is_identity(F, D) -> bool:
    u, _ = D
    return len(u) == 1


def negate(F, D) -> tuple[tuple, tuple]:
    u, v = D
    return (u, tuple(F.neg(c) for c in v))


def valid_divisor(F, f: list, D, genus: int) -> bool:
    u, v = list(D[0]), list(D[1])
    if not u or u[-1] != F.one:
        return False
    if P.pdeg(u) > genus:
        return False
    if v and P.pdeg(v) >= P.pdeg(u):
        return False
    diff = P.psub(F, P.pmul(F, v, v), f)
    _, rem = P.pdivmod(F, diff, u)
    return rem == []


def compose(F, f: list, D1, D2):
    """Cantor composition; returns (u, v, d) with (u, v) semi-reduced."""
    u1, v1 = list(D1[0]), list(D1[1])
    u2, v2 = list(D2[0]), list(D2[1])
    d1, e1, e2 = P.pxgcd(F, u1, u2)
    vsum = P.padd(F, v1, v2)
    d, c1, c2 = P.pxgcd(F, d1, vsum)
    s1 = P.pmul(F, c1, e1)
    s2 = P.pmul(F, c1, e2)
    s3 = c2
    u12 = P.pmul(F, u1, u2)
    dd = P.pmul(F, d, d)
    u, rem = P.pdivmod(F, u12, dd)
    assert rem == [], "composition: d^2 must divide u1*u2"
    num = P.padd(
        F,
        P.padd(F, P.pmul(F, P.pmul(F, s1, u1), v2), P.pmul(F, P.pmul(F, s2, u2), v1)),
        P.pmul(F, s3, P.padd(F, P.pmul(F, v1, v2), f)),
    )
    vfull, rem = P.pdivmod(F, num, d)
    assert rem == [], "composition: d must divide the v numerator"
    v = P.pmod(F, vfull, u)
    return u, v, d


def reduce_divisor(F, f: list, u: list, v: list, genus: int):
    """Reduction to deg u <= genus; returns (u, v, steps).

    Each step records (v_before, u_after): the function extracted by that
    step is (y - v_before(x)) / u_after(x).
    """
    steps = []
    while P.pdeg(u) > genus:
        num = P.psub(F, f, P.pmul(F, v, v))
        unew, rem = P.pdivmod(F, num, u)
        assert rem == [], "reduction: u must divide f - v^2"
        unew = P.pmonic(F, unew)
        vnew = P.pmod(F, P.pneg(F, v), unew)
        steps.append((list(v), list(unew)))
        u, v = unew, vnew
    return u, v, steps


def cantor_add(F, f: list, genus: int, D1, D2):
    """Reduced sum and the extracted function.

    Returns ((u, v), extraction) where extraction = (d, steps) as described
    in the module docstring.
    """
    u, v, d = compose(F, f, D1, D2)
    u, v, steps = reduce_divisor(F, f, u, v, genus)
    return (tuple(u), tuple(v)), (d, steps)


def cantor_sum(F, f: list, genus: int, D1, D2):
    D3, _ = cantor_add(F, f, genus, D1, D2)
    return D3


def scalar_mul(F, f: list, genus: int, n: int, D):
    if n < 0:
        return scalar_mul(F, f, genus, -n, negate(F, D))
    acc = identity_divisor(F)
    cur = D
    while n > 0:
        if n & 1:
            acc = cantor_sum(F, f, genus, acc, cur)
        cur = cantor_sum(F, f, genus, cur, cur)
        n >>= 1
    return acc


class SupportCollision(ArithmeticError):
    """Evaluation hit a zero/pole of a Miller function; retry with new randoms."""


def eval_extraction_at(F, extraction, D_support) -> tuple:
    """Evaluate the extracted function at a semi-reduced divisor's support.

    Returns (num, den) raw field values: the function is d(x) * prod
    (y - v_i)/u_i', evaluated multiplicatively over the points of
    D_support = (u_E, v_E) via resultants; zero anywhere raises
    SupportCollision.
    """
    d, steps = extraction
    uE, vE = list(D_support[0]), list(D_support[1])
    num = P.peval_at_roots(F, d, uE) if d else F.zero
    den = F.one
    if F.is_zero(num):
        raise SupportCollision("composition gcd vanishes on evaluation support")
    for v_before, u_after in steps:
        # y - v(x) at (x_i, y_i in v_E): (v_E - v_before) reduced mod u_E
        diff = P.psub(F, vE, v_before)
        val = P.peval_at_roots(F, diff, uE)
        if F.is_zero(val):
            raise SupportCollision("reduction numerator vanishes on support")
        num = F.mul(num, val)
        dval = P.peval_at_roots(F, u_after, uE)
        if F.is_zero(dval):
            raise SupportCollision("reduction denominator vanishes on support")
        den = F.mul(den, dval)
    return num, den
