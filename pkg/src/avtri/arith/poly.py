"""Dense univariate polynomials over a field object.

Coefficients are raw field values in low-degree-first lists; the zero
polynomial is the empty list.  The field argument is any object with
zero/one attributes and add/sub/mul/neg/inv/is_zero methods on raw values
(PrimeField and ExtField both qualify), which mirrors how the curve
arithmetic passes coefficient lists around.
"""

from __future__ import annotations


def pstrip(F, a: list) -> list:
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def pdeg(a: list) -> int:
    return len(a) - 1


def pconst(F, c) -> list:
    return [] if F.is_zero(c) else [c]


def padd(F, a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.add(x, y))
    return pstrip(F, out)


def psub(F, a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.sub(x, y))
    return pstrip(F, out)


def pneg(F, a: list) -> list:
    return [F.neg(c) for c in a]


def pscale(F, a: list, c) -> list:
    if F.is_zero(c):
        return []
    return pstrip(F, [F.mul(x, c) for x in a])


def pmul(F, a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return pstrip(F, out)


def pdivmod(F, num: list, den: list) -> tuple[list, list]:
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    num = list(num)
    dd = pdeg(den)
    if pdeg(num) < dd:
        return [], pstrip(F, num)
    inv_lead = F.inv(den[-1])
    q = [F.zero] * (pdeg(num) - dd + 1)
    for i in range(len(q) - 1, -1, -1):
        c = F.mul(num[i + dd], inv_lead)
        q[i] = c
        if F.is_zero(c):
            continue
        for j, d in enumerate(den):
            num[i + j] = F.sub(num[i + j], F.mul(c, d))
    return pstrip(F, q), pstrip(F, num)


def pmod(F, num: list, den: list) -> list:
    return pdivmod(F, num, den)[1]


def pmonic(F, a: list) -> list:
    if not a:
        return []
    if a[-1] == F.one:
        return list(a)
    return pscale(F, a, F.inv(a[-1]))


def pxgcd(F, a: list, b: list) -> tuple[list, list, list]:
    """Monic g with g = s*a + t*b."""
    r0, r1 = list(a), list(b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(F, s0, pmul(F, q, s1))
        t0, t1 = t1, psub(F, t0, pmul(F, q, t1))
    if not r0:
        return [], s0, t0
    lead_inv = F.inv(r0[-1])
    return pscale(F, r0, lead_inv), pscale(F, s0, lead_inv), pscale(F, t0, lead_inv)


def pgcd(F, a: list, b: list) -> list:
    r0, r1 = list(a), list(b)
    while r1:
        r0, r1 = r1, pmod(F, r0, r1)
    return pmonic(F, r0)


def peval(F, a: list, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pderiv(F, a: list) -> list:
    out = []
    for i in range(1, len(a)):
        c = a[i]
        s = F.zero
        for _ in range(i):
            s = F.add(s, c)
        out.append(s)
    return pstrip(F, out)


def ppowmod(F, base: list, e: int, mod: list) -> list:
    result = [F.one]
    cur = pmod(F, base, mod)
    while e > 0:
        if e & 1:
            result = pmod(F, pmul(F, result, cur), mod)
        cur = pmod(F, pmul(F, cur, cur), mod)
        e >>= 1
    return result


def peval_at_roots(F, w: list, u: list):
    """Product of w(x_i) over the roots x_i of monic u (with multiplicity).

    deg u <= 2 covers every call site (reduced divisor supports); the roots
    need not lie in F.
    """
    d = pdeg(u)
    if d <= 0:
        return F.one
    w = pmod(F, w, u)
    if d == 1:
        return peval(F, w, F.neg(u[0]))
    # u = x^2 + u1 x + u0, w = w1 x + w0:
    # w(x1) w(x2) = w1^2 u0 - w1 w0 u1 + w0^2
    w0 = w[0] if len(w) > 0 else F.zero
    w1 = w[1] if len(w) > 1 else F.zero
    t = F.mul(F.mul(w1, w1), u[0])
    t = F.sub(t, F.mul(F.mul(w1, w0), u[1]))
    return F.add(t, F.mul(w0, w0))


# -- integer-coefficient polynomials (characteristic polynomials live in Z) --


def ipoly_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return out


def ipoly_eval_mod(a: list[int], x: int, m: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % m
    return acc


def poly_roots(coeffs: list[int], ell: int) -> set[int]:
    """All roots in F_ell of an integer-coefficient polynomial.

    Exhaustive scan; the desk-scale caps keep ell tiny (<= 127) so this is
    the honest version of equal-degree splitting.
    """
    if ell < 2:
        raise ValueError("modulus must be a prime >= 2")
    red = [c % ell for c in coeffs]
    while red and red[-1] == 0:
        red.pop()
    if len(red) < 2:
        raise ValueError("need degree >= 1")
    return {x for x in range(ell) if ipoly_eval_mod(red, x, ell) == 0}
