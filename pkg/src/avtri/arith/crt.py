"""Chinese remaindering and rational reconstruction."""

from __future__ import annotations

import math


def crt_combine(residues) -> tuple[int, int]:
    """Combine (value, modulus) pairs; returns (x, M) with x in [0, M).

    Moduli must be pairwise coprime (checked pairwise-incrementally via the
    running product).
    """
    residues = list(residues)
    if not residues:
        raise ValueError("need at least one residue")
    x, m = residues[0][0] % residues[0][1], residues[0][1]
    for v, n in residues[1:]:
        g = math.gcd(m, n)
        if g != 1:
            raise ValueError(f"moduli not coprime (gcd {g})")
        # x' = x mod m, x' = v mod n
        inv = pow(m % n, -1, n)
        x = x + m * ((v - x) * inv % n)
        m *= n
        x %= m
    return x, m


def signed_rep(x: int, m: int) -> int:
    """The representative of x mod m in (-m/2, m/2]."""
    x %= m
    if 2 * x > m:
        x -= m
    return x


def rational_reconstruct(v: int, m: int) -> tuple[int, int] | None:
    """(n, d) with v*d = n mod m and gcd(n, d) = 1, or None.

    With B = floor(sqrt(m/2)), a pair satisfying |n| <= B and 0 < d <= B is
    unique when it exists (2B^2 < m) and is always returned.  For very small
    moduli the balanced box can be empty while an obvious reconstruction
    still exists (4 mod 7 is 1/2); then the minimal-|n|*d convergent with
    2|n|d < m is returned instead, which is what the Euclidean table pins
    down.  Returns None when no convergent qualifies; callers retry with a
    larger modulus.
    """
    if m <= 1:
        raise ValueError("modulus must be > 1")
    B = math.isqrt(m // 2)
    v %= m
    if v == 0:
        return (0, 1)
    candidates = []
    r0, r1 = m, v
    t0, t1 = 0, 1
    while r1 != 0:
        n, d = (r1, t1) if t1 > 0 else (-r1, -t1)
        if d > 0 and math.gcd(abs(n), d) == 1 and (v * d - n) % m == 0:
            candidates.append((n, d))
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    balanced = [(n, d) for n, d in candidates if abs(n) <= B and 0 < d <= B]
    if balanced:
        return balanced[0]
    loose = [(n, d) for n, d in candidates if 2 * abs(n) * d < m]
    if loose:
        return min(loose, key=lambda nd: (abs(nd[0]) * nd[1], nd[1]))
    return None
