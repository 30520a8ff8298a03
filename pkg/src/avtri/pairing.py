"""Weil pairing on curve backends via Miller's algorithm, and the derived
pairings used by the trilinear map.

Both curve shapes run through the same Mumford/Cantor machinery: a point
class is represented by a degree-0, infinity-free divisor A = E(P + R) -
E(R) for a random auxiliary R, Miller functions are accumulated from the
per-step Cantor extractions, and

    e_l(P, Q) = f_A(B) / f_B(A)

for disjoint representatives A, B, which is Weil reciprocity on the nose -
no normalization at infinity is ever needed.  Support collisions (a zero or
pole of a partial function meeting the evaluation support) raise and the
whole computation retries with fresh auxiliaries, capped at 16 attempts.

Results carry both the raw mu_l element and its exponent relative to the
canonical primitive l-th root of the working field, so downstream code
compares integers.
"""

from __future__ import annotations

import hashlib

from .arith import dlog_field
from .arith import poly as P
from .rng import Stream
from .varieties import BackendError, check_same, mumford
from .model import ModelPoint, model_pairing

RETRY_CAP = 16
ELL_CAP = 127


class PairingError(ValueError):
    pass


class PairingValue:
    """Exponent form of a mu_l value: raw = zeta_canonical^exponent.

    The model backend has no ambient field; its values are pure exponents
    (raw is None).
    """

    __slots__ = ("ell", "exponent", "raw", "field")

    def __init__(self, ell: int, exponent: int, raw=None, field=None):
        self.ell = ell
        self.exponent = exponent % ell
        self.raw = raw
        self.field = field

    def __mul__(self, other):
        if not isinstance(other, PairingValue) or other.ell != self.ell:
            raise PairingError("mixing pairing values of different levels")
        raw = None
        if self.raw is not None and other.raw is not None:
            raw = self.field.mul(self.raw, other.raw)
        return PairingValue(self.ell, self.exponent + other.exponent, raw, self.field)

    def __pow__(self, e: int):
        raw = None if self.raw is None else self.field.pow_(self.raw, e % self.ell)
        return PairingValue(self.ell, self.exponent * e, raw, self.field)

    def inverse(self):
        return self ** (self.ell - 1)

    def is_one(self) -> bool:
        return self.exponent == 0

    def __eq__(self, other):
        if not isinstance(other, PairingValue):
            return NotImplemented
        return self.ell == other.ell and self.exponent == other.exponent

    def __hash__(self):
        return hash((self.ell, self.exponent))

    def __repr__(self):
        return f"PairingValue(exp {self.exponent} mod {self.ell})"


_CANON_ROOTS: dict = {}


def canonical_root(field, ell: int):
    """The canonical primitive l-th root of unity of the field.

    Derived deterministically (seeded by the field description), then
    normalized to the lexicographically least primitive power, so every
    process agrees on the reference root.
    """
    key = (id(field), ell)
    got = _CANON_ROOTS.get(key)
    if got is not None:
        return got
    q1 = field.order - 1
    if q1 % ell != 0:
        raise PairingError(f"field has no mu_{ell} (order {field.order})")
    seed = hashlib.sha256(f"avtri:root:{field.describe()!r}:{ell}".encode()).digest()
    rng = Stream(int.from_bytes(seed[:8], "little"), ("canon-root", ell))
    while True:
        z = field.pow_(field.rand_raw(rng), q1 // ell)
        if z != field.one and not field.is_zero(z):
            break
    powers = []
    cur = z
    for _ in range(ell - 1):
        powers.append(cur)
        cur = field.mul(cur, z)
    root = min(powers)
    _CANON_ROOTS[key] = root
    return root


def value_from_raw(field, ell: int, raw) -> PairingValue:
    if field.pow_(raw, ell) != field.one:
        raise PairingError("value is not an l-th root of unity")
    zeta = canonical_root(field, ell)
    t = dlog_field(field, zeta, raw, ell)
    return PairingValue(ell, t, raw, field)


# -- Miller machinery -----------------------------------------------------------


class _Rep:
    """A translated degree-0 representative E(D + R) - E(R) of a class."""

    __slots__ = ("plus", "minus", "reduced", "base_extraction")

    def __init__(self, plus, minus, reduced, base_extraction):
        self.plus = plus
        self.minus = minus
        self.reduced = reduced
        self.base_extraction = base_extraction


def _random_full_divisor(backend, F, rng):
    """A random reduced divisor with deg u = g (full support)."""
    for _ in range(64):
        pt = backend.random_point(F, rng)
        if pt.is_identity():
            continue
        D = backend.to_mumford(pt)
        if len(D[0]) - 1 == backend.g:
            return D
    raise PairingError("could not sample a full-degree auxiliary divisor")


def _translated_rep(backend, F, fpoly, D_red, rng) -> _Rep:
    g = backend.g
    for _ in range(32):
        R = _random_full_divisor(backend, F, rng)
        DR, extraction = mumford.cantor_add(F, fpoly, g, D_red, R)
        if len(DR[0]) - 1 != g:
            continue
        return _Rep(DR, R, D_red, extraction)
    raise PairingError("could not build a full-degree translated representative")


def _eval_extraction(F, extraction, rep_target):
    """Value of the extracted function at B+ - B-: returns (num, den)."""
    n_plus, d_plus = mumford.eval_extraction_at(F, extraction, rep_target.plus)
    n_minus, d_minus = mumford.eval_extraction_at(F, extraction, rep_target.minus)
    return F.mul(n_plus, d_minus), F.mul(d_plus, n_minus)


def _miller(backend, F, fpoly, ell: int, rep_src: _Rep, rep_target: _Rep):
    """f_A evaluated at the degree-0 divisor of rep_target.

    Invariant: div(f_n) = n*A - Dbar(W_n); the base case f_1 = 1/c_1 uses
    the extraction recorded when A was built.
    """
    g = backend.g
    n1, d1 = _eval_extraction(F, rep_src.base_extraction, rep_target)
    # f_1 = 1 / c_1
    f1_num, f1_den = d1, n1
    W = rep_src.reduced
    num, den = f1_num, f1_den
    bits = bin(ell)[3:]
    for bit in bits:
        W, extraction = mumford.cantor_add(F, fpoly, g, W, W)
        cn, cd = _eval_extraction(F, extraction, rep_target)
        num = F.mul(F.mul(num, num), cn)
        den = F.mul(F.mul(den, den), cd)
        if bit == "1":
            W, extraction = mumford.cantor_add(F, fpoly, g, W, rep_src.reduced)
            cn, cd = _eval_extraction(F, extraction, rep_target)
            num = F.mul(F.mul(num, f1_num), cn)
            den = F.mul(F.mul(den, f1_den), cd)
        if F.is_zero(num) or F.is_zero(den):
            raise mumford.SupportCollision("accumulated Miller value vanished")
    if not mumford.is_identity(F, W):
        raise PairingError("point is not l-torsion (Miller loop did not close)")
    return F.mul(num, F.inv(den))


def weil_pairing(Ppt, Qpt, ell: int, rng: Stream | None = None) -> PairingValue:
    """e_l(P, Q) with bilinear/alternating/Galois-compatible normalization."""
    if ell < 2 or ell > ELL_CAP:
        raise PairingError(f"l = {ell} outside desk-scale range")
    if isinstance(Ppt, ModelPoint):
        return PairingValue(ell, model_pairing(Ppt, Qpt, ell))
    check_same(Ppt, Qpt)
    backend = Ppt.backend
    F = Ppt.field
    if not (ell * Ppt).is_identity() or not (ell * Qpt).is_identity():
        raise PairingError("arguments must be l-torsion points")
    fpoly = backend.curve_poly(F)
    DP = backend.to_mumford(Ppt)
    DQ = backend.to_mumford(Qpt)
    rng = rng or Stream(0x5EED, ("weil", ell))
    last = None
    for attempt in range(RETRY_CAP):
        sub = rng.child("attempt", attempt)
        try:
            repP = _translated_rep(backend, F, fpoly, DP, sub.child("P"))
            repQ = _translated_rep(backend, F, fpoly, DQ, sub.child("Q"))
            fA_at_B = _miller(backend, F, fpoly, ell, repP, repQ)
            fB_at_A = _miller(backend, F, fpoly, ell, repQ, repP)
            raw = F.mul(fA_at_B, F.inv(fB_at_A))
            return value_from_raw(F, ell, raw)
        except (mumford.SupportCollision, ZeroDivisionError) as exc:
            last = exc
            continue
    raise PairingError(f"support collisions persisted after {RETRY_CAP} retries: {last}")


def pair_theta(alpha, beta, ell: int, rng: Stream | None = None) -> PairingValue:
    """e_l^Theta(alpha, beta) = e_l(alpha, phi_Theta(beta)).

    Convention: phi_Theta(b) = class(t_b* Theta - Theta) = -b for g = 1 with
    Theta = (O); curve backends declare theta_sign (default -1, matching the
    g = 1 convention); the model backend's form J is its polarization.
    """
    if isinstance(alpha, ModelPoint):
        return PairingValue(ell, model_pairing(alpha, beta, ell))
    sign = getattr(alpha.backend, "theta_sign", -1)
    e = weil_pairing(alpha, beta, ell, rng)
    return e if sign == 1 else e.inverse()


def pair_eD(lam, alpha, beta, ell: int, rng: Stream | None = None) -> PairingValue:
    """e_l^D(alpha, beta) = e_l^Theta(alpha, lambda_D(beta)) for symmetric lambda_D."""
    return pair_theta(alpha, lam(beta), ell, rng)
