"""Genus-2 backend: Jacobian of y^2 = f(x), deg f = 5, with Cantor arithmetic.

Flagship family y^2 = x^5 + 1 over F_p, p = 4 mod 5, carrying the order-5
automorphism (x, y) -> (zeta5 * x, y) over the quadratic stage field.
"""

from __future__ import annotations

import hashlib

from ..arith import field as fieldmod
from ..arith import poly as P
from ..rng import Stream
from . import counting, mumford
from .backend import BackendError, CurveBackend, check_same


class MumfordDivisor:
    __slots__ = ("backend", "field", "u", "v")

    def __init__(self, backend, field, u, v, check: bool = True):
        self.backend = backend
        self.field = field
        self.u = tuple(u)
        self.v = tuple(v)
        if check and not mumford.valid_divisor(
            field, backend.curve_poly(field), (self.u, self.v), backend.g
        ):
            raise BackendError("invalid Mumford divisor (u | v^2 - f fails or degrees off)")

    def is_identity(self) -> bool:
        return len(self.u) == 1

    def __neg__(self):
        u, v = mumford.negate(self.field, (self.u, self.v))
        return MumfordDivisor(self.backend, self.field, u, v, check=False)

    def __add__(self, other):
        if not isinstance(other, MumfordDivisor):
            return NotImplemented
        check_same(self, other)
        F = self.field
        D3, _ = mumford.cantor_add(
            F, self.backend.curve_poly(F), self.backend.g, (self.u, self.v), (other.u, other.v)
        )
        return MumfordDivisor(self.backend, F, D3[0], D3[1], check=False)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (-n) * (-self)
        acc = self.backend.identity(self.field)
        cur = self
        while n > 0:
            if n & 1:
                acc = acc + cur
            cur = cur + cur
            n >>= 1
        return acc

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, MumfordDivisor):
            return NotImplemented
        return self.field == other.field and self.u == other.u and self.v == other.v

    def __hash__(self):
        return hash((id(self.backend), self.u, self.v))

    def __repr__(self):
        return f"MumfordDivisor(u={self.u!r}, v={self.v!r})"


class Genus2Backend(CurveBackend):
    kind = "genus2"
    g = 2

    def __init__(self, p: int, f_coeffs: list[int], generators=None):
        f = [c % p for c in f_coeffs]
        if len(f) != 6 or f[-1] != 1:
            raise BackendError("genus-2 curve needs monic f of degree 5")
        if generators is None:
            generators = ["frobenius", "verschiebung"]
            if f[:5] == [1, 0, 0, 0, 0] and p % 5 in (1, 4):
                generators += ["zeta5", "zeta5_inv"]
        super().__init__(p, f, generators)
        if "zeta5" in self.generators:
            if f[:5] != [1, 0, 0, 0, 0] or p % 5 not in (1, 4):
                raise BackendError("zeta5 generator needs y^2 = x^5 + 1, p = +-1 mod 5")
            self.even_stage = True
        self._check_nonsingular()
        self._zeta_raw = None

    def _check_nonsingular(self):
        F = self.base_field
        f = self.curve_poly(F)
        g = P.pgcd(F, f, P.pderiv(F, f))
        if P.pdeg(g) != 0:
            raise BackendError("singular curve (f not squarefree)")

    def _f_int(self) -> list[int]:
        return list(self.coeffs)

    def _compute_charpoly(self) -> list[int]:
        n1 = counting.curve_point_count(self.base_field, self.curve_poly(self.base_field))
        F2 = fieldmod.build_field(self.p, 2, even_stage=True)
        n2 = counting.curve_point_count(F2, self.curve_poly(F2))
        return counting.charpoly_g2(self.p, n1, n2)

    # points ---------------------------------------------------------------
    def identity(self, F):
        u, v = mumford.identity_divisor(F)
        return MumfordDivisor(self, F, u, v, check=False)

    def random_curve_point(self, F, rng: Stream):
        """A random affine point (x, y) on the curve itself."""
        fpoly = self.curve_poly(F)
        while True:
            x = F.rand_raw(rng)
            z = P.peval(F, fpoly, x)
            y = fieldmod.sqrt(F, z)
            if y is None:
                continue
            if not F.is_zero(y) and rng.randint(0, 1):
                y = F.neg(y)
            return x, y

    def divisor_from_point(self, F, x, y):
        v = () if F.is_zero(y) else (y,)
        return MumfordDivisor(self, F, (F.neg(x), F.one), v, check=False)

    def random_point(self, F, rng: Stream):
        x1, y1 = self.random_curve_point(F, rng)
        x2, y2 = self.random_curve_point(F, rng)
        return self.divisor_from_point(F, x1, y1) + self.divisor_from_point(F, x2, y2)

    def point_to_json(self, point):
        F = point.field
        return {
            "u": [F.raw_to_json(c) for c in point.u],
            "v": [F.raw_to_json(c) for c in point.v],
        }

    def point_from_json(self, F, obj):
        u = [F.raw_from_json(c) for c in obj["u"]]
        v = [F.raw_from_json(c) for c in obj["v"]]
        return MumfordDivisor(self, F, u, v)

    def to_mumford(self, point):
        return (point.u, point.v)

    # generators -------------------------------------------------------------
    def _stage_const_in(self, F, raw_stage):
        stage = fieldmod.build_field(self.p, 2, even_stage=True)
        if F == stage:
            return raw_stage
        if isinstance(F, fieldmod.ExtField) and F.base == stage:
            return F.embed_base(raw_stage)
        raise BackendError("generator needs a field containing F_p^2 (extend the field)")

    def zeta5_stage_raw(self):
        """The canonical primitive 5th root of unity in the stage field."""
        if self._zeta_raw is None:
            stage = fieldmod.build_field(self.p, 2, even_stage=True)
            q1 = stage.order - 1
            assert q1 % 5 == 0
            key = hashlib.sha256(f"avtri:zeta5:{self.p}".encode()).digest()
            rng = Stream(int.from_bytes(key[:8], "little"), ("zeta5",))
            while True:
                z = stage.pow_(stage.rand_raw(rng), q1 // 5)
                if z != stage.one and not stage.is_zero(z):
                    break
            powers = []
            cur = z
            for _ in range(4):
                powers.append(cur)
                cur = stage.mul(cur, z)
            self._zeta_raw = min(powers)
        return self._zeta_raw

    def _zeta_action(self, point, inverse: bool):
        F = point.field
        z = self._stage_const_in(F, self.zeta5_stage_raw())
        if inverse:
            z = F.pow_(z, 4)  # zeta^-1 = zeta^4
        zinv = F.pow_(z, 4)
        du = len(point.u) - 1
        u = tuple(F.mul(c, F.pow_(z, du - j)) for j, c in enumerate(point.u))
        v = tuple(F.mul(c, F.pow_(zinv, j)) for j, c in enumerate(point.v))
        return MumfordDivisor(self, F, u, v)

    def _frobenius_point(self, point):
        F = point.field
        u = tuple(F.pow_(c, self.p) for c in point.u)
        v = tuple(F.pow_(c, self.p) for c in point.v)
        return MumfordDivisor(self, F, u, v, check=False)

    def _apply_generator(self, name, point):
        if name == "frobenius":
            return self._frobenius_point(point)
        if name == "verschiebung":
            return self._verschiebung_point(point)
        if name == "zeta5":
            return self._zeta_action(point, inverse=False)
        if name == "zeta5_inv":
            return self._zeta_action(point, inverse=True)
        raise BackendError(f"unknown generator {name!r}")
