"""Elliptic backend: y^2 = x^3 + a x + b with affine chord-tangent arithmetic."""

from __future__ import annotations

from ..arith import field as fieldmod
from ..arith import poly as P
from ..rng import Stream
from . import counting
from .backend import BackendError, CurveBackend, check_same


class ECPoint:
    __slots__ = ("backend", "field", "x", "y", "inf")

    def __init__(self, backend, field, x=None, y=None, inf=False):
        self.backend = backend
        self.field = field
        self.inf = inf
        self.x = x
        self.y = y
        if not inf:
            fx = P.peval(field, backend.curve_poly(field), x)
            if field.mul(y, y) != fx:
                raise BackendError("point is not on the curve")

    def is_identity(self) -> bool:
        return self.inf

    def __neg__(self):
        if self.inf:
            return self
        return ECPoint(self.backend, self.field, self.x, self.field.neg(self.y))

    def __add__(self, other):
        if not isinstance(other, ECPoint):
            return NotImplemented
        check_same(self, other)
        F = self.field
        if self.inf:
            return other
        if other.inf:
            return self
        if self.x == other.x:
            if F.add(self.y, other.y) == F.zero:
                return ECPoint(self.backend, F, inf=True)
            # tangent
            a = F.embed_int(self.backend.a)
            num = F.add(F.mul(F.embed_int(3), F.mul(self.x, self.x)), a)
            lam = F.mul(num, F.inv(F.add(self.y, self.y)))
        else:
            lam = F.mul(F.sub(other.y, self.y), F.inv(F.sub(other.x, self.x)))
        x3 = F.sub(F.sub(F.mul(lam, lam), self.x), other.x)
        y3 = F.sub(F.mul(lam, F.sub(self.x, x3)), self.y)
        return ECPoint(self.backend, F, x3, y3)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (-n) * (-self)
        acc = ECPoint(self.backend, self.field, inf=True)
        cur = self
        while n > 0:
            if n & 1:
                acc = acc + cur
            cur = cur + cur
            n >>= 1
        return acc

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, ECPoint):
            return NotImplemented
        if self.inf or other.inf:
            return self.inf == other.inf and self.field == other.field
        return self.field == other.field and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((id(self.backend), "inf" if self.inf else (self.x, self.y)))

    def __repr__(self):
        return "ECPoint(inf)" if self.inf else f"ECPoint({self.x!r}, {self.y!r})"


class EllipticBackend(CurveBackend):
    kind = "elliptic"
    g = 1

    def __init__(self, p: int, a: int, b: int, generators=None):
        self.a = a % p
        self.b = b % p
        if generators is None:
            generators = ["frobenius", "verschiebung"]
            if self.a == 1 and self.b == 0 and p % 4 == 3:
                generators.append("distortion")
        super().__init__(p, [self.a, self.b], generators)
        disc = (4 * self.a**3 + 27 * self.b**2) % p
        if disc == 0:
            raise BackendError("singular curve (discriminant zero)")
        if "distortion" in self.generators:
            if not (self.a == 1 and self.b == 0 and p % 4 == 3):
                raise BackendError("distortion generator needs y^2 = x^3 + x, p = 3 mod 4")
            self.even_stage = True
        self._i_raw = None

    def _f_int(self) -> list[int]:
        return [self.b, self.a, 0, 1]

    def _compute_charpoly(self) -> list[int]:
        n1 = counting.curve_point_count(self.base_field, self.curve_poly(self.base_field))
        return counting.charpoly_g1(self.p, n1)

    # points ---------------------------------------------------------------
    def identity(self, F):
        return ECPoint(self, F, inf=True)

    def random_point(self, F, rng: Stream):
        fpoly = self.curve_poly(F)
        while True:
            x = F.rand_raw(rng)
            z = P.peval(F, fpoly, x)
            y = fieldmod.sqrt(F, z)
            if y is None:
                continue
            if not F.is_zero(y) and rng.randint(0, 1):
                y = F.neg(y)
            return ECPoint(self, F, x, y)

    def point_to_json(self, point):
        if point.inf:
            return {"inf": True}
        return {"x": point.field.raw_to_json(point.x), "y": point.field.raw_to_json(point.y)}

    def point_from_json(self, F, obj):
        if obj.get("inf"):
            return self.identity(F)
        return ECPoint(self, F, F.raw_from_json(obj["x"]), F.raw_from_json(obj["y"]))

    def to_mumford(self, point):
        F = point.field
        if point.inf:
            return ((F.one,), ())
        v = () if F.is_zero(point.y) else (point.y,)
        return ((F.neg(point.x), F.one), v)

    # generators -------------------------------------------------------------
    def _stage_const_in(self, F, raw_stage):
        stage = fieldmod.build_field(self.p, 2, even_stage=True)
        if F == stage:
            return raw_stage
        if isinstance(F, fieldmod.ExtField) and F.base == stage:
            return F.embed_base(raw_stage)
        raise BackendError("generator needs a field containing F_p^2 (extend the field)")

    def _i_in(self, F):
        if self._i_raw is None:
            stage = fieldmod.build_field(self.p, 2, even_stage=True)
            r = fieldmod.sqrt(stage, stage.embed_int(-1))
            assert r is not None
            self._i_raw = min(r, stage.neg(r))
        return self._stage_const_in(F, self._i_raw)

    def _frobenius_point(self, point):
        if point.inf:
            return point
        F = point.field
        return ECPoint(self, F, F.pow_(point.x, self.p), F.pow_(point.y, self.p))

    def _apply_generator(self, name, point):
        if name == "frobenius":
            return self._frobenius_point(point)
        if name == "verschiebung":
            return self._verschiebung_point(point)
        if name == "distortion":
            if point.inf:
                return point
            F = point.field
            i = self._i_in(F)
            return ECPoint(self, F, F.neg(point.x), F.mul(i, point.y))
        raise BackendError(f"unknown generator {name!r}")
