"""Prime fields and explicit extension towers.

Raw element values are plain ints (prime field) or tuples of raw values of
the field below (extension step), always reduced, so equality is structural
and hashing/serialization are canonical.  The Fe wrapper adds operator
sugar on top; inner loops work on raw values through the field object.
"""

from __future__ import annotations

import hashlib
import itertools

from . import poly
from ..rng import Stream

DESK_P_CAP = 1 << 32
ENUM_CAP = 1 << 24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Fe:
    """Field element wrapper; value is the canonical raw representation."""

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    def _coerce(self, other):
        if isinstance(other, Fe):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.raw
        if isinstance(other, int):
            return self.field.embed_int(other)
        return NotImplemented

    def __add__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return Fe(self.field, self.field.add(self.raw, r))

    __radd__ = __add__

    def __sub__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return Fe(self.field, self.field.sub(self.raw, r))

    def __rsub__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return Fe(self.field, self.field.sub(r, self.raw))

    def __mul__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return Fe(self.field, self.field.mul(self.raw, r))

    __rmul__ = __mul__

    def __truediv__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return Fe(self.field, self.field.mul(self.raw, self.field.inv(r)))

    def __neg__(self):
        return Fe(self.field, self.field.neg(self.raw))

    def __pow__(self, e: int):
        return Fe(self.field, self.field.pow_(self.raw, e))

    def __eq__(self, other):
        if isinstance(other, Fe):
            return self.field == other.field and self.raw == other.raw
        if isinstance(other, int):
            return self.raw == self.field.embed_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.raw))

    def __repr__(self):
        return f"Fe({self.raw!r})"

    def is_zero(self) -> bool:
        return self.field.is_zero(self.raw)


class PrimeField:
    """F_p for an odd prime p below the desk-scale cap."""

    def __init__(self, p: int):
        p = int(p)
        if p >= DESK_P_CAP:
            raise ValueError(f"p = {p} exceeds the desk-scale cap 2^32")
        if p == 2 or not is_prime(p):
            raise ValueError(f"p = {p} is not an odd prime")
        self.p = p
        self.char = p
        self.degree = 1
        self.order = p
        self.zero = 0
        self.one = 1

    # raw-value arithmetic -------------------------------------------------
    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow_(self, a, e: int):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    # structure ------------------------------------------------------------
    def embed_int(self, c: int):
        return c % self.p

    def element(self, c) -> Fe:
        if isinstance(c, Fe):
            if c.field != self:
                raise ValueError("element of another field")
            return c
        return Fe(self, self.embed_int(c))

    def rand_raw(self, rng: Stream):
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)

    def describe(self) -> dict:
        return {"p": self.p, "tower": []}

    def raw_to_json(self, a):
        return a

    def raw_from_json(self, obj):
        if not isinstance(obj, int):
            raise ValueError("prime-field value must be an int")
        return obj % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class ExtField:
    """One extension step over a PrimeField or another ExtField.

    Raw values are tuples of base raw values of fixed length m (the step
    degree); the defining polynomial is monic and checked irreducible.
    """

    def __init__(self, base, modulus: list, check: bool = True):
        self.base = base
        mod = [base.raw_from_json(c) if not _is_raw_of(base, c) else c for c in modulus]
        m = len(mod) - 1
        if m < 2:
            raise ValueError("extension step degree must be >= 2")
        if mod[-1] != base.one:
            raise ValueError("defining polynomial must be monic")
        self.modulus = tuple(mod)
        self.step_degree = m
        self.degree = base.degree * m
        self.char = base.char
        self.order = base.order**m
        self.zero = tuple([base.zero] * m)
        self.one = tuple([base.one] + [base.zero] * (m - 1))
        # rows[j] = x^(m+j) reduced, used for linear-time reduction after conv
        rows = []
        cur = [base.neg(c) for c in mod[:m]]
        rows.append(list(cur))
        for _ in range(m - 2):
            cur = [base.zero] + cur
            top = cur.pop()
            if not base.is_zero(top):
                cur = [base.add(cur[i], base.mul(top, rows[0][i])) for i in range(m)]
            rows.append(list(cur))
        self._red_rows = rows
        if check and not _is_irreducible(base, list(mod)):
            raise ValueError("defining polynomial is reducible")
        self._sqrt_cache = None

    # raw-value arithmetic -------------------------------------------------
    def add(self, a, b):
        base = self.base
        return tuple(base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        base = self.base
        return tuple(base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        base = self.base
        return tuple(base.neg(x) for x in a)

    def mul(self, a, b):
        base = self.base
        m = self.step_degree
        conv = [base.zero] * (2 * m - 1)
        for i, x in enumerate(a):
            if base.is_zero(x):
                continue
            for j, y in enumerate(b):
                conv[i + j] = base.add(conv[i + j], base.mul(x, y))
        out = conv[:m]
        for j in range(m - 1):
            c = conv[m + j]
            if base.is_zero(c):
                continue
            row = self._red_rows[j]
            out = [base.add(out[i], base.mul(c, row[i])) for i in range(m)]
        return tuple(out)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        base = self.base
        apoly = poly.pstrip(base, list(a))
        g, s, _ = poly.pxgcd(base, apoly, list(self.modulus))
        if poly.pdeg(g) != 0:
            raise ZeroDivisionError("not invertible (reducible modulus?)")
        s = poly.pscale(base, s, base.inv(g[0]))
        return tuple(s + [base.zero] * (self.step_degree - len(s)))

    def pow_(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        cur = a
        while e > 0:
            if e & 1:
                result = self.mul(result, cur)
            cur = self.mul(cur, cur)
            e >>= 1
        return result

    def is_zero(self, a) -> bool:
        base = self.base
        return all(base.is_zero(x) for x in a)

    # structure ------------------------------------------------------------
    def embed_int(self, c: int):
        return tuple([self.base.embed_int(c)] + [self.base.zero] * (self.step_degree - 1))

    def embed_base(self, raw_base):
        """Constant embedding of a base-field raw value."""
        return tuple([raw_base] + [self.base.zero] * (self.step_degree - 1))

    def element(self, c) -> Fe:
        if isinstance(c, Fe):
            if c.field != self:
                raise ValueError("element of another field")
            return c
        if isinstance(c, int):
            return Fe(self, self.embed_int(c))
        return Fe(self, c)

    def rand_raw(self, rng: Stream):
        return tuple(self.base.rand_raw(rng) for _ in range(self.step_degree))

    def elements(self):
        if self.order > ENUM_CAP:
            raise ValueError("field too large to enumerate")
        return (
            tuple(reversed(t))
            for t in itertools.product(self.base.elements(), repeat=self.step_degree)
        )

    def describe(self) -> dict:
        d = self.base.describe()
        tower = list(d["tower"])
        tower.append([self.base.raw_to_json(c) for c in self.modulus])
        return {"p": d["p"], "tower": tower}

    def raw_to_json(self, a):
        return [self.base.raw_to_json(x) for x in a]

    def raw_from_json(self, obj):
        if not isinstance(obj, list) or len(obj) != self.step_degree:
            raise ValueError("extension value must be a list of step-degree values")
        return tuple(self.base.raw_from_json(x) for x in obj)

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtField", hash(self.base), self.modulus))

    def __repr__(self):
        return f"ExtField(deg {self.degree} over F_{self.char})"


def _is_raw_of(base, c) -> bool:
    if isinstance(base, PrimeField):
        return isinstance(c, int)
    return isinstance(c, tuple)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(base, f: list) -> bool:
    """Rabin's test for a monic polynomial over a finite field."""
    m = poly.pdeg(f)
    if m < 1:
        return False
    q = base.order
    x = [base.zero, base.one]
    r = list(x)
    powers = [list(x)]
    for _ in range(m):
        r = poly.ppowmod(base, r, q, f)
        powers.append(list(r))
    if poly.psub(base, powers[m], x):
        return False
    for t in _prime_factors(m):
        g = poly.pgcd(base, poly.psub(base, powers[m // t], x), f)
        if poly.pdeg(g) != 0:
            return False
    return True


def irreducible_poly(base, m: int, tag: str = "field") -> list:
    """Deterministic monic irreducible of degree m over base.

    The search stream is derived from the field description and m only, so
    the same tower is rebuilt identically in every process.
    """
    if m == 1:
        raise ValueError("degree-1 step is the base field itself")
    key = hashlib.sha256(
        f"avtri:{tag}:{base.describe()!r}:{m}".encode()
    ).digest()
    rng = Stream(int.from_bytes(key[:8], "little"), ("irreducible", m))
    # Prefer binomials/trinomials with tiny constants first: canonical and fast.
    for c in range(1, min(base.char, 64)):
        f = [base.embed_int(c)] + [base.zero] * (m - 1) + [base.one]
        if _is_irreducible(base, f):
            return f
    while True:
        f = [base.rand_raw(rng) for _ in range(m)] + [base.one]
        if _is_irreducible(base, f):
            return f


def is_square(field, a) -> bool:
    if field.is_zero(a):
        return True
    return field.pow_(a, (field.order - 1) // 2) == field.one


def sqrt(field, a):
    """A square root of a, or None.  Tonelli-Shanks over any finite field."""
    if field.is_zero(a):
        return field.zero
    q1 = field.order - 1
    if field.pow_(a, q1 // 2) != field.one:
        return None
    s, e = q1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    z = getattr(field, "_sqrt_cache", None)
    if z is None:
        key = hashlib.sha256(f"avtri:nonresidue:{field.describe()!r}".encode()).digest()
        rng = Stream(int.from_bytes(key[:8], "little"), ("nonresidue",))
        while True:
            z = field.rand_raw(rng)
            if not field.is_zero(z) and field.pow_(z, q1 // 2) != field.one:
                break
        field._sqrt_cache = z
    c = field.pow_(z, s)
    r = field.pow_(a, (s + 1) // 2)
    t = field.pow_(a, s)
    m = e
    while t != field.one:
        i, tt = 0, t
        while tt != field.one:
            tt = field.mul(tt, tt)
            i += 1
        b = field.pow_(c, 1 << (m - i - 1))
        r = field.mul(r, b)
        c = field.mul(b, b)
        t = field.mul(t, c)
        m = i
    return r


_FIELD_CACHE: dict = {}


def build_field(p: int, degree: int, even_stage: bool = False):
    """Canonical working field of given absolute degree over F_p.

    With even_stage the tower is pinned at a canonical degree-2 first step
    (x^2 + 1 when -1 is a nonresidue, else x^2 - n for the least nonresidue
    n), so characteristic constants like i and zeta_5 are the same raw value
    in every working field of the backend.  degree must then be even.
    """
    key = (p, degree, even_stage)
    cached = _FIELD_CACHE.get(key)
    if cached is not None:
        return cached
    base = PrimeField(p)
    if degree == 1:
        field = base
    elif not even_stage:
        field = ExtField(base, irreducible_poly(base, degree))
    else:
        if degree % 2 != 0:
            raise ValueError("even_stage tower needs an even degree")
        stage = _FIELD_CACHE.get((p, 2, True))
        if stage is None:
            if p % 4 == 3:
                quad = [base.one, base.zero, base.one]  # x^2 + 1
            else:
                n = next(c for c in range(2, p) if pow(c, (p - 1) // 2, p) != 1)
                quad = [base.neg(n % p), base.zero, base.one]  # x^2 - n
            stage = ExtField(base, quad)
            _FIELD_CACHE[(p, 2, True)] = stage
        if degree == 2:
            field = stage
        else:
            field = ExtField(stage, irreducible_poly(stage, degree // 2))
    _FIELD_CACHE[key] = field
    return field


def field_from_description(desc: dict):
    base = PrimeField(int(desc["p"]))
    field = base
    for mod in desc["tower"]:
        field = ExtField(field, [field.raw_from_json(c) for c in mod])
    return field
