"""Synthetic ground-truth backend: an explicit matrix order on (Z/m)^2g.

The shipped default is M_2(Z[i]) acting on Z^4 through the regular
representation of Z[i] on the basis (1, i), with the product symplectic
form J = diag(J2, J2).  The adjoint J^-1 M^T J is then literally the
conjugate-transpose over Z[i], so the symmetric elements are the Hermitian
matrices, which contain noncommuting pairs (Pauli X and Y) - exactly the
shape the trilinear-map construction requires and that no curve backend at
desk scale is guaranteed to exhibit.  Every structural claim is validated
at load time; nothing is assumed.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .jsonio import DataError
from .rng import Stream


class ModelError(ValueError):
    pass


# -- exact integer/rational matrix helpers -----------------------------------

def imat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def imat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def imat_scale(a, c):
    return [[x * c for x in row] for row in a]


def imat_transpose(a):
    return [list(r) for r in zip(*a)]


def imat_identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def imat_det(a) -> int:
    n = len(a)
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        if a[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in a[1:]]
        total += (-1) ** j * a[0][j] * imat_det(minor)
    return total


def imat_inv_exact(a):
    """Exact inverse of an integer matrix with det +-1."""
    n = len(a)
    d = imat_det(a)
    if d not in (1, -1):
        raise ModelError(f"matrix not unimodular (det {d})")
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(a)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        f = aug[c][c]
        aug[c] = [x / f for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                g = aug[i][c]
                aug[i] = [x - g * y for x, y in zip(aug[i], aug[c])]
    out = [[x for x in row[n:]] for row in aug]
    res = [[int(x) for x in row] for row in out]
    for row_f, row_i in zip(out, res):
        for xf, xi in zip(row_f, row_i):
            if xf != xi:
                raise ModelError("inverse is not integral")
    return res


def solve_rational(cols: list[list[int]], target: list[int]):
    """x with sum x_j cols[j] = target over Q, or None; exact Fractions."""
    rows = len(target)
    ncols = len(cols)
    aug = [[Fraction(cols[j][i]) for j in range(ncols)] + [Fraction(target[i])]
           for i in range(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        f = aug[r][c]
        aug[r] = [x / f for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                g = aug[i][c]
                aug[i] = [x - g * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if aug[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for rr, c in enumerate(pivots):
        x[c] = aug[rr][ncols]
    return x


# -- the order ----------------------------------------------------------------

class ModelVariety:
    """A designated order acting on (Z/m)^2g with a symplectic form."""

    def __init__(self, g: int, basis: list, J: list, table=None, ordinary: bool = False):
        self.g = int(g)
        n = 2 * self.g
        self.dim = len(basis)
        self.basis = [[list(map(int, row)) for row in B] for B in basis]
        self.J = [list(map(int, row)) for row in J]
        self.ordinary = bool(ordinary)
        if any(len(B) != n or any(len(r) != n for r in B) for B in self.basis):
            raise ModelError(f"basis matrices must be {n}x{n}")
        if self.basis[0] != imat_identity(n):
            raise ModelError("B1 must be the identity")
        if imat_transpose(self.J) != imat_scale(self.J, -1):
            raise ModelError("J must be antisymmetric")
        if imat_det(self.J) == 0:
            raise ModelError("J must be invertible")
        self._Jinv = imat_inv_exact(self.J)
        self._vecs = [self._vec(B) for B in self.basis]
        if table is None:
            table = self._build_table()
        self.table = [[list(map(int, t)) for t in row] for row in table]
        self._validate_table()
        self._adjoint_coords = [self.coords_of(self.adjoint(B)) for B in self.basis]

    def _vec(self, B):
        return [x for row in B for x in row]

    def coords_of(self, M) -> list[int]:
        """Exact integer coordinates of M in the basis; error if outside."""
        sol = solve_rational(self._vecs, self._vec(M))
        if sol is None:
            raise ModelError("matrix outside the order's span")
        out = []
        for x in sol:
            if x.denominator != 1:
                raise ModelError("matrix not integral over the basis")
            out.append(int(x))
        return out

    def from_coords(self, coords) -> list:
        n = 2 * self.g
        M = [[0] * n for _ in range(n)]
        for c, B in zip(coords, self.basis):
            if c:
                M = imat_add(M, imat_scale(B, c))
        return M

    def _build_table(self):
        return [
            [self.coords_of(imat_mul(Bi, Bj)) for Bj in self.basis]
            for Bi in self.basis
        ]

    def _validate_table(self):
        for i, Bi in enumerate(self.basis):
            for j, Bj in enumerate(self.basis):
                prod = imat_mul(Bi, Bj)
                if self.from_coords(self.table[i][j]) != prod:
                    raise ModelError(f"structure constants wrong at ({i}, {j})")

    def adjoint(self, M) -> list:
        """Rosati adjoint J^-1 M^T J."""
        return imat_mul(imat_mul(self._Jinv, imat_transpose(M)), self.J)

    def pairing_exponent(self, pvec, qvec, m: int) -> int:
        """P^T J Q mod m: the model Weil pairing in additive exponent form."""
        acc = 0
        for i, row in enumerate(self.J):
            if pvec[i]:
                acc += pvec[i] * sum(row[j] * qvec[j] for j in range(len(qvec)))
        return acc % m

    def symmetric_sample(self, rng: Stream) -> list:
        w = self.from_coords([rng.randint(-2, 2) for _ in range(self.dim)])
        return imat_add(w, self.adjoint(w))

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "basis": self.basis,
            "J": self.J,
            "table": self.table,
            "ordinary": self.ordinary,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelVariety":
        try:
            return cls(d["g"], d["basis"], d["J"], d.get("table"), d.get("ordinary", False))
        except (KeyError, TypeError) as exc:
            raise DataError(f"bad model fixture: {exc}") from exc
        except ModelError as exc:
            raise DataError(str(exc)) from exc


# -- spec-level operations ------------------------------------------------------

def model_pairing(P: "ModelPoint", Q: "ModelPoint", ell: int) -> int:
    if P.level != ell or Q.level != ell:
        raise ModelError("pairing level mismatch")
    return P.backend.order.pairing_exponent(P.vec, Q.vec, ell)


def model_adjoint(order: ModelVariety, M: list) -> list:
    return order.adjoint(M)


def model_symmetric_sample(order: ModelVariety, rng: Stream) -> list:
    return order.symmetric_sample(rng)


# -- the default fixture ---------------------------------------------------------

def _zi_block(a: int, b: int):
    # regular representation of a + b*i on the basis (1, i)
    return [[a, -b], [b, a]]


def _m2zi(e00, e01, e10, e11):
    """4x4 integer matrix for a 2x2 matrix over Z[i]; entries are (a, b) pairs."""
    blocks = [[_zi_block(*e00), _zi_block(*e01)], [_zi_block(*e10), _zi_block(*e11)]]
    out = [[0] * 4 for _ in range(4)]
    for bi in range(2):
        for bj in range(2):
            for r in range(2):
                for c in range(2):
                    out[2 * bi + r][2 * bj + c] = blocks[bi][bj][r][c]
    return out


_Z = (0, 0)
_ONE = (1, 0)
_I = (0, 1)


def default_model() -> ModelVariety:
    basis = [
        _m2zi(_ONE, _Z, _Z, _ONE),  # 1
        _m2zi(_ONE, _Z, _Z, _Z),    # E11
        _m2zi(_I, _Z, _Z, _Z),      # i E11
        _m2zi(_Z, _ONE, _Z, _Z),    # E12
        _m2zi(_Z, _I, _Z, _Z),      # i E12
        _m2zi(_Z, _Z, _ONE, _Z),    # E21
        _m2zi(_Z, _Z, _I, _Z),      # i E21
        _m2zi(_Z, _Z, _Z, _I),      # i E22
    ]
    J2 = [[0, 1], [-1, 0]]
    J = [[0] * 4 for _ in range(4)]
    for b in range(2):
        for r in range(2):
            for c in range(2):
                J[2 * b + r][2 * b + c] = J2[r][c]
    return ModelVariety(2, basis, J, ordinary=False)


# -- points and the backend protocol ----------------------------------------------

class ModelPoint:
    __slots__ = ("backend", "level", "vec")

    def __init__(self, backend, level: int, vec):
        self.backend = backend
        self.level = int(level)
        self.vec = tuple(int(x) % self.level for x in vec)

    @property
    def field(self):
        # levels play the role of fields for same-context checks
        return self.level

    def is_identity(self) -> bool:
        return all(x == 0 for x in self.vec)

    def __neg__(self):
        return ModelPoint(self.backend, self.level, [-x for x in self.vec])

    def __add__(self, other):
        if not isinstance(other, ModelPoint):
            return NotImplemented
        if other.backend is not self.backend or other.level != self.level:
            raise ModelError("model points from different contexts")
        return ModelPoint(
            self.backend, self.level, [x + y for x, y in zip(self.vec, other.vec)]
        )

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return ModelPoint(self.backend, self.level, [n * x for x in self.vec])

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, ModelPoint):
            return NotImplemented
        return self.level == other.level and self.vec == other.vec

    def __hash__(self):
        return hash((self.level, self.vec))

    def __repr__(self):
        return f"ModelPoint({self.vec} mod {self.level})"


class ModelBackend:
    kind = "model"

    def __init__(self, order: ModelVariety):
        self.order = order
        self.g = order.g
        self.p = 0
        self.char = None
        self.generators = [f"b{i+1}" for i in range(order.dim)]
        self.even_stage = False
        self._lock = threading.RLock()
        self._torsion_cache: dict = {}

    @property
    def degree_multiple(self) -> int:
        return 1

    def descriptor(self) -> dict:
        d = self.order.to_dict()
        d["kind"] = "model"
        return d

    def frob_char_poly(self) -> list[int]:
        # all torsion is rational by construction, so Frobenius acts
        # trivially: (x - 1)^2g
        import math

        n = 2 * self.g
        return [(-1) ** (n - i) * math.comb(n, i) for i in range(n + 1)]

    def group_order(self, level: int) -> int:
        return level ** (2 * self.g)

    def count_points(self, level: int) -> int:
        # product of the elementary divisors (level, ..., level)
        return self.group_order(level)

    def is_ordinary(self) -> bool:
        return self.order.ordinary

    # points ------------------------------------------------------------------
    def identity(self, level: int):
        return ModelPoint(self, level, [0] * (2 * self.g))

    def random_point(self, level: int, rng: Stream):
        return ModelPoint(self, level, [rng.randrange(level) for _ in range(2 * self.g)])

    def standard_basis(self, level: int):
        n = 2 * self.g
        return [
            ModelPoint(self, level, [1 if i == j else 0 for j in range(n)])
            for i in range(n)
        ]

    def point_to_json(self, point):
        return {"level": point.level, "vec": list(point.vec)}

    def point_from_json(self, level, obj):
        if obj.get("level") != level:
            raise DataError("model point level mismatch")
        return ModelPoint(self, level, obj["vec"])

    # generators -----------------------------------------------------------------
    def generator_matrix(self, name: str) -> list:
        if name not in self.generators:
            raise ModelError(f"unknown generator {name!r}")
        return self.order.basis[int(name[1:]) - 1]

    def apply_generator(self, name: str, point: ModelPoint):
        B = self.generator_matrix(name)
        m = point.level
        vec = [sum(B[i][j] * point.vec[j] for j in range(len(point.vec))) for i in range(len(B))]
        return ModelPoint(self, m, vec)

    def adjoint_word(self, name: str) -> list[tuple[int, tuple[str, ...]]]:
        idx = int(name[1:]) - 1
        coords = self.order._adjoint_coords[idx]
        return [(c, (f"b{j+1}",)) for j, c in enumerate(coords) if c]

    def __eq__(self, other):
        return isinstance(other, ModelBackend) and other.order.to_dict() == self.order.to_dict()

    def __hash__(self):
        return hash("model-backend")

    def __repr__(self):
        return f"ModelBackend(g={self.g}, dim {self.order.dim})"


def model_backend_from_descriptor(desc: dict) -> ModelBackend:
    d = dict(desc)
    d.pop("kind", None)
    return ModelBackend(ModelVariety.from_dict(d))
