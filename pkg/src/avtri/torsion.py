"""Torsion bases of A[l'], endomorphism matrices on them, torsion fields.

The torsion field degree is the least k with A[l'] rational over F_q^k,
i.e. the multiplicative order of x modulo the minimal polynomial of
Frobenius on A[l'].  That minimal polynomial is only known to divide
P_pi mod l' (with the same radical), so we enumerate the possible divisors,
sort their orders ascending, filter by l'^2g | #A(F_q^k), and take the
first degree at which 2g independent points are actually found - the
verification the contract demands.  The naive companion-matrix order is
just one (often far too large) candidate in this list.
"""

from __future__ import annotations

import math
import threading

from .arith import PrimeField, is_prime
from .arith import poly as P
from .arith import modmatrix as MM
from .pairing import PairingError, pair_theta
from .rng import Stream
from .varieties.backend import BackendError

K_MAX = 24
ELLPRIME_CAP = 127
SAMPLE_BUDGET = 120


class TorsionFieldError(ValueError):
    """No usable torsion field at or below the degree cap."""


class TorsionBasis:
    """2g points of exact order l' whose theta-pairing Gram matrix is invertible."""

    __slots__ = ("backend", "ell", "k", "field", "points", "gram", "_gram_inv_t")

    def __init__(self, backend, ell, k, field, points, gram):
        self.backend = backend
        self.ell = ell
        self.k = k
        self.field = field
        self.points = tuple(points)
        self.gram = [list(r) for r in gram]
        self._gram_inv_t = MM.mat_inv(MM.mat_transpose(self.gram), ell)

    def coordinates(self, X) -> list[int]:
        """Coordinates of X in the basis by dual pairing projection.

        pair(X, e_i) = (G^T c)_i for X = sum c_j e_j; the reconstruction is
        re-checked exactly on the group side.
        """
        ell = self.ell
        if not (ell * X).is_identity():
            raise BackendError(f"point is not {ell}-torsion")
        w = [pair_theta(X, e, ell).exponent for e in self.points]
        c = MM.mat_vec(self._gram_inv_t, w, ell)
        recon = self.backend.identity(self.field)
        for cj, ej in zip(c, self.points):
            if cj:
                recon = recon + cj * ej
        if recon != X:
            raise BackendError("pairing projection failed to reconstruct the point")
        return c

    def combination(self, coeffs):
        acc = self.backend.identity(self.field)
        for cj, ej in zip(coeffs, self.points):
            if cj % self.ell:
                acc = acc + (cj % self.ell) * ej
        return acc

    def random_point(self, rng: Stream):
        return self.combination([rng.randrange(self.ell) for _ in self.points])


class EndoMatrix:
    __slots__ = ("ell", "entries")

    def __init__(self, ell: int, entries):
        self.ell = ell
        self.entries = [[x % ell for x in row] for row in entries]

    def __eq__(self, other):
        if not isinstance(other, EndoMatrix):
            return NotImplemented
        return self.ell == other.ell and self.entries == other.entries

    def __repr__(self):
        return f"EndoMatrix(mod {self.ell}, {self.entries})"


# -- torsion field degree ------------------------------------------------------


def _irreducible_factors(lp: int, chi: list[int]):
    """Monic irreducible factors with multiplicities, for deg <= 4 polys."""
    F = PrimeField(lp)
    rem = [c % lp for c in chi]
    factors = []
    for r in range(lp):
        lin = [(-r) % lp, 1]
        while P.pdeg(rem) >= 1:
            q, rr = P.pdivmod(F, rem, lin)
            if rr:
                break
            rem = q
            for fac in factors:
                if fac[0] == lin:
                    fac[1] += 1
                    break
            else:
                factors.append([lin, 1])
    if P.pdeg(rem) >= 2:
        for b in range(lp):
            for c in range(lp):
                quad = [c, b, 1]
                while P.pdeg(rem) >= 2:
                    q, rr = P.pdivmod(F, rem, quad)
                    if rr:
                        break
                    rem = q
                    for fac in factors:
                        if fac[0] == quad:
                            fac[1] += 1
                            break
                    else:
                        factors.append([quad, 1])
    if P.pdeg(rem) >= 1:
        factors.append([rem, 1])
    return [(tuple(f), m) for f, m in factors]


def _order_of_x_mod(lp: int, modulus: list[int], cap: int):
    """Least k <= cap with x^k = 1 mod (modulus), or None."""
    F = PrimeField(lp)
    if P.peval(F, list(modulus), 0) == 0:
        return None  # x not invertible
    one = [1]
    cur = [0, 1]
    cur = P.pmod(F, cur, list(modulus))
    acc = cur
    for k in range(1, cap + 1):
        if acc == one:
            return k
        acc = P.pmod(F, P.pmul(F, acc, cur), list(modulus))
    return None


def _candidate_degrees(backend, lp: int) -> list[int]:
    chi = backend.frob_char_poly()
    factors = _irreducible_factors(lp, chi)
    F = PrimeField(lp)
    candidates = set()
    # min poly = product of every factor with exponent in [1, multiplicity]
    choices = [[e for e in range(1, m + 1)] for _, m in factors]
    import itertools

    for exps in itertools.product(*choices):
        m = [1]
        for (fac, _), e in zip(factors, exps):
            for _ in range(e):
                m = P.pmul(F, m, list(fac))
        k = _order_of_x_mod(lp, m, K_MAX)
        if k is not None:
            candidates.add(k)
    return sorted(candidates)


def torsion_field_degree(backend, lp: int, rng: Stream | None = None) -> int:
    """Least k <= K_MAX with A[l'] in A(F_q^k), verified by basis construction."""
    return torsion_basis(backend, lp, rng).k


# -- basis construction ---------------------------------------------------------


def _exact_order_point(backend, field, lp, cofactor, rng):
    for _ in range(SAMPLE_BUDGET):
        Q = cofactor * backend.random_point(field, rng)
        if Q.is_identity():
            continue
        while not (lp * Q).is_identity():
            Q = lp * Q
        if not Q.is_identity():
            return Q
    return None


def _try_basis_at_degree(backend, lp, k, rng):
    g2 = 2 * backend.g
    working = k * backend.degree_multiple // math.gcd(k, backend.degree_multiple)
    field = backend.field(working)
    N = backend.group_order(working)
    v = 0
    M = N
    while M % lp == 0:
        M //= lp
        v += 1
    if v < g2:
        return None
    cofactor = N // lp**v
    points: list = []
    for attempt in range(SAMPLE_BUDGET):
        Q = _exact_order_point(backend, field, lp, cofactor, rng.child("sample", attempt))
        if Q is None:
            return None
        if len(points) < g2:
            points.append(Q)
        else:
            points[attempt % g2] = Q
        if len(points) == g2:
            try:
                gram = [
                    [pair_theta(a, b, lp).exponent for b in points] for a in points
                ]
            except PairingError:
                continue
            if MM.mat_rank(gram, lp) == g2:
                return TorsionBasis(backend, lp, k, field, points, gram)
    return None


def torsion_basis(backend, lp: int, rng: Stream | None = None) -> TorsionBasis:
    """A basis of A[l'], cached per (backend, l')."""
    if not is_prime(lp):
        raise ValueError(f"l' = {lp} is not prime")
    if lp > ELLPRIME_CAP:
        raise ValueError(f"l' = {lp} above the desk-scale cap {ELLPRIME_CAP}")
    if backend.char is not None and lp == backend.char:
        raise TorsionFieldError("l' equals the field characteristic")
    cache = backend._torsion_cache
    got = cache.get(lp)
    if got is not None:
        return got
    with backend._lock:
        got = cache.get(lp)
        if got is not None:
            return got
        basis = _build_basis(backend, lp, rng)
        cache[lp] = basis
        return basis


def _build_basis(backend, lp, rng):
    if backend.kind == "model":
        points = backend.standard_basis(lp)
        gram = [[pair_theta(a, b, lp).exponent for b in points] for a in points]
        if MM.mat_rank(gram, lp) != 2 * backend.g:
            raise TorsionFieldError("model form degenerate at this level")
        return TorsionBasis(backend, lp, 1, lp, points, gram)
    rng = rng or Stream(0xBA515, ("torsion", backend.kind, backend.p, lp))
    candidates = _candidate_degrees(backend, lp)
    if not candidates:
        raise TorsionFieldError(
            f"torsion field too large for l' = {lp}; pick another l' (cap {K_MAX})"
        )
    for k in candidates:
        working = k * backend.degree_multiple // math.gcd(k, backend.degree_multiple)
        if working > K_MAX:
            continue
        basis = _try_basis_at_degree(backend, lp, k, rng.child("deg", k))
        if basis is not None:
            return basis
    raise TorsionFieldError(
        f"no torsion field verified for l' = {lp} up to degree {K_MAX}; pick another l'"
    )


# -- endomorphism matrices --------------------------------------------------------


def matrix_of_endo(lam, basis: TorsionBasis) -> EndoMatrix:
    """Matrix of an endomorphism on the basis (column j = coords of lam(e_j)).

    lam is anything callable on points (an Endomorphism or a point map).
    """
    lp = basis.ell
    cols = []
    for e in basis.points:
        img = lam(e)
        if not (lp * img).is_identity():
            raise BackendError(
                "image is not l'-torsion: not an endomorphism or wrong basis"
            )
        cols.append(basis.coordinates(img))
    n = len(cols)
    return EndoMatrix(lp, [[cols[j][i] for j in range(n)] for i in range(n)])


def exhaustive_coordinates(basis: TorsionBasis, X) -> list[int]:
    """Fallback oracle: scan all l'^2g combinations (l' <= 5 only)."""
    lp = basis.ell
    if lp > 5:
        raise ValueError("exhaustive span search is the l' <= 5 oracle")
    import itertools

    for coeffs in itertools.product(range(lp), repeat=len(basis.points)):
        if basis.combination(coeffs) == X:
            return list(coeffs)
    raise BackendError("point is outside the span of the basis")


def prime_schedule(skip=(), start: int = 3, cap: int = ELLPRIME_CAP):
    """Ascending odd primes, skipping the given set."""
    n = start
    while n <= cap:
        if is_prime(n) and n not in skip:
            yield n
        n += 2
