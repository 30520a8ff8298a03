"""Endomorphisms as generator-word programs, and the computational lemmas:
evaluation, CRT characteristic polynomials, degree, Rosati adjoints,
symmetric sampling.

A word is a formal integer combination of products of named generators;
the empty product is the identity, so scalars are terms with no generators.
Term order is preserved through serialization (re-randomized encodings must
stay byte-distinct), and evaluation never normalizes the word.
"""

from __future__ import annotations

import threading

from .arith import crt_combine, signed_rep
from .arith import modmatrix as MM
from .jsonio import DataError
from .model import ModelBackend
from .rng import Stream
from .torsion import (
    EndoMatrix,
    TorsionBasis,
    TorsionFieldError,
    matrix_of_endo,
    prime_schedule,
    torsion_basis,
)
from .varieties.backend import BackendError

Word = list[tuple[int, tuple[str, ...]]]


class EndoError(ValueError):
    pass


def word_mul(a: Word, b: Word) -> Word:
    return [(ca * cb, ga + gb) for ca, ga in a for cb, gb in b]


def word_scale(a: Word, n: int) -> Word:
    return [(n * c, g) for c, g in a]


class Endomorphism:
    """A generator-word program with per-prime cached matrix actions."""

    def __init__(self, backend, terms: Word, symmetric: bool = False):
        if not terms:
            raise EndoError("empty word")
        for c, gens in terms:
            for name in gens:
                if name not in backend.generators:
                    raise EndoError(f"unresolvable generator {name!r}")
        self.backend = backend
        self.terms = tuple((int(c), tuple(gens)) for c, gens in terms)
        self.symmetric = bool(symmetric)
        self._matrices: dict[int, EndoMatrix] = {}
        self._mx_lock = threading.RLock()

    # evaluation ---------------------------------------------------------------
    def __call__(self, point):
        acc = None
        for c, gens in self.terms:
            img = point
            for name in reversed(gens):
                img = self.backend.apply_generator(name, img)
            img = c * img
            acc = img if acc is None else acc + img
        return acc

    # algebra --------------------------------------------------------------------
    def __add__(self, other):
        self._check(other)
        return Endomorphism(
            self.backend,
            list(self.terms) + list(other.terms),
            symmetric=self.symmetric and other.symmetric,
        )

    def __sub__(self, other):
        self._check(other)
        return self + (-other)

    def __neg__(self):
        return Endomorphism(self.backend, word_scale(list(self.terms), -1), self.symmetric)

    def __rmul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return Endomorphism(self.backend, word_scale(list(self.terms), n), self.symmetric)

    def compose(self, other) -> "Endomorphism":
        self._check(other)
        return Endomorphism(self.backend, word_mul(list(self.terms), list(other.terms)))

    def adjoint(self) -> "Endomorphism":
        """Formal Rosati adjoint: reverse each product, adjoint each generator."""
        out: Word = []
        for c, gens in self.terms:
            acc: Word = [(c, ())]
            for name in reversed(gens):
                acc = word_mul(acc, self.backend.adjoint_word(name))
            out.extend(acc)
        return Endomorphism(self.backend, out, symmetric=self.symmetric)

    def _check(self, other):
        if not isinstance(other, Endomorphism) or other.backend is not self.backend:
            raise EndoError("endomorphisms of different backends")

    # matrices ---------------------------------------------------------------------
    def matrix_mod(self, lp: int, rng: Stream | None = None) -> EndoMatrix:
        got = self._matrices.get(lp)
        if got is not None:
            return got
        with self._mx_lock:
            got = self._matrices.get(lp)
            if got is None:
                basis = torsion_basis(self.backend, lp, rng)
                got = matrix_of_endo(self, basis)
                self._matrices[lp] = got
        return got

    # serialization -------------------------------------------------------------------
    def to_payload(self) -> list:
        return [[c, list(gens)] for c, gens in self.terms]

    @classmethod
    def from_payload(cls, backend, payload, symmetric: bool = False) -> "Endomorphism":
        try:
            terms = [(int(c), tuple(str(g) for g in gens)) for c, gens in payload]
        except (TypeError, ValueError) as exc:
            raise DataError(f"bad endomorphism word payload: {exc}") from exc
        try:
            return cls(backend, terms, symmetric=symmetric)
        except EndoError as exc:
            raise DataError(str(exc)) from exc

    def __repr__(self):
        return f"Endomorphism({list(self.terms)!r})"


def identity_endo(backend) -> Endomorphism:
    return Endomorphism(backend, [(1, ())], symmetric=True)


def scalar_endo(backend, n: int) -> Endomorphism:
    return Endomorphism(backend, [(n, ())], symmetric=True)


# -- characteristic polynomial ---------------------------------------------------


class CharPoly:
    """Monic integer polynomial of degree 2g with a verification bit."""

    __slots__ = ("coeffs", "verified")

    def __init__(self, coeffs: list[int], verified: bool):
        if coeffs[-1] != 1:
            raise EndoError("characteristic polynomial must be monic")
        self.coeffs = list(coeffs)
        self.verified = verified

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def constant_term(self) -> int:
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, CharPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __repr__(self):
        return f"CharPoly({self.coeffs}, verified={self.verified})"


def _apply_int_poly(backend, coeffs, lam, point):
    acc = None
    power = point
    for c in coeffs:
        if c:
            term = c * power
            acc = term if acc is None else acc + term
        power = lam(power)
    return acc


def _verify_char_poly(lam: Endomorphism, coeffs: list[int], rng: Stream) -> bool:
    backend = lam.backend
    for trial in range(5):
        sub = rng.child("verify", trial)
        if isinstance(backend, ModelBackend):
            level = sub.choice([89, 97, 101])
            pt = backend.random_point(level, sub)
        else:
            m = backend.degree_multiple
            k = sub.choice([m, 2 * m])
            pt = backend.random_point(backend.field(k), sub)
        img = _apply_int_poly(backend, coeffs, lam, pt)
        if img is None or not img.is_identity():
            return False
    return True


def char_poly(
    lam: Endomorphism,
    rng: Stream | None = None,
    skip=(),
    max_primes: int = 12,
) -> CharPoly:
    """The integer characteristic polynomial by CRT over small primes.

    Determines the matrix action mod each usable prime, takes matrix
    characteristic polynomials, and combines signed representatives until
    two consecutive reconstructions agree; the candidate is then verified
    by annihilating random points before being returned.  max_primes is the
    desk-scale form of the coefficient-size heuristic bound: exceeding it
    raises, and the caller may retry with a larger budget.
    """
    backend = lam.backend
    rng = rng or Stream(0xCAFE, ("charpoly",))
    twog = 2 * backend.g
    skipset = set(skip)
    if backend.char is not None:
        skipset.add(backend.char)
    residues: list[tuple[int, list[int]]] = []
    prev = None
    for lp in prime_schedule(skip=skipset):
        if len(residues) >= max_primes:
            break
        try:
            M = lam.matrix_mod(lp, rng.child("basis", lp))
        except TorsionFieldError:
            continue
        f_lp = MM.charpoly(M.entries, lp)
        residues.append((lp, f_lp))
        cand = []
        for i in range(twog + 1):
            x, mod = crt_combine([(f[i], q) for q, f in residues])
            cand.append(signed_rep(x, mod))
        if cand == prev:
            if _verify_char_poly(lam, cand, rng):
                return CharPoly(cand, verified=True)
        prev = cand
    raise EndoError(
        "characteristic polynomial heuristic bound exceeded; "
        f"no verified reconstruction within {max_primes} primes (raise max_primes)"
    )


def endo_degree(lam: Endomorphism, rng: Stream | None = None) -> int:
    """deg lambda = f(0), the product of the characteristic roots."""
    return char_poly(lam, rng).constant_term()


def rosati_adjoint_mod(lam: Endomorphism, basis: TorsionBasis) -> EndoMatrix:
    """lambda-dagger mod l' via the basis Gram matrix: G^-1 M^T G."""
    M = lam.matrix_mod(basis.ell)
    return adjoint_matrix_mod(M, basis)


def adjoint_matrix_mod(M: EndoMatrix, basis: TorsionBasis) -> EndoMatrix:
    lp = basis.ell
    try:
        Ginv = MM.mat_inv(basis.gram, lp)
    except ZeroDivisionError as exc:
        raise BackendError("singular Gram matrix: invalid basis") from exc
    A = MM.mat_mul(MM.mat_mul(Ginv, MM.mat_transpose(M.entries), lp), basis.gram, lp)
    return EndoMatrix(lp, A)


# -- symmetric sampling -------------------------------------------------------------


def _random_word(backend, rng: Stream) -> Word:
    terms: Word = []
    for _ in range(rng.randint(1, 2)):
        coeff = rng.sample_nonzero(-2, 2)
        gens = tuple(
            rng.choice(backend.generators) for _ in range(rng.randint(0, 2))
        )
        terms.append((coeff, gens))
    return terms


def symmetric_sample(
    backend, rng: Stream, check_prime: int | None = None
) -> Endomorphism:
    """w + w-dagger for a short random word w; adjoint-checked mod one prime."""
    if len(backend.generators) < 2 and not isinstance(backend, ModelBackend):
        raise EndoError("backend exposes too few generators to sample from")
    for attempt in range(64):
        sub = rng.child("symsample", attempt)
        w = Endomorphism(backend, _random_word(backend, sub))
        lam = Endomorphism(
            backend,
            list(w.terms) + list(w.adjoint().terms),
            symmetric=True,
        )
        lp = check_prime or _first_usable_prime(backend)
        try:
            M = lam.matrix_mod(lp, sub.child("mx"))
        except TorsionFieldError:
            continue
        if all(x == 0 for row in M.entries for x in row):
            continue
        basis = torsion_basis(backend, lp)
        if adjoint_matrix_mod(M, basis) != M:
            raise EndoError(
                "symmetric sample failed its adjoint check: generator adjoint table wrong"
            )
        return lam
    raise EndoError("could not sample a nonzero symmetric endomorphism")


def _first_usable_prime(backend) -> int:
    skip = {backend.char} if backend.char is not None else set()
    for lp in prime_schedule(skip=skip):
        try:
            torsion_basis(backend, lp)
            return lp
        except TorsionFieldError:
            continue
    raise EndoError("no usable torsion prime for this backend")
