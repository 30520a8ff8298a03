"""The trilinear map: setup, the three encodings, re-randomization, evaluation.

Setup finds a symmetric lambda whose characteristic polynomial has a nonzero
root a mod l, builds beta in the kernel of (lambda - a) via the complementary
factor, then a second symmetric lambda_2 with alpha = lambda_2(beta) not
killed by lambda_1 = lambda - a.  That forces lambda_1 lambda_2 !=
lambda_2 lambda_1 on A[l] and gives the degree-3 structure

    tmap(x alpha, y beta, word in z + U) = zeta^(xyz),
    U = <lambda_1, lambda_2, l*E-samples>,  zeta = e_l^Theta(alpha, beta).

G3 encodings are generator-word programs; re-randomization splits and
shuffles word terms (bounded 8x expansion) without changing the class.
"""

from __future__ import annotations

import sys

from .arith import is_prime, poly_roots
from .arith import modmatrix as MM
from .arith import poly as P
from .arith import PrimeField
from .endo import (
    CharPoly,
    Endomorphism,
    EndoError,
    char_poly,
    identity_endo,
    scalar_endo,
    symmetric_sample,
)
from .jsonio import DataError
from .model import ModelBackend
from .pairing import PairingError, PairingValue, pair_theta
from .rng import Stream
from .torsion import TorsionFieldError, torsion_basis
from .varieties import backend_from_descriptor

SETUP_RETRIES = 64
ELL_E_COUNT = 4
REWRITE_EXPANSION = 8


class TrimapError(ValueError):
    pass


class SetupError(TrimapError):
    """Setup retry budget exhausted (expected on commutative-End backends)."""


class TrilinearParams:
    def __init__(self, backend, ell, alpha, beta, lam1, lam2, ell_e, zeta, seed):
        self.backend = backend
        self.ell = ell
        self.alpha = alpha
        self.beta = beta
        self.lam1 = lam1
        self.lam2 = lam2
        self.ell_e = list(ell_e)  # each entry is l * mu with the multiplier explicit
        self.zeta = zeta
        self.seed = seed

    # serialization ------------------------------------------------------------
    def to_dict(self) -> dict:
        backend = self.backend
        if isinstance(backend, ModelBackend):
            field_desc = {"level": self.ell}
        else:
            field_desc = self.alpha.field.describe()
        zeta_raw = None
        if self.zeta.raw is not None:
            zeta_raw = self.alpha.field.raw_to_json(self.zeta.raw)
        return {
            "backend": backend.descriptor(),
            "ell": self.ell,
            "seed": self.seed,
            "field": field_desc,
            "alpha": backend.point_to_json(self.alpha),
            "beta": backend.point_to_json(self.beta),
            "lam1": self.lam1.to_payload(),
            "lam2": self.lam2.to_payload(),
            "ell_e": [mu.to_payload() for mu in self.ell_e],
            "zeta": {"exponent": self.zeta.exponent, "raw": zeta_raw},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrilinearParams":
        try:
            backend = backend_from_descriptor(d["backend"])
            ell = int(d["ell"])
            seed = d["seed"]
            if isinstance(backend, ModelBackend):
                field = ell
            else:
                from .arith import field_from_description

                field = field_from_description(d["field"])
            alpha = backend.point_from_json(field, d["alpha"])
            beta = backend.point_from_json(field, d["beta"])
            lam1 = Endomorphism.from_payload(backend, d["lam1"], symmetric=True)
            lam2 = Endomorphism.from_payload(backend, d["lam2"], symmetric=True)
            ell_e = [Endomorphism.from_payload(backend, w, symmetric=True) for w in d["ell_e"]]
            raw = d["zeta"]["raw"]
            if raw is not None:
                raw = field.raw_from_json(raw)
                zeta = PairingValue(ell, int(d["zeta"]["exponent"]), raw, field)
            else:
                zeta = PairingValue(ell, int(d["zeta"]["exponent"]))
            return cls(backend, ell, alpha, beta, lam1, lam2, ell_e, zeta, seed)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DataError):
                raise
            raise DataError(f"bad params file: {exc}") from exc


class EncodingG3:
    """A blinded generator-word program representing some class in a + U."""

    def __init__(self, ell: int, payload: list, symmetric: bool = True):
        self.ell = ell
        self.payload = payload
        self.symmetric = symmetric

    def to_dict(self) -> dict:
        return {"ell": self.ell, "symmetric": self.symmetric, "word": self.payload}

    @classmethod
    def from_dict(cls, d: dict) -> "EncodingG3":
        try:
            return cls(int(d["ell"]), d["word"], bool(d["symmetric"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise DataError(f"bad encoding file: {exc}") from exc

    def endomorphism(self, backend) -> Endomorphism:
        return Endomorphism.from_payload(backend, self.payload, symmetric=self.symmetric)


# -- setup ------------------------------------------------------------------------


def _field_of(backend, basis):
    return basis.field


def setup(backend, ell: int, rng: Stream, retries: int = SETUP_RETRIES) -> TrilinearParams:
    if not is_prime(ell):
        raise TrimapError(f"l = {ell} is not prime")
    if backend.char is not None and ell == backend.char:
        raise TrimapError("l must differ from the characteristic")
    try:
        basis = torsion_basis(backend, ell, rng.child("torsion"))
    except TorsionFieldError as exc:
        raise TrimapError(f"A[l] not accessible: {exc}") from exc
    if backend.is_ordinary():
        print(
            "warning: backend is ordinary; its endomorphisms commute and setup "
            "is expected to fail",
            file=sys.stderr,
        )
    Fell = PrimeField(ell)
    twog = 2 * backend.g
    for attempt in range(retries):
        sub = rng.child("setup", attempt)
        try:
            lam = symmetric_sample(backend, sub.child("lam"), check_prime=None)
            f_int = char_poly(lam, sub.child("cp"), skip=(ell,))
        except EndoError:
            continue
        roots = poly_roots(f_int.coeffs, ell) - {0}
        if not roots:
            continue
        a = sorted(roots)[sub.randrange(len(roots))]
        M = lam.matrix_mod(ell).entries
        # replace f by the factor that vanishes on A[l] exactly: the minimal
        # polynomial; then f1 = m / (x - a) cannot also vanish
        m = MM.minpoly(M, ell)
        if P.peval(Fell, m, a) != 0:
            continue
        f1, rem = P.pdivmod(Fell, m, [(-a) % ell, 1])
        assert rem == []
        if not f1:
            f1 = [1]
        f1M = _poly_at_matrix(f1, M, ell)
        if all(x == 0 for row in f1M for x in row):
            continue
        beta_vec = None
        for gtry in range(32):
            gamma = [sub.randrange(ell) for _ in range(twog)]
            cand = MM.mat_vec(f1M, gamma, ell)
            if any(cand):
                beta_vec = cand
                break
        if beta_vec is None:
            continue
        beta = basis.combination(beta_vec)
        lam1 = Endomorphism(
            backend, list(lam.terms) + [(-a, ())], symmetric=True
        )
        if not lam1(beta).is_identity():
            continue
        M1 = lam1.matrix_mod(ell).entries
        # second symmetric draw: alpha = lam2(beta), lam1(alpha) != 0
        found = None
        for j in range(24):
            try:
                lam2 = symmetric_sample(backend, sub.child("lam2", j))
            except EndoError:
                continue
            M2 = lam2.matrix_mod(ell).entries
            alpha_vec = MM.mat_vec(M2, beta_vec, ell)
            if not any(alpha_vec):
                continue
            if not any(MM.mat_vec(M1, alpha_vec, ell)):
                continue
            if MM.mat_mul(M1, M2, ell) == MM.mat_mul(M2, M1, ell):
                continue
            span = [_vec(M1), _vec(M2)]
            if MM.mat_rank(span, ell) != 2:
                continue
            found = (lam2, alpha_vec)
            break
        if found is None:
            continue
        lam2, alpha_vec = found
        alpha = basis.combination(alpha_vec)
        if lam2(beta) != alpha or lam1(alpha).is_identity():
            continue
        ell_e = []
        ok = True
        for i in range(ELL_E_COUNT):
            try:
                mu = symmetric_sample(backend, sub.child("ellE", i))
            except EndoError:
                ok = False
                break
            ell_e.append(ell * mu)
        if not ok:
            continue
        zeta = pair_theta(alpha, beta, ell)
        if zeta.is_one():
            continue
        params = TrilinearParams(
            backend, ell, alpha, beta, lam1, lam2, ell_e, zeta, seed=rng.seed
        )
        checks = check_params(params)
        if all(checks.values()):
            return params
    raise SetupError(
        f"backend cannot instantiate noncommuting setup within {retries} retries"
    )


def _poly_at_matrix(coeffs, M, ell):
    n = len(M)
    acc = [[0] * n for _ in range(n)]
    power = MM.mat_identity(n)
    for c in coeffs:
        if c % ell:
            acc = MM.mat_add(acc, MM.mat_scale(power, c, ell), ell)
        power = MM.mat_mul(power, M, ell)
    return acc


def _vec(M):
    return [x for row in M for x in row]


def check_params(params: TrilinearParams) -> dict[str, bool]:
    """Every TrilinearParams invariant, checked on the live objects."""
    ell = params.ell
    M1 = params.lam1.matrix_mod(ell).entries
    M2 = params.lam2.matrix_mod(ell).entries
    return {
        "lam1_kills_beta": params.lam1(params.beta).is_identity(),
        "alpha_is_lam2_beta": params.lam2(params.beta) == params.alpha,
        "lam1_alpha_nonzero": not params.lam1(params.alpha).is_identity(),
        "noncommuting": MM.mat_mul(M1, M2, ell) != MM.mat_mul(M2, M1, ell),
        "span_dim2": MM.mat_rank([_vec(M1), _vec(M2)], ell) == 2,
        "zeta_nonzero": not params.zeta.is_one(),
    }


# -- encodings ----------------------------------------------------------------------


def encode1(params: TrilinearParams, a: int):
    _check_exponent(params, a)
    return a * params.alpha


def encode2(params: TrilinearParams, a: int):
    _check_exponent(params, a)
    return a * params.beta


def _check_exponent(params, a):
    if not isinstance(a, int) or not 0 <= a < params.ell:
        raise TrimapError(f"encoded value must lie in [0, {params.ell})")


def encode3(params: TrilinearParams, a: int, rng: Stream) -> EncodingG3:
    """A probabilistic word in a + U, re-randomized by program rewriting."""
    _check_exponent(params, a)
    ell = params.ell
    x = rng.randrange(ell)
    y = rng.randrange(ell)
    terms: list = [(a, ())]
    if x:
        terms += [(c * x, g) for c, g in params.lam1.terms]
    if y:
        terms += [(c * y, g) for c, g in params.lam2.terms]
    for mu in params.ell_e:
        c_i = rng.randint(-2, 2)
        if c_i:
            terms += [(c * c_i, g) for c, g in mu.terms]
    terms = _rewrite(terms, ell, rng)
    word = Endomorphism(params.backend, terms, symmetric=True)
    return EncodingG3(ell, word.to_payload())


def _rewrite(terms, ell, rng: Stream):
    """Split coefficients into random sums and shuffle, bounded expansion."""
    cap = max(len(terms) * REWRITE_EXPANSION, len(terms) + 1)
    out = []
    for c, gens in terms:
        if len(out) + 2 <= cap and rng.randint(0, 1):
            c1 = rng.randint(-ell, ell)
            out.append((c1, gens))
            out.append((c - c1, gens))
        else:
            out.append((c, gens))
    out = [(c, g) for c, g in out if c != 0]
    if not out:
        out = [(0, ())]
    rng.shuffle(out)
    return out


# -- evaluation ---------------------------------------------------------------------


def tmap(params: TrilinearParams, e1, e2, e3: EncodingG3) -> int:
    """The exponent t with e_l^Theta(e1, word(e2)) = zeta^t."""
    if e3.ell != params.ell:
        raise TrimapError("encoding level does not match the parameters")
    lam = e3.endomorphism(params.backend)
    try:
        val = pair_theta(e1, lam(e2), params.ell)
    except PairingError as exc:
        raise TrimapError(f"corrupt encoding: {exc}") from exc
    s = params.zeta.exponent
    return val.exponent * pow(s, -1, params.ell) % params.ell


def encodes_zero(params: TrilinearParams, e3: EncodingG3) -> bool:
    """Zero test: the word lies in U iff e_l^Theta(alpha, word(beta)) = 1."""
    lam = e3.endomorphism(params.backend)
    return pair_theta(params.alpha, lam(params.beta), params.ell).is_one()


# -- the g = 1 divisor-to-endomorphism map --------------------------------------------


def elliptic_lambda_from_divisor(backend, divisor) -> Endomorphism:
    """lambda_D for a formal point sum on an elliptic backend.

    NS of an elliptic curve is generated by Theta = (O), so the class of
    D = sum c_i (P_i) is its degree and lambda_D = (sum c_i) * identity
    under the phi_Theta(b) = -b convention.
    """
    if backend.g != 1:
        raise TrimapError("general-g divisor evaluation out of scope")
    total = sum(c for c, _pt in divisor)
    return scalar_endo(backend, total)
