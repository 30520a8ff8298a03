"""Abelian-variety backends behind one abstraction."""

from __future__ import annotations

from ..jsonio import DataError
from .backend import BackendError, CurveBackend, check_same
from .counting import SizeCapExceeded
from .elliptic import ECPoint, EllipticBackend
from .genus2 import Genus2Backend, MumfordDivisor


def group_add(P, Q):
    return P + Q


def count_points(backend, k: int) -> int:
    return backend.count_points(k)


def frobenius_char_poly(backend) -> list[int]:
    return backend.frob_char_poly()


def is_ordinary(backend) -> bool:
    return backend.is_ordinary()


def named_endomorphism(backend, name: str):
    """The generator as a point map."""
    if name not in backend.generators:
        raise BackendError(f"unknown endomorphism generator {name!r}")
    return lambda point: backend.apply_generator(name, point)


PRESETS = {
    "ec11": lambda: EllipticBackend(11, 1, 0),
    "ec7": lambda: EllipticBackend(7, 1, 0),
    "ec7-ordinary": lambda: EllipticBackend(7, 0, 2),
    "g2-19": lambda: Genus2Backend(19, [1, 0, 0, 0, 0, 1]),
}


def backend_from_descriptor(desc: dict):
    if not isinstance(desc, dict):
        raise DataError("backend descriptor must be a JSON object")
    kind = desc.get("kind")
    if kind == "model":
        from ..model import model_backend_from_descriptor

        return model_backend_from_descriptor(desc)
    try:
        p = int(desc["p"])
        coeffs = [int(c) for c in desc["coeffs"]]
        generators = [str(g) for g in desc["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"bad backend descriptor: {exc}") from exc
    try:
        if kind == "elliptic":
            if len(coeffs) != 2:
                raise DataError("elliptic descriptor needs [a, b]")
            return EllipticBackend(p, coeffs[0], coeffs[1], generators)
        if kind == "genus2":
            return Genus2Backend(p, coeffs, generators)
    except BackendError as exc:
        raise DataError(str(exc)) from exc
    raise DataError(f"unknown backend kind {kind!r}")


__all__ = [
    "BackendError",
    "CurveBackend",
    "ECPoint",
    "EllipticBackend",
    "Genus2Backend",
    "MumfordDivisor",
    "PRESETS",
    "SizeCapExceeded",
    "backend_from_descriptor",
    "check_same",
    "count_points",
    "frobenius_char_poly",
    "group_add",
    "is_ordinary",
    "named_endomorphism",
]
