import pytest

from avtri.arith import PrimeField, build_field
from avtri.arith import poly as P
from avtri.rng import stream
from avtri.varieties import (
    BackendError,
    EllipticBackend,
    Genus2Backend,
    count_points,
    frobenius_char_poly,
    group_add,
    is_ordinary,
    named_endomorphism,
)
from avtri.varieties import counting, mumford


# -- enumeration oracles -------------------------------------------------------

def all_affine_points(p, a, b):
    pts = []
    for x in range(p):
        for y in range(p):
            if (y * y - (x**3 + a * x + b)) % p == 0:
                pts.append((x, y))
    return pts


def curve_count_oracle(p, f_coeffs, k=1):
    # counts points of y^2 = f(x) over F_{p^k} through the field object
    F = PrimeField(p) if k == 1 else build_field(p, k, even_stage=(k % 2 == 0))
    sq = {}
    for y in F.elements():
        z = F.mul(y, y)
        sq[z] = sq.get(z, 0) + 1
    fpoly = [F.embed_int(c) for c in f_coeffs]
    n = 1
    for x in F.elements():
        n += sq.get(P.peval(F, fpoly, x), 0)
    return n


def geometric_double(p, a, b, pt):
    """Double a point using the geometric definition: tangent line via the
    implicit derivative, intersection multiset via polynomial division,
    then reflection.  Independent of the chord-tangent addition code."""
    x1, y1 = pt
    if y1 == 0:
        return None  # infinity
    m = (3 * x1 * x1 + a) * pow(2 * y1, -1, p) % p
    c = (y1 - m * x1) % p
    # x^3 + a x + b - (m x + c)^2: roots are the intersection x's
    F = PrimeField(p)
    cubic = [
        (b - c * c) % p,
        (a - 2 * m * c) % p,
        (-m * m) % p,
        1,
    ]
    # divide out the double root at x1
    q1, r1 = P.pdivmod(F, cubic, [(-x1) % p, 1])
    assert r1 == []
    q2, r2 = P.pdivmod(F, q1, [(-x1) % p, 1])
    assert r2 == [], "tangent must meet with multiplicity >= 2"
    x3 = (-q2[0]) % p
    y3 = (m * x3 + c) % p
    return (x3, (-y3) % p)


# -- counts and characteristic polynomials -------------------------------------

def test_count_ec11():
    assert curve_count_oracle(11, [0, 1, 0, 1]) == 12
    assert count_points(EllipticBackend(11, 1, 0), 1) == 12


def test_count_ec7():
    assert curve_count_oracle(7, [0, 1, 0, 1]) == 8
    assert count_points(EllipticBackend(7, 1, 0), 1) == 8


def test_charpoly_ec():
    assert frobenius_char_poly(EllipticBackend(7, 1, 0)) == [7, 0, 1]
    assert frobenius_char_poly(EllipticBackend(11, 1, 0)) == [11, 0, 1]
    # ordinary instance: N1 = 9 so t = -1
    assert curve_count_oracle(7, [2, 0, 0, 1]) == 9
    assert frobenius_char_poly(EllipticBackend(7, 0, 2)) == [7, 1, 1]


def test_charpoly_g2_from_counts():
    f = [1, 0, 0, 0, 0, 1]
    n1 = curve_count_oracle(19, f, 1)
    n2 = curve_count_oracle(19, f, 2)
    # Newton identities re-derived here as the oracle
    p1 = 19 + 1 - n1
    p2 = 19**2 + 1 - n2
    e1 = p1
    e2 = (e1 * p1 - p2) // 2
    oracle = [19**2, -19 * e1, e2, -e1, 1]
    assert oracle == [361, 0, 38, 0, 1]
    assert frobenius_char_poly(Genus2Backend(19, f)) == oracle


def test_is_ordinary():
    assert is_ordinary(EllipticBackend(7, 1, 0)) is False
    assert is_ordinary(EllipticBackend(11, 1, 0)) is False
    assert is_ordinary(EllipticBackend(7, 0, 2)) is True
    assert is_ordinary(Genus2Backend(19, [1, 0, 0, 0, 0, 1])) is False


def test_group_order_matches_enumeration_over_extension():
    bk = EllipticBackend(11, 1, 0)
    # over F_11^2 enumeration is feasible; zeta identities must agree
    F2 = bk.field(2)
    direct = counting.curve_point_count(F2, bk.curve_poly(F2))
    assert bk.group_order(2) == direct == 144
    assert count_points(bk, 2) == 144


def test_size_cap():
    bk = EllipticBackend(11, 1, 0)
    with pytest.raises(counting.SizeCapExceeded):
        counting.curve_point_count(build_field(11, 8, even_stage=True), bk.curve_poly(build_field(11, 8, even_stage=True)))


# -- elliptic group law ---------------------------------------------------------

def test_doubling_matches_geometric_oracle():
    bk = EllipticBackend(11, 1, 0)
    F = bk.base_field
    oracle = geometric_double(11, 1, 0, (5, 3))
    assert oracle == (5, 8)
    from avtri.varieties.elliptic import ECPoint

    Ppt = ECPoint(bk, F, 5, 3)
    D = Ppt + Ppt
    assert (D.x, D.y) == oracle
    # the whole subgroup table of (5,3): order 3
    assert (3 * Ppt).is_identity()
    for x, y in all_affine_points(11, 1, 0):
        pt = ECPoint(bk, F, x, y)
        if y != 0:
            dd = geometric_double(11, 1, 0, (x, y))
            got = pt + pt
            assert (got.x, got.y) == dd
        else:
            assert (pt + pt).is_identity()


def test_elliptic_group_axioms_exhaustive():
    bk = EllipticBackend(11, 1, 0)
    F = bk.base_field
    from avtri.varieties.elliptic import ECPoint

    pts = [ECPoint(bk, F, inf=True)] + [
        ECPoint(bk, F, x, y) for x, y in all_affine_points(11, 1, 0)
    ]
    assert len(pts) == 12
    for Ppt in pts:
        assert (Ppt + ECPoint(bk, F, inf=True)) == Ppt
        assert (Ppt + (-Ppt)).is_identity()
        assert (12 * Ppt).is_identity()
        for Q in pts:
            assert group_add(Ppt, Q) == group_add(Q, Ppt)
    rng = stream(1, "assoc")
    for _ in range(250):
        Ppt, Q, R = (rng.choice(pts) for _ in range(3))
        assert (Ppt + Q) + R == Ppt + (Q + R)


def test_points_of_different_backends_rejected():
    b1 = EllipticBackend(11, 1, 0)
    b2 = EllipticBackend(7, 1, 0)
    rng = stream(2, "mix")
    P1 = b1.random_point(b1.base_field, rng)
    P2 = b2.random_point(b2.base_field, rng)
    with pytest.raises(BackendError):
        group_add(P1, P2)


def test_singular_curves_rejected():
    with pytest.raises(BackendError):
        EllipticBackend(7, 0, 0)
    with pytest.raises(BackendError):
        Genus2Backend(19, [0, 0, 0, 0, 0, 1])  # x^5: repeated root


# -- genus-2 Cantor arithmetic ---------------------------------------------------

def g2backend():
    return Genus2Backend(19, [1, 0, 0, 0, 0, 1])


def test_cantor_group_axioms_random():
    bk = g2backend()
    F = bk.field(2)
    rng = stream(3, "g2ax")
    N = bk.group_order(2)
    ident = bk.identity(F)
    for _ in range(40):
        D1 = bk.random_point(F, rng)
        D2 = bk.random_point(F, rng)
        D3 = bk.random_point(F, rng)
        assert D1 + ident == D1
        assert (D1 + (-D1)).is_identity()
        assert D1 + D2 == D2 + D1
        assert (D1 + D2) + D3 == D1 + (D2 + D3)
        assert (N * D1).is_identity()


def test_cantor_output_valid():
    bk = g2backend()
    F = bk.field(2)
    fpoly = bk.curve_poly(F)
    rng = stream(4, "g2valid")
    for _ in range(60):
        D1 = bk.random_point(F, rng)
        D2 = bk.random_point(F, rng)
        S = D1 + D2
        assert mumford.valid_divisor(F, fpoly, (S.u, S.v), 2)
        assert len(S.u) - 1 <= 2


def test_zeta5_order_five():
    bk = g2backend()
    F = bk.field(2)
    zmap = named_endomorphism(bk, "zeta5")
    zinv = named_endomorphism(bk, "zeta5_inv")
    rng = stream(5, "zeta")
    for _ in range(50):
        D = bk.random_point(F, rng)
        cur = D
        for _ in range(5):
            cur = zmap(cur)
        assert cur == D
        assert zinv(zmap(D)) == D
    # it is a group homomorphism
    for _ in range(20):
        D1, D2 = bk.random_point(F, rng), bk.random_point(F, rng)
        assert zmap(D1 + D2) == zmap(D1) + zmap(D2)


def test_distortion_squares_to_negation():
    bk = EllipticBackend(11, 1, 0)
    F = bk.field(2)
    dist = named_endomorphism(bk, "distortion")
    rng = stream(6, "dist")
    for _ in range(50):
        Ppt = bk.random_point(F, rng)
        assert dist(dist(Ppt)) == -Ppt
    # homomorphism too
    for _ in range(20):
        Ppt, Q = bk.random_point(F, rng), bk.random_point(F, rng)
        assert dist(Ppt + Q) == dist(Ppt) + dist(Q)


def test_distortion_needs_extension():
    bk = EllipticBackend(11, 1, 0)
    rng = stream(7, "dist1")
    Ppt = bk.random_point(bk.base_field, rng)
    with pytest.raises(BackendError):
        bk.apply_generator("distortion", Ppt)


def test_frobenius_fixes_base_points():
    for bk in (EllipticBackend(11, 1, 0), g2backend()):
        frob = named_endomorphism(bk, "frobenius")
        rng = stream(8, "frob")
        F = bk.field(2)
        # base-field points, lifted: sample over F_p then re-embed is awkward;
        # instead check pi fixes points with base-field coordinates
        if bk.g == 1:
            for x, y in all_affine_points(11, 1, 0):
                pt = bk.point_from_json(F, {"x": [x, 0], "y": [y, 0]})
                assert frob(pt) == pt
        else:
            x, y = bk.random_curve_point(bk.base_field, rng)
            pt = bk.divisor_from_point(F, F.embed_int(x), F.embed_int(y))
            assert frob(pt) == pt


def test_charpoly_kills_random_points_up_to_degree_4():
    # pi^2 + q = 0 on random points over extensions (both curves)
    for bk, degs in ((EllipticBackend(11, 1, 0), (2, 4)), (g2backend(), (2, 4))):
        chi = frobenius_char_poly(bk)
        frob = named_endomorphism(bk, "frobenius")
        rng = stream(9, "kill")
        for k in degs:
            F = bk.field(k)
            for _ in range(10):
                pt = bk.random_point(F, rng)
                acc = bk.identity(F)
                power = pt
                for c in chi:
                    if c:
                        acc = acc + c * power
                    power = frob(power)
                assert acc.is_identity()


def test_verschiebung_times_frobenius_is_multiplication_by_q():
    for bk in (EllipticBackend(11, 1, 0), g2backend()):
        F = bk.field(4)
        rng = stream(10, "versch")
        frob = named_endomorphism(bk, "frobenius")
        ver = named_endomorphism(bk, "verschiebung")
        for _ in range(10):
            pt = bk.random_point(F, rng)
            assert ver(frob(pt)) == bk.p * pt
            assert frob(ver(pt)) == bk.p * pt


def test_unknown_generator():
    bk = EllipticBackend(7, 0, 2)
    with pytest.raises(BackendError):
        named_endomorphism(bk, "distortion")
    with pytest.raises(BackendError):
        named_endomorphism(bk, "nope")


def test_descriptor_round_trip():
    from avtri.varieties import backend_from_descriptor

    for bk in (EllipticBackend(11, 1, 0), EllipticBackend(7, 0, 2), g2backend()):
        d = bk.descriptor()
        bk2 = backend_from_descriptor(d)
        assert bk2 == bk
        assert bk2.descriptor() == d
