import itertools

import pytest

from avtri import jsonio
from avtri.model import (
    ModelBackend,
    ModelError,
    ModelVariety,
    default_model,
    imat_identity,
    imat_mul,
    model_adjoint,
    model_backend_from_descriptor,
    model_pairing,
    model_symmetric_sample,
)
from avtri.rng import stream


@pytest.fixture(scope="module")
def order():
    return default_model()


@pytest.fixture(scope="module")
def backend(order):
    return ModelBackend(order)


def test_fixture_shape(order):
    assert order.g == 2 and order.dim == 8
    assert order.basis[0] == imat_identity(4)


def test_structure_constants_exact(order):
    # recompute every product as integer matrices against the table
    for i, Bi in enumerate(order.basis):
        for j, Bj in enumerate(order.basis):
            assert order.from_coords(order.table[i][j]) == imat_mul(Bi, Bj)


def test_adjoint_is_involution_and_closed(order):
    for B in order.basis:
        dag = order.adjoint(B)
        order.coords_of(dag)  # stays in the span (raises otherwise)
        assert order.adjoint(dag) == B
    assert order.adjoint(imat_identity(4)) == imat_identity(4)


def test_pairing_alternating_bilinear(backend):
    rng = stream(1, "mp")
    for ell in (3, 5, 7):
        for _ in range(40):
            P = backend.random_point(ell, rng)
            Q = backend.random_point(ell, rng)
            R = backend.random_point(ell, rng)
            assert model_pairing(P, P, ell) == 0
            assert (model_pairing(P, Q, ell) + model_pairing(Q, P, ell)) % ell == 0
            assert model_pairing(P + R, Q, ell) == (
                model_pairing(P, Q, ell) + model_pairing(R, Q, ell)
            ) % ell


def test_pairing_standard_symplectic(backend):
    e = backend.standard_basis(5)
    assert model_pairing(e[0], e[1], 5) == 1  # J2 pairs within each block
    assert model_pairing(e[0], e[2], 5) == 0


def test_pairing_level_mismatch(backend):
    rng = stream(2, "lv")
    P = backend.random_point(3, rng)
    Q = backend.random_point(5, rng)
    with pytest.raises(ModelError):
        model_pairing(P, Q, 3)


def test_adjoint_identity_exhaustive_mod3(order, backend):
    # adjoint-pairing identity for one basis matrix, all pairs in (Z/3)^4
    B = order.basis[4]  # i*E12
    Bd = order.adjoint(B)
    vecs = list(itertools.product(range(3), repeat=4))
    for pv in vecs:
        for qv in vecs:
            lhs = order.pairing_exponent(
                [sum(B[i][j] * pv[j] for j in range(4)) % 3 for i in range(4)], qv, 3
            )
            rhs = order.pairing_exponent(
                pv, [sum(Bd[i][j] * qv[j] for j in range(4)) % 3 for i in range(4)], 3
            )
            assert lhs == rhs


def test_adjoint_identity_random(order, backend):
    rng = stream(3, "adj")
    for _ in range(100):
        ell = rng.choice([3, 5, 7, 11])
        lam = order.from_coords([rng.randint(-3, 3) for _ in range(8)])
        lamd = model_adjoint(order, lam)
        P = backend.random_point(ell, rng)
        Q = backend.random_point(ell, rng)
        lp = [sum(lam[i][j] * P.vec[j] for j in range(4)) for i in range(4)]
        dq = [sum(lamd[i][j] * Q.vec[j] for j in range(4)) for i in range(4)]
        assert order.pairing_exponent(lp, Q.vec, ell) == order.pairing_exponent(
            P.vec, dq, ell
        )


def test_symmetric_sample_fixed_by_adjoint(order):
    rng = stream(4, "sym")
    for _ in range(50):
        s = model_symmetric_sample(order, rng)
        assert order.adjoint(s) == s
    assert order.adjoint(imat_identity(4)) == imat_identity(4)


def test_noncommuting_symmetric_pair_exists(order):
    rng = stream(5, "nc")
    found = False
    first = None
    for _ in range(100):
        s = model_symmetric_sample(order, rng)
        if first is None and any(any(row) for row in s):
            first = s
            continue
        if first is not None and imat_mul(first, s) != imat_mul(s, first):
            found = True
            break
    assert found, "default order must admit noncommuting symmetric elements"


def test_model_point_group(backend):
    rng = stream(6, "pts")
    for _ in range(30):
        P = backend.random_point(7, rng)
        Q = backend.random_point(7, rng)
        assert P + Q == Q + P
        assert (P - P).is_identity()
        assert (7 * P).is_identity()
    assert backend.group_order(5) == 5**4
    assert backend.count_points(5) == 625


def test_generators_and_adjoint_words(backend, order):
    rng = stream(7, "gen")
    P = backend.random_point(5, rng)
    b2 = backend.apply_generator("b2", P)
    expect = [sum(order.basis[1][i][j] * P.vec[j] for j in range(4)) % 5 for i in range(4)]
    assert list(b2.vec) == expect
    for name in backend.generators:
        word = backend.adjoint_word(name)
        M = order.adjoint(backend.generator_matrix(name))
        recon = [[0] * 4 for _ in range(4)]
        from avtri.model import imat_add, imat_scale

        for c, gens in word:
            assert len(gens) == 1
            recon = imat_add(recon, imat_scale(backend.generator_matrix(gens[0]), c))
        assert recon == M


def test_fixture_round_trip(order):
    d = order.to_dict()
    text = jsonio.dumps(d)
    order2 = ModelVariety.from_dict(jsonio.loads(text))
    assert order2.to_dict() == d
    assert jsonio.dumps(order2.to_dict()) == text


def test_descriptor_round_trip(backend):
    desc = backend.descriptor()
    bk2 = model_backend_from_descriptor(desc)
    assert bk2 == backend


def test_bad_fixtures_rejected():
    good = default_model().to_dict()
    bad = dict(good)
    bad["basis"] = [good["basis"][1]] + good["basis"][1:]  # B1 not identity
    with pytest.raises(jsonio.DataError):
        ModelVariety.from_dict(bad)
    bad2 = dict(good)
    bad2["J"] = imat_identity(4)  # not antisymmetric
    with pytest.raises(jsonio.DataError):
        ModelVariety.from_dict(bad2)
    bad3 = dict(good)
    t = [list(map(list, row)) for row in good["table"]]
    t[2][3][0] += 1
    bad3["table"] = t
    with pytest.raises(jsonio.DataError):
        ModelVariety.from_dict(bad3)
