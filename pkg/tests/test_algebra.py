import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.algebra import (
    GF, QQ, Cyclotomic, DomainError, DualNumber, FracSeries, GlobalParams, Poly, SeriesError,
    monic_enum, resultant, series_solve,
)
from artifact.algebra.linalg import det, rank, solve
from artifact.algebra.ratfunc import RatFunc
from artifact.algebra.series import EXACT

FIELDS = [GF(5), GF(7), GF(5, 2), GF(7, 2), GF(3, 3)]


def elems(F):
    return st.integers(0, F.q - 1)


# ---------------------------------------------------------------- finite fields


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_multiplicative_group_is_cyclic_of_order_q_minus_1(F):
    g = F.root_of_unity(F.q - 1)
    seen = {F.pow(g, e) for e in range(F.q - 1)}
    assert seen == set(F.units())


@pytest.mark.parametrize("F", FIELDS, ids=str)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(elems(F)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    if a != F.zero:
        assert F.mul(a, F.inv(a)) == F.one
    assert F.frob(F.frob(a), F.n - 1) == a if F.n > 1 else F.frob(a) == a


def test_prime_field_matches_integers_mod_p():
    F = GF(7)
    for a in range(7):
        for b in range(7):
            assert F.mul(F.coerce(a), F.coerce(b)) == F.coerce(a * b)


@pytest.mark.parametrize("F", [GF(5, 2), GF(7, 2), GF(3, 3)], ids=str)
def test_norm_and_trace_are_product_and_sum_of_conjugates(F):
    for a in F.units():
        conj = [F.frob(a, i) for i in range(F.n)]
        prod, total = F.one, F.zero
        for c in conj:
            prod, total = F.mul(prod, c), F.add(total, c)
        assert prod < F.p and total < F.p  # fixed by Frobenius, so in the prime field
        assert F.absolute_norm(a) == prod
        assert F.trace(a) == total


def test_subfield_embedding_is_a_ring_map():
    F, E = GF(5), GF(5, 4)
    for a in range(5):
        for b in range(5):
            assert E.embed(F.mul(a, b), F) == E.mul(E.embed(a, F), E.embed(b, F))
            assert E.embed(F.add(a, b), F) == E.add(E.embed(a, F), E.embed(b, F))


# ---------------------------------------------------------------- polynomials


def rand_poly(F, rng, deg, monic=False):
    cs = [rng.randrange(F.q) for _ in range(deg)] + [F.one if monic else rng.randrange(1, F.q)]
    return Poly.raw(F, cs)


@pytest.mark.parametrize("F", [GF(5), GF(7, 2)], ids=str)
def test_divmod_identity(F):
    rng = random.Random(1)
    for _ in range(50):
        a, b = rand_poly(F, rng, rng.randint(0, 9)), rand_poly(F, rng, rng.randint(0, 4))
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree


@pytest.mark.parametrize("F", [GF(5), GF(3, 2)], ids=str)
def test_factor_reassembles_and_factors_are_irreducible(F):
    rng = random.Random(2)
    for _ in range(25):
        f = rand_poly(F, rng, rng.randint(1, 8), monic=True)
        acc = Poly.const(F, 1)
        for pi, mult in f.factor():
            assert pi.is_monic() and pi.is_irreducible()
            acc = acc * pi**mult
        assert acc == f


def test_irreducible_count_matches_necklace_formula():
    F = GF(3)
    for d in range(1, 5):
        count = sum(1 for f in monic_enum(F, d) if f.is_irreducible())
        expected = sum(sympy.mobius(d // e) * 3**e for e in sympy.divisors(d)) // d
        assert count == expected


def sylvester_resultant(f: Poly, g: Poly, p: int) -> int:
    m, n = f.degree, g.degree
    fc, gc = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    rows = [[0] * i + fc + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + gc + [0] * (m - 1 - i) for i in range(m)]
    return int(sympy.Matrix(rows).det()) % p


def test_resultant_matches_sylvester_determinant():
    F = GF(7)
    rng = random.Random(3)
    for _ in range(60):
        f, g = rand_poly(F, rng, rng.randint(1, 5)), rand_poly(F, rng, rng.randint(1, 5))
        assert resultant(f, g) == sylvester_resultant(f, g, 7)


def test_resultant_over_extension_is_multiplicative():
    F = GF(5, 2)
    rng = random.Random(4)
    for _ in range(20):
        f, g, h = (rand_poly(F, rng, rng.randint(1, 4), monic=True) for _ in range(3))
        assert resultant(f, g * h) == F.mul(resultant(f, g), resultant(f, h))


def test_invmod_and_powmod():
    F = GF(5)
    m = Poly(F, [2, 0, 1, 1])  # x^3 + x^2 + 2, irreducible over F_5
    assert m.is_irreducible()
    a = Poly(F, [1, 3])
    assert (a * a.invmod(m)) % m == Poly.const(F, 1)
    # x^(q^3) = x in F_125
    x = Poly.monomial(F, 1)
    assert x.powmod(125, m) == x


def test_roots_of_x_q_minus_x():
    F = GF(7, 2)
    f = Poly.monomial(F, F.q) - Poly.monomial(F, 1)
    assert sorted(f.roots(F)) == list(range(F.q))


# ---------------------------------------------------------------- cyclotomic fields


def test_cyclotomic_norms_match_sympy_resultant():
    for n in (3, 4, 5, 8, 12):
        R = Cyclotomic(n)
        rng = random.Random(n)
        for _ in range(10):
            v = tuple(Fraction(rng.randint(-4, 4)) for _ in range(R.phi))
            x = sympy.Symbol("x")
            expected = sympy.resultant(sympy.cyclotomic_poly(n, x), sum(int(c) * x**i for i, c in enumerate(v)), x)
            assert R.norm(v) == Fraction(int(expected))


def test_cyclotomic_inverse_and_conjugation():
    R = Cyclotomic(12)
    a = R.add(R.zeta(1), R.coerce(2))
    assert R.mul(a, R.inv(a)) == R.one
    z = R.to_complex(a, 5)
    assert abs(R.to_complex(R.conj(a), 5) - z.conjugate()) < 1e-12


def test_sum_of_primitive_roots_is_mobius():
    for n in (5, 8, 9, 12):
        R = Cyclotomic(n)
        acc = R.zero
        for k in range(n):
            if sympy.gcd(k, n) == 1:
                acc = R.add(acc, R.zeta(k))
        assert acc == R.coerce(int(sympy.mobius(n)))


# ---------------------------------------------------------------- series


def test_series_inverse_of_geometric():
    one_minus_q = FracSeries(QQ, [Fraction(1), Fraction(-1)], 0, 1, 30)
    inv = one_minus_q.inverse()
    assert [inv.coeff(i) for i in range(30)] == [1] * 30


def test_series_fractional_exponents_align():
    a = FracSeries.gen(QQ, 2, 20)  # q^(1/2)
    b = FracSeries.gen(QQ, 3, 20)  # q^(1/3)
    c = a * b
    assert c.den == 6 and c.terms() == [(5, 1)]


def test_series_solve_square_root():
    # y^2 = 1 + 4u, y = sum C(1/2, n) 4^n u^n
    F = QQ
    rhs = FracSeries(F, [Fraction(1), Fraction(4)], 0, 1, EXACT)
    rel = [-rhs.truncate(25), FracSeries.const(F, 0, 1, 25), FracSeries.const(F, 1, 1, 25)]
    y = series_solve(rel, FracSeries.const(F, 1, 1, 25), 25)
    assert [y.coeff(n) for n in range(6)] == [sympy.binomial(Fraction(1, 2), n) * 4**n for n in range(6)]


def test_series_solve_rejects_singular_seed():
    F = QQ
    rel = [FracSeries.const(F, 0, 1, 10), FracSeries.const(F, 0, 1, 10), FracSeries.const(F, 1, 1, 10)]
    with pytest.raises(SeriesError):
        series_solve(rel, FracSeries.const(F, 0, 1, 10), 10)


def test_series_dump_format():
    s = FracSeries(QQ, [Fraction(1), Fraction(0), Fraction(3)], 1, 4, 8)
    lines = s.dump().splitlines()
    assert lines[0] == "1/4 1" and lines[1] == "3/4 3"


# ---------------------------------------------------------------- dual numbers, linear algebra, params


def test_dual_number_derivative_rule():
    F = GF(7)
    x = DualNumber.of(F, 3, 1)
    y = x * x * x  # (3 + e)^3 = 27 + 27 e
    assert y.re == F.coerce(27) and y.eps == F.coerce(27)
    assert (x * x.inverse()).re == F.one and (x * x.inverse()).eps == F.zero


def test_linear_solve_and_rank():
    F = GF(5)
    A = [[1, 2, 3], [0, 1, 4], [1, 3, 2]]  # third row = first + second
    assert rank(F, A, 3) == 2
    assert det(F, A) == 0
    x, r, nullity = solve(F, [[1, 2], [3, 4]], [1, 0])
    assert r == 2 and nullity == 0
    assert F.add(x[0], F.mul(2, x[1])) == 1


def test_ratfunc_artin_schreier_of_polynomial():
    F = GF(5)
    f = RatFunc(Poly(F, [0, 1]))
    assert f.artin_schreier() == RatFunc(Poly.monomial(F, 5) - Poly.monomial(F, 1))


@pytest.mark.parametrize("p", [2, 3, 4, 9])
def test_bad_primes_rejected(p):
    with pytest.raises(DomainError):
        GlobalParams(p)


@pytest.mark.parametrize("p,delta", [(5, 1), (13, 1), (7, 2), (11, 2)])
def test_delta_rule(p, delta):
    assert GlobalParams(p).delta == delta
