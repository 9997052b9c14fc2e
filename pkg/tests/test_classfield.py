import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.algebra import GF, GlobalParams, Poly, monic_enum
from artifact.algebra.ratfunc import RatFunc
from artifact.classfield import (
    ConventionMismatch, GClass, RamifiedPlace, as_reduce, as_symbol, build_rho, frobenius_class,
    kummer_frobenius, minimal_as_generator, pinned_convention, power_residue_rho, radical,
    rho_m2, rho_resultant, solve_h_sigma, teichmuller,
)
from artifact.legendre import p_sigma

P5 = GlobalParams(5)


def coprime_poly(rng, P, deg):
    F = P.ring
    while True:
        f = Poly.raw(F, [rng.randrange(F.q) for _ in range(deg)] + [F.one], P.var)
        if P.gcd(f).degree == 0:
            return f


def test_resultant_rho_matches_power_residue_definition():
    rho = build_rho(P5)
    rng = random.Random(0)
    for _ in range(80):
        f = coprime_poly(rng, rho.P, rng.randint(0, 7))
        assert rho.of_poly(f) == power_residue_rho(P5, f, rho.P) == rho_resultant(rho.P, f)


def test_rho_over_quadratic_constant_field():
    params = GlobalParams(7)
    P = p_sigma(params, "halved")
    k = params.k
    Pk = P.map_coeffs(lambda c: k.embed(c, P.ring), k)
    rng = random.Random(1)
    for _ in range(30):
        f = coprime_poly(rng, Pk, rng.randint(0, 4))
        assert power_residue_rho(params, f, Pk) == rho_resultant(Pk, f)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_rho_is_multiplicative(seed):
    rho = build_rho(P5)
    rng = random.Random(seed)
    f, g = coprime_poly(rng, rho.P, rng.randint(0, 5)), coprime_poly(rng, rho.P, rng.randint(0, 5))
    assert rho.of_poly(f * g) == rho.of_poly(f) * rho.of_poly(g) % 5


def test_rho_depends_only_on_the_class():
    rho = build_rho(P5)
    rng = random.Random(2)
    for _ in range(20):
        f = coprime_poly(rng, rho.P, 3)
        g = Poly.raw(rho.P.ring, [rng.randrange(5) for _ in range(3)], rho.P.var)
        assert rho.of_poly(f) == rho.of_poly(f + g * rho.P)
        assert rho(GClass.of(rho.modulus, f + g * rho.P)) == rho.of_poly(f)


def test_rho_is_onto():
    rho = build_rho(P5)
    values = {rho.of_poly(f) for d in range(1, 4) for f in monic_enum(rho.P.ring, d, "σ")
              if rho.P.gcd(f).degree == 0}
    assert values == {1, 2, 3, 4}


def test_ramified_input_raises():
    rho = build_rho(P5)
    with pytest.raises(RamifiedPlace):
        rho.of_poly(rho.P.factor()[0][0])


def test_radical():
    F = GF(5)
    f = Poly(F, [1, 1]) ** 3 * Poly(F, [2, 0, 1])
    assert radical(f) == Poly(F, [1, 1]) * Poly(F, [2, 0, 1])


def test_frobenius_class_conventions_are_inverse():
    rho = build_rho(P5)
    h = Poly(GF(5), [2, 1, 1], "σ")
    a = frobenius_class(h, rho.modulus, "direct")
    b = frobenius_class(h, rho.modulus, "inverse")
    assert (a * b).rep % rho.modulus.q_sigma == Poly.const(GF(5), 1, "σ")


def test_kummer_frobenius_pins_the_direct_convention():
    assert pinned_convention(P5, max_degree=3) == "direct"
    assert pinned_convention(GlobalParams(13), max_degree=1) == "direct"


def test_kummer_frobenius_equals_rho_directly():
    rho = build_rho(P5)
    for h in monic_enum(rho.P.ring, 2, "σ"):
        if h.is_irreducible():
            assert kummer_frobenius(P5, rho.P, h) == rho.frobenius(h)


def test_inverse_convention_disagrees_with_kummer_oracle():
    rho = build_rho(P5, convention="inverse")
    bad = sum(kummer_frobenius(P5, rho.P, h) != rho.frobenius(h)
              for h in monic_enum(rho.P.ring, 2, "σ") if h.is_irreducible())
    assert bad > 0


def test_pinning_rejects_repeated_roots():
    with pytest.raises(ValueError):
        pinned_convention(GlobalParams(7))


# ---------------------------------------------------------------- Artin-Schreier layer


def test_pole_order_three_has_no_solution():
    with pytest.raises(ConventionMismatch):
        solve_h_sigma(P5, l=3)


@pytest.fixture(scope="module")
def gen5():
    return minimal_as_generator(P5)


def test_minimal_generator_p5(gen5):
    assert gen5.l == 6
    assert gen5.h.degree <= 6 * 8
    assert gen5.precision >= 40
    assert gen5.h.is_even()
    assert gen5.h.coeffs[44] == 1 and gen5.h.degree == 44


def test_as_reduce_removes_artin_schreier_coboundaries():
    F = GF(5)
    P = p_sigma(P5)
    rng = random.Random(4)
    for _ in range(5):
        h = Poly.raw(F, [rng.randrange(5) for _ in range(6)], "σ")
        g = RatFunc(h, P)
        u = RatFunc(Poly.raw(F, [rng.randrange(5) for _ in range(3)], "σ"), P**2)
        gen, uv = as_reduce(g + u.artin_schreier(), P)
        gen0, _ = as_reduce(g, P)
        assert gen.g == gen0.g
        # the difference from the input is itself of Artin-Schreier form
        assert (g + u.artin_schreier()) - gen.g == uv.artin_schreier()


def test_as_symbol_is_additive(gen5):
    rng = random.Random(5)
    P = gen5.p_t
    for _ in range(8):
        f, g = coprime_poly(rng, P, rng.randint(1, 3)), coprime_poly(rng, P, rng.randint(1, 3))
        assert as_symbol(gen5, f * g) == (as_symbol(gen5, f) + as_symbol(gen5, g)) % 5


def test_rho_m2_reduces_to_rho_and_is_multiplicative(gen5):
    rho = build_rho(P5)
    rng = random.Random(6)
    for _ in range(8):
        f, g = coprime_poly(rng, rho.P, rng.randint(1, 3)), coprime_poly(rng, rho.P, rng.randint(1, 3))
        a = rho_m2(P5, f, rho.P, gen5)
        assert a % 5 == rho.of_poly(f)
        assert rho_m2(P5, f * g, rho.P, gen5) == a * rho_m2(P5, g, rho.P, gen5) % 25


def test_teichmuller_lift():
    for a in range(1, 5):
        w = teichmuller(a, 5)
        assert w % 5 == a and pow(w, 4, 25) == 1
