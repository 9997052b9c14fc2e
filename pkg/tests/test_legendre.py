from fractions import Fraction

import pytest

from artifact.algebra import GF, DomainError, GlobalParams
from artifact.curve_oracle import legendre_trace
from artifact.legendre import (
    deuring_poly, lambda_of_series, lambda_q, p_sigma, reduce_zeta8, sigma_q, supersingular_data,
)


def test_deuring_p5():
    H = deuring_poly(5)
    assert H.fmt() == "λ^2 + 4*λ + 1"


def test_deuring_p7_coefficients():
    assert list(deuring_poly(7).coeffs) == [6, 5, 5, 6]


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_deuring_has_distinct_roots_in_fp2(p):
    H = deuring_poly(p)
    F = GF(p, 2)
    roots = H.map_coeffs(lambda c: F.embed(c, H.ring), F).roots(F)
    assert len(set(roots)) == (p - 1) // 2


@pytest.mark.parametrize("p", [5, 7, 11])
def test_supersingular_count_by_brute_force(p):
    """Roots of H are exactly the lambda with trace divisible by p (counted by enumeration)."""
    F = GF(p, 2)
    H = deuring_poly(p)
    roots = set(H.map_coeffs(lambda c: F.embed(c, H.ring), F).roots(F))
    ss = {x for x in F.elements() if x not in (0, 1) and legendre_trace(F, x) % p == 0}
    assert ss == roots


def test_p_sigma_p5_frozen():
    P = p_sigma(GlobalParams(5))
    assert P.fmt() == "σ^8 + σ^6 + 4*σ^4 + 4*σ^2 + 1"
    factors = P.factor()
    assert [f.fmt() for f, _ in factors] == ["σ^4 + 2*σ^3 + σ + 4", "σ^4 + 3*σ^3 + 4*σ + 4"]


def test_p_sigma_is_monic_of_degree_2p_minus_2():
    for p in (5, 7, 11, 13):
        P = p_sigma(GlobalParams(p))
        assert P.is_monic() and P.degree == 2 * (p - 1)
        assert P.is_even()


def test_p_sigma_p7_repeated_factors_from_branch_value():
    # lambda = 2 is a branch value of the literal map and is supersingular when p = 3 mod 4
    P = p_sigma(GlobalParams(7))
    mults = sorted(m for _, m in P.factor())
    assert mults[-1] == 2
    assert P.gcd(P.derivative()).degree > 0


def test_halved_map_gives_squarefree_p7():
    P = p_sigma(GlobalParams(7), "halved")
    assert P.gcd(P.derivative()).degree == 0


def test_p_sigma_vanishes_exactly_over_supersingular_lambda():
    params = GlobalParams(5)
    P = p_sigma(params)
    F = GF(5, 4)
    H = deuring_poly(5)
    for s in F.units():
        s2 = F.mul(s, s)
        half = F.inv(F.coerce(2))
        inner = F.add(s2, half)
        lam = F.div(F.mul(inner, inner), s2)
        Hval = H.map_coeffs(lambda c: F.embed(c, GF(5)), F)(lam)
        Pval = P.map_coeffs(lambda c: F.embed(c, GF(5)), F)(s)
        assert (Hval == 0) == (Pval == 0)


def test_supersingular_data_roots():
    data = supersingular_data(GlobalParams(5))
    assert len(data.lambda_roots) == 2


def lambda_product(T):
    """16 q^(1/2) prod ((1 + q^n) / (1 + q^(n - 1/2)))^8 in x = q^(1/2), an independent oracle."""
    num = [Fraction(0)] * T
    num[0] = Fraction(1)

    def mul_factor(acc, k, sign, power):
        for _ in range(power):
            if sign > 0:
                for i in range(T - 1, k - 1, -1):
                    acc[i] += acc[i - k]
            else:  # divide by (1 + x^k)
                for i in range(k, T):
                    acc[i] -= acc[i - k]
        return acc

    for n in range(1, T):
        mul_factor(num, 2 * n, 1, 8)
        mul_factor(num, 2 * n - 1, -1, 8)
    return [Fraction(0)] + [16 * c for c in num[: T - 1]]


def test_lambda_q_against_product_formula():
    lam = lambda_q(40)
    assert lam.den == 2
    oracle = lambda_product(19)
    assert [lam.coeff(e) for e in range(19)] == oracle
    assert [lam.coeff(e) for e in range(1, 4)] == [16, -128, 704]


def test_sigma_series_recovers_lambda_over_cyclotomic():
    s = sigma_q(40)
    lam = lambda_of_series(s)
    ref = lambda_q(40)
    R = s.ring
    for e in range(2, 30, 2):  # q^(e/4)
        c = lam.coeff_q(Fraction(e, 4))
        assert c == R.coerce(ref.coeff_q(Fraction(e, 4)))


def test_sigma_series_reduction_matches_direct_computation():
    direct = sigma_q(40, p=5)
    over_q = sigma_q(40)
    F = direct.ring
    reduced = over_q.map(lambda c: reduce_zeta8(c, 5), F)
    assert all(reduced.coeff(e) == direct.coeff(e) for e in range(30))


def test_lambda_q_precondition():
    with pytest.raises(DomainError):
        lambda_q(2)
