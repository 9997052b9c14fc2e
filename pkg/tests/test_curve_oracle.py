import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from artifact.algebra import GF, Elem, GlobalParams
from artifact.curve_oracle import (
    CountTable, DegenerateCurve, InconsistentCounts, ScaleExceeded, count_table, counts_from_zeta,
    genus, holo_diff_basis, kummer_count, legendre_trace, mobius_place_degrees, supersingular_test,
    zeta_from_counts,
)
from artifact.legendre import p_sigma

P5 = GlobalParams(5)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_legendre_trace_against_naive_count(p):
    for lam in range(2, p):
        affine = sum(1 for x in range(p) for y in range(p)
                     if (y * y - x * (x - 1) * (x - lam)) % p == 0)
        assert legendre_trace(GF(p), lam) == p + 1 - (affine + 1)


def test_supersingular_test_rejects_degenerate_lambda():
    with pytest.raises(DegenerateCurve):
        supersingular_test(5, 0)
    with pytest.raises(DegenerateCurve):
        supersingular_test(5, Elem(GF(5, 2), 1))
    with pytest.raises(ValueError):
        supersingular_test(7, Elem(GF(5), 2))


def test_kummer_count_over_prime_field_by_hand():
    # P is squarefree at p = 5, so the affine model is smooth; 4 places lie above infinity
    P = p_sigma(P5)
    affine = sum(1 for s in range(5) for y in range(5)
                 if (y**4 - int(P(GF(5).coerce(s)))) % 5 == 0)
    assert kummer_count(P5, 1) == affine + 4


def test_kummer_counts_frozen():
    assert list(count_table(P5, 4).counts) == [24, 32, 120, 624]


def test_parallel_count_agrees():
    assert kummer_count(P5, 2, workers=2) == kummer_count(P5, 2)


def test_scale_guard():
    with pytest.raises(ScaleExceeded):
        kummer_count(P5, 12)


def test_genus_and_differentials():
    P = p_sigma(P5)
    assert genus(P5, P) == 9
    assert holo_diff_basis(P5) == [(0, 1), (0, 2), (1, 2), (2, 2), (0, 3), (1, 3), (2, 3), (3, 3), (4, 3)]


def test_zeta_numerator_from_counts():
    assert zeta_from_counts(count_table(P5, 4)) == [1, 18, 165, 1024, 4828]


def test_zeta_numerator_rejects_non_integral_counts():
    with pytest.raises(InconsistentCounts):
        zeta_from_counts(CountTable(5, (7, 30)))
    with pytest.raises(InconsistentCounts):
        CountTable(5, (-1,))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5), st.integers(2, 9))
def test_counts_and_zeta_round_trip(tail, q):
    num = [1] + tail
    counts = counts_from_zeta(num, [1, -(q + 1), q], len(tail))
    assume(all(c >= 0 for c in counts))
    assert zeta_from_counts(CountTable(q, tuple(counts))) == num


def test_counts_from_zeta_of_projective_line():
    assert counts_from_zeta([1], [1, -6, 5], 4) == [6, 26, 126, 626]


def test_mobius_place_degrees():
    # projective line over F_2: 3 points, 5 over F_4, 9 over F_8, 17 over F_16
    assert mobius_place_degrees({1: 3, 2: 5, 3: 9, 4: 17}) == {1: 3, 2: 1, 3: 2, 4: 3}
    with pytest.raises(InconsistentCounts):
        mobius_place_degrees({1: 3, 2: 4})
