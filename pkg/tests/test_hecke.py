import dataclasses
import json
from fractions import Fraction

import pytest

from artifact.algebra import QQ, FracSeries
from artifact.algebra.series import EXACT
from artifact.hecke import (
    FIXTURE_PATH, FormRecord, InsufficientCoefficients, apply_annihilator, build_annihilator,
    char_scalar_remainder, dump_forms, load_forms, tp_apply,
)
from artifact.lfunction import MonicKernel, characters, dirichlet_L


@pytest.fixture(scope="module")
def forms():
    return load_forms(FIXTURE_PATH)


def test_tp_apply_picks_every_pth_coefficient():
    f = FracSeries.raw(QQ, [Fraction(n) for n in range(30)], 0, 1, 30)
    g = tp_apply(f, 5)
    assert g.prec == 6
    assert [g.coeff(i) for i in range(6)] == [5 * i for i in range(6)]
    exact = FracSeries.raw(QQ, [Fraction(1)] * 11, 0, 1, EXACT)
    assert tp_apply(exact, 5).terms() == [(0, 1), (1, 1), (2, 1)]


def test_operator_multiplicities(op5):
    op5.check_counts()
    assert op5.d == 8 and op5.delta == 1
    assert op5.multiplicity_at(op5.d - 1) == 1


def test_policy_validation(p5, rho5):
    with pytest.raises(ValueError):
        build_annihilator(p5, rho5.modulus, rho5, policy="lenient")


def test_coefficients_are_the_L_polynomial(rho5, op5):
    kernel = MonicKernel(rho5)
    for chi in characters(rho5):
        L = dirichlet_L(chi, 10, kernel)
        assert op5.matches_L(chi, L)


def test_perturbed_operator_does_not_vanish(rho5, op5):
    kernel = MonicKernel(rho5)
    chi = characters(rho5)[1]
    L = dirichlet_L(chi, 10, kernel)
    assert char_scalar_remainder(op5, chi, L) == []
    (u, i), c = next(iter(op5.sorted_terms()))
    bad = dataclasses.replace(op5, terms={**op5.terms, (u, i): c + 1})
    assert not bad.matches_L(chi, L)
    assert char_scalar_remainder(bad, chi, L) != []
    with pytest.raises(ValueError):
        char_scalar_remainder(op5, characters(rho5)[0], L)


def test_fixture_forms_are_eigen_and_annihilated(op5, forms):
    assert len(forms) == 11
    for form in forms[:3]:
        assert form.verify_eigen()
        assert apply_annihilator(op5, form, 60).zero_mod_p


def test_altered_eigenvalue_is_detected(op5, forms):
    form = forms[1]
    ap = list(form.eigen_ap)
    ap[0] += 1
    bad = dataclasses.replace(form, eigen_ap=tuple(ap), label="altered")
    rep = apply_annihilator(op5, bad, 60)
    assert not rep.zero_mod_p
    assert rep.line().startswith("altered: NONZERO mod p at q^")


def test_json_round_trip(forms):
    text = dump_forms(forms[:2])
    back = [FormRecord.from_json(d) for d in json.loads(text)["forms"]]
    assert back == forms[:2]
    assert dump_forms(back) == text


def test_insufficient_coefficients(op5, forms):
    form = dataclasses.replace(forms[0], eigen_ap=None)
    with pytest.raises(InsufficientCoefficients):
        apply_annihilator(op5, form, 10)
    with pytest.raises(InsufficientCoefficients):
        form.coefficient(form.M + 1)


def test_record_validation(forms):
    with pytest.raises(ValueError):
        dataclasses.replace(forms[0], weight=4)
    with pytest.raises(ValueError):
        dataclasses.replace(forms[0], nebentypus={1: (1, 0)})
