from fractions import Fraction

import pytest

from isoparam.catalog import builtin_catalog, catalog_pairs
from isoparam.coeff import QSqrt3
from isoparam.compose import chebyshev_compose, chebyshev_composite, munzner_double
from isoparam.construct import (
    SubspaceSpec,
    cartan_cubic,
    linear_form,
    quadratic_form,
    radial,
    virtue_form,
)
from isoparam.polyring import monomial, norm_sq, variable
from isoparam.verify import (
    check_eiconal,
    check_laplacian,
    Multiplicities,
    classify_against_catalog,
    composition_sign,
    is_cm,
    is_radial,
    multiplicities,
    verify_composition,
)

F1 = -munzner_double(cartan_cubic(1))
CATALOG = builtin_catalog()


# -- eiconal --------------------------------------------------------------------


def test_eiconal_radial():
    assert check_eiconal(radial(4, 4)).ok


def test_eiconal_failure_witness():
    res = check_eiconal(monomial(2, (3, 0)))
    assert not res
    # residual 9x1^4 - 9(x1^2+x2^2)^2 = -18 x1^2 x2^2 - 9 x2^4
    assert res.witness.exp == (2, 2)
    assert res.witness.coeff == QSqrt3(-18)


def test_eiconal_example_one():
    res = check_eiconal(F1)
    assert res.ok and res.degree == 6


def test_eiconal_rejects_non_homogeneous():
    with pytest.raises(ValueError):
        check_eiconal(variable(2, 1) + norm_sq(2))


# -- Laplacian and multiplicities -------------------------------------------------


def test_laplacian_cartan_26():
    assert check_laplacian(cartan_cubic(8)) == QSqrt3(0)


def test_laplacian_harmonic_but_not_eiconal():
    xy = monomial(2, (1, 1))
    assert check_laplacian(xy) == QSqrt3(0)
    assert not check_eiconal(xy)


def test_laplacian_absent():
    # Delta(x1^4) = 12 x1^2 is not a multiple of |x|^2
    assert check_laplacian(monomial(2, (4, 0))) is None
    assert check_laplacian(monomial(2, (3, 0))) is None


def test_multiplicities_table():
    assert multiplicities(5, 3, 0) == Multiplicities(Fraction(1), Fraction(1), True)
    for d, n in zip((1, 2, 4, 8), (5, 8, 14, 26)):
        mult = multiplicities(n, 3, check_laplacian(cartan_cubic(d)))
        assert (mult.m_plus, mult.m_minus, mult.integral) == (d, d, True)


@pytest.mark.parametrize("n,half", [(3, 1), (4, 1), (4, 2), (6, 2), (5, 3)])
def test_radial_has_minus_one(n, half):
    m = 2 * half
    c = check_laplacian(radial(n, m))
    assert c == QSqrt3(m * (m + n - 2))
    mult = multiplicities(n, m, c)
    assert mult.m_minus == -1
    assert not mult.integral


def test_example_one_multiplicities():
    c = check_laplacian(F1)
    assert c is not None and c.is_rational()
    mult = multiplicities(5, 6, c)
    assert not mult.integral


def test_irrational_c_not_integral():
    assert not multiplicities(5, 2, QSqrt3(0, 1)).integral


def test_zero_multiplicity_not_integral():
    # s = 1 gives m_minus = 0
    f = quadratic_form(SubspaceSpec(4, 1))
    rep = is_cm(f)
    assert rep.eiconal_ok and 0 in (rep.m_plus, rep.m_minus)
    assert not rep.is_cm


# -- is_cm ------------------------------------------------------------------------------


def test_is_cm_cartan_8():
    rep = is_cm(cartan_cubic(2))
    assert rep.is_cm and rep.n == 8
    assert (rep.m_plus, rep.m_minus) == (2, 2)


def test_is_cm_radial():
    rep = is_cm(radial(6, 4))
    assert rep.eiconal_ok and rep.is_radial and not rep.is_cm


def test_is_cm_composition():
    rep = is_cm(chebyshev_compose(cartan_cubic(1), 2))
    assert rep.eiconal_ok and not rep.is_cm


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.label)
def test_catalog_is_cm(entry):
    rep = is_cm(entry.polynomial)
    assert rep.is_cm
    assert rep.m_plus + rep.m_minus == Fraction(2 * (rep.n - 2), rep.degree_m)


@pytest.mark.parametrize(
    "f",
    [cartan_cubic(1), quadratic_form(SubspaceSpec(5, 2)), radial(3, 4), monomial(3, (2, 1, 0)), F1],
    ids=["cartan", "quadratic", "radial", "monomial", "F1"],
)
def test_sign_symmetry(f):
    a, b = is_cm(f), is_cm(-f)
    assert a.eiconal_ok == b.eiconal_ok
    assert a.is_cm == b.is_cm
    assert a.is_radial == b.is_radial
    if a.laplacian_constant_c is not None:
        assert b.laplacian_constant_c == -a.laplacian_constant_c
        assert {a.m_plus, a.m_minus} == {b.m_plus, b.m_minus}
    assert is_radial(f) == is_radial(-f)


def test_is_radial_examples():
    assert is_radial(radial(3, 4))
    assert not is_radial(cartan_cubic(1))
    assert not is_radial(quadratic_form(SubspaceSpec(4, 2)))


# -- composed-form route -------------------------------------------------------------


def _small_compositions():
    for entry in CATALOG:
        g = entry.polynomial
        for k in (2, 3):
            if g.degree() * k <= 12:
                yield entry.label, g, k


# expansions up to a few hundred terms; the rest are only checked in (u, v)
_LARGE = {"cartan_cubic_d4", "cartan_cubic_d8", "fkm_s3_l8", "fkm_s5_l8", "ot_quartic_d1", "ot_quartic_d2"}
SMALL = [
    (lbl, k)
    for lbl, g, k in _small_compositions()
    if lbl not in _LARGE and (lbl, k) not in {("cartan_cubic_d2", 3), ("fkm_s2_l4", 3), ("fkm_s1_l3", 3)}
]


@pytest.mark.parametrize("label,k", SMALL)
def test_composite_route_matches_expansion(label, k):
    g = next(e.polynomial for e in CATALOG if e.label == label)
    form = chebyshev_composite(g, k)
    expanded = form.expand()
    a, b = is_cm(form), is_cm(expanded)
    assert a.eiconal_ok == b.eiconal_ok is True
    assert a.laplacian_constant_c == b.laplacian_constant_c
    assert (a.m_plus, a.m_minus, a.is_cm, a.is_radial) == (b.m_plus, b.m_minus, b.is_cm, b.is_radial)
    assert not a.is_cm


def test_composite_route_detects_failure():
    # x1^2 is not eiconal, so the form falls back to expansion
    form = chebyshev_composite(monomial(2, (2, 0)), 2)
    assert not check_eiconal(form)


def test_composite_of_linear_in_one_dim():
    form = chebyshev_composite(linear_form(1), 3)
    assert check_eiconal(form)
    assert is_radial(chebyshev_composite(linear_form(1), 2))


# -- compositions and classification ------------------------------------------------------


@pytest.mark.parametrize("n", [2, 4, 6])
def test_verify_composition_virtue(n):
    assert verify_composition(virtue_form(SubspaceSpec(n, 1), 3), linear_form(n), 3)


def test_verify_composition_example_one():
    assert verify_composition(F1, cartan_cubic(1), 2)
    assert composition_sign(F1, cartan_cubic(1), 2) == -1


def test_verify_composition_negative():
    assert not verify_composition(cartan_cubic(1), linear_form(5), 3)


def test_verify_composition_degree_mismatch():
    with pytest.raises(ValueError):
        verify_composition(cartan_cubic(1), linear_form(5), 2)


def test_classify_radial():
    c = classify_against_catalog(radial(5, 4), catalog_pairs())
    assert c.label == "radial" and c.k == 2 and c.sign == 1
    assert classify_against_catalog(-radial(5, 4), []).sign == -1


def test_classify_virtue():
    g = quadratic_form(SubspaceSpec(6, 3))
    c = classify_against_catalog(virtue_form(SubspaceSpec(6, 3), 4), [(g, "quadratic")])
    assert (c.label, c.k) == ("quadratic", 2)


def test_classify_self_match():
    pairs = [p for p in catalog_pairs() if p[0].degree() <= 3]
    c = classify_against_catalog(cartan_cubic(1), pairs)
    assert (c.label, c.k, c.sign) == ("cartan_cubic_d1", 1, 1)


def test_classify_no_match():
    assert classify_against_catalog(monomial(5, (3, 0, 0, 0, 0)), catalog_pairs()) is None


def test_report_json_shape():
    obj = is_cm(cartan_cubic(1)).to_json()
    assert obj == {
        "n": 5,
        "m": 3,
        "eiconal": True,
        "c": {"a": "0", "b": "0"},
        "m_plus": "1",
        "m_minus": "1",
        "is_cm": True,
        "is_radial": False,
        "witness": None,
    }
    bad = is_cm(monomial(2, (3, 0))).to_json()
    assert bad["witness"]["variables"] == "x"
