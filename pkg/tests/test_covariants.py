from __future__ import annotations

import pytest

from crl.covariants import (
    CovariantError,
    calibrate_combination,
    criterion_table,
    form_vars,
    generic_form,
    named_covariants,
    parse_covariant,
    table_entries,
    transvectant,
    vanishes_on_locus,
)
from crl.partitions import parse_partition
from crl.polyring import MultiPoly, parse_poly

P = parse_partition


def coefficient_weights_ok(C) -> bool:
    """phi_k (coefficient of x^k y^(q-k)) is nonzero of weight 2k - q, with weight(a_j) = 2j - d."""
    for k, phi in enumerate(C.coefficients()):
        if phi.is_zero():
            return False
        ws = {sum((2 * j - C.d) * e for j, e in enumerate(mono)) for mono in phi.terms}
        if ws != {2 * k - C.q}:
            return False
    return True


def test_hessian_of_quadratic():
    # for d = 2, H = (F,F)^2 = 2 * (a0 a2 - a1^2)
    H = named_covariants(2)["H"]
    assert H.type == (2, 0)
    assert H.body == parse_poly("2*a0*a2 - 2*a1^2", form_vars(2))


@pytest.mark.parametrize("d, name, typ", [
    (5, "A", (4, 0)), (6, "FF6", (2, 0)), (4, "i", (2, 0)), (5, "i", (2, 2)), (5, "H", (2, 6)),
])
def test_named_types(d, name, typ):
    assert named_covariants(d)[name].type == typ


@pytest.mark.parametrize("d, r", [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (4, 4), (5, 3), (5, 4)])
def test_transvectant_antisymmetry(d, r):
    F = generic_form(d)
    H = named_covariants(d)["H"]
    left, right = transvectant(F, H, r), transvectant(H, F, r)
    assert left.body == right.body * (-1) ** r
    assert left.type == (F.p + H.p, F.q + H.q - 2 * r)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_odd_self_transvectants_vanish(d):
    F = generic_form(d)
    for r in range(1, d + 1, 2):
        assert transvectant(F, F, r).is_zero()


def test_transvectant_range():
    F = generic_form(3)
    with pytest.raises(CovariantError):
        transvectant(F, F, 4)
    with pytest.raises(CovariantError):
        transvectant(F, generic_form(4), 1)


def test_discriminant_of_quadratic_vanishes_on_double_root():
    assert vanishes_on_locus(named_covariants(2)["H"], P([2]))
    assert not vanishes_on_locus(named_covariants(2)["H"], P([1, 1]))


def test_hessian_vanishes_on_perfect_powers():
    for d in (3, 4, 5):
        H = named_covariants(d)["H"]
        assert vanishes_on_locus(H, P([d]))
        assert not H.is_zero()


@pytest.mark.parametrize("text, d, lam, expected", [
    ("25*H^2 - 6*i*F^2", 5, [3, 2], True),
    ("(F,H)", 6, [3, 3], True),
    ("H^2", 5, [3, 2], False),
    ("i", 5, [4, 1], True),
    ("i", 5, [3, 2], False),
])
def test_vanishing_examples(text, d, lam, expected):
    assert vanishes_on_locus(parse_covariant(text, d), P(lam)) is expected


def test_parser_forms_agree():
    d = 5
    a = parse_covariant("(F,i)^2", d)
    b = parse_covariant("T(F, i, 2)", d)
    assert a.body == b.body and a.type == (3, 3)
    assert parse_covariant("(F,H)", 6).body == transvectant(generic_form(6), named_covariants(6)["H"], 1).body
    for bad in ("Q", "F +", "3", "F + H", "T(F,F,9)"):
        with pytest.raises(CovariantError):
            parse_covariant(bad, 5)


@pytest.mark.parametrize("basis, parts, ratio", [
    (["H^2", "i*F^2"], [3, 2], [25, -6]),
    (["i*H", "F*(i,F)^2"], [3, 2], [5, 6]),
    (["i^2", "(i,H)^2"], [3, 2], [2, 15]),
    (["F*FF6", "(F,i)^2"], [3, 3], [8, -75]),
    (["H^2", "i*F^2"], [4, 2], [27, -8]),
    (["i*H", "F*(F,i)^2"], [4, 2], [3, 4]),
])
def test_calibration(basis, parts, ratio):
    lam = P(parts)
    exprs = [parse_covariant(t, lam.d) for t in basis]
    assert calibrate_combination(exprs, lam) == [ratio]


def test_calibration_needs_equal_types():
    with pytest.raises(CovariantError):
        calibrate_combination([parse_covariant("H", 5), parse_covariant("i", 5)], P([3, 2]))


@pytest.mark.parametrize("d, lam", table_entries(), ids=lambda x: str(x))
def test_criterion_table(d, lam):
    for m, covs in criterion_table(d, lam):
        for C in covs:
            assert C.p == m
            assert not C.is_zero(), C.name
            assert vanishes_on_locus(C, lam), C.name
            assert coefficient_weights_ok(C), C.name


def test_table_shape():
    assert len(table_entries()) == 7
    covs = dict(criterion_table(5, P([3, 2])))[4]
    assert [c.type for c in covs] == [(4, 12), (4, 8), (4, 4), (4, 0)]
    with pytest.raises(CovariantError):
        criterion_table(5, P([5]))
