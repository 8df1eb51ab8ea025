from __future__ import annotations

import json
import math
from collections import Counter
from itertools import combinations, combinations_with_replacement

import pytest

from crl.charring import Character, cg_tensor, char_from_weights, plethysm_sym_sym, tensor, wedge_sym
from crl.encomplex import (
    UnknownDError,
    VanishingAssumptionError,
    d_sheaf_char,
    euler_h0_char,
    h0_gp_char,
    m_alpha_char,
    p_range,
    predicted_ideal_char,
    q_term_char,
    report,
    syzygy_char_step,
    term,
    z_value,
)
from crl.ideal_la import kernel_character
from crl.partitions import parse_partition

P = parse_partition
LIST_322 = [30, 26, 24, 22, 22, 20, 18, 18, 18, 16, 14, 14, 14, 12, 12,
            10, 10, 10, 8, 6, 6, 6, 2, 2]


def test_z_and_m_alpha():
    lam = P([3, 2])
    assert (z_value(lam, 1, 2), z_value(lam, 1, 3)) == (2, 4)
    assert m_alpha_char(lam, 1) == cg_tensor(2, 4) == Character.from_list([6, 4, 2])
    assert m_alpha_char(lam, 0) == Character.s(1)
    assert m_alpha_char(lam, -1) == Character()


def test_q_term_examples():
    lam = P([3, 2])
    t = term(lam, 4, 1, 1)
    assert (t.sym_exponent, t.wedge_index) == (3, 3)
    expect = tensor(tensor(cg_tensor(2, 4), plethysm_sym_sym(3, 5)), wedge_sym(3, 5))
    assert q_term_char(lam, 4, 1, 1) == expect
    # Sym^0 is a unit factor: p + alpha = n + 1 - m
    t = term(lam, 4, 1, -2)
    assert t.sym_exponent == 0
    assert t.wedge_index == 6
    assert t.character == tensor(m_alpha_char(lam, 1), wedge_sym(6, 5)) == m_alpha_char(lam, 1)


def test_wedge_out_of_range_gives_zero():
    lam = P([3, 2])
    p = lam.n + 2 - (lam.d + 2)  # wedge index d+2
    assert q_term_char(lam, 10, 2, p) == Character()


@pytest.mark.parametrize("parts, m, alpha, p", [
    ([3, 2], 4, 1, 1), ([3, 2], 5, 2, 0), ([3, 3], 3, 1, 0), ([3, 2, 2], 6, 2, -1), ([4, 1], 3, 0, 1),
])
def test_q_term_dimension_is_product(parts, m, alpha, p):
    lam = P(parts)
    t = term(lam, m, alpha, p)
    dims = m_alpha_char(lam, alpha).dim() * math.comb(t.sym_exponent + lam.d, lam.d) \
        * math.comb(lam.d + 1, t.wedge_index)
    assert t.character.dim() == dims


def test_p_range():
    lam = P([3, 2])
    assert list(p_range(lam)) == [-2, -1, 0, 1, 2]
    assert h0_gp_char(lam, 4, -3) == Character() == h0_gp_char(lam, 4, 3)
    # the top index contributes: alpha = 0, Sym^{m-1}(Sym^5), wedge^2
    assert h0_gp_char(lam, 4, 2) == tensor(tensor(Character.s(1), plethysm_sym_sym(3, 5)),
                                           wedge_sym(2, 5))


def _weights(n: int) -> list[int]:
    return list(range(n, -n - 1, -2))


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_single_part_sections_by_weight_oracle(d, m):
    lam = P([d])
    for p in p_range(lam):
        weights = Counter()
        for alpha in range(lam.M - 1, lam.n - p + 1):
            z = d * alpha + d - 2
            s_exp = m + p + alpha - 2
            k = 3 - p
            if z < 0 or s_exp < 0 or not 0 <= k <= d + 1:
                continue
            wz = Counter(sum(c) for c in combinations_with_replacement(_weights(1), z))
            ws = Counter(sum(c) for c in combinations_with_replacement(_weights(d), s_exp))
            wk = Counter(sum(c) for c in combinations(_weights(d), k))
            for a, ca in wz.items():
                for b, cb in ws.items():
                    for c, cc in wk.items():
                        weights[a + b + c] += ca * cb * cc
        assert h0_gp_char(lam, m, p) == char_from_weights(weights)


def test_euler_examples():
    assert euler_h0_char(P([3, 2]), 4) == Character.from_list([12, 8, 4, 0]) - Character.s(18)
    assert euler_h0_char(P([3, 3]), 3) == Character.from_list([12, 8, 6])
    assert euler_h0_char(P([1]), 3) == Character()


def test_euler_order_independent():
    lam, m = P([3, 2, 2]), 6
    parts = [(p, h0_gp_char(lam, m, p)) for p in p_range(lam)]
    forward, backward = Character(), Character()
    for p, ch in parts:
        forward = forward + ch * (-1) ** (p % 2)
    for p, ch in reversed(parts):
        backward = backward + ch * (-1) ** (p % 2)
    assert forward == backward == euler_h0_char(lam, m)


def test_d_sheaf():
    assert d_sheaf_char(P([3, 2]), 4) == Character.s(18)
    for m in range(1, 5):
        assert d_sheaf_char(P([3, 3]), m) == Character()
        assert d_sheaf_char(P([5]), m) == Character()
    assert d_sheaf_char(P([3, 2, 2]), 6) == cg_tensor(27, 11) + Character.s(40)
    for bad in ([2, 2], [2, 1, 1], [4, 4]):
        with pytest.raises(UnknownDError):
            d_sheaf_char(P(bad), 2)


@pytest.mark.parametrize("parts, m, expected", [
    ([3, 2], 4, [12, 8, 4, 0]),
    ([3, 3], 3, [12, 8, 6]),
    ([3, 2, 2], 6, LIST_322),
])
def test_predicted_ideal(parts, m, expected):
    ch = predicted_ideal_char(P(parts), m)
    assert ch == Character.from_list(expected)
    assert ch.dim() == {4: 28, 3: 29, 6: 364}[m]


@pytest.mark.parametrize("parts, m", [([3, 2], 1), ([3, 2], 2), ([3, 3], 1), ([3, 2, 2], 4)])
def test_prediction_refuses_virtual(parts, m):
    with pytest.raises(VanishingAssumptionError) as info:
        predicted_ideal_char(P(parts), m)
    assert not info.value.character.is_genuine()


# where the vanishing assumptions hold the prediction must match the kernel exactly
MATRIX = [([2, 1], m) for m in range(1, 6)] + [([3, 1], m) for m in range(1, 5)] \
    + [([4, 1], m) for m in range(1, 5)] + [([3, 2], m) for m in (3, 4, 5)] \
    + [([4, 2], m) for m in (3, 4)] + [([3, 3], m) for m in (2, 3, 4)] \
    + [([d], m) for d in (3, 4, 5) for m in (1, 2, 3)] + [([3, 2, 2], 5)]


@pytest.mark.parametrize("parts, m", MATRIX)
def test_prediction_matches_kernel(parts, m):
    lam = P(parts)
    ch = predicted_ideal_char(lam, m)
    assert ch.is_genuine()
    assert ch == kernel_character(lam, m)


@pytest.mark.parametrize("parts, m, kernel", [
    ([3, 2], 1, []), ([3, 2], 2, []), ([4, 2], 1, []), ([4, 2], 2, [0]), ([3, 3], 1, []),
])
def test_low_twists_fail_vanishing(parts, m, kernel):
    """At these twists the alternating sum is virtual, so some H^1 is nonzero."""
    lam = P(parts)
    with pytest.raises(VanishingAssumptionError) as info:
        predicted_ideal_char(lam, m)
    assert info.value.character != kernel_character(lam, m) == Character.from_list(kernel)


def test_syzygy_step():
    gens = [(4, Character.from_list([12, 8, 4, 0]))]
    assert syzygy_char_step(P([3, 2]), 5, gens) == Character({13: 1, 11: 1, 9: 1, 7: 2, 5: 2, 3: 1})
    gens = [(3, Character.from_list([12, 8, 6]))]
    assert syzygy_char_step(P([3, 3]), 4, gens).brace() == "{14,12,10^2,8,6^2,4,2^2}"
    assert syzygy_char_step(P([3, 2]), 3, []) == Character()


def test_report_json():
    rep = report(P([3, 2]), 4)
    assert rep["assumptions"] == ["H1_IX_vanishes", "H1_OX_vanishes"]
    assert rep["predicted"]["text"] == "s12 + s8 + s4 + s0"
    assert rep["d_correction"]["text"] == "s18"
    assert json.loads(json.dumps(rep, sort_keys=True)) == rep
    rep = report(P([2, 2]), 2)
    assert rep["predicted"] is None and "error" in rep
