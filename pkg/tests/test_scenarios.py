from fractions import Fraction as F

import pytest

from galwalk.exactmat import RationalMatrix, char_poly, det, mat_mul
from galwalk.scenarios import (
    builtin_scenarios,
    dual_pair_embed,
    elementary,
    sqrt2_embed,
    swap_blocks_matrix,
)

EXPECTED = {
    "sl2": (2, 1),
    "sl3": (3, 1),
    "sl4": (4, 1),
    "sltau2": (4, 2),
    "sltau4": (8, 2),
    "slcyc2x2": (4, 2),
    "slcyc2x3": (6, 3),
    "res_sqrt2": (4, 1),
    "diag_antidiag": (2, 2),
}


def test_registry_contents():
    reg = builtin_scenarios()
    assert set(reg) == set(EXPECTED)
    for name, (dim, cosets) in EXPECTED.items():
        scen = reg[name]
        assert scen.dimension == dim
        assert len(scen.cosets) == cosets
        assert scen.component_group.order == cosets


def test_predicted_group_bindings():
    reg = builtin_scenarios()
    assert reg["sl3"].coset(0).predicted.name == "sym3"
    assert reg["sl3"].coset(0).predicted.natural_symmetric == 3
    assert reg["sltau2"].coset(0).predicted.group.order == 2
    assert reg["sltau2"].coset(1).predicted.group.order == 4
    assert reg["sltau2"].coset(1).upper.group.order == 8
    assert reg["sltau4"].coset(1).predicted.group.order == 16
    assert reg["sltau4"].coset(1).upper.group.order == 128
    assert reg["slcyc2x3"].coset(1).predicted.group.order == 12
    assert reg["slcyc2x3"].coset(2).predicted.group.order == 12
    assert reg["res_sqrt2"].coset(0).predicted.group.order == 8
    for c in reg["diag_antidiag"].cosets:
        assert c.predicted is None
    assert not reg["diag_antidiag"].has_predictions


def test_counterexample_admissible_set_is_exactly_four_elements():
    scen = builtin_scenarios()["diag_antidiag"]
    gens = scen.admissible()
    mats = {(g, lab) for g, lab in gens.generators}
    assert mats == {
        (RationalMatrix.diagonal([2, 3]), 0),
        (RationalMatrix.diagonal([F(1, 2), F(1, 3)]), 0),
        (RationalMatrix([[0, 1], [1, 0]]), 1),
        (RationalMatrix.identity(2), 0),
    }


def test_generator_determinants():
    for scen in builtin_scenarios().values():
        for g, _ in scen.raw_generators:
            assert det(g) != 0
            assert g.n == scen.dimension
            if scen.name != "diag_antidiag":  # the counterexample is not unimodular
                assert det(g) in (1, -1)


def test_dual_pair_embed_structure():
    e = elementary(2, 0, 1)
    m = dual_pair_embed(e)
    assert m.n == 4
    # top-left block is e, bottom-right is its transpose inverse
    assert m.rows[0][1] == 1 and m.rows[3][2] == -1
    tau = swap_blocks_matrix(2)
    assert mat_mul(tau, tau) == RationalMatrix.identity(4)
    # conjugation by tau implements transpose-inverse on the embedding
    lhs = mat_mul(mat_mul(tau, m), tau)
    assert lhs == dual_pair_embed(RationalMatrix([[1, 0], [-1, 1]]))


def test_sltau_multiplicity_profile():
    # the identity coset of the n=2 involution scenario always carries a
    # perfect-square characteristic polynomial
    scen = builtin_scenarios()["sltau2"]
    assert scen.coset(0).multiplicity == 2
    assert scen.coset(1).multiplicity == 1
    from galwalk.walker import batch_sample

    for s in batch_sample(scen.admissible(), 9, 40, 5):
        chi = char_poly(s.element)
        if s.label == 0:
            # chi is the square of the top block's quadratic, always
            block = RationalMatrix([row[:2] for row in s.element.rows[:2]])
            q = char_poly(block)
            assert q * q == chi
        else:
            # reciprocal quartic: T^4 - t T^2 + 1
            assert chi.coeffs[0] == 1 and chi.coeffs[1] == 0 and chi.coeffs[3] == 0
    # and the larger scenario has multiplicity one on both cosets
    scen4 = builtin_scenarios()["sltau4"]
    assert scen4.coset(0).multiplicity == 1


def test_sqrt2_embed():
    # sqrt2 squares to 2 in the regular representation
    s = sqrt2_embed([[(0, 1), (0, 0)], [(0, 0), (0, 1)]])
    assert mat_mul(s, s) == RationalMatrix.diagonal([2, 2, 2, 2])
    scen = builtin_scenarios()["res_sqrt2"]
    from galwalk.walker import sample_walk

    w = sample_walk(scen.admissible(), 12, 8, 1)
    chi = char_poly(w.element)
    assert chi.degree == 4 and chi.is_monic()
    assert det(w.element) == 1


def test_scenario_coset_lookup():
    scen = builtin_scenarios()["sltau2"]
    assert scen.coset(1).name == "swap"
    with pytest.raises(KeyError):
        scen.coset(7)
