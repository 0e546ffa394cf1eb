"""Product-of-forms machinery: Jacobians, RTY checks, predictions,
criteria, witnesses, and the randomised lemma properties."""

import pytest

from conftest import seeded

from formdepth.errors import FormdepthError, HypothesisError
from formdepth.fields import QQ, PrimeField
from formdepth.groebner import (
    IdealBasis,
    contains,
    krull_dimension,
    saturate_irrelevant,
)
from formdepth.poly import PolyRing
from formdepth.productforms import (
    FormSystem,
    build_fold_matrices,
    criteria_evaluate,
    fold_products,
    general_forms_betti,
    general_forms_ranks,
    gradient_ideal,
    heights_check,
    is_smooth_form,
    jacobian_matrix,
    random_forms,
    rty_check,
    syzygy_degree_floor,
    witness_forms,
)
from formdepth.resolution import BettiTable, free_resolution, indeg_syzygies


def _sys(ring, *forms):
    return FormSystem(ring, list(forms))


# -- jacobian matrix -----------------------------------------------------------


def test_jacobian_of_linear_forms_is_coefficient_matrix(Rq):
    x, y, z = Rq.variables()
    theta = jacobian_matrix(_sys(Rq, x, y, x + y))
    assert theta.entries[2][0] == Rq.one() and theta.entries[2][1] == Rq.one()


def test_jacobian_single_quadric(Rq):
    x, y, z = Rq.variables()
    theta = jacobian_matrix(_sys(Rq, x**2 + y * z))
    assert [str(p) for p in theta.entries[0]] == ["2*x", "z", "y"]


def test_euler_column_identity(Rq):
    x, y, z = Rq.variables()
    sys_ = _sys(Rq, x**2 + y * z, x**3 + y**3 + z**3)
    theta = jacobian_matrix(sys_)
    for i, f in enumerate(sys_.forms):
        acc = Rq.zero()
        for j in range(3):
            acc = acc + theta.entries[i][j] * Rq.variable(j)
        assert acc == f.scale(f.degree())


# -- gradient ideal -------------------------------------------------------------


def test_gradient_ideal_triple_line(Rq2):
    x, y = Rq2.variables()
    F, J = gradient_ideal(_sys(Rq2, x, y, x + y))
    assert F == x**2 * y + x * y**2
    expected = IdealBasis(Rq2, [2 * x * y + y**2, x**2 + 2 * x * y])
    from formdepth.groebner import ideal_equal

    assert ideal_equal(J, expected)


def test_gradient_generator_degree(Rq):
    x, y, z = Rq.variables()
    F, J = gradient_ideal(_sys(Rq, x**2 + y * z, x**2 + y**2 + y * z))
    assert all(g.degree() == 3 for g in J.gens)


def test_gradient_leibniz(Rp):
    rng = seeded(61)
    sys_ = random_forms(3, (2, 3), 32003, rng)
    F, J = gradient_ideal(sys_)
    for i in range(3):
        acc = sys_.ring.zero()
        for j, f in enumerate(sys_.forms):
            other = sys_.ring.one()
            for k, g in enumerate(sys_.forms):
                if k != j:
                    other = other * g
            acc = acc + other * f.derivative(i)
        assert acc == F.derivative(i)


# -- fold products ---------------------------------------------------------------


def test_fold_products_monomial(Rq):
    x, y, z = Rq.variables()
    I = fold_products(_sys(Rq, x, y, z), 2)
    from formdepth.groebner import ideal_equal

    assert ideal_equal(I, IdealBasis(Rq, [x * y, x * z, y * z]))


def test_fold_products_full(Rq):
    x, y, z = Rq.variables()
    sys_ = _sys(Rq, x**2 + y * z, y**2 + x * z)
    F = sys_.product()
    I = fold_products(sys_, 2)
    assert len(I.gens) == 1 and I.gens[0] == F
    with pytest.raises(FormdepthError):
        fold_products(sys_, 3)


def test_gradient_inside_fold_products(Rp):
    rng = seeded(67)
    for degs in [(2, 2), (2, 3), (2, 2, 2)]:
        sys_ = random_forms(3, degs, 32003, rng)
        F, J = gradient_ideal(sys_)
        I = fold_products(sys_, sys_.m - 1)
        for g in J.gens:
            assert contains(I, g)
        # reduced product of at least two coprime forms: codim exactly 2
        assert krull_dimension(J)[1] == 2


# -- the fold matrices ------------------------------------------------------------


def test_fold_matrix_two_forms(Rq):
    x, y, z = Rq.variables()
    f, g = x**2 + y * z, y**2 + x * z
    D, M = build_fold_matrices(_sys(Rq, f, g))
    assert D.nrows == 2 and D.ncols == 1
    assert D.entries[0][0] == -f and D.entries[1][0] == g
    minors = D.signed_maximal_minors()
    assert minors == [g, f]


def test_fold_matrix_reproduces_gamma(Rq2):
    x, y = Rq2.variables()
    D, _ = build_fold_matrices(_sys(Rq2, x, y, x + y))
    assert D.entries[0][0] == -x
    assert D.entries[1][1] == -y
    assert D.entries[2][0] == x + y and D.entries[2][1] == x + y


def test_fold_matrix_annihilated(Rp):
    rng = seeded(71)
    sys_ = random_forms(3, (2, 2, 3), 32003, rng)
    D, M = build_fold_matrices(sys_)
    for j in range(D.ncols):
        acc = sys_.ring.zero()
        for i, f in enumerate(sys_.forms):
            acc = acc + f * D.entries[i][j]
        assert acc.is_zero()
    with pytest.raises(FormdepthError):
        build_fold_matrices(_sys(Rp, Rp.variables()[0]))


# -- heights ------------------------------------------------------------------------


def test_heights_random_quadric_pair():
    sys_ = random_forms(3, (2, 2), 32003, 5)
    hr = heights_check(sys_)
    assert hr.codim_fold_syzygy == 2
    assert hr.codim_augmented == 3
    assert hr.codim_theta_plus_forms == 3
    assert all(hr.matches.values())


def test_heights_fermat_remark(Rq):
    x, y, z = Rq.variables()
    hr = heights_check(_sys(Rq, x**2, x**5 + y**5 + z**5))
    assert hr.codim_theta_plus_forms == 2
    assert hr.matches["theta_plus_forms"] is False


def test_heights_single_smooth_form(Rq):
    x, y, z = Rq.variables()
    hr = heights_check(_sys(Rq, x**2 + y * z))
    assert hr.codim_fold_syzygy is None
    assert hr.codim_theta_plus_forms == 3


# -- rty_check -----------------------------------------------------------------------


def test_rty_generic_four_lines():
    ring = PolyRing(PrimeField(32003), ("x", "y", "z"))
    from formdepth.arrangement import random_generic_arrangement

    arr = random_generic_arrangement(ring, 4, 7)
    rep = rty_check(FormSystem(ring, list(arr.forms)))
    assert rep.rty and rep.depth == 0 and rep.pd == 3
    assert rep.saturation_strict
    assert rep.witness is not None


def test_rty_false_for_free_quartic(Rq):
    x, y, z = Rq.variables()
    rep = rty_check(_sys(Rq, x**2 + y * z, x**2 + y**2 + y * z))
    assert not rep.rty and rep.depth == 1
    assert not rep.saturation_strict and rep.witness is None


def test_rty_five_variable_triple():
    ring = PolyRing(QQ, ("x1", "x2", "x3", "x4", "x5"))
    x1, x2, x3, x4, x5 = ring.variables()
    f1 = x1**2 + x2 * x3
    f2 = x1**2 + x2**2 + x2 * x3
    f3 = x5**5 - x4 * f1 * f2
    rep = rty_check(_sys(ring, f1, f2, f3))
    assert not rep.rty
    assert rep.pd == 2 and rep.depth == 3


def test_rty_rejects_non_coprime(Rq):
    x, y, z = Rq.variables()
    with pytest.raises(HypothesisError):
        rty_check(_sys(Rq, x * y, y * z))


def test_rty_witness_is_genuine(Rq):
    x, y, z = Rq.variables()
    rep = rty_check(_sys(Rq, x**2 + y * z, y**2 + x * z))
    assert rep.rty
    F, J = gradient_ideal(_sys(Rq, x**2 + y * z, y**2 + x * z))
    S = saturate_irrelevant(J)
    assert contains(S, rep.witness) and not contains(J, rep.witness)


# -- predictions ----------------------------------------------------------------------


def test_general_forms_ranks():
    assert general_forms_ranks(3, 2) == {2: 4, 3: 2}
    ranks = general_forms_ranks(3, 3)
    assert ranks == {2: 5, 3: 3}
    assert 1 - 3 + ranks[2] - ranks[3] == 0


def test_general_forms_betti_graded():
    t = general_forms_betti(3, 2, (2, 2))
    assert t == BettiTable(
        {(0, 0): 1, (1, 3): 3, (2, 5): 1, (2, 6): 3, (3, 7): 2}
    )
    assert t.alternating_rank_sum() == 0


def test_general_forms_betti_matches_computation():
    rng = seeded(73)
    for degs in [(2, 2), (2, 3), (2, 2, 2)]:
        sys_ = random_forms(3, degs, 32003, rng)
        _, J = gradient_ideal(sys_)
        table = free_resolution(J).betti_table()
        assert table == general_forms_betti(3, len(degs), degs)


# -- criteria ---------------------------------------------------------------------------


def test_criteria_two_smooth_cubics(Rq):
    x, y, z = Rq.variables()
    f = x**3 + y**3 + z**3
    g = x**3 + y**3 + z**3 + (x + y + z) ** 3
    rep = criteria_evaluate(_sys(Rq, f, g))
    assert rep.verdicts["two_forms_one_smooth_i"] == "holds"
    assert rep.any_holds


def test_criteria_fermat_pair(Rq):
    x, y, z = Rq.variables()
    rep = criteria_evaluate(_sys(Rq, x**5 + y**5 + z**5, x**2))
    assert rep.verdicts["two_forms_one_smooth_ii"] == "holds"
    assert rep.verdicts["fermat"] == "holds"


def test_criteria_nearly_free_inconclusive_yet_rty(Rq):
    x, y, z = Rq.variables()
    sys_ = _sys(Rq, x**2 + y * z, x**2 - y * z)
    rep = criteria_evaluate(sys_)
    assert rep.verdicts["two_forms_one_smooth_i"] == "fails"
    assert rep.verdicts["two_forms_one_smooth_ii"] == "fails"
    assert not rep.any_holds
    assert rty_check(sys_).rty


def test_criteria_degree_vectors():
    assert syzygy_degree_floor((2,)) == 1
    # (2, 2): d(2) = 1 < 2 - 2 + 3: not satisfied
    ring = PolyRing(QQ, ("x", "y", "z"))
    x, y, z = ring.variables()
    rep = criteria_evaluate(
        FormSystem(ring, [x**2 + y * z, y**2 + x * z])
    )
    assert rep.evidence["unbalanced_degrees"]["witnessing_indices"] == []
    # (2, 4) with j = 2: d(2) = 1 >= 2 - 4 + 3 = 1: satisfied
    g4 = x**4 + y**4 + z**4 + x * y * z * (x + y + z)
    rep2 = criteria_evaluate(FormSystem(ring, [x**2 + y * z, g4]))
    assert rep2.evidence["unbalanced_degrees"]["witnessing_indices"] == [2]
    if rep2.verdicts["unbalanced_degrees"] == "holds":
        assert rty_check(FormSystem(ring, [x**2 + y * z, g4])).rty


def test_criteria_three_forms(Rq):
    x, y, z = Rq.variables()
    f1 = x**2 + y * z
    f2 = x**3 + y**3 + z**3
    f3 = x**5 + y**5 + z**5 + x * y * z * (x**2 + y**2)
    sys_ = _sys(Rq, f1, f2, f3)
    rep = criteria_evaluate(sys_)
    assert rep.verdicts["three_forms"] in ("holds", "fails")
    if rep.verdicts["three_forms"] == "holds":
        assert rty_check(sys_).rty


def test_criteria_holds_implies_rty_small_corpus():
    rng = seeded(79)
    checked = 0
    for k in range(8):
        m = 2 if k % 2 == 0 else 3
        degs = tuple(sorted(rng.choice([2, 3]) for _ in range(m)))
        sys_ = random_forms(3, degs, 32003, 1000 + k)
        rep = criteria_evaluate(sys_)
        if rep.any_holds:
            assert rty_check(sys_).rty
            checked += 1
    assert checked >= 1


# -- witnesses and sampling -----------------------------------------------------------


def test_witness_base_case():
    w = witness_forms(2, (2,))
    assert [str(f) for f in w.forms] == ["x1^2 + x2^2"]


def test_witness_pair_regular_sequence():
    w = witness_forms(2, (2, 3))
    from formdepth.groebner import is_regular_sequence

    assert is_regular_sequence(list(w.forms)[:2])


def test_witness_deformed_heights():
    w = witness_forms(3, (2, 2))
    assert heights_check(w).codim_theta_plus_forms == 3


def test_witness_rejects_bad_shape():
    with pytest.raises(FormdepthError):
        witness_forms(2, (2, 2, 2, 2))
    with pytest.raises(FormdepthError):
        witness_forms(3, (1, 2))


def test_random_forms_deterministic():
    a = random_forms(3, (2, 2), 32003, 11)
    b = random_forms(3, (2, 2), 32003, 11)
    assert [str(f) for f in a.forms] == [str(f) for f in b.forms]
    assert a.pairwise_coprime()


def test_random_forms_regular_sequence():
    sys_ = random_forms(3, (2, 2), 32003, 13)
    from formdepth.groebner import is_regular_sequence

    assert is_regular_sequence(sys_)


def test_random_linear_forms_generic_after_retries():
    from formdepth.arrangement import Arrangement, is_generic

    sys_ = random_forms(3, (1, 1, 1, 1, 1), 32003, 17)
    arr = Arrangement(sys_.ring, sys_.forms)
    assert is_generic(arr)


# -- the randomized lemma properties --------------------------------------------------


def test_lemma_indeg_monotone():
    # indeg Syz(J_{fg}) >= indeg Syz(J_g) for coprime forms under the guard
    rng = seeded(83)
    ring = PolyRing(PrimeField(32003), ("x", "y", "z"))
    for k in range(4):
        sys_ = random_forms(3, (2, 3), 32003, 500 + k)
        f, g = sys_.forms
        _, J_fg = gradient_ideal(sys_)
        J_g = IdealBasis(ring, [g.derivative(i) for i in range(3)])
        assert indeg_syzygies(J_fg) >= indeg_syzygies(J_g)
    del rng


def test_lemma_square_in_saturation():
    # f smooth implies g^2 lies in the saturation of J_{fg}
    for k in range(3):
        sys_ = random_forms(3, (2, 2), 32003, 900 + k)
        f, g = sys_.forms
        if not is_smooth_form(f):
            continue
        F, J = gradient_ideal(sys_)
        S = saturate_irrelevant(J)
        assert contains(S, g * g)


def test_lemma_syzygy_floor():
    # with the upper forms smooth: indeg Syz(J_F) >= floor(sum d / m) - 1
    for k, degs in enumerate([(2, 2), (2, 3), (2, 2, 2)]):
        sys_ = random_forms(3, degs, 32003, 300 + k)
        if not all(is_smooth_form(f) for f in sys_.forms[1:]):
            continue
        _, J = gradient_ideal(sys_)
        assert indeg_syzygies(J) >= syzygy_degree_floor(degs)
