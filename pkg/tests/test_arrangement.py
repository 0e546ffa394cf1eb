"""Generic arrangement machinery tests."""

import pytest

from formdepth.arrangement import (
    Arrangement,
    arrangement_betti_formula,
    fold_syzygy_matrix,
    gradient_pairing_identity,
    is_generic,
    is_reduction,
    normalize_to_coordinates,
    random_generic_arrangement,
    tail_syzygy_block,
    verify_minors_identity,
)
from formdepth.errors import CharacteristicGuardError, FormdepthError, HypothesisError
from formdepth.fields import QQ, PrimeField
from formdepth.groebner import IdealBasis, contains, ideal_equal
from formdepth.poly import PolyRing, substitute_linear
from formdepth.resolution import BettiTable, free_resolution


def _triple(ring):
    x, y = ring.variables()
    return Arrangement(ring, [x, y, x + y])


def test_is_generic_triple(Rq2):
    assert is_generic(_triple(Rq2))


def test_repeated_direction_rejected(Rq2):
    x, y = Rq2.variables()
    with pytest.raises(FormdepthError):
        Arrangement(Rq2, [x, y, x])
    arr = Arrangement(Rq2, [x, y, x + y, x.scale(2) + y])
    assert is_generic(arr)


def test_non_generic_detected():
    ring = PolyRing(QQ, ("x", "y", "z"))
    x, y, z = ring.variables()
    # x + y = x + y: four forms with three concurrent in a pencil
    arr = Arrangement(ring, [x, y, x + y, z])
    assert not is_generic(arr)  # x, y, x+y are dependent


def test_random_generic_sampling():
    ring = PolyRing(PrimeField(32003), ("x", "y", "z"))
    arr = random_generic_arrangement(ring, 6, 42)
    assert is_generic(arr)
    arr2 = random_generic_arrangement(ring, 6, 42)
    assert [str(f) for f in arr.forms] == [str(f) for f in arr2.forms]


def test_normalize_already_normal(Rq2):
    arr = _triple(Rq2)
    norm, change, A = normalize_to_coordinates(arr)
    assert norm.forms == arr.forms
    assert A.rows == ((QQ(1), QQ(1)),)


def test_normalize_swapped(Rq2):
    x, y = Rq2.variables()
    arr = Arrangement(Rq2, [x + y, y, x])
    norm, change, A = normalize_to_coordinates(arr)
    assert norm.forms[0] == x and norm.forms[1] == y
    assert A.all_minors_nonzero(Rq2.field)
    # round trip through the inverse change recovers the input forms
    for orig, new in zip(arr.forms, norm.forms):
        assert substitute_linear(new, change.inverse()) == orig


def test_gamma_shape_and_minors(Rq2):
    x, y = Rq2.variables()
    arr = _triple(Rq2)
    gamma = fold_syzygy_matrix(arr)
    assert (gamma.nrows, gamma.ncols) == (3, 2)
    assert gamma.entries[0][0] == -x and gamma.entries[1][1] == -y
    assert gamma.entries[2][0] == x + y
    # signed 2-minors: y(x+y), x(x+y), xy up to the sign convention
    minors = gamma.signed_maximal_minors()
    assert minors == [y * (x + y), x * (x + y), x * y]
    # the minors times l_i reproduce +-F
    F = arr.defining_polynomial()
    for l, d in zip(arr.forms, minors):
        assert l * d == F
    # weighted row sums vanish: (f_1 ... f_m) Gamma = 0
    folds = arr.fold_product_ideal().gens
    for j in range(2):
        acc = Rq2.zero()
        for i in range(3):
            acc = acc + folds[i] * gamma.entries[i][j]
        assert acc.is_zero()


def test_tail_block_triple(Rq2):
    x, y = Rq2.variables()
    S = tail_syzygy_block(_triple(Rq2))
    assert (S.nrows, S.ncols) == (1, 2)
    assert S.entries[0][0] == x.scale(2) + y
    assert S.entries[0][1] == x + y.scale(2)


def test_tail_block_explicit_display():
    # first n columns carry A with column j scaled by x_j; the last row
    # adds l_m, and the right block is diagonal -l_{n+1..m-1} over l_m
    ring = PolyRing(QQ, ("x", "y"))
    x, y = ring.variables()
    arr = Arrangement(ring, [x, y, x + y, x - y])
    S = tail_syzygy_block(arr)
    lm = x - y
    assert S.entries[0][0] == x and S.entries[0][1] == y  # a_{3j} x_j
    assert S.entries[0][2] == -(x + y)
    assert S.entries[1][0] == x + lm and S.entries[1][1] == -y + lm
    assert S.entries[1][2] == lm


def test_gradient_pairing_identity(Rq2):
    assert gradient_pairing_identity(_triple(Rq2))
    ring = PolyRing(PrimeField(32003), ("x", "y", "z"))
    arr, _, _ = normalize_to_coordinates(random_generic_arrangement(ring, 5, 3))
    assert gradient_pairing_identity(arr)


def test_minors_identity_triple(Rq2):
    x, y = Rq2.variables()
    arr = _triple(Rq2)
    assert verify_minors_identity(arr)
    # over the rationals I_1(S) = (2x+y, x+2y) = (x, y) since char != 3
    S = tail_syzygy_block(arr)
    I = IdealBasis(Rq2, [p for p in S.minors(1) if not p.is_zero()])
    assert ideal_equal(I, IdealBasis(Rq2, [x, y]))


def test_minors_identity_guard_char_divides_m():
    ring = PolyRing(PrimeField(3), ("x", "y"))
    x, y = ring.variables()
    arr = Arrangement(ring, [x, y, x + y])
    with pytest.raises(CharacteristicGuardError):
        verify_minors_identity(arr)


def test_minors_identity_random():
    ring = PolyRing(PrimeField(32003), ("x", "y", "z"))
    for seed in (1, 2):
        arr, _, _ = normalize_to_coordinates(
            random_generic_arrangement(ring, 5, seed)
        )
        assert verify_minors_identity(arr)


def test_betti_formula_small_cases():
    assert arrangement_betti_formula(3, 4) == BettiTable(
        {(0, 0): 1, (1, 3): 3, (2, 5): 3, (3, 6): 1}
    )
    t = arrangement_betti_formula(3, 5)
    assert t.rank(2, 7) == 4 and t.rank(3, 8) == 2


def test_betti_formula_rank_sum_zero():
    for n in range(2, 6):
        for m in range(n + 1, 10):
            assert arrangement_betti_formula(n, m).alternating_rank_sum() == 0


def test_betti_formula_needs_m_large():
    with pytest.raises(FormdepthError):
        arrangement_betti_formula(3, 3)


def test_formula_matches_computation():
    ring = PolyRing(PrimeField(32003), ("x", "y", "z"))
    arr = random_generic_arrangement(ring, 5, 99)
    table = free_resolution(arr.gradient_ideal()).betti_table()
    assert table == arrangement_betti_formula(3, 5)


def test_reduction_trivial(Rq2):
    x, y = Rq2.variables()
    I = IdealBasis(Rq2, [x, y])
    assert is_reduction(I, I, 3) == 0


def test_reduction_negative_control(Rq2):
    x, y = Rq2.variables()
    J = IdealBasis(Rq2, [x**2])
    I = IdealBasis(Rq2, [x**2, x * y])
    assert is_reduction(J, I, 8) is None


def test_reduction_requires_containment(Rq2):
    x, y = Rq2.variables()
    with pytest.raises(HypothesisError):
        is_reduction(IdealBasis(Rq2, [y**3]), IdealBasis(Rq2, [x]), 2)


def test_gradient_is_reduction_of_fold_products(Rq2):
    arr = _triple(Rq2)
    J = arr.gradient_ideal()
    I = arr.fold_product_ideal()
    for g in J.gens:
        assert contains(I, g)
    r = is_reduction(J, I, 6)
    assert r is not None
