"""Witt group computations pinned against independently derived tables.

Field values below were computed two ways before being frozen: once by the
engine and once from the classical counts (W(F_q) has order 4 for q = 3
mod 4, is 2-torsion of order 4 for q = 1 mod 4, and the hermitian Witt
group of a quadratic extension is Z/2).  The quotient-ring values were
cross-checked by hand via the rank-and-socle filtration.
"""

import pytest

from wittkit.coefficients import standard_coefficient
from wittkit.errors import EnumerationBoundExceeded, NotFinite
from wittkit.forms import diagonal_form, hyperbolic_form
from wittkit.modules import FLModule, free_module
from wittkit.rings import (
    GF,
    PrimeField,
    ProductRing,
    QuotientRing,
    Rationals,
    involution,
)
from wittkit.wittgroup import (
    WittEngine,
    cross_validate_classes,
    enumerate_gram_tables,
    group_name,
    witt_group,
)


def std(ring, spec="id"):
    return standard_coefficient(involution(ring, spec))


def test_symmetric_witt_group_of_f3():
    res = witt_group(std(PrimeField(3)), 1, 4)
    assert res.factors == [4]
    assert res.stable
    assert res.describe() == "Z/4 (stable)"


def test_f3_presentation_already_stable_at_bound_three():
    res = witt_group(std(PrimeField(3)), 1, 3)
    assert len(res.classes) == 6
    assert res.factors == [4]
    assert res.stable


def test_skew_witt_group_of_field_vanishes():
    res = witt_group(std(PrimeField(3)), -1, 4)
    assert res.factors == []
    assert res.describe() == "0 (stable)"


def test_symmetric_witt_group_of_f5():
    res = witt_group(std(PrimeField(5)), 1, 4)
    assert res.factors == [2, 2]
    assert group_name(res.factors) == "Z/2 x Z/2"
    assert res.stable


def test_hermitian_witt_group_of_f9():
    res = witt_group(std(GF(9), "frobenius"), 1, 4)
    assert res.factors == [2]
    assert res.stable


def test_hyperbolic_involution_kills_everything():
    F3 = PrimeField(3)
    res = witt_group(std(ProductRing(F3, F3), "swap"), 1, 4)
    assert res.factors == []
    assert res.stable


def test_witt_group_of_dual_numbers():
    F3 = PrimeField(3)
    R = QuotientRing(F3, [0, 0, 1], "t")
    res = witt_group(std(R), 1, 4)
    assert len(res.classes) == 20
    assert res.factors == [4]
    assert res.stable


def test_unstable_presentation_is_reported():
    F3 = PrimeField(3)
    R = QuotientRing(F3, [0, 0, 0, 1], "t")
    res = witt_group(std(R), 1, 3)
    assert len(res.classes) == 14
    assert res.factors == [4, 0, 0]
    assert res.stable is False
    assert res.describe() == "Z/4 x Z x Z (unstable)"


def test_class_index_separates_and_coords_kill_metabolics():
    F3 = PrimeField(3)
    coef = std(F3)
    res = witt_group(coef, 1, 3)
    i1 = res.class_index(diagonal_form(coef, [F3.one]))
    i2 = res.class_index(diagonal_form(coef, [F3.el(2)]))
    assert i1 != i2
    hyp = hyperbolic_form(coef, free_module(coef.rwi, 1))
    assert all(c == 0 for c in res.class_coords(hyp))
    assert res.class_coords(diagonal_form(coef, [F3.one])) != res.class_coords(
        diagonal_form(coef, [F3.el(2)])
    )


def test_class_index_respects_the_bound():
    F3 = PrimeField(3)
    coef = std(F3)
    res = witt_group(coef, 1, 2)
    big = diagonal_form(coef, [F3.one, F3.one, F3.one])
    with pytest.raises(EnumerationBoundExceeded):
        res.class_index(big)


def test_engine_refuses_infinite_rings():
    with pytest.raises(NotFinite):
        WittEngine(std(Rationals()), 1)


def test_engine_size_guard_fires_before_enumeration():
    coef = std(GF(9), "frobenius")
    with pytest.raises(EnumerationBoundExceeded) as exc:
        witt_group(coef, 1, 2, max_size=8)
    assert "size 9 exceeds" in str(exc.value)


def test_gram_table_enumeration_and_guard():
    F3 = PrimeField(3)
    coef = std(F3)
    M = free_module(coef.rwi, 1)
    tables = list(enumerate_gram_tables(coef, M, 1))
    assert len(tables) == 3
    N = free_module(coef.rwi, 2)
    with pytest.raises(EnumerationBoundExceeded):
        list(enumerate_gram_tables(coef, N, 1, limit=2))


def test_cross_validation_on_small_shapes():
    F3 = PrimeField(3)
    coef = std(F3)
    engine = WittEngine(coef, 1)
    M = free_module(coef.rwi, 2)
    assert cross_validate_classes(engine, M) > 0
