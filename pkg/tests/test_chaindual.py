"""Complexes of free modules, the duality functor, and its axioms."""

import random

import pytest

from wittkit.chaindual import (
    DualityData,
    FreeComplex,
    can_map,
    dual_chain_map,
    duality_functor,
    hom_complex,
    random_free_complex,
    random_invertible,
    ring_in_degree,
    trivial_duality,
    verify_duality_axioms,
)
from wittkit.errors import NotInvolutive, WittKitError
from wittkit.linalg import Matrix
from wittkit.rings import (
    GF,
    PolynomialRing,
    PrimeField,
    ProductRing,
    QuotientRing,
    Rationals,
    involution,
)


def test_d_squared_enforced():
    F3 = PrimeField(3)
    one = F3.one
    with pytest.raises(WittKitError):
        FreeComplex(F3, {0: 1, 1: 1, 2: 1}, {0: Matrix(F3, [[one]]), 1: Matrix(F3, [[one]])})


def test_dual_of_multiplication_by_t():
    Qt = PolynomialRing(Rationals(), ["t"])
    t = Qt.gen("t")
    rwi = involution(Qt, {"t": t})
    E = FreeComplex(Qt, {0: 1, 1: 1}, {0: Matrix(Qt, [[t]])})
    D = trivial_duality(rwi)
    Ed = duality_functor(E, D)
    assert sorted(Ed.degrees()) == [-1, 0]
    assert Ed.rank(-1) == 1 and Ed.rank(0) == 1
    assert Ed.diff(-1) == Matrix(Qt, [[t]])


def test_can_on_rank_one_strand():
    for ring in (Rationals(), PrimeField(3)):
        rwi = involution(ring, "id")
        D = trivial_duality(rwi)
        E = ring_in_degree(ring, -1)
        cm = can_map(E, D)
        assert cm[-1] == Matrix(ring, [[-ring.one]])
        E0 = ring_in_degree(ring, 0)
        assert can_map(E0, D)[0] == Matrix(ring, [[ring.one]])


def test_dual_of_koszul_style_strand_under_swap():
    Q = Rationals()
    RXY = PolynomialRing(Q, ["X", "Y"])
    X, Y = RXY.gen("X"), RXY.gen("Y")
    rwi = involution(RXY, {"X": Y, "Y": X})
    E = FreeComplex(RXY, {-1: 1, 0: 1}, {-1: Matrix(RXY, [[X - Y]])})
    D = trivial_duality(rwi)
    Ed = duality_functor(E, D)
    assert sorted(Ed.degrees()) == [0, 1]
    # sigma(X - Y) = Y - X and the hom-complex sign flip cancel out
    assert Ed.diff(0) == Matrix(RXY, [[X - Y]])
    assert repr(Ed.diff(0).rows[0][0]) == "-1*Y + X"
    cm = can_map(E, D)
    assert cm[-1] == Matrix(RXY, [[-RXY.one]])
    assert cm[0] == Matrix(RXY, [[RXY.one]])


def _axiom_setups():
    # field models only: the random complexes conjugate identity strands
    # by invertible matrices, which wants elimination rank checks
    from wittkit.rings import QuadraticField

    return [
        involution(PrimeField(3), "id"),
        involution(PrimeField(5), "id"),
        involution(GF(9), "frobenius"),
        involution(GF(9), "id"),
        involution(Rationals(), "id"),
        involution(QuadraticField(-1), "conj"),
    ]


def test_duality_axioms_on_seeded_complexes():
    rng = random.Random(20260823)
    for rwi in _axiom_setups():
        for deg in (0, 1):
            D = DualityData(rwi, ring_in_degree(rwi.ring, deg))
            for _ in range(4):
                E = random_free_complex(rwi.ring, rng)
                report = verify_duality_axioms(E, D)
                assert report["all_pass"], (rwi.ring, deg, report)


def test_dual_of_scalar_map_is_conjugated_scalar():
    # D(r . id) = sigma(r) . id, the semilinear sign rule for duals
    rng = random.Random(77)
    rwi = involution(GF(9), "frobenius")
    F9 = rwi.ring
    D = trivial_duality(rwi)
    els = [e for e in F9.elements() if not e.is_zero()]
    for _ in range(6):
        E = random_free_complex(F9, rng)
        r = els[rng.randrange(len(els))]
        umats = {n: Matrix.identity(F9, E.rank(n)).map_entries(lambda e: r * e)
                 for n in E.degrees()}
        Ed = duality_functor(E, D)
        dmats = dual_chain_map(D, E, E, umats)
        for n in Ed.degrees():
            want = Matrix.identity(F9, Ed.rank(n)).map_entries(
                lambda e: rwi.conj(r) * e)
            assert dmats[n] == want


def test_norm_one_twist_is_legal():
    rwi = involution(GF(9), "frobenius")
    F9 = rwi.ring
    u = F9.gen("u")
    D = DualityData(rwi, ring_in_degree(F9, 0), {0: Matrix(F9, [[u]])})
    rng = random.Random(20260823)
    for _ in range(3):
        E = random_free_complex(F9, rng)
        assert verify_duality_axioms(E, D)["all_pass"]


def test_corrupted_sigma_rejected_and_reported():
    rwi = involution(GF(9), "frobenius")
    F9 = rwi.ring
    u = F9.gen("u")
    bad = {0: Matrix(F9, [[F9.one + u]])}
    with pytest.raises(NotInvolutive):
        DualityData(rwi, ring_in_degree(F9, 0), bad)
    D = DualityData(rwi, ring_in_degree(F9, 0), bad, check=False)
    E = ring_in_degree(F9, 0)
    report = verify_duality_axioms(E, D)
    assert not report["all_pass"]
    ok, defect = report["sigma_involutive"]
    assert not ok
    assert defect == (0, 0, 0, F9.el(2))
    ok2, defect2 = report["double_dual_identity"]
    assert not ok2
    assert defect2 == (0, 0, 0, F9.el(2))
    assert report["can_chain_map"][0]


def test_hom_complex_ranks():
    F3 = PrimeField(3)
    rwi = involution(F3, "id")
    E = FreeComplex(F3, {0: 2, 1: 1}, {0: Matrix(F3, [[F3.one, F3.zero]])})
    H = hom_complex(E, ring_in_degree(F3, 0))
    assert H.rank(0) == 2
    assert H.rank(-1) == 1


def test_random_invertible_over_both_kinds():
    rng = random.Random(5)
    m = random_invertible(PrimeField(3), 3, rng)
    assert m.rank() == 3
    q = random_invertible(Rationals(), 3, rng)
    assert q.rank() == 3
    z = random_invertible(PrimeField(3), 0, rng)
    assert z.nrows == 0
