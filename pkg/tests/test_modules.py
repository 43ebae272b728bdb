"""Finite-length modules, cyclic decomposition, scalar coordinates."""

import random

import pytest

from wittkit.modules import (
    FLModule,
    check_module_axioms,
    decompose_submodule,
    free_module,
    indecomposable_factor_anns,
    is_nilpotent_quotient,
    module_from_shape,
    uniformizer,
)
from wittkit.rings import GF, PrimeField, ProductRing, QuotientRing, involution


def t2_ring():
    return QuotientRing(PrimeField(3), [0, 0, 1], "t")


def test_indecomposable_anns():
    F3 = PrimeField(3)
    assert [a.is_zero() for a in indecomposable_factor_anns(F3)] == [True]
    R = t2_ring()
    anns = indecomposable_factor_anns(R)
    t = R.gen("t")
    # largest factor (the free one, ann 0 is written t^2 = 0) down to R/(t)
    assert len(anns) == 2
    assert anns[-1] == t
    P = ProductRing(F3, F3)
    panns = indecomposable_factor_anns(P)
    assert len(panns) == 2


def test_nilpotent_quotient_predicate():
    assert is_nilpotent_quotient(t2_ring())
    assert not is_nilpotent_quotient(PrimeField(3))
    F3 = PrimeField(3)
    assert not is_nilpotent_quotient(ProductRing(F3, F3))


def test_uniformizer():
    R = t2_ring()
    assert uniformizer(R) == R.gen("t")


def test_free_module_basics():
    rwi = involution(PrimeField(3), "id")
    M = free_module(rwi, 2)
    assert M.length == 2
    assert M.sdim == 2
    assert M.size() == 9
    gens = M.generators()
    assert len(gens) == 2
    s = M.add(gens[0], gens[1])
    assert M.to_vec(s) == tuple(M.F.one for _ in range(2))


def test_module_over_quotient_ring():
    R = t2_ring()
    rwi = involution(R, "id")
    t = R.gen("t")
    M = FLModule(rwi, [R.zero, t])  # R + R/(t)
    assert M.length == 3
    assert M.sdim == 3
    assert M.size() == 27
    x = M.element([R.one, R.one])
    assert M.to_vec(M.scal(t, x)) == M.to_vec(M.element([t, R.zero]))


def test_vec_roundtrip_and_action_matrix():
    R = t2_ring()
    rwi = involution(R, "id")
    M = FLModule(rwi, [R.zero])
    t = R.gen("t")
    for x in M.elements():
        assert M.from_vec(M.to_vec(x)) == x
    A = M.action_matrix(t)
    one = M.element([R.one])
    assert M.from_vec(A.apply(M.to_vec(one))) == M.element([t])
    assert (A * A).is_zero()


def test_module_from_shape():
    rwi = involution(t2_ring(), "id")
    M = module_from_shape(rwi, [2, 1])  # R + R/(t)
    assert M.length == 3
    assert [f.ann.is_zero() for f in M.factors] == [True, False]


def test_decompose_submodule_finds_cyclic_pieces():
    R = t2_ring()
    rwi = involution(R, "id")
    M = free_module(rwi, 1)
    t = R.gen("t")
    sub, gens, _ = decompose_submodule(M, [M.element([t])])
    # t.R inside R is one copy of R/(t)
    assert len(sub.factors) == 1
    assert sub.factors[0].ann == t
    assert gens == [(t,)]


def test_module_axioms_seeded():
    rng = random.Random(20260823)
    R = t2_ring()
    for rwi in (involution(R, "id"), involution(R, {"t": [0, 2]})):
        M = FLModule(rwi, [R.zero, R.gen("t")])
        check_module_axioms(M, rng)


def test_conj_vec_is_semilinear_coordinate_map():
    F9 = GF(9)
    rwi = involution(F9, "frobenius")
    M = free_module(rwi, 1)
    u = F9.gen("u")
    x = M.element([u])
    cv = M.from_vec(M.conj_vec(M.to_vec(x)))
    assert cv == M.element([u ** 3])
