"""Epsilon-hermitian forms: evaluation, nondegeneracy, isometry, metabolicity."""

import pytest

from wittkit.coefficients import standard_coefficient
from wittkit.errors import CoefficientMismatch, Degenerate, NotEpsilonSymmetric
from wittkit.forms import (
    HermitianForm,
    canonical_order,
    coefficient_change,
    diagonal_form,
    hyperbolic_form,
    is_metabolic,
    isometric,
    orthogonal_sum,
)
from wittkit.linalg import Matrix
from wittkit.modules import FLModule, free_module
from wittkit.rings import GF, PrimeField, QuotientRing, involution


def coef_over(p):
    return standard_coefficient(involution(PrimeField(p), "id"))


def test_sesquilinear_convention():
    # b(ax, y) = sigma(a) b(x, y) and b(x, ay) = a b(x, y)
    rwi = involution(GF(9), "frobenius")
    coef = standard_coefficient(rwi)
    f = diagonal_form(coef, [rwi.ring.one])
    M = f.module
    u = rwi.ring.gen("u")
    x = M.generators()[0]
    lhs = f.evaluate(M.scal(u, x), x)[0]
    assert lhs == u ** 3
    rhs = f.evaluate(x, M.scal(u, x))[0]
    assert rhs == u


def test_epsilon_symmetry_enforced():
    coef = coef_over(3)
    F3 = coef.rwi.ring
    with pytest.raises(NotEpsilonSymmetric):
        HermitianForm(coef, free_module(coef.rwi, 2),
                      [[F3.el(0), F3.el(1)], [F3.el(2), F3.el(0)]], 1)
    # the same table is a legal skew form
    HermitianForm(coef, free_module(coef.rwi, 2),
                  [[F3.el(0), F3.el(1)], [F3.el(2), F3.el(0)]], -1)


def test_nondegeneracy_examples():
    coef = coef_over(3)
    h = hyperbolic_form(coef, free_module(coef.rwi, 1))
    assert h.is_nondegenerate()
    F3 = coef.rwi.ring
    z = HermitianForm(coef, free_module(coef.rwi, 1), [[F3.zero]], 1)
    assert not z.is_nondegenerate()
    with pytest.raises(Degenerate):
        z.require_nondegenerate()


def test_socle_valued_form_is_degenerate():
    # b(x, y) = sigma(x) t y on M = R over R = F_3[t]/(t^2): the adjoint
    # lands inside the socle dual, so the form cannot be nondegenerate
    R = QuotientRing(PrimeField(3), [0, 0, 1], "t")
    rwi = involution(R, "id")
    coef = standard_coefficient(rwi)
    t = R.gen("t")
    f = HermitianForm(coef, free_module(rwi, 1), [[t]], 1)
    assert not f.is_nondegenerate()


def test_orthogonal_sum_blocks():
    coef = coef_over(3)
    F3 = coef.rwi.ring
    one = diagonal_form(coef, [F3.one])
    s = orthogonal_sum(one, one)
    assert s.rank() == 2
    assert s.evaluate(s.module.generators()[0], s.module.generators()[1])[0].is_zero()
    empty = diagonal_form(coef, [])
    assert orthogonal_sum(one, empty).gram_key() == one.gram_key()


def test_isometric_examples():
    c5 = coef_over(5)
    F5 = c5.rwi.ring
    f = diagonal_form(c5, [F5.el(1), F5.el(1)])
    g = diagonal_form(c5, [F5.el(2), F5.el(2)])
    assert isometric(f, g) is not None
    c3 = coef_over(3)
    F3 = c3.rwi.ring
    assert isometric(diagonal_form(c3, [F3.el(1)]), diagonal_form(c3, [F3.el(2)])) is None
    assert isometric(f, f) is not None


def test_isometry_witness_is_a_congruence():
    c5 = coef_over(5)
    F5 = c5.rwi.ring
    f = diagonal_form(c5, [F5.el(1), F5.el(1)])
    g = diagonal_form(c5, [F5.el(2), F5.el(2)])
    images = isometric(f, g)
    gens = f.module.generators()
    for i, x in enumerate(gens):
        for j, y in enumerate(gens):
            assert g.evaluate(images[i], images[j]) == f.evaluate(x, y)


def test_metabolic_examples():
    c3 = coef_over(3)
    F3 = c3.rwi.ring
    h = hyperbolic_form(c3, free_module(c3.rwi, 1))
    assert is_metabolic(h)
    assert not is_metabolic(diagonal_form(c3, [F3.one]))
    # -1 is not a square mod 3, so diag(1,1) has no isotropic vector
    assert not is_metabolic(diagonal_form(c3, [F3.one, F3.one]))
    assert is_metabolic(diagonal_form(c3, [F3.el(1), F3.el(2)]))


def test_rank_two_hyperbolic_recognition():
    c3 = coef_over(3)
    F3 = c3.rwi.ring
    mixed = diagonal_form(c3, [F3.el(1), F3.el(2)])
    h = hyperbolic_form(c3, free_module(c3.rwi, 1))
    assert isometric(mixed, h) is not None


def test_canonical_order_idempotent():
    R = QuotientRing(PrimeField(3), [0, 0, 1], "t")
    rwi = involution(R, "id")
    coef = standard_coefficient(rwi)
    t = R.gen("t")
    M = FLModule(rwi, [t, R.zero])  # factors out of canonical order
    f = HermitianForm(coef, M, [[(R.zero,), (t,)], [(t,), (R.one,)]], 1)
    g = canonical_order(f)
    assert [fac.ann.is_zero() for fac in g.module.factors] == [True, False]
    assert canonical_order(g).gram_key() == g.gram_key()


def test_skew_forms_over_f3():
    c3 = coef_over(3)
    F3 = c3.rwi.ring
    h = hyperbolic_form(c3, free_module(c3.rwi, 1), epsilon=-1)
    assert h.epsilon == -1
    assert h.is_nondegenerate()
    assert is_metabolic(h)


def test_coefficient_change_identity():
    c3 = coef_over(3)
    F3 = c3.rwi.ring
    f = diagonal_form(c3, [F3.one])
    J = Matrix.identity(c3.module.F, c3.module.sdim)
    g = coefficient_change(f, c3, J)
    assert g.gram_key() == f.gram_key()


def test_orthogonal_sum_requires_matching_data():
    c3 = coef_over(3)
    c5 = coef_over(5)
    f = diagonal_form(c3, [c3.rwi.ring.one])
    g = diagonal_form(c5, [c5.rwi.ring.one])
    with pytest.raises(CoefficientMismatch):
        orthogonal_sum(f, g)
