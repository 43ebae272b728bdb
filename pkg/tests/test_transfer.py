"""Pushforward of duality coefficients and forms along finite ring maps."""

import pytest

from wittkit.coefficients import standard_coefficient
from wittkit.errors import (
    CoefficientMismatch,
    DomainMismatch,
    NotEquivariant,
    NotFinite,
)
from wittkit.forms import HermitianForm, diagonal_form, orthogonal_sum
from wittkit.linalg import Matrix
from wittkit.modules import FLModule
from wittkit.rings import (
    GF,
    PrimeField,
    QuotientRing,
    RingMap,
    identity_map,
    involution,
)
from wittkit.transfer import (
    GammaComparison,
    compose_flats_gamma,
    flat_coefficient,
    restrict_scalars,
    transfer_form,
)


def f9_over_f3():
    F3 = PrimeField(3)
    F9 = GF(9)
    pi = RingMap(F3, F9, [])
    src = involution(F3, "id")
    dst = involution(F9, "frobenius")
    return pi, src, dst


def test_flat_coefficient_of_field_extension():
    pi, src, dst = f9_over_f3()
    tc = flat_coefficient(pi, dst, standard_coefficient(src))
    assert len(tc.module.factors) == 1
    assert tc.module.factors[0].ann.is_zero()
    assert tc.module.sdim == 2


def test_hermitian_transfer_of_unit_form():
    pi, src, dst = f9_over_f3()
    tc = flat_coefficient(pi, dst, standard_coefficient(src))
    F9 = dst.ring
    M = FLModule(dst, [F9.zero])
    f = HermitianForm(tc.coefficient, M, [[F9.one]], 1)
    out = transfer_form(tc, f)
    F3 = src.ring
    assert out.rank() == 2
    assert out.is_nondegenerate()
    assert [fac.ann.is_zero() for fac in out.module.factors] == [True, True]
    flat = [[v[0] for v in row] for row in out.gram]
    assert flat == [[F3.one, F3.zero], [F3.zero, F3.one]]


def test_transfer_requires_matching_coefficient():
    pi, src, dst = f9_over_f3()
    tc = flat_coefficient(pi, dst, standard_coefficient(src))
    # a base-field form is not valued in the pushed-forward coefficient
    f = diagonal_form(standard_coefficient(src), [src.ring.one])
    with pytest.raises(CoefficientMismatch):
        transfer_form(tc, f)


def test_identity_transfer_is_evaluation_iso():
    F3 = PrimeField(3)
    rwi = involution(F3, "id")
    tc = flat_coefficient(identity_map(F3), rwi, standard_coefficient(rwi))
    ev = tc.evaluation_matrix()
    assert ev == Matrix.identity(tc.F, 1)
    f = HermitianForm(tc.coefficient, FLModule(rwi, [F3.zero]), [[F3.el(2)]], 1)
    out = transfer_form(tc, f)
    assert out.gram[0][0] == (F3.el(2),)


def test_socle_coefficient_of_nilpotent_quotient():
    F3 = PrimeField(3)
    R = QuotientRing(F3, [0, 0, 1], "t")
    t = R.gen("t")
    pi = RingMap(R, F3, [F3.zero])
    rwi_k = involution(F3, "id")
    for spec, imat_entry in (("id", 1), ({"t": [0, 2]}, 2)):
        rwi_R = involution(R, spec) if spec != "id" else involution(R, "id")
        tc = flat_coefficient(pi, rwi_k, standard_coefficient(rwi_R))
        assert len(tc.module.factors) == 1
        assert tc.module.factors[0].ann.is_zero()
        assert tc.coefficient.imat == Matrix(tc.F, [[tc.F.el(imat_entry)]])
        gen = tc.module.from_vec((tc.F.one,))
        # the hom picked as generator lands in the socle of R
        assert tc.eval(gen, F3.one) in ((t,), (-t,))


def test_transfer_preserves_orthogonal_sum():
    pi, src, dst = f9_over_f3()
    tc = flat_coefficient(pi, dst, standard_coefficient(src))
    F9 = dst.ring
    u = F9.gen("u")
    M1 = FLModule(dst, [F9.zero])
    f = HermitianForm(tc.coefficient, M1, [[F9.one]], 1)
    g = HermitianForm(tc.coefficient, M1, [[F9.el(2)]], 1)
    both = transfer_form(tc, orthogonal_sum(f, g))
    split = orthogonal_sum(transfer_form(tc, f), transfer_form(tc, g))
    assert both.gram_key() == split.gram_key()


def test_gamma_comparison_on_quotient_tower():
    F3 = PrimeField(3)
    R3 = QuotientRing(F3, [0, 0, 0, 1], "t")
    R2 = QuotientRing(F3, [0, 0, 1], "t")
    p = RingMap(R3, R2, [R2.gen("t")])
    q = RingMap(R2, F3, [F3.zero])
    rwi_mid = involution(R2, "id")
    rwi_dst = involution(F3, "id")
    for spec in ("id", {"t": [0, 2]}):
        rwi_R = involution(R3, spec) if spec != "id" else involution(R3, "id")
        if spec != "id":
            rwi_mid = involution(R2, {"t": [0, 2]})
        gamma = GammaComparison(p, q, rwi_mid, rwi_dst, standard_coefficient(rwi_R))
        assert gamma.matrix == Matrix.identity(gamma.direct.F, 1)
        same = compose_flats_gamma(p, q, rwi_mid, rwi_dst, standard_coefficient(rwi_R))
        assert same.matrix == gamma.matrix


def test_transfer_error_taxonomy():
    F3 = PrimeField(3)
    F9 = GF(9)
    pi = RingMap(F3, F9, [])
    dst = involution(F9, "frobenius")
    src = involution(F3, "id")
    with pytest.raises(DomainMismatch):
        flat_coefficient(pi, dst, standard_coefficient(dst))
    ident = identity_map(F9)
    with pytest.raises(NotEquivariant):
        flat_coefficient(ident, dst, standard_coefficient(involution(F9, "id")))
    with pytest.raises(NotFinite):
        flat_coefficient(pi, dst, standard_coefficient(src), generators=[F9.one])


def test_restrict_scalars_roundtrip():
    pi, src, dst = f9_over_f3()
    M = FLModule(dst, [dst.ring.zero])
    res = restrict_scalars(pi, src, M)
    assert res.module.length == 2
    x = M.element([dst.ring.gen("u")])
    back = res.from_restricted(res.to_restricted(x))
    assert back == x
