"""Ring tower: construction, exact arithmetic, involutions, maps."""

from fractions import Fraction

import pytest

from wittkit.errors import (
    CharacteristicTwo,
    NotAHomomorphism,
    NotAUnit,
    NotInvolutive,
    RingMismatch,
    WittKitError,
)
from wittkit.rings import (
    GF,
    Element,
    PolynomialRing,
    PrimeField,
    ProductRing,
    QuadraticField,
    QuotientRing,
    Rationals,
    RingMap,
    RingWithInvolution,
    check_equivariant_map,
    compose_maps,
    identity_map,
    involution,
)


def test_prime_field_arithmetic():
    F3 = PrimeField(3)
    a = F3.el(2)
    assert a + a == F3.el(1)
    assert a * a == F3.el(1)
    assert (-a) == F3.el(1)
    assert a.inverse() == a
    assert a ** 4 == F3.el(1)
    assert F3.el(0).is_zero()
    assert not F3.el(0).is_unit()
    with pytest.raises(NotAUnit):
        F3.el(0).inverse()


def test_prime_field_char_two_rejected():
    with pytest.raises(CharacteristicTwo):
        PrimeField(2)


def test_rationals_exact():
    Q = Rationals()
    x = Q.el(Fraction(1, 3))
    assert x + x + x == Q.el(1)
    assert (x.inverse()) == Q.el(3)
    assert Q.el(7) == 7  # int coercion through __eq__


def test_quadratic_field_conjugation():
    Qi = QuadraticField(-1)
    i = Qi.gen("i")
    assert i * i == Qi.el(-1)
    sigma = involution(Qi, "conj")
    assert sigma.conj(i) == -i
    assert sigma.conj(Qi.el(5)) == Qi.el(5)
    # norm of 1+i
    z = Qi.one + i
    assert z * sigma.conj(z) == Qi.el(2)


def test_gf9_generator_and_frobenius():
    F9 = GF(9)
    u = F9.gen("u")
    assert u * u == -F9.one
    assert u ** 4 == F9.one
    assert F9.size() == 9
    sigma = involution(F9, "frobenius")
    assert sigma.conj(u) == u ** 3
    assert sigma.conj(sigma.conj(u)) == u
    fixed = [e for e in F9.elements() if sigma.conj(e) == e]
    assert len(fixed) == 3


def test_quotient_ring_nilpotents():
    F3 = PrimeField(3)
    R = QuotientRing(F3, [0, 0, 1], "t")  # F_3[t]/(t^2)
    t = R.gen("t")
    assert t * t == R.zero
    assert (R.one + t).is_unit()
    assert (R.one + t).inverse() == R.one - t
    assert not t.is_unit()
    assert R.size() == 9
    assert not R.is_field


def test_quotient_ring_cubed():
    F3 = PrimeField(3)
    R = QuotientRing(F3, [0, 0, 0, 1], "t")
    t = R.gen("t")
    assert t * t * t == R.zero
    assert not (t * t).is_zero()
    inv = (R.one - t).inverse()
    assert inv * (R.one - t) == R.one


def test_product_ring_idempotents():
    F3 = PrimeField(3)
    P = ProductRing(F3, F3)
    e1, e2 = P.idempotents()
    assert e1 * e1 == e1
    assert e1 * e2 == P.zero
    assert e1 + e2 == P.one
    assert not e1.is_unit()
    assert P.size() == 9


def test_swap_involution_on_product():
    F3 = PrimeField(3)
    P = ProductRing(F3, F3)
    sigma = involution(P, "swap")
    e1, e2 = P.idempotents()
    assert sigma.conj(e1) == e2
    assert not sigma.is_trivial()


def test_involution_from_assignments_on_quotient():
    F3 = PrimeField(3)
    R = QuotientRing(F3, [0, 0, 1], "t")
    sigma = involution(R, {"t": [0, 2]})  # t -> -t
    t = R.gen("t")
    assert sigma.conj(t) == -t
    assert sigma.conj(R.one + t) == R.one - t


def test_involution_must_square_to_identity():
    # the cube map on GF(81) is an automorphism of order 4
    F81 = GF(81)
    u = F81.gen("u")
    with pytest.raises(NotInvolutive):
        involution(F81, {"u": u ** 3})


def test_polynomial_ring_normal_form():
    Q = Rationals()
    RXY = PolynomialRing(Q, ["X", "Y"])
    X, Y = RXY.gen("X"), RXY.gen("Y")
    p = (X + Y) * (X - Y)
    assert p == X * X - Y * Y
    assert RXY.total_degree(p.data) == 2
    assert RXY.total_degree(RXY.zero.data) == -1
    assert repr(X - Y) == "-1*Y + X"


def test_polynomial_involution_needs_elements():
    Q = Rationals()
    Rt = PolynomialRing(Q, ["t"])
    t = Rt.gen("t")
    sigma = involution(Rt, {"t": -t})
    assert sigma.conj(t * t + t) == t * t - t


def test_ring_map_checks_relations():
    F3 = PrimeField(3)
    R2 = QuotientRing(F3, [0, 0, 1], "t")
    R3 = QuotientRing(F3, [0, 0, 0, 1], "t")
    # t -> t is not a map R2 -> R3 (t^2 != 0 there)
    with pytest.raises(NotAHomomorphism):
        RingMap(R2, R3, [R3.gen("t")])
    # the quotient direction works
    pi = RingMap(R3, R2, [R2.gen("t")])
    assert pi(R3.gen("t") ** 2) == R2.gen("t") ** 2
    assert pi(R3.gen("t") ** 2) == R2.zero + R2.gen("t") * R2.gen("t")


def test_map_composition_and_identity():
    F3 = PrimeField(3)
    R = QuotientRing(F3, [0, 0, 1], "t")
    pi = RingMap(R, F3, [F3.zero])
    ident = identity_map(R)
    comp = compose_maps(pi, ident)
    t = R.gen("t")
    assert comp(t) == F3.zero
    assert comp(R.one + t) == F3.one


def test_equivariant_map_check():
    F3 = PrimeField(3)
    R = QuotientRing(F3, [0, 0, 1], "t")
    pi = RingMap(R, F3, [F3.zero])
    sig_R = involution(R, {"t": [0, 2]})
    sig_k = involution(F3, "id")
    assert check_equivariant_map(pi, sig_R, sig_k)


def test_element_cross_ring_rejected():
    F3 = PrimeField(3)
    F5 = PrimeField(5)
    with pytest.raises(RingMismatch):
        F3.el(1) + F5.el(1)


def test_rwi_structural_equality():
    F3 = PrimeField(3)
    a = involution(F3, "id")
    b = involution(F3, "id")
    assert a == b
    assert hash(a) == hash(b)


def test_fixed_scalar_subspace_of_frobenius():
    F9 = GF(9)
    sigma = involution(F9, "frobenius")
    fixed = sigma.fixed_scalar_subspace()
    # F_3 inside F_9 is one scalar dimension out of two
    assert len(fixed) == 1


def test_finite_enumeration_counts():
    F3 = PrimeField(3)
    R = QuotientRing(F3, [0, 0, 1], "t")
    assert len(list(R.elements())) == 9
    P = ProductRing(F3, F3)
    assert len(list(P.elements())) == 9
    assert not Rationals().is_finite
