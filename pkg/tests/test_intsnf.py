"""Integer Smith normal form and finitely presented abelian groups."""

from wittkit.intsnf import (
    PresentedGroup,
    hom_kernel_cokernel_trivial,
    invariant_factors,
    lattice_contains,
    smith_normal_form,
)


def test_snf_diagonal_divisibility():
    rows = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    d, u, v = smith_normal_form(rows)
    # u * A * v == d, with d diagonal and d_i | d_{i+1}
    n = len(rows)
    prod = [[sum(u[i][k] * rows[k][l] for k in range(n)) for l in range(n)] for i in range(n)]
    prod = [[sum(prod[i][k] * v[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert prod == d
    diag = [d[i][i] for i in range(n)]
    for a, b in zip(diag, diag[1:]):
        if a != 0:
            assert b % a == 0


def test_invariant_factors_known():
    assert invariant_factors([[2, 0], [0, 4]]) == [2, 4]
    assert invariant_factors([[1, 0], [0, 1]]) == []
    assert invariant_factors([[0, 0], [0, 0]]) == [0, 0]
    # Z^2 / <(2,0),(0,3)>: the 6 survives as a single cyclic factor
    assert invariant_factors([[2, 0], [0, 3]]) == [6]


def test_presented_group_factors():
    # Z^2 modulo the column (2, 0): Z/2 x Z
    g = PresentedGroup(2, [[2, 0]])
    assert g.factors == [2, 0]
    assert not g.is_trivial()
    assert PresentedGroup(1, [[1]]).is_trivial()
    assert PresentedGroup(0, []).is_trivial()


def test_generator_image_coordinates():
    g = PresentedGroup(2, [[4, 0]])
    img = g.generator_image(0)
    assert len(img) == len(g.factors)


def test_hom_kernel_cokernel_iso():
    src = PresentedGroup(1, [[4]])  # Z/4
    dst = PresentedGroup(1, [[4]])
    ker, coker = hom_kernel_cokernel_trivial(src, dst, [dst.generator_image(0)])
    assert ker and coker


def test_hom_detects_cokernel():
    src = PresentedGroup(1, [[2]])  # Z/2 -> Z/4 by doubling: injective, not onto
    dst = PresentedGroup(1, [[4]])
    doubled = [2 * c for c in dst.generator_image(0)]
    ker, coker = hom_kernel_cokernel_trivial(src, dst, [doubled])
    assert ker
    assert not coker


def test_hom_detects_kernel():
    src = PresentedGroup(1, [[4]])  # Z/4 -> Z/2: onto, kernel Z/2
    dst = PresentedGroup(1, [[2]])
    ker, coker = hom_kernel_cokernel_trivial(src, dst, [dst.generator_image(0)])
    assert not ker
    assert coker


def test_lattice_contains():
    cols = [[2, 0], [0, 2]]
    assert lattice_contains(cols, [4, -2])
    assert not lattice_contains(cols, [1, 0])
    assert lattice_contains([], [0, 0])
