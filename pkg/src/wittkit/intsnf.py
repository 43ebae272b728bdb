"""Integer Smith normal form and finitely presented abelian groups.

Everything is plain Python ints (exact, arbitrary precision).  A presented
group is Z^n modulo the column span of a relation matrix; comparisons of
presented groups (kernel/cokernel of a map given on generators) reduce to
Smith computations on block matrices.
"""

from __future__ import annotations

from .errors import WittKitError


def smith_normal_form(a):
    """Return (d, u, v) with u*a*v = d, u and v unimodular, d diagonal with
    d[i][i] | d[i+1][i+1].  a is a list of int rows (may be empty)."""
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(row) for row in a]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):  # row i += c * row j
        d[i] = [x + c * y for x, y in zip(d[i], d[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, c):  # col i += c * col j
        for row in d:
            row[i] += c * row[j]
        for row in v:
            row[i] += c * row[j]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # find a nonzero pivot in the remaining block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0:
                    if piv is None or abs(d[i][j]) < abs(d[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                if d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    add_row(i, t, -q)
                    if d[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    add_col(j, t, -q)
                    if d[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        # make the pivot divide the rest of the block
        redo = False
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % d[t][t] != 0:
                    add_row(t, i, 1)
                    redo = True
                    break
            if redo:
                break
        if redo:
            continue
        if d[t][t] < 0:
            negate_row(t)
        t += 1
    return d, u, v


def invariant_factors(a):
    """Nonzero diagonal entries != 1 of the Smith form, then one 0 per free
    rank of the cokernel.  For a presentation Z^m / columns(a) this is the
    canonical decomposition [d1, ..., dk, 0, ..., 0]."""
    m = len(a)
    if m == 0:
        return []
    d, _, _ = smith_normal_form(a)
    n = len(a[0])
    diag = [d[i][i] for i in range(min(m, n))]
    r = sum(1 for x in diag if x != 0)
    torsion = [x for x in diag if x not in (0, 1)]
    return torsion + [0] * (m - r)


class PresentedGroup:
    """Z^ngens modulo the columns of relations (list of column vectors)."""

    def __init__(self, ngens, relation_columns):
        self.ngens = ngens
        self.relations = [list(c) for c in relation_columns]
        for c in self.relations:
            if len(c) != ngens:
                raise WittKitError("relation length mismatch")
        rows = [[c[i] for c in self.relations] for i in range(ngens)]
        if not self.relations:
            rows = [[] for _ in range(ngens)]
        self._rows = rows
        self.factors = invariant_factors(rows) if ngens else []
        d, u, _ = smith_normal_form(rows) if ngens else ([], [], [])
        self._snf_d = d
        self._snf_u = u

    def generator_image(self, idx):
        """Coordinates of generator idx in the canonical decomposition
        (one coordinate per invariant factor, torsion reduced)."""
        if self.ngens == 0:
            return ()
        ncols = len(self.relations)
        diag = [self._snf_d[i][i] for i in range(min(self.ngens, ncols))]
        diag += [0] * (self.ngens - len(diag))
        coords = []
        for i in range(self.ngens):
            c = self._snf_u[i][idx]
            if diag[i] == 1:
                continue
            coords.append(c % diag[i] if diag[i] else c)
        return tuple(coords)

    def is_trivial(self):
        return all(f == 1 for f in self.factors) or not self.factors


def hom_kernel_cokernel_trivial(src, dst, gen_images):
    """For the map src -> dst sending generator i to the integer combination
    gen_images[i] of dst generators: return (kernel_trivial, coker_trivial).

    Cokernel: Z^n / (image columns + dst relations).  Kernel: the lattice
    {x : F x in span(dst relations)} modulo src relations."""
    n = dst.ngens
    m = src.ngens
    f_cols = [list(c) for c in gen_images]
    if len(f_cols) != m or any(len(c) != n for c in f_cols):
        raise WittKitError("gen_images shape mismatch")

    coker_cols = f_cols + dst.relations
    coker_rows = [[c[i] for c in coker_cols] for i in range(n)]
    if not coker_cols:
        coker_rows = [[] for _ in range(n)]
    coker_trivial = all(f == 1 for f in invariant_factors(coker_rows)) or n == 0

    # kernel lattice: integer nullspace of [F | dst.relations], projected
    # to the F-coordinates
    aug_cols = f_cols + dst.relations
    k = len(aug_cols)
    rows = [[c[i] for c in aug_cols] for i in range(n)]
    if k == 0:
        lattice = []
    else:
        d, _, v = smith_normal_form(rows) if n else ([], [], [[int(i == j) for j in range(k)] for i in range(k)])
        rank = 0
        if n:
            for i in range(min(n, k)):
                if d[i][i] != 0:
                    rank += 1
        lattice = []
        for j in range(rank, k):
            col = [v[i][j] for i in range(k)]
            lattice.append(col[:m])
    # kernel of the presented map = (lattice projected) / src relations;
    # trivial iff every lattice vector lies in the relation span of src
    ker_cols = lattice + src.relations
    base_cols = src.relations
    ker_trivial = _same_column_span(ker_cols, base_cols, m)
    return ker_trivial, coker_trivial


def lattice_contains(cols, vec):
    """Is vec in the sublattice of Z^n spanned by the given columns?
    Solved via Smith form: with u*A*v = d, the system A x = vec has an
    integer solution iff (u*vec) is divisible by the diagonal."""
    n = len(vec)
    if not cols:
        return all(x == 0 for x in vec)
    rows = [[c[i] for c in cols] for i in range(n)]
    d, u, _ = smith_normal_form(rows)
    w = [sum(u[i][j] * vec[j] for j in range(n)) for i in range(n)]
    k = len(cols)
    for i in range(n):
        di = d[i][i] if i < min(n, k) else 0
        if di == 0:
            if w[i] != 0:
                return False
        elif w[i] % di != 0:
            return False
    return True


def _same_column_span(cols_a, cols_b, nrows):
    """Do two integer column families span the same sublattice of Z^nrows?
    Checked by mutual membership (families are small here)."""
    return all(lattice_contains(cols_b, c) for c in cols_a) and all(
        lattice_contains(cols_a, c) for c in cols_b
    )
