"""Witt groups of finite rings with involution by explicit classification.

The engine enumerates isometry classes of nondegenerate epsilon-hermitian
forms shape by shape.  Single-factor shapes are classified exhaustively.
Larger shapes are generated by orthogonal sums of single-factor classes and
hyperbolic forms on indecomposables: over the rings supported here (finite
fields, k[t]/(t^n), k x k) every nondegenerate form splits orthogonally
into pieces with at most two cyclic factors, so this closure reaches every
class.  The closure property is not taken on faith at runtime: class lookup
proceeds by fingerprint bucketing plus an honest backtracking isometry
search, and a form that matches no enumerated class raises EngineError
(tests also cross-validate against brute-force Gram enumeration on shapes
small enough to afford it).

The Witt group at a length bound b is presented by one generator per class
of total length <= b, with relations [f + g] - [f] - [g] whenever the sum
still fits the bound, and [m] = 0 for metabolic m.  Raising the bound by
one induces a map of presentations; the result records whether that map is
an isomorphism (the presentation is then bound-stable)."""

from __future__ import annotations

import itertools

from .coefficients import DoubleDualComparison, DualModule
from .errors import (
    CoefficientMismatch,
    EngineError,
    EnumerationBoundExceeded,
    FormMismatch,
    NotFinite,
)
from .forms import (
    HermitianForm,
    canonical_order,
    hyperbolic_form,
    is_metabolic,
    isometric,
    orthogonal_sum,
)
from .intsnf import PresentedGroup, hom_kernel_cokernel_trivial
from .linalg import Matrix
from .modules import CyclicFactor, FLModule, indecomposable_factor_anns


class WittEngine:
    def __init__(self, coef, epsilon, max_size=400000):
        ring = coef.rwi.ring
        if not ring.is_finite:
            raise NotFinite(f"class enumeration needs a finite ring, not {ring}")
        self.coef = coef
        self.rwi = coef.rwi
        self.ring = ring
        self.epsilon = epsilon
        self.max_size = max_size
        anns = indecomposable_factor_anns(ring)
        # key-sorted, so modules assembled from these anns in index order
        # come out in the canonical factor order
        anns.sort(key=lambda a: CyclicFactor(ring, a).key)
        self._anns = anns
        self._facts = [CyclicFactor(ring, a) for a in self._anns]
        self._ann_by_key = {f.key: a for f, a in zip(self._facts, self._anns)}
        for a in self._anns:
            M = FLModule(self.rwi, [a])
            DoubleDualComparison(coef, M).require_strong()
        self._blocks = None
        self._classes = {}
        self._fps = {}
        self._metabolic = {}
        self._duals = {}

    # -- invariant caches --------------------------------------------------
    def dual_of(self, module):
        if module.key not in self._duals:
            self._duals[module.key] = DualModule(self.coef, module)
        return self._duals[module.key]

    def fingerprint(self, form):
        k = (form.module.key, form.gram_key())
        if k not in self._fps:
            self._fps[k] = form.norm_fingerprint()
        return self._fps[k]

    def metabolic(self, form):
        k = (form.module.key, form.gram_key())
        if k not in self._metabolic:
            self._metabolic[k] = is_metabolic(form, dual=self.dual_of(form.module))
        return self._metabolic[k]

    # -- building blocks ---------------------------------------------------
    def one_factor_classes(self, ann):
        """Exhaustive classification on R/(ann): the Gram entry ranges over
        the subspace of the coefficient module cut out by both annihilator
        conditions and epsilon-self-adjointness."""
        module = FLModule(self.rwi, [ann])
        I = self.coef.module
        F = I.F
        sig_ann = self.rwi.conj(self.ring.el(ann))
        conds = I.action_matrix(sig_ann).vstack(I.action_matrix(ann)).vstack(
            Matrix.identity(F, I.sdim) - I.action_matrix(self.ring.el(self.epsilon)) * self.coef.imat
        )
        sol = conds.nullspace_basis()
        found = []
        opts = list(F.elements())
        dual = self.dual_of(module)
        for combo in itertools.product(opts, repeat=len(sol)):
            vec = [F.zero] * I.sdim
            for c, b in zip(combo, sol):
                vec = [x + c * y for x, y in zip(vec, b)]
            entry = I.from_vec(tuple(vec))
            form = HermitianForm(self.coef, module, [[entry]], self.epsilon, check=False)
            if not form.is_nondegenerate(dual):
                continue
            fp = self.fingerprint(form)
            if any(self.fingerprint(g) == fp and isometric(form, g) is not None for g in found):
                continue
            found.append(form)
        found.sort(key=lambda f: (self.fingerprint(f), f.gram_key()))
        return found

    def blocks(self):
        """Forms that generate everything under orthogonal sums: all
        single-factor classes plus H(N) for each indecomposable N."""
        if self._blocks is None:
            out = []
            for a in self._anns:
                out.extend(self.one_factor_classes(a))
            for a in self._anns:
                N = FLModule(self.rwi, [a])
                h = canonical_order(hyperbolic_form(self.coef, N, epsilon=self.epsilon))
                out.append(h.require_nondegenerate(self.dual_of(h.module)))
            self._blocks = out
        return self._blocks

    # -- shapes and classes ------------------------------------------------
    def shapes_up_to(self, bound):
        lens = [f.length for f in self._facts]
        shapes = []

        def rec(start, remaining, cur):
            if cur:
                shapes.append(tuple(cur))
            for k in range(start, len(self._anns)):
                if lens[k] <= remaining:
                    cur.append(self._anns[k])
                    rec(k, remaining - lens[k], cur)
                    cur.pop()

        rec(0, bound, [])
        mods = [FLModule(self.rwi, s) for s in shapes]
        mods.sort(key=lambda m: (m.length, m.key))
        return mods

    def classes(self, module):
        order = sorted(range(len(module.factors)), key=lambda k: (module.factors[k].key, k))
        if order != list(range(len(module.factors))):
            module = FLModule(self.rwi, [module.factors[k].ann for k in order])
        if module.key in self._classes:
            return self._classes[module.key]
        if module.size() > self.max_size:
            raise EnumerationBoundExceeded(
                f"module of size {module.size()} exceeds the engine limit {self.max_size}"
            )
        if not module.factors:
            empty = HermitianForm(self.coef, module, [], self.epsilon, check=False)
            self._classes[module.key] = [empty]
            return self._classes[module.key]
        pivot = module.factors[0].key
        from collections import Counter
        skeys = Counter(f.key for f in module.factors)
        found = []
        for blk in self.blocks():
            bkeys = Counter(f.key for f in blk.module.factors)
            if pivot not in bkeys or (bkeys - skeys):
                continue
            rest = skeys - bkeys
            rest_anns = []
            for k, mult in sorted(rest.items()):
                rest_anns.extend([self._ann_by_key[k]] * mult)
            rest_mod = FLModule(self.rwi, rest_anns)
            for c in self.classes(rest_mod):
                s = orthogonal_sum(c, blk) if c.module.factors else blk
                if s.module.key != module.key:
                    raise EngineError("orthogonal sum landed on the wrong shape")
                fp = self.fingerprint(s)
                if any(self.fingerprint(g) == fp and isometric(s, g) is not None for g in found):
                    continue
                found.append(s)
        found.sort(key=lambda f: (self.fingerprint(f), f.gram_key()))
        self._classes[module.key] = found
        return found

    def lookup(self, form):
        """The enumerated class isometric to form; EngineError on a miss,
        which would mean the sum closure missed a class."""
        form = canonical_order(form)
        for g in self.classes(form.module):
            if self.fingerprint(g) == self.fingerprint(form) and isometric(form, g) is not None:
                return g
        raise EngineError(
            f"no enumerated class matches a nondegenerate form on {form.module!r}; "
            "the orthogonal-sum closure is incomplete for this ring"
        )


def group_name(factors):
    if not factors:
        return "0"
    parts = []
    for d in factors:
        parts.append("Z" if d == 0 else f"Z/{d}")
    return " x ".join(parts)


class WittGroupResult:
    def __init__(self, coef, epsilon, bound, classes, presentation, stable, engine):
        self.coef = coef
        self.epsilon = epsilon
        self.bound = bound
        self.classes = classes
        self.presentation = presentation
        self.factors = presentation.factors
        self.stable = stable
        self.engine = engine
        self._index = {(f.module.key, f.gram_key()): i for i, f in enumerate(classes)}

    def class_index(self, form):
        if form.coef != self.coef:
            raise CoefficientMismatch("form uses a different duality coefficient")
        if form.epsilon != self.epsilon:
            raise FormMismatch("form has the wrong symmetry sign")
        form.require_nondegenerate(self.engine.dual_of(form.module))
        if form.module.length > self.bound:
            raise EnumerationBoundExceeded(
                f"form length {form.module.length} exceeds the bound {self.bound}"
            )
        rep = self.engine.lookup(form)
        return self._index[(rep.module.key, rep.gram_key())]

    def class_coords(self, form):
        """Image of [form] in the invariant-factor decomposition."""
        return self.presentation.generator_image(self.class_index(form))

    def describe(self):
        name = group_name(self.factors)
        tag = "stable" if self.stable else ("unstable" if self.stable is not None else "unchecked")
        return f"{name} ({tag})"

    def __repr__(self):
        return f"WittGroupResult({self.engine.ring}, eps={self.epsilon:+d}, bound={self.bound}: {self.describe()})"


def _presentation_at(engine, bound):
    mods = engine.shapes_up_to(bound)
    classes = []
    for m in mods:
        classes.extend(engine.classes(m))
    idx = {(f.module.key, f.gram_key()): i for i, f in enumerate(classes)}
    n = len(classes)
    cols = []
    for i, f in enumerate(classes):
        if engine.metabolic(f):
            col = [0] * n
            col[i] = 1
            cols.append(col)
    for i, f in enumerate(classes):
        for j, g in enumerate(classes):
            if j < i:
                continue
            if f.module.length + g.module.length > bound:
                continue
            s = orthogonal_sum(f, g)
            k = idx[_keypair(engine.lookup(s))]
            col = [0] * n
            col[k] += 1
            col[i] -= 1
            col[j] -= 1
            cols.append(col)
    return PresentedGroup(n, cols), classes, idx


def _keypair(form):
    return (form.module.key, form.gram_key())


def witt_group(coef, epsilon, bound, check_stability=True, max_size=400000, engine=None):
    """The presented Witt group at the given length bound.

    check_stability also computes the bound+1 presentation and records
    whether the induced map is an isomorphism."""
    engine = engine if engine is not None else WittEngine(coef, epsilon, max_size=max_size)
    pres, classes, _ = _presentation_at(engine, bound)
    stable = None
    if check_stability:
        pres1, classes1, idx1 = _presentation_at(engine, bound + 1)
        images = []
        for f in classes:
            col = [0] * len(classes1)
            col[idx1[_keypair(f)]] = 1
            images.append(col)
        ker, coker = hom_kernel_cokernel_trivial(pres, pres1, images)
        stable = ker and coker
    return WittGroupResult(coef, epsilon, bound, classes, pres, stable, engine)


# ---------------------------------------------------------------------------
# brute-force cross-validation


def _gram_slots(coef, module, epsilon):
    """Free parameters of a Gram table: one slot per entry on or above the
    diagonal, each a scalar basis of the subspace allowed by the
    annihilator conditions (and epsilon-self-adjointness on the
    diagonal); below-diagonal entries are forced by symmetry."""
    I = coef.module
    F = I.F
    eps_el = coef.rwi.ring.el(epsilon)
    slots = []
    n = len(module.factors)
    for i in range(n):
        for j in range(i, n):
            fi, fj = module.factors[i], module.factors[j]
            conds = I.action_matrix(coef.rwi.conj(fi.ann)).vstack(I.action_matrix(fj.ann))
            if i == j:
                conds = conds.vstack(
                    Matrix.identity(F, I.sdim) - I.action_matrix(eps_el) * coef.imat
                )
            slots.append(((i, j), conds.nullspace_basis()))
    return slots


def _gram_from_assignment(coef, module, epsilon, slots, assignment):
    I = coef.module
    F = I.F
    eps_el = coef.rwi.ring.el(epsilon)
    n = len(module.factors)
    gram = [[I.zero() for _ in range(n)] for _ in range(n)]
    for ((i, j), basis), combo in zip(slots, assignment):
        vec = [F.zero] * I.sdim
        for c, b in zip(combo, basis):
            vec = [x + c * y for x, y in zip(vec, b)]
        e = I.from_vec(tuple(vec))
        gram[i][j] = e
        if i != j:
            gram[j][i] = I.scal(eps_el, coef.i(e))
    return HermitianForm(coef, module, gram, epsilon, check=False)


def enumerate_gram_tables(coef, module, epsilon, limit=200000):
    """Every valid Gram table on the module, lazily.  Guarded by limit."""
    F = coef.module.F
    slots = _gram_slots(coef, module, epsilon)
    total = 1
    for _, basis in slots:
        total *= F.size() ** len(basis)
    if total > limit:
        raise EnumerationBoundExceeded(f"{total} Gram tables exceed the limit {limit}")
    opts = list(F.elements())
    spaces = [list(itertools.product(opts, repeat=len(basis))) for _, basis in slots]
    for assignment in itertools.product(*spaces):
        yield _gram_from_assignment(coef, module, epsilon, slots, assignment)


def sample_gram_tables(coef, module, epsilon, count, rng):
    """count uniformly random valid Gram tables (seeded)."""
    F = coef.module.F
    slots = _gram_slots(coef, module, epsilon)
    opts = list(F.elements())
    for _ in range(count):
        assignment = [tuple(rng.choice(opts) for _ in basis) for _, basis in slots]
        yield _gram_from_assignment(coef, module, epsilon, slots, assignment)


def cross_validate_classes(engine, module, limit=200000, sample=None, rng=None):
    """Check the sum-closure class list against brute force: every
    nondegenerate Gram table on the module must match an enumerated class
    (EngineError otherwise).  With sample set, a seeded random subset is
    checked instead of the full enumeration.  Returns the number of
    nondegenerate forms checked."""
    if sample is not None:
        forms = sample_gram_tables(engine.coef, module, engine.epsilon, sample, rng)
    else:
        forms = enumerate_gram_tables(engine.coef, module, engine.epsilon, limit=limit)
    checked = 0
    for f in forms:
        if not f.is_nondegenerate():
            continue
        engine.lookup(f)
        checked += 1
    return checked
