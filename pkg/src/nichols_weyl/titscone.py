"""Geometric realization of a standard Cartan graph.

Coordinates: V = Q^theta with dual basis phi_1..phi_theta; the base chamber
has root basis phi_1..phi_theta.  A morphism w: base -> X gives the chamber
with covectors beta_i = columns of w^-1, i.e. psi o w^-1 applied to alpha_i.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .cartangraph import CartanGraph, Label
from .exact import Matrix, rank_kernel
from .weylroots import IntMatrix, identity, matmul, real_roots, simple_reflection


class NotSimplyConnected(ValueError):
    """Two distinct morphisms from the base reach the same object."""


class NotAffine(ValueError):
    pass


@dataclass(frozen=True)
class Chamber:
    obj: Label
    basis: IntMatrix  # rows are the covectors beta_1..beta_theta in phi-coordinates
    word: tuple[int, ...]

    def rays(self) -> list[tuple[Fraction, ...]]:
        """Extreme rays: the dual basis to the covectors (columns of basis^-1)."""
        inv = Matrix([[int(c) for c in r] for r in self.basis]).inverse()
        return [tuple(x.to_fraction() for x in inv.column(k)) for k in range(len(self.basis))]


def _transpose(m: IntMatrix) -> IntMatrix:
    return tuple(zip(*m))


def realize(g: CartanGraph, L: int, base: Optional[Label] = None, mode: str = "cover") -> list[Chamber]:
    """Chambers for all morphisms base -> X of length <= L.

    mode="strict" keys chambers by object and raises NotSimplyConnected when
    an object is reached by two different matrices; mode="cover" keys them by
    (object, matrix), i.e. realizes the universal cover of the groupoid.
    """
    if mode not in ("strict", "cover"):
        raise ValueError(f"unknown mode {mode!r}")
    base = g.base if base is None else base
    n = g.rank
    # track w^-1 : X -> base; w_Y^-1 = w_X^-1 s_i^Y for Y = r_i(X)
    start = (base, identity(n))
    seen = {start: ()}
    by_obj: dict = {base: (identity(n), ())}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        word = seen[state]
        if len(word) == L:
            continue
        obj, winv = state
        for i in range(n):
            y = g.r[obj][i]
            nxt = (y, matmul(winv, simple_reflection(g.cartan[y], i)))
            if nxt in seen:
                continue
            seen[nxt] = word + (i,)
            queue.append(nxt)
            if mode == "strict":
                if y in by_obj and by_obj[y][0] != nxt[1]:
                    raise NotSimplyConnected(
                        f"object {y} reached by words {list(by_obj[y][1])} and {list(word + (i,))} with different matrices"
                    )
                by_obj.setdefault(y, (nxt[1], word + (i,)))
    return [Chamber(obj, _transpose(winv), w) for (obj, winv), w in seen.items()]


# ---------------------------------------------------------------------------
# classification


def _principal_minors_positive(A) -> bool:
    n = len(A)
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            sub = Matrix([[A[i][j] for j in idx] for i in idx])
            if not sub.det().to_fraction() > 0:
                return False
    return True


def _positive_kernel_vector(A) -> Optional[tuple[int, ...]]:
    """Primitive strictly positive integer v with A v = 0, if the kernel is a line."""
    _, ker = rank_kernel(Matrix(A))
    if len(ker) != 1:
        return None
    v = [x.to_fraction() for x in ker[0]]
    if all(c < 0 for c in v):
        v = [-c for c in v]
    if not all(c > 0 for c in v):
        return None
    den = 1
    for c in v:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in v]
    g = 0
    for c in ints:
        g = _gcd(g, c)
    return tuple(c // g for c in ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@dataclass
class TitsReport:
    classification: str
    cartan: list
    null_vector: Optional[tuple] = None  # v A = 0
    delta: Optional[tuple] = None  # coefficients of delta in phi-coordinates (A u = 0)
    roots_closed: Optional[bool] = None
    root_count: Optional[int] = None
    inconsistent: bool = False
    notes: list = field(default_factory=list)


def classify_cone(g: CartanGraph, L: int = 9) -> TitsReport:
    if not g.is_standard():
        return TitsReport("unsupported - nonstandard", [])
    A = g.cartan[g.objects[0]]
    finite = _principal_minors_positive(A)
    left = _positive_kernel_vector([list(r) for r in zip(*A)])
    right = _positive_kernel_vector(A)
    R1 = real_roots(g, g.base, L)
    R2 = real_roots(g, g.base, L + 1)
    closed = R1.roots == R2.roots
    rep = TitsReport("indefinite", [list(r) for r in A], roots_closed=closed, root_count=len(R2))
    if finite:
        rep.classification = "finite"
        if not closed:
            rep.inconsistent = True
            rep.notes.append("positive definite but roots did not close within the bound")
    elif left is not None and right is not None:
        rep.classification = "affine"
        rep.null_vector = left
        rep.delta = right
    if closed and not finite:
        rep.inconsistent = True
        rep.notes.append("roots closed within the bound for a non-finite matrix")
    return rep


# ---------------------------------------------------------------------------
# checks on realized chambers


def covector_sum(ch: Chamber, v) -> tuple:
    n = len(ch.basis)
    return tuple(sum(v[i] * ch.basis[i][k] for i in range(n)) for k in range(n))


def half_space_violations(chambers: list[Chamber], delta) -> list[Chamber]:
    """Chambers with an extreme ray on which delta is not strictly positive."""
    bad = []
    for ch in chambers:
        for ray in ch.rays():
            if not sum(d * x for d, x in zip(delta, ray)) > 0:
                bad.append(ch)
                break
    return bad


def adjacency_violations(g: CartanGraph, chambers: list[Chamber]) -> list[tuple]:
    """Across wall i: beta_i' = -beta_i and beta_j' = beta_j - a_ij beta_i."""
    index = {(c.obj, c.basis): c for c in chambers}
    bad = []
    n = g.rank
    for c in chambers:
        A = g.cartan[c.obj]
        for i in range(n):
            b = c.basis
            new = []
            for j in range(n):
                if j == i:
                    new.append(tuple(-x for x in b[i]))
                else:
                    new.append(tuple(b[j][k] - A[i][j] * b[i][k] for k in range(n)))
            key = (g.r[c.obj][i], tuple(new))
            # only pairs with both ends realized are checked
            if len(c.word) < max(len(x.word) for x in chambers) and key not in index:
                bad.append((c.word, i))
    return bad


@dataclass
class TilingReport:
    side: int
    denominator: int
    points: int = 0
    interior_once: int = 0
    boundary_only: int = 0
    uncovered: list = field(default_factory=list)
    double_interior: list = field(default_factory=list)
    ring_width: Fraction = Fraction(0)

    @property
    def uncovered_outside_ring(self) -> list:
        lim = self.side - self.ring_width
        return [p for p in self.uncovered if max(abs(t) for t in p) < lim]

    @property
    def ok(self) -> bool:
        return not self.double_interior and not self.uncovered_outside_ring


def slice_frame(delta) -> tuple[tuple[Fraction, ...], list[tuple[Fraction, ...]]]:
    """A point p0 with delta(p0) = 1 and a basis of ker(delta)."""
    n = len(delta)
    k = next(i for i, d in enumerate(delta) if d)
    p0 = tuple(Fraction(1, delta[k]) if i == k else Fraction(0) for i in range(n))
    _, ker = rank_kernel(Matrix([list(delta)]))
    return p0, [tuple(x.to_fraction() for x in v) for v in ker]


def alcove_tiling_check(
    chambers: list[Chamber], delta, side: int = 2, denominator: int = 7, ring_width: Fraction = Fraction(1)
) -> TilingReport:
    """Grid over [-side, side]^(theta-1) on the slice delta = 1: each point must
    lie in some closed alcove, and strictly inside at most one."""
    p0, basis = slice_frame(delta)
    n = len(delta)
    d = denominator
    # scale everything by d * common denominator so membership is integer arithmetic
    den = 1
    for x in p0 + tuple(c for v in basis for c in v):
        den = den * x.denominator // _gcd(den, x.denominator)
    scale = d * den
    P0 = [int(x * scale) for x in p0]
    B = [[int(c * den) for c in v] for v in basis]
    covs = sorted({ch.basis for ch in chambers})
    rep = TilingReport(side, denominator, ring_width=Fraction(ring_width))
    rng = range(-side * d, side * d + 1)
    for ts in itertools.product(rng, repeat=len(basis)):
        x = [P0[k] + sum(t * B[m][k] for m, t in enumerate(ts)) for k in range(n)]
        interior = 0
        closed = 0
        for cov in covs:
            vals = [sum(row[k] * x[k] for k in range(n)) for row in cov]
            if min(vals) >= 0:
                closed += 1
                if min(vals) > 0:
                    interior += 1
        rep.points += 1
        pt = tuple(Fraction(t, d) for t in ts)
        if closed == 0:
            rep.uncovered.append(pt)
        elif interior > 1:
            rep.double_interior.append(pt)
        elif interior == 1:
            rep.interior_once += 1
        else:
            rep.boundary_only += 1
    return rep


def realization_report(g: CartanGraph, L_roots: int, L_chambers: int, side: int, den: int) -> dict:
    """Everything the titscone command prints, as plain data."""
    cls = classify_cone(g, L_roots)
    out: dict = {
        "classification": cls.classification,
        "cartan": cls.cartan,
        "null_vector": list(cls.null_vector) if cls.null_vector else None,
        "delta": list(cls.delta) if cls.delta else None,
        "roots_closed_within_bound": cls.roots_closed,
        "root_count_at_bound": cls.root_count,
        "inconsistent": cls.inconsistent,
        "notes": cls.notes,
    }
    if cls.classification != "affine":
        return out
    chambers = realize(g, L_chambers, mode="cover")
    hs = half_space_violations(chambers, cls.delta)
    sums = {covector_sum(c, cls.delta) for c in chambers}
    til = alcove_tiling_check(chambers, cls.delta, side, den)
    out.update(
        {
            "chambers": len(chambers),
            "chamber_word_bound": L_chambers,
            "half_space_verified": not hs,
            "half_space_violations": len(hs),
            "delta_sum_invariant": len(sums) == 1,
            "tiling": {
                "side": side,
                "denominator": den,
                "points": til.points,
                "interior_once": til.interior_once,
                "boundary_only": til.boundary_only,
                "uncovered": len(til.uncovered),
                "uncovered_outside_ring": len(til.uncovered_outside_ring),
                "double_interior": len(til.double_interior),
                "violations": len(til.double_interior) + len(til.uncovered_outside_ring),
            },
        }
    )
    return out
