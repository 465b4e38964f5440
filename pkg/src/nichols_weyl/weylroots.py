"""Weyl groupoid morphisms, real roots and the Cartan graph axioms, all
within an explicit word-length bound."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from .cartangraph import CartanGraph, Label

IntMatrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n, m = len(a), len(b[0])
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(m)) for i in range(n))


def column(a: IntMatrix, j: int) -> Vector:
    return tuple(r[j] for r in a)


def simple_reflection(A: Sequence[Sequence[int]], i: int) -> IntMatrix:
    """s_i(alpha_j) = alpha_j - a_ij alpha_i, as a matrix acting on column vectors."""
    n = len(A)
    if not 0 <= i < n:
        raise IndexError(f"index {i} out of range for rank {n}")
    rows = [list(r) for r in identity(n)]
    for j in range(n):
        rows[i][j] -= A[i][j]
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class WeylMorphism:
    source: Label
    target: Label
    matrix: IntMatrix
    word: tuple[int, ...] = field(compare=False, default=())

    def compose(self, other: "WeylMorphism") -> "WeylMorphism":
        """self o other, defined when other.target == self.source."""
        if other.target != self.source:
            raise ValueError("morphisms are not composable")
        return WeylMorphism(other.source, self.target, matmul(self.matrix, other.matrix), other.word + self.word)


def generator(g: CartanGraph, x: Label, i: int) -> WeylMorphism:
    return WeylMorphism(x, g.r[x][i], simple_reflection(g.cartan[x], i), (i,))


def _forward(g: CartanGraph, x: Label, L: int):
    """All (object, matrix, word) reachable from x by words of length <= L, deduplicated."""
    start = (x, identity(g.rank))
    seen = {start: ()}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        word = seen[state]
        if len(word) == L:
            continue
        obj, mat = state
        for i in range(g.rank):
            nxt = (g.r[obj][i], matmul(simple_reflection(g.cartan[obj], i), mat))
            if nxt not in seen:
                seen[nxt] = word + (i,)
                queue.append(nxt)
    return seen


def hom_enumerate(g: CartanGraph, x: Label, y: Label, L: int) -> set[WeylMorphism]:
    """Distinct morphisms x -> y realized by words of length <= L."""
    return {WeylMorphism(x, obj, mat, w) for (obj, mat), w in _forward(g, x, L).items() if obj == y}


def morphisms_into(g: CartanGraph, x: Label, L: int) -> dict:
    """{(source, matrix): word} for morphisms source -> x of length <= L.

    Extending on the right: omega o s_i^{r_i(Y)} for omega : Y -> x.
    """
    start = (x, identity(g.rank))
    seen = {start: ()}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        word = seen[state]
        if len(word) == L:
            continue
        src, mat = state
        for i in range(g.rank):
            z = g.r[src][i]
            nxt = (z, matmul(mat, simple_reflection(g.cartan[z], i)))
            if nxt not in seen:
                seen[nxt] = (i,) + word
                queue.append(nxt)
    return seen


@dataclass
class RootSet:
    obj: Label
    roots: frozenset
    cutoff: int

    def __contains__(self, v) -> bool:
        return tuple(v) in self.roots

    def __len__(self):
        return len(self.roots)

    def positive(self) -> list[Vector]:
        return sorted(r for r in self.roots if all(c >= 0 for c in r))


def real_roots(g: CartanGraph, x: Label, L: int) -> RootSet:
    roots = set()
    for (_, mat) in morphisms_into(g, x, L):
        for k in range(g.rank):
            roots.add(column(mat, k))
    return RootSet(x, frozenset(roots), L)


_RANK2 = {0: 2, 1: 3, 2: 4, 3: 6}


def rank2_classification(A: Sequence[Sequence[int]], i: int, j: int) -> Optional[int]:
    """Number of positive roots of the rank-two GCM on {i, j}, None if infinite."""
    return _RANK2.get(A[i][j] * A[j][i])


class RootCountInconsistent(AssertionError):
    pass


def rank2_count(g: CartanGraph, x: Label, i: int, j: int, L: int, roots: Optional[RootSet] = None) -> Optional[int]:
    """|roots(x) in N0 alpha_i + N0 alpha_j| at bound L; None when the count is
    not stable between L-1 and L (treated as exceeding the bound).

    For a standard graph the count is compared with the classification of the
    2x2 submatrix; disagreement raises RootCountInconsistent.
    """
    if i == j:
        raise ValueError("need i != j")

    def count(rs: RootSet) -> int:
        n = 0
        for r in rs.roots:
            if all(c == 0 for k, c in enumerate(r) if k not in (i, j)) and r[i] >= 0 and r[j] >= 0:
                n += 1
        return n

    rs = roots or real_roots(g, x, L)
    n = count(rs)
    stable = L > 0 and count(real_roots(g, x, L - 1)) == n
    result = n if stable else None
    if g.is_standard():
        expect = rank2_classification(g.cartan[x], i, j)
        if expect is not None and result is not None and expect != result:
            raise RootCountInconsistent(f"at {x}: generated {result}, classification {expect}")
        if expect is None and result is not None and n > 6:
            raise RootCountInconsistent(f"at {x}: finite count {n} for an infinite rank-two type")
    return result


def _primitive_direction(v: Vector) -> Vector:
    d = 0
    for c in v:
        d = gcd(d, c)
    p = tuple(c // d for c in v)
    first = next(c for c in p if c)
    return p if first > 0 else tuple(-c for c in p)


@dataclass
class AxiomReport:
    bound: int
    m: dict = field(default_factory=dict)
    axiom1: list = field(default_factory=list)
    cg3: list = field(default_factory=list)
    axiom3: list = field(default_factory=list)
    cg4: list = field(default_factory=list)
    reduced: list = field(default_factory=list)
    rank2_inconsistent: list = field(default_factory=list)
    involution: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.axiom1 or self.cg3 or self.axiom3 or self.cg4 or self.reduced
                    or self.rank2_inconsistent or self.involution)

    def summary(self) -> dict:
        return {
            "bound": self.bound,
            "axiom1_0_not_root_and_simple_roots": not self.axiom1,
            "cg3_sign_coherence": not self.cg3,
            "axiom2_sign_coherence": not self.cg3,
            "axiom3_reflection_invariance": not self.axiom3,
            "cg4_rank_two_periodicity": not self.cg4,
            "axiom4_rank_two_periodicity": not self.cg4,
            "reduced": not self.reduced,
            "rank2_consistent": not self.rank2_inconsistent,
            "generator_involution": not self.involution,
        }


def cartan_axioms(g: CartanGraph, L: int) -> AxiomReport:
    rep = AxiomReport(L)
    n = g.rank
    roots = {x: real_roots(g, x, L) for x in g.objects}
    wider = {x: real_roots(g, x, L + 1) for x in g.objects}
    for x in g.objects:
        R = roots[x]
        zero = (0,) * n
        if zero in R.roots:
            rep.axiom1.append((x, "zero"))
        for k in range(n):
            if column(identity(n), k) not in R.roots:
                rep.axiom1.append((x, k))
        for r in R.roots:
            if not (all(c >= 0 for c in r) or all(c <= 0 for c in r)):
                rep.cg3.append((x, r))
        by_dir: dict = {}
        for r in R.roots:
            if any(r):
                by_dir.setdefault(_primitive_direction(r), set()).add(r)
        for d, group in by_dir.items():
            if len(group) > 2 or (len(group) == 2 and not any(tuple(-c for c in a) in group for a in group)):
                rep.reduced.append((x, sorted(group)))
        for i in range(n):
            y = g.r[x][i]
            s = simple_reflection(g.cartan[x], i)
            if matmul(simple_reflection(g.cartan[y], i), s) != identity(n):
                rep.involution.append((x, i))
            for r in R.roots:
                img = tuple(sum(s[a][b] * r[b] for b in range(n)) for a in range(n))
                if img not in wider[y].roots:
                    rep.axiom3.append((x, i, r))
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                try:
                    m = rank2_count(g, x, i, j, L, R)
                except RootCountInconsistent as exc:
                    rep.rank2_inconsistent.append((x, i, j, str(exc)))
                    continue
                rep.m[(x, i, j)] = m
                if m is not None:
                    y = x
                    for _ in range(m):
                        y = g.r[g.r[y][j]][i]
                    if y != x:
                        rep.cg4.append((x, i, j, m))
    return rep


def connectivity(g: CartanGraph, L: int) -> dict:
    """Connectedness, and whether every Hom(X, Y) has at most one element
    among words of length <= L (witness word when not)."""
    reach = set()
    queue = deque([g.base])
    reach.add(g.base)
    while queue:
        x = queue.popleft()
        for y in g.r[x]:
            if y not in reach:
                reach.add(y)
                queue.append(y)
    connected = len(reach) == len(g.objects)
    witness = None
    for x in g.objects:
        by_target: dict = {}
        for (obj, mat), w in sorted(_forward(g, x, L).items(), key=lambda kv: (len(kv[1]), kv[1])):
            if obj in by_target and by_target[obj][0] != mat:
                witness = {"source": x, "target": obj, "words": [list(by_target[obj][1]), list(w)]}
                break
            by_target.setdefault(obj, (mat, w))
        if witness:
            break
    return {"connected": connected, "simply_connected_within_bound": witness is None, "bound": L, "witness": witness}
