"""Tensor powers, braid operators and quantum symmetrizers.

All tensor powers are bracketed from the left, ((x1 (x) x2) (x) x3) ...,
so moving factors around costs Phi-scalars computed from degrees.  A space
V = M_1 (+) ... (+) M_t splits V^(x)n into components indexed by how many
factors come from each M_s; the symmetrizer preserves each component, so
all ranks are computed blockwise.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .exact import CycNumber, Matrix, independent_columns, rank
from .groupdata import Element, coherence_scalar, left_comb, right_comb
from .ydmod import YDCategory, YDModule, dual, nested_tensor_scalar


class ResourceCapExceeded(RuntimeError):
    """A configured size or iteration cap was hit."""


Word = tuple[int, ...]
Key = tuple[Word, tuple[int, ...]]


def _multisets(counts: Sequence[int]) -> list[Word]:
    """All words with the given letter counts, in lexicographic order."""
    letters = [s for s, c in enumerate(counts) for _ in range(c)]
    return sorted(set(itertools.permutations(letters)))


@dataclass
class Component:
    counts: tuple[int, ...]
    basis: list[Key]
    index: dict

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return sum(self.counts)


class TensorSpace:
    """V = mods[0] (+) mods[1] (+) ... with its tensor powers."""

    def __init__(self, mods: Sequence[YDModule], max_matrix_dim: int = 4096):
        if not mods:
            raise ValueError("need at least one module")
        self.mods = list(mods)
        self.cat: YDCategory = mods[0].cat
        self.order = self.cat.order
        self.max_matrix_dim = max_matrix_dim
        self._components: dict = {}
        self._sigma: dict = {}
        self._sym: dict = {}

    @property
    def group(self):
        return self.cat.group

    def word_degrees(self, word: Word) -> list[Element]:
        return [self.mods[s].degree for s in word]

    def component(self, counts: Sequence[int]) -> Component:
        counts = tuple(counts)
        comp = self._components.get(counts)
        if comp is not None:
            return comp
        words = _multisets(counts)
        size = 0
        for w in words:
            d = 1
            for s in w:
                d *= self.mods[s].dim
            size += d
        if size > self.max_matrix_dim:
            raise ResourceCapExceeded(f"component {counts} has dimension {size} > {self.max_matrix_dim}")
        basis = []
        for w in words:
            for idx in itertools.product(*(range(self.mods[s].dim) for s in w)):
                basis.append((w, idx))
        comp = Component(counts, basis, {b: k for k, b in enumerate(basis)})
        self._components[counts] = comp
        return comp

    def components_of_degree(self, n: int) -> Iterable[Component]:
        t = len(self.mods)
        for counts in itertools.product(range(n + 1), repeat=t):
            if sum(counts) == n:
                yield self.component(counts)

    # -- braid operators --------------------------------------------------
    def sigma_sparse(self, comp: Component, k: int) -> list[list[tuple[int, CycNumber]]]:
        """sigma_k (1 <= k < n) swaps factors k, k+1 of the left-nested power.

        With a = degree of factors 1..k-1, x (x) y -> Phi(a,|y|,|x|)/Phi(a,|x|,|y|) (|x|.y) (x) x.
        Returned column-wise: out[col] = [(row, value), ...].
        """
        key = (comp.counts, k)
        cached = self._sigma.get(key)
        if cached is not None:
            return cached
        n = comp.n
        if not 1 <= k < n:
            raise ValueError(f"sigma_{k} undefined on {n} factors")
        G = self.group
        phi = self.cat.phi
        cols = []
        for word, idx in comp.basis:
            degs = self.word_degrees(word)
            a = G.mul(*degs[: k - 1]) if k > 1 else G.identity
            gx, gy = degs[k - 1], degs[k]
            s = phi(a, gy, gx) * phi(a, gx, gy).inverse()
            A = self.mods[word[k]].action[gx]
            nw = word[: k - 1] + (word[k], word[k - 1]) + word[k + 1:]
            entries = []
            yb = idx[k]
            for c in range(A.nrows):
                v = A.rows[c][yb]
                if v:
                    nidx = idx[: k - 1] + (c, idx[k - 1]) + idx[k + 1:]
                    entries.append((comp.index[(nw, nidx)], s * v))
            cols.append(entries)
        self._sigma[key] = cols
        return cols

    def sigma_matrix(self, comp: Component, k: int) -> Matrix:
        return _sparse_to_matrix(self.sigma_sparse(comp, k), comp.dim, self.order)

    def symmetrizer(self, comp: Component) -> Matrix:
        """[n]! = ([n-1]! (x) id)(id + sigma_{n-1} + sigma_{n-1} sigma_{n-2} + ... + sigma_{n-1}...sigma_1)."""
        cached = self._sym.get(comp.counts)
        if cached is not None:
            return cached
        D = comp.dim
        zero = CycNumber.zero(self.order)
        one = CycNumber.one(self.order)
        P = _dense_identity(D, zero, one)
        for m in range(2, comp.n + 1):
            Q = _dense_identity(D, zero, one)
            for k in range(1, m):
                Q = _add_identity(_sparse_times_dense(self.sigma_sparse(comp, k), Q, D, zero), one)
            P = _dense_times_dense(P, Q, zero)
        out = Matrix._raw(tuple(tuple(r) for r in P), D, D, self.order)
        self._sym[comp.counts] = out
        return out

    def nichols_dim(self, n: int) -> int:
        if n == 0:
            return 1
        return sum(rank(self.symmetrizer(c)) for c in self.components_of_degree(n))

    # -- group action on components ---------------------------------------
    def act_key(self, x: Element, key: Key) -> list[tuple[Key, CycNumber]]:
        word, idx = key
        s = nested_tensor_scalar(self.cat, x, self.word_degrees(word))
        cols = []
        for slot, b in zip(word, idx):
            A = self.mods[slot].action[x]
            cols.append([(c, A.rows[c][b]) for c in range(A.nrows) if A.rows[c][b]])
        out = []
        for combo in itertools.product(*cols):
            v = s
            for _, a in combo:
                v = v * a
            out.append(((word, tuple(c for c, _ in combo)), v))
        return out

    def act_vector(self, x: Element, comp: Component, vec: Sequence[CycNumber]) -> list[CycNumber]:
        zero = CycNumber.zero(self.order)
        out = [zero] * comp.dim
        for k, c in enumerate(vec):
            if c:
                for key, v in self.act_key(x, comp.basis[k]):
                    j = comp.index[key]
                    out[j] = out[j] + c * v
        return out


# ---------------------------------------------------------------------------
# dense helpers on lists of lists


def _dense_identity(D, zero, one):
    return [[one if i == j else zero for j in range(D)] for i in range(D)]


def _add_identity(M, one):
    for i, r in enumerate(M):
        r[i] = r[i] + one
    return M


def _sparse_times_dense(cols, Q, D, zero):
    out = [[zero] * D for _ in range(D)]
    for c, entries in enumerate(cols):
        qrow = Q[c]
        nz = [(j, y) for j, y in enumerate(qrow) if y]
        for r, v in entries:
            orow = out[r]
            for j, y in nz:
                orow[j] = orow[j] + v * y
    return out


def _dense_times_dense(A, B, zero):
    D = len(B[0]) if B else 0
    out = []
    bnz = [[(j, y) for j, y in enumerate(r) if y] for r in B]
    for r in A:
        acc = [zero] * D
        for k, x in enumerate(r):
            if x:
                for j, y in bnz[k]:
                    acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def _sparse_to_matrix(cols, D, order) -> Matrix:
    zero = CycNumber.zero(order)
    rows = [[zero] * D for _ in range(D)]
    for c, entries in enumerate(cols):
        for r, v in entries:
            rows[r][c] = v
    return Matrix._raw(tuple(tuple(r) for r in rows), D, D, order)


# ---------------------------------------------------------------------------
# convenience entry points on explicit slot lists


def braid_op(slots: Sequence[YDModule], i: int) -> Matrix:
    """sigma_i on slots[0] (x) ... (x) slots[n-1] (left nested), landing in the
    power with slots i and i+1 (1-based) exchanged."""
    n = len(slots)
    if not 1 <= i < n:
        raise ValueError(f"sigma_{i} undefined on {n} factors")
    space = TensorSpace(slots)
    comp = space.component((1,) * n)
    src = [k for k, (w, _) in enumerate(comp.basis) if w == tuple(range(n))]
    tgt_word = tuple(range(i - 1)) + (i, i - 1) + tuple(range(i + 1, n))
    tgt = [k for k, (w, _) in enumerate(comp.basis) if w == tgt_word]
    pos = {k: r for r, k in enumerate(tgt)}
    cols = space.sigma_sparse(comp, i)
    zero = CycNumber.zero(space.order)
    rows = [[zero] * len(src) for _ in tgt]
    for c, k in enumerate(src):
        for r, v in cols[k]:
            rows[pos[r]][c] = v
    return Matrix._raw(tuple(tuple(r) for r in rows), len(tgt), len(src), space.order)


def symmetrizer(V: YDModule, n: int) -> Matrix:
    """[n]! on V^(x)n, basis lexicographic in the multi-index."""
    if n == 0:
        return Matrix.identity(1, V.cat.order)
    space = TensorSpace([V])
    return space.symmetrizer(space.component((n,)))


def nichols_dims(mods: Sequence[YDModule], max_deg: int, max_matrix_dim: int = 4096) -> list[int]:
    """dim B^n(V) for n = 0..max_deg, V the direct sum of mods."""
    space = TensorSpace(mods, max_matrix_dim)
    return [space.nichols_dim(n) for n in range(max_deg + 1)]


# ---------------------------------------------------------------------------
# elements of T(V)


class TensorElement:
    """Homogeneous element of T(V): sparse coefficients on (word, multi-index)."""

    __slots__ = ("space", "n", "coeffs")

    def __init__(self, space: TensorSpace, n: int, coeffs: Optional[dict] = None):
        self.space = space
        self.n = n
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    @classmethod
    def basis(cls, space: TensorSpace, slot: int, b: int) -> "TensorElement":
        return cls(space, 1, {((slot,), (b,)): CycNumber.one(space.order)})

    @classmethod
    def unit(cls, space: TensorSpace) -> "TensorElement":
        return cls(space, 0, {((), ()): CycNumber.one(space.order)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return TensorElement(self.space, self.n, out)

    def scale(self, c) -> "TensorElement":
        return TensorElement(self.space, self.n, {k: v * c for k, v in self.coeffs.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.n == other.n and self.coeffs == other.coeffs

    def act(self, x: Element) -> "TensorElement":
        out: dict = {}
        for key, c in self.coeffs.items():
            for k2, v in self.space.act_key(x, key):
                out[k2] = out[k2] + c * v if k2 in out else c * v
        return TensorElement(self.space, self.n, out)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        """Product in T(V); rebracketing u (x) (v1 ... vq) to left-nested form."""
        sp = self.space
        out: dict = {}
        for (w1, i1), a in self.coeffs.items():
            du = sp.group.mul(*sp.word_degrees(w1)) if w1 else sp.group.identity
            for (w2, i2), b in other.coeffs.items():
                s = mult_scalar(sp.cat, du, sp.word_degrees(w2))
                key = (w1 + w2, i1 + i2)
                v = a * b * s
                out[key] = out[key] + v if key in out else v
        return TensorElement(sp, self.n + other.n, out)

    def counts(self) -> set:
        t = len(self.space.mods)
        return {tuple(w.count(s) for s in range(t)) for (w, _) in self.coeffs}

    def vector(self, comp: Component) -> list[CycNumber]:
        zero = CycNumber.zero(self.space.order)
        vec = [zero] * comp.dim
        for key, v in self.coeffs.items():
            vec[comp.index[key]] = v
        return vec

    def __repr__(self):
        return f"TensorElement(n={self.n}, terms={len(self.coeffs)})"


def mult_scalar(cat: YDCategory, du: Element, dv: Sequence[Element]) -> CycNumber:
    """Scalar of u (x) (v1 ... vq) -> (u (x) v1 ... ) (x) vq: prod_t Phi(|u|, |v1...v_{t-1}|, |v_t|)."""
    G = cat.group
    s = cat.one()
    if not dv:
        return s
    acc = dv[0]
    for d in dv[1:]:
        s = s * cat.phi(du, acc, d)
        acc = G.mul(acc, d)
    return s


def ad(a: TensorElement, x: TensorElement) -> TensorElement:
    """Braided adjoint action of a degree-one homogeneous a: a x - (|a|.x) a."""
    if a.n != 1:
        raise ValueError("ad is defined here for elements of V")
    slots = {w[0] for (w, _) in a.coeffs}
    if len(slots) != 1:
        raise ValueError("a must be homogeneous")
    g = a.space.mods[slots.pop()].degree
    return a * x - x.act(g) * a


def is_zero_in_nichols(v: TensorElement) -> bool:
    sp = v.space
    for counts in v.counts():
        comp = sp.component(counts)
        part = TensorElement(sp, v.n, {k: c for k, c in v.coeffs.items() if k in comp.index})
        if any(sp.symmetrizer(comp).apply(part.vector(comp))):
            return False
    return True


# ---------------------------------------------------------------------------
# iterated adjoint action


@dataclass
class AdLevel:
    """ad(M_i)^n(M_j) in B(V): representatives in T(V) and their images under [n+1]!."""

    n: int
    representatives: list[TensorElement]
    images: list[list[CycNumber]]
    component: Component

    @property
    def dim(self) -> int:
        return len(self.images)


def ad_levels(space: TensorSpace, i: int, j: int, upto: int) -> list[AdLevel]:
    """Levels 0..upto of ad(M_i)^n(M_j); stops after the first zero level."""
    if i == j:
        raise ValueError("need i != j")
    t = len(space.mods)
    gens = [TensorElement.basis(space, i, b) for b in range(space.mods[i].dim)]
    current = [TensorElement.basis(space, j, b) for b in range(space.mods[j].dim)]
    levels = []
    for n in range(upto + 1):
        counts = tuple(n if s == i else 1 if s == j else 0 for s in range(t))
        comp = space.component(counts)
        if n > 0:
            current = [ad(a, x) for x in current for a in gens]
        S = space.symmetrizer(comp)
        imgs = [S.apply(x.vector(comp)) for x in current]
        keep = independent_columns(imgs, comp.dim, space.order)
        lev = AdLevel(n, [current[k] for k in keep], [imgs[k] for k in keep], comp)
        levels.append(lev)
        current = lev.representatives
        if not current:
            break
    return levels


def ad_iterate(space: TensorSpace, i: int, j: int, n: int) -> AdLevel:
    levels = ad_levels(space, i, j, n)
    if len(levels) <= n:
        return AdLevel(n, [], [], space.component(tuple(n if s == i else 1 if s == j else 0 for s in range(len(space.mods)))))
    return levels[n]


def cartan_entry(space: TensorSpace, i: int, j: int, cap: int = 8) -> int:
    """a_ij = -max{m : ad(M_i)^m(M_j) != 0}; raises if level cap+1 is still nonzero."""
    if i == j:
        return 2
    levels = ad_levels(space, i, j, cap + 1)
    if levels[-1].dim:
        raise ResourceCapExceeded(f"ad(M_{i + 1})^n(M_{j + 1}) nonzero up to n={cap + 1}")
    return -(len(levels) - 2)


# ---------------------------------------------------------------------------
# duality pairing


def _ev_scalar(cat: YDCategory, g: Element, n: int) -> CycNumber:
    """ev on (V^(x)n)* (x) V^(x)n for basis pairs, with (V^(x)n)* = V* (x) (V^(x)n-1)*
    right-nested; evaluation of X (x) Y recurses through
    Phi(|X*|,|X|,|Y|) / Phi(|Y*|,|X*|,|X||Y|)."""
    G = cat.group
    phi = cat.phi
    s = cat.one()
    for m in range(2, n + 1):
        gX = G.power(g, m - 1)
        gXi, gYi = G.inv(gX), G.inv(g)
        s = s * phi(gXi, gX, g) * phi(gYi, gXi, G.mul(gX, g)).inverse()
    return s


def evaluation_matrix(V: YDModule, n: int) -> Matrix:
    """E[F, v] = ev(F (x) v) with F in the left-nested power of V*, v in V^(x)n.

    Basis F = f_{b1} ... f_{bn} pairs with v_{bn} ... v_{b1}."""
    cat = V.cat
    d = V.dim
    gi = cat.group.inv(V.degree)
    rebracket = coherence_scalar([gi] * n, left_comb(n), right_comb(n), cat.phi) if n > 2 else cat.one()
    s = rebracket * _ev_scalar(cat, V.degree, n)
    zero = CycNumber.zero(cat.order)
    basis = list(itertools.product(range(d), repeat=n))
    index = {b: k for k, b in enumerate(basis)}
    rows = [[zero] * len(basis) for _ in basis]
    for r, b in enumerate(basis):
        rows[r][index[tuple(reversed(b))]] = s
    return Matrix._raw(tuple(tuple(r) for r in rows), len(basis), len(basis), cat.order)


def pairing_gram(V: YDModule, n: int) -> Matrix:
    """Gram matrix of ev_{V^(x)n} o (id (x) [n]!) between (V*)^(x)n and V^(x)n."""
    if n == 0:
        return Matrix.identity(1, V.cat.order)
    return evaluation_matrix(V, n) @ symmetrizer(V, n)


def pairing_gram_dual_side(V: YDModule, n: int) -> Matrix:
    """The same form computed as ev o ([n]!_{c*} (x) id), via the braiding of V*."""
    if n == 0:
        return Matrix.identity(1, V.cat.order)
    return symmetrizer(dual(V), n).T @ evaluation_matrix(V, n)
