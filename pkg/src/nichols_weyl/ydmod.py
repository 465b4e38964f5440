"""Graded projective modules over a finite abelian group with a 3-cocycle.

A module V of degree g carries matrices A_x (x in G) with
A_e = 1 and A_x A_y = theta_g(x, y) A_{xy}, where theta_g is the 2-cocycle
derived from Phi.  These are the simple objects of the twisted
Yetter-Drinfeld category; tensor products, braiding, duals and the
associator are expressed through Phi on degrees.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import lcm
from typing import Optional, Sequence

from .exact import CycNumber, Matrix, commutant, solve_intertwiner
from .groupdata import AbelianGroup, Element, ThreeCocycle, derive_two_cocycle


class YDCategory:
    """The ambient data (G, Phi) with a fixed coefficient field Q(zeta_order)."""

    def __init__(self, group: AbelianGroup, phi: ThreeCocycle, order: int = 1):
        order = lcm(order, phi.order)
        if phi.order != order:
            phi = phi.with_order(order)
        self.group = group
        self.phi = phi
        self.order = order
        self._theta: dict = {}

    def theta(self, g: Element):
        t = self._theta.get(g)
        if t is None:
            t = self._theta[g] = derive_two_cocycle(self.phi, g)
        return t

    def tensor_scalar(self, x: Element, g: Element, h: Element) -> CycNumber:
        """x acting on (deg g) (x) (deg h) picks up Phi(x,g,h) Phi(g,h,x) / Phi(g,x,h)."""
        p = self.phi
        return p(x, g, h) * p(g, h, x) * p(g, x, h).inverse()

    def one(self) -> CycNumber:
        return CycNumber.one(self.order)


class ModuleError(ValueError):
    pass


class YDModule:
    """A finite-dimensional homogeneous module with its full action table."""

    def __init__(self, cat: YDCategory, name: str, degree: Element, action: dict):
        self.cat = cat
        self.name = name
        self.degree = tuple(degree)
        table = {}
        dim = None
        for x, m in action.items():
            m = m.embed(cat.order) if m.order != cat.order else m
            if m.nrows != m.ncols or (dim is not None and m.nrows != dim):
                raise ModuleError(f"{name}: action matrices must be square of equal size")
            dim = m.nrows
            table[tuple(x)] = m
        missing = [x for x in cat.group.elements() if x not in table]
        if missing:
            raise ModuleError(f"{name}: action table misses {missing[:3]}")
        self.dim = dim
        self.action = table

    @classmethod
    def from_generators(
        cls, cat: YDCategory, name: str, degree: Sequence[int], gens: Sequence[Matrix]
    ) -> "YDModule":
        """Extend generator matrices to all of G with the projective rule
        A_{h y} = theta_g(h, y)^-1 A_h A_y, building x = h_1^a_1 ... h_r^a_r."""
        G = cat.group
        degree = G.element(degree)
        if len(gens) != G.rank:
            raise ModuleError(f"{name}: need {G.rank} generator matrices, got {len(gens)}")
        gens = [g.embed(cat.order) for g in gens]
        dim = gens[0].nrows
        theta = cat.theta(degree)
        table = {G.identity: Matrix.identity(dim, cat.order)}
        frontier = [G.identity]
        for l, h in enumerate(G.generators()):
            new = []
            for y in frontier:
                cur = y
                for _ in range(G.factors[l] - 1):
                    nxt = G.mul(h, cur)
                    table[nxt] = (gens[l] @ table[cur]).scale(theta(h, cur).inverse())
                    cur = nxt
                    new.append(cur)
            frontier = frontier + new
        return cls(cat, name, degree, table)

    def act(self, x: Element) -> Matrix:
        return self.action[x]

    def generator_matrices(self) -> list[Matrix]:
        return [self.action[h] for h in self.cat.group.generators()]

    def renamed(self, name: str) -> "YDModule":
        return YDModule(self.cat, name, self.degree, self.action)

    def __repr__(self):
        return f"YDModule({self.name!r}, degree={self.cat.group.label(self.degree)}, dim={self.dim})"


@dataclass
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate(m: YDModule) -> ValidationReport:
    """Check A_e = 1, invertibility and A_x A_y = theta_g(x,y) A_{xy} on the full table."""
    cat = m.cat
    G = cat.group
    theta = cat.theta(m.degree)
    bad = []
    if m.action[G.identity] != Matrix.identity(m.dim, cat.order):
        bad.append(("identity", G.identity))
    for x in G.elements():
        if not m.action[x].det():
            bad.append(("singular", x))
    for x, y in itertools.product(G.elements(), repeat=2):
        lhs = m.action[x] @ m.action[y]
        rhs = m.action[G.mul(x, y)].scale(theta(x, y))
        if lhs != rhs:
            bad.append(("projective", x, y))
    return ValidationReport(not bad, bad)


def braiding(V: YDModule, W: YDModule) -> Matrix:
    """c(v (x) w) = (|v| . w) (x) v as a matrix V(x)W -> W(x)V, bases lexicographic."""
    A = W.action[V.degree]
    dv, dw = V.dim, W.dim
    zero = CycNumber.zero(V.cat.order)
    rows = [[zero] * (dv * dw) for _ in range(dw * dv)]
    for a in range(dv):
        for b in range(dw):
            col = a * dw + b
            for c in range(dw):
                x = A.rows[c][b]
                if x:
                    rows[c * dv + a][col] = x
    return Matrix._raw(tuple(tuple(r) for r in rows), dw * dv, dv * dw, V.cat.order)


def braiding_inverse(V: YDModule, W: YDModule) -> Matrix:
    """c^-1 : W (x) V -> V (x) W, by exact inversion."""
    return braiding(V, W).inverse()


def nested_tensor_scalar(cat: YDCategory, x: Element, degrees: Sequence[Element]) -> CycNumber:
    """Scalar of x acting on a left-nested product of homogeneous factors."""
    G = cat.group
    s = cat.one()
    acc = degrees[0]
    for d in degrees[1:]:
        s = s * cat.tensor_scalar(x, acc, d)
        acc = G.mul(acc, d)
    return s


def tensor_action(x: Element, mods: Sequence[YDModule]) -> Matrix:
    """Action of x on the left-nested tensor product of mods."""
    cat = mods[0].cat
    s = nested_tensor_scalar(cat, x, [m.degree for m in mods])
    out = mods[0].action[x]
    for m in mods[1:]:
        out = out.kron(m.action[x])
    return out.scale(s)


def dual(m: YDModule, name: Optional[str] = None) -> YDModule:
    """Left dual: degree g^-1 and D_x = s_x^-1 (A_x^-1)^T where s_x is the
    tensor scalar of x on V* (x) V, so that evaluation is a morphism."""
    cat = m.cat
    G = cat.group
    gi = G.inv(m.degree)
    table = {}
    for x in G.elements():
        s = cat.tensor_scalar(x, gi, m.degree)
        table[x] = m.action[x].inverse().T.scale(s.inverse())
    return YDModule(cat, name or f"{m.name}*", gi, table)


def fingerprint(m: YDModule) -> tuple:
    """Isomorphism invariant: degree, dimension and the trace of every A_x."""
    G = m.cat.group
    return (m.degree, m.dim, tuple(m.action[x].trace().coeffs for x in G.elements()))


def iso_test(a: YDModule, b: YDModule) -> Optional[Matrix]:
    """An invertible intertwiner a -> b, or None."""
    if a.degree != b.degree or a.dim != b.dim:
        return None
    if fingerprint(a) != fingerprint(b):
        return None
    return solve_intertwiner(a.generator_matrices(), b.generator_matrices())


def commutant_dimension(m: YDModule) -> int:
    gens = m.generator_matrices()
    return len(commutant(gens, gens))


def is_simple(m: YDModule) -> bool:
    """Absolutely simple: the only endomorphisms are scalars."""
    return commutant_dimension(m) == 1


def associator_scalar(cat: YDCategory, a: Element, b: Element, c: Element) -> CycNumber:
    """(u (x) v) (x) w -> u (x) (v (x) w) multiplies by Phi(a,b,c)^-1."""
    return cat.phi(a, b, c).inverse()
