"""Finite abelian groups, normalized 3-cocycles and associator bookkeeping."""
from __future__ import annotations

import ast
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .exact import CycNumber

Element = tuple[int, ...]


class AbelianGroup:
    """Z_{n_1} x ... x Z_{n_k}, elements stored as exponent vectors."""

    def __init__(self, invariant_factors: Sequence[int]):
        factors = tuple(int(n) for n in invariant_factors)
        if not factors or any(n < 1 for n in factors):
            raise ValueError(f"bad invariant factors {invariant_factors!r}")
        self.factors = factors
        self.rank = len(factors)
        self._elements = tuple(itertools.product(*(range(n) for n in factors)))
        self._index = {g: i for i, g in enumerate(self._elements)}

    def __repr__(self):
        return "AbelianGroup(" + " x ".join(f"Z{n}" for n in self.factors) + ")"

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and other.factors == self.factors

    def __hash__(self):
        return hash(self.factors)

    @property
    def order(self) -> int:
        return len(self._elements)

    @property
    def exponent(self) -> int:
        return lcm(*self.factors)

    def elements(self) -> tuple[Element, ...]:
        return self._elements

    def index(self, g: Element) -> int:
        return self._index[g]

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def generators(self) -> list[Element]:
        return [tuple(1 if k == l else 0 for k in range(self.rank)) for l in range(self.rank)]

    def element(self, exps: Sequence[int]) -> Element:
        if len(exps) != self.rank:
            raise ValueError(f"expected {self.rank} exponents, got {list(exps)}")
        return tuple(int(e) % n for e, n in zip(exps, self.factors))

    def mul(self, *gs: Element) -> Element:
        out = [0] * self.rank
        for g in gs:
            for k, e in enumerate(g):
                out[k] += e
        return tuple(e % n for e, n in zip(out, self.factors))

    def inv(self, g: Element) -> Element:
        return tuple((-e) % n for e, n in zip(g, self.factors))

    def power(self, g: Element, k: int) -> Element:
        return tuple((e * k) % n for e, n in zip(g, self.factors))

    def element_order(self, g: Element) -> int:
        k, h = 1, g
        while h != self.identity:
            h = self.mul(h, g)
            k += 1
        return k

    def label(self, g: Element) -> str:
        parts = []
        for l, e in enumerate(g):
            if e == 1:
                parts.append(f"h{l + 1}")
            elif e:
                parts.append(f"h{l + 1}^{e}")
        return "".join(parts) or "e"


# ---------------------------------------------------------------------------
# Cocycle formulas
#
# A formula is a product of roots of unity whose exponents are integer
# expressions in the coordinates i1.., j1.., k1.. of the three arguments.
# Supported calls: minus_one_pow(e), zeta_pow(N, e).  Factors combine with
# '*' and '/'; inside a call '+', '-', '*', '//', '%' act on integers.


class FormulaError(ValueError):
    pass


_INT_OPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.FloorDiv: lambda a, b: a // b,
    ast.Mod: lambda a, b: a % b,
}


def _int_expr(node: ast.AST, env: Mapping[str, int]) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise FormulaError(f"unknown variable {node.id!r}")
        return env[node.id]
    if isinstance(node, ast.BinOp) and type(node.op) in _INT_OPS:
        return _INT_OPS[type(node.op)](_int_expr(node.left, env), _int_expr(node.right, env))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _int_expr(node.operand, env)
        return -v if isinstance(node.op, ast.USub) else v
    raise FormulaError(f"unsupported integer expression: {ast.dump(node)}")


def _root_exponent(node: ast.AST, env: Mapping[str, int], order: int) -> int:
    """Exponent of zeta_order represented by a multiplicative factor node."""
    if isinstance(node, ast.Constant) and node.value == 1:
        return 0
    if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Mult, ast.Div)):
        a = _root_exponent(node.left, env, order)
        b = _root_exponent(node.right, env, order)
        return a + b if isinstance(node.op, ast.Mult) else a - b
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        name = node.func.id
        if name == "minus_one_pow" and len(node.args) == 1:
            return (order // 2) * _int_expr(node.args[0], env)
        if name == "zeta_pow" and len(node.args) == 2:
            n = _int_expr(node.args[0], {})
            return (order // n) * _int_expr(node.args[1], env)
    raise FormulaError(f"unsupported factor: {ast.unparse(node)}")


def _formula_order(node: ast.AST) -> int:
    n = 1
    for sub in ast.walk(node):
        if isinstance(sub, ast.Call) and isinstance(sub.func, ast.Name):
            if sub.func.id == "minus_one_pow":
                n = lcm(n, 2)
            elif sub.func.id == "zeta_pow":
                if not sub.args:
                    raise FormulaError("zeta_pow needs (N, exponent)")
                order = _int_expr(sub.args[0], {})
                if order < 1:
                    raise FormulaError("zeta_pow needs a positive order")
                n = lcm(n, order)
    return n


def parse_formula(text: str) -> ast.AST:
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise FormulaError(f"cannot parse formula {text!r}: {exc.msg}") from None
    return tree.body


# ---------------------------------------------------------------------------


class ThreeCocycle:
    """A function G^3 -> roots of unity, given by a formula or by a table.

    Table entries not listed are 1.  Values are cached per triple.
    """

    def __init__(
        self,
        group: AbelianGroup,
        formula: Optional[str] = None,
        table: Optional[Mapping[tuple[Element, Element, Element], CycNumber]] = None,
        func: Optional[Callable[[Element, Element, Element], CycNumber]] = None,
        order: Optional[int] = None,
    ):
        given = sum(x is not None for x in (formula, table, func))
        if given != 1:
            raise ValueError("give exactly one of formula, table, func")
        self.group = group
        self.formula = formula
        self._cache: dict = {}
        if formula is not None:
            self._tree = parse_formula(formula)
            n = _formula_order(self._tree)
            self.order = lcm(n, order or 1)
            self._eval = self._eval_formula
        elif table is not None:
            self._table = {tuple(map(tuple, k)): v for k, v in table.items()}
            n = order or 1
            for v in self._table.values():
                n = lcm(n, v.order)
            self.order = n
            self._eval = lambda a, b, c: self._table.get((a, b, c), CycNumber.one(self.order)).embed(self.order)
        else:
            self.order = order or 1
            self._eval = lambda a, b, c: func(a, b, c).embed(self.order)

    @classmethod
    def trivial(cls, group: AbelianGroup, order: int = 1) -> "ThreeCocycle":
        return cls(group, func=lambda a, b, c: CycNumber.one(order), order=order)

    def _eval_formula(self, a: Element, b: Element, c: Element) -> CycNumber:
        env = {}
        for l in range(self.group.rank):
            env[f"i{l + 1}"] = a[l]
            env[f"j{l + 1}"] = b[l]
            env[f"k{l + 1}"] = c[l]
        return CycNumber.zeta(self.order, _root_exponent(self._tree, env, self.order))

    def with_order(self, order: int) -> "ThreeCocycle":
        """Same cocycle, values embedded in a larger cyclotomic field."""
        if order % self.order:
            raise ValueError("order must be a multiple of the current order")
        base = self
        return ThreeCocycle(self.group, func=lambda a, b, c: base(a, b, c).embed(order), order=order)

    def __call__(self, a: Element, b: Element, c: Element) -> CycNumber:
        key = (a, b, c)
        v = self._cache.get(key)
        if v is None:
            v = self._eval(a, b, c)
            self._cache[key] = v
        return v

    def inv(self, a: Element, b: Element, c: Element) -> CycNumber:
        return self(a, b, c).inverse()


def check_three_cocycle(phi: ThreeCocycle) -> list[tuple]:
    """Violations of the normalized 3-cocycle identity and of normalization."""
    G = phi.group
    e = G.identity
    bad: list[tuple] = []
    els = G.elements()
    for a, b in itertools.product(els, repeat=2):
        for triple in ((e, a, b), (a, e, b), (a, b, e)):
            if phi(*triple) != 1:
                bad.append(("normalization",) + triple)
    for a, b, c, d in itertools.product(els, repeat=4):
        lhs = phi(G.mul(a, b), c, d) * phi(a, b, G.mul(c, d))
        rhs = phi(a, b, c) * phi(a, G.mul(b, c), d) * phi(b, c, d)
        if lhs != rhs:
            bad.append(("cocycle", a, b, c, d))
    return bad


@dataclass(frozen=True)
class TwoCocycle:
    """theta_g(e, f) = Phi(g,e,f) Phi(e,f,g) / Phi(e,g,f) for a fixed g."""

    phi: ThreeCocycle = field(repr=False)
    g: Element

    def __call__(self, e: Element, f: Element) -> CycNumber:
        p = self.phi
        g = self.g
        return p(g, e, f) * p(e, f, g) * p(e, g, f).inverse()


def derive_two_cocycle(phi: ThreeCocycle, g: Element) -> TwoCocycle:
    return TwoCocycle(phi, g)


def check_two_cocycle(theta: TwoCocycle) -> list[tuple]:
    """Violations of theta(e,f) theta(ef,k) = theta(f,k) theta(e,fk) (abelian case)."""
    G = theta.phi.group
    bad = []
    for e, f, k in itertools.product(G.elements(), repeat=3):
        if theta(e, f) * theta(G.mul(e, f), k) != theta(f, k) * theta(e, G.mul(f, k)):
            bad.append((e, f, k))
    return bad


# ---------------------------------------------------------------------------
# Bracketings of n tensor factors
#
# A tree is either a leaf index (int) or a pair (left, right).

BracketTree = Union[int, tuple]


def leaves(tree: BracketTree) -> list[int]:
    if isinstance(tree, int):
        return [tree]
    return leaves(tree[0]) + leaves(tree[1])


def left_comb(n: int, start: int = 0) -> BracketTree:
    t: BracketTree = start
    for k in range(start + 1, start + n):
        t = (t, k)
    return t


def right_comb(n: int, start: int = 0) -> BracketTree:
    t: BracketTree = start + n - 1
    for k in range(start + n - 2, start - 1, -1):
        t = (k, t)
    return t


def _right_leaning_nodes(tree: BracketTree, path: tuple = ()) -> list[tuple]:
    """Paths to nodes of shape A (x) (B (x) C), in left-to-right preorder."""
    if isinstance(tree, int):
        return []
    out = []
    if not isinstance(tree[1], int):
        out.append(path)
    out += _right_leaning_nodes(tree[0], path + (0,))
    out += _right_leaning_nodes(tree[1], path + (1,))
    return out


def _subtree(tree: BracketTree, path: tuple) -> BracketTree:
    for p in path:
        tree = tree[p]
    return tree


def _replace(tree: BracketTree, path: tuple, new: BracketTree) -> BracketTree:
    if not path:
        return new
    if path[0] == 0:
        return (_replace(tree[0], path[1:], new), tree[1])
    return (tree[0], _replace(tree[1], path[1:], new))


def _to_left_comb_scalar(
    tree: BracketTree, degrees: Sequence[Element], phi: ThreeCocycle, choose: Callable[[list], tuple]
) -> CycNumber:
    """Scalar of the rebracketing tree -> left comb.

    Each rotation A (x) (B (x) C) -> (A (x) B) (x) C contributes Phi(|A|,|B|,|C|).
    `choose` picks which right-leaning node to rotate next.
    """
    G = phi.group
    scalar = CycNumber.one(phi.order)

    def deg(t):
        return G.mul(*(degrees[i] for i in leaves(t)))

    while True:
        nodes = _right_leaning_nodes(tree)
        if not nodes:
            return scalar
        path = choose(nodes)
        node = _subtree(tree, path)
        a, (b, c) = node
        scalar = scalar * phi(deg(a), deg(b), deg(c))
        tree = _replace(tree, path, ((a, b), c))


def coherence_scalar(
    degrees: Sequence[Element],
    from_tree: BracketTree,
    to_tree: BracketTree,
    phi: ThreeCocycle,
    choose: Optional[Callable[[list], tuple]] = None,
) -> CycNumber:
    """Scalar by which the associativity isomorphism from_tree -> to_tree acts
    on homogeneous factors of the given degrees."""
    if leaves(from_tree) != leaves(to_tree):
        raise ValueError("trees have different leaves")
    if sorted(leaves(from_tree)) != list(range(len(degrees))):
        raise ValueError("leaves must be 0..n-1")
    pick = choose or (lambda nodes: nodes[0])
    return _to_left_comb_scalar(from_tree, degrees, phi, pick) * _to_left_comb_scalar(
        to_tree, degrees, phi, pick
    ).inverse()


def all_trees(lo: int, hi: int) -> Iterable[BracketTree]:
    """Every bracketing of leaves lo..hi-1."""
    if hi - lo == 1:
        yield lo
        return
    for mid in range(lo + 1, hi):
        for a in all_trees(lo, mid):
            for b in all_trees(mid, hi):
                yield (a, b)


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    if n <= 1:
        return 1
    return sum(catalan(k) * catalan(n - 1 - k) for k in range(n))
