"""Reflections of tuples of simple modules.

R_i(M)_i = M_i*, and for j != i, R_i(M)_j = ad(M_i)^m(M_j) with m = -a_ij,
realized as the image of the symmetrizer inside the tensor power and given
the module structure induced by the tensor action.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Optional, Sequence

from .exact import Matrix, solve_in_span
from .nichols import AdLevel, ResourceCapExceeded, TensorSpace, ad_levels, cartan_entry
from .ydmod import YDModule, dual, fingerprint, is_simple, iso_test, validate


@dataclass(frozen=True)
class ModuleTuple:
    mods: tuple[YDModule, ...]

    def __len__(self):
        return len(self.mods)

    def __getitem__(self, k):
        return self.mods[k]

    def names(self) -> tuple[str, ...]:
        return tuple(m.name for m in self.mods)

    def check(self) -> list[str]:
        """Problems that make the tuple unusable: invalid or non-simple slots."""
        out = []
        for m in self.mods:
            if not validate(m):
                out.append(f"{m.name}: action table violates the projective rule")
            elif not is_simple(m):
                out.append(f"{m.name}: not simple")
        return out


class Reflector:
    """Computes Cartan matrices and reflections for tuples, with shared caps."""

    def __init__(self, max_ad_cap: int = 8, max_matrix_dim: int = 4096):
        self.max_ad_cap = max_ad_cap
        self.max_matrix_dim = max_matrix_dim

    def space(self, t: ModuleTuple) -> TensorSpace:
        return TensorSpace(list(t.mods), self.max_matrix_dim)

    def cartan_matrix(self, t: ModuleTuple, space: Optional[TensorSpace] = None) -> list[list[int]]:
        sp = space or self.space(t)
        n = len(t)
        return [[cartan_entry(sp, i, j, self.max_ad_cap) for j in range(n)] for i in range(n)]

    def top_level(self, space: TensorSpace, i: int, j: int) -> AdLevel:
        levels = ad_levels(space, i, j, self.max_ad_cap + 1)
        if levels[-1].dim:
            raise ResourceCapExceeded(f"ad iterates of slot {i + 1} on slot {j + 1} exceed cap {self.max_ad_cap}")
        return levels[-2]

    def reflect(self, t: ModuleTuple, i: int, space: Optional[TensorSpace] = None) -> ModuleTuple:
        sp = space or self.space(t)
        out = []
        for j, m in enumerate(t.mods):
            if j == i:
                out.append(dual(m))
            else:
                lev = self.top_level(sp, i, j)
                out.append(module_from_level(sp, lev, f"ad({t[i].name})^{lev.n}({m.name})"))
        return ModuleTuple(tuple(out))


def module_from_level(space: TensorSpace, lev: AdLevel, name: str) -> YDModule:
    """The submodule spanned by lev.images, with matrices solved from the tensor action."""
    comp = lev.component
    cat = space.cat
    G = cat.group
    W = Matrix.from_columns(lev.images, comp.dim, cat.order)
    table = {}
    for x in G.elements():
        TW = Matrix.from_columns([space.act_vector(x, comp, v) for v in lev.images], comp.dim, cat.order)
        table[x] = solve_in_span(W, TW)
    word = comp.basis[0][0]
    degree = G.mul(*(space.mods[s].degree for s in word))
    return YDModule(cat, name, degree, table)


def reflect(t: ModuleTuple | Sequence[YDModule], i: int, max_ad_cap: int = 8, max_matrix_dim: int = 4096) -> ModuleTuple:
    if not isinstance(t, ModuleTuple):
        t = ModuleTuple(tuple(t))
    return Reflector(max_ad_cap, max_matrix_dim).reflect(t, i)


def round_trip(t: ModuleTuple, i: int, j: int, reflector: Optional[Reflector] = None) -> bool:
    """After reflecting at i, ad(M_i*)^m(R_i(M)_j) with m = -a_ij should give back M_j."""
    r = reflector or Reflector()
    sp = r.space(t)
    m = -cartan_entry(sp, i, j, r.max_ad_cap)
    rt = r.reflect(t, i, sp)
    sp2 = r.space(rt)
    levels = ad_levels(sp2, i, j, m + 1)
    if len(levels) != m + 2 or levels[m + 1].dim:
        return False
    back = module_from_level(sp2, levels[m], "back")
    return iso_test(back, t[j]) is not None


class ModuleCatalog:
    """Append-only registry of module classes with representatives."""

    def __init__(self, named: Sequence[YDModule] = ()):
        self._lock = threading.Lock()
        self._by_print: dict = {}
        self.representatives: dict[str, YDModule] = {}
        self._fresh = 0
        for m in named:
            self.classify(m, prefer_name=m.name)

    def lookup(self, m: YDModule) -> Optional[str]:
        for name, rep in self._by_print.get(fingerprint(m), []):
            if iso_test(m, rep) is not None:
                return name
        return None

    def classify(self, m: YDModule, prefer_name: Optional[str] = None) -> str:
        with self._lock:
            found = self.lookup(m)
            if found is not None:
                return found
            if prefer_name and prefer_name not in self.representatives:
                name = prefer_name
            else:
                self._fresh += 1
                name = f"N_{self._fresh}"
                while name in self.representatives:
                    self._fresh += 1
                    name = f"N_{self._fresh}"
            rep = m.renamed(name)
            self._by_print.setdefault(fingerprint(m), []).append((name, rep))
            self.representatives[name] = rep
            return name


def classify(t: ModuleTuple, catalog: ModuleCatalog) -> tuple[str, ...]:
    """Class of a tuple: the catalog name of each slot, registering new slot classes."""
    return tuple(catalog.classify(m) for m in t.mods)
