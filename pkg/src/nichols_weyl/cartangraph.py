"""Cartan graphs: objects, reflection maps and Cartan matrices.

Objects of a graph built from modules are isomorphism classes of tuples,
labelled by the names of their slots.  Slot classes are resolved through a
catalog that first compares cheap fingerprints and only then searches for
an explicit intertwiner.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .config import AbstractGraph
from .nichols import ResourceCapExceeded
from .reflect import ModuleCatalog, ModuleTuple, Reflector, classify

Label = tuple[str, ...]


def label_str(label: Label) -> str:
    return "(" + ",".join(label) + ")"


@dataclass
class CartanGraph:
    rank: int
    objects: list[Label]
    cartan: dict[Label, list[list[int]]]
    r: dict[Label, list[Label]]
    base: Label
    representatives: dict[Label, ModuleTuple] = field(default_factory=dict)

    def apply_word(self, word: Sequence[int], start: Optional[Label] = None) -> Label:
        """r_{w_k} ... r_{w_1}(start); the word is read left to right."""
        x = self.base if start is None else start
        for i in word:
            x = self.r[x][i]
        return x

    def is_closed(self) -> bool:
        objs = set(self.objects)
        return all(y in objs for x in self.objects for y in self.r[x])

    def cg1_violations(self) -> list[tuple]:
        """r_i must be an involution."""
        return [(x, i) for x in self.objects for i in range(self.rank) if self.r[self.r[x][i]][i] != x]

    def cg2_violations(self) -> list[tuple]:
        """Row i of the Cartan matrix must agree at X and r_i(X)."""
        bad = []
        for x in self.objects:
            for i in range(self.rank):
                y = self.r[x][i]
                if self.cartan[x][i] != self.cartan[y][i]:
                    bad.append((x, i))
        return bad

    def gcm_violations(self) -> list[tuple]:
        bad = []
        for x in self.objects:
            A = self.cartan[x]
            for i in range(self.rank):
                if A[i][i] != 2:
                    bad.append((x, i, i))
                for j in range(self.rank):
                    if i != j and (A[i][j] > 0 or (A[i][j] == 0) != (A[j][i] == 0)):
                        bad.append((x, i, j))
        return bad

    def is_standard(self) -> bool:
        first = self.cartan[self.objects[0]]
        return all(self.cartan[x] == first for x in self.objects)

    def to_dot(self) -> str:
        lines = ["graph cartan {"]
        ids = {x: f"n{k}" for k, x in enumerate(self.objects)}
        for x in self.objects:
            lines.append(f'  {ids[x]} [label="{label_str(x)}"];')
        seen = set()
        for x in self.objects:
            for i, y in enumerate(self.r[x]):
                edge = (min(ids[x], ids[y]), max(ids[x], ids[y]), i)
                if edge in seen:
                    continue
                seen.add(edge)
                lines.append(f'  {ids[x]} -- {ids[y]} [label="r{i + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_abstract(cls, data: AbstractGraph) -> "CartanGraph":
        objs = [(o,) for o in data.objects]
        n = len(data.cartan[data.objects[0]])
        r = {(o,): [(t,) for t in data.reflections[o]] for o in data.objects}
        for o in data.objects:
            if len(data.reflections[o]) != n or len(data.cartan[o]) != n:
                raise ValueError(f"object {o!r} has inconsistent rank")
        return cls(n, objs, {(o,): data.cartan[o] for o in data.objects}, r, (data.base,))


def explore(
    base: ModuleTuple,
    reflector: Optional[Reflector] = None,
    catalog: Optional[ModuleCatalog] = None,
    max_objects: int = 256,
) -> CartanGraph:
    """Breadth-first closure of the base tuple under all reflections."""
    reflector = reflector or Reflector()
    catalog = catalog or ModuleCatalog(base.mods)
    n = len(base)

    def label_of(t: ModuleTuple) -> Label:
        return classify(t, catalog)

    start = label_of(base)
    reps = {start: base}
    cartan: dict = {}
    r: dict = {}
    order = [start]
    queue = deque([start])
    while queue:
        x = queue.popleft()
        t = reps[x]
        sp = reflector.space(t)
        cartan[x] = reflector.cartan_matrix(t, sp)
        targets = []
        for i in range(n):
            y_t = reflector.reflect(t, i, sp)
            y = label_of(y_t)
            targets.append(y)
            if y not in reps:
                if len(reps) >= max_objects:
                    raise ResourceCapExceeded(f"more than {max_objects} objects")
                reps[y] = y_t
                order.append(y)
                queue.append(y)
        r[x] = targets
    return CartanGraph(n, order, cartan, r, start, reps)
