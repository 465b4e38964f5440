"""TOML configuration: group, cocycle, named modules, a base tuple and caps."""
from __future__ import annotations

import ast
import sys
from dataclasses import dataclass, field
from math import lcm
from pathlib import Path
from typing import Any, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .exact import CycNumber, Matrix
from .groupdata import AbelianGroup, FormulaError, ThreeCocycle
from .ydmod import ModuleError, YDCategory, YDModule

FIXTURE = Path(__file__).parent / "data" / "affine_a2.toml"


class ConfigError(ValueError):
    """Malformed configuration (CLI exit code 4)."""


@dataclass
class Caps:
    max_ad_cap: int = 8
    max_matrix_dim: int = 4096
    word_bound: int = 9
    chamber_word_bound: int = 10
    max_objects: int = 256
    max_degree: int = 4
    grid_side: int = 2
    grid_denominator: int = 7


@dataclass
class AbstractGraph:
    objects: list[str]
    cartan: dict[str, list[list[int]]]
    reflections: dict[str, list[str]]
    base: str


@dataclass
class Config:
    cat: Optional[YDCategory]
    modules: dict[str, YDModule]
    tuple_names: list[str]
    caps: Caps
    abstract: Optional[AbstractGraph] = None
    source: str = ""
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def group(self) -> AbelianGroup:
        return self.cat.group

    def base_tuple(self) -> list[YDModule]:
        return [self.modules[n] for n in self.tuple_names]


# ---------------------------------------------------------------------------
# cyclotomic literals: rational combinations of z(N, k), e.g. "1/2 - z(3,1)"


def _cyc_eval(node: ast.AST) -> CycNumber:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return CycNumber.rational(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _cyc_eval(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)):
        if isinstance(node.op, ast.Pow):
            exp = node.right
            if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                raise ConfigError("exponent must be an integer literal")
            return _cyc_eval(node.left) ** exp.value
        a, b = _cyc_eval(node.left), _cyc_eval(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        return a / b
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "z":
        args = node.args
        if len(args) != 2 or not all(isinstance(a, ast.Constant) and isinstance(a.value, int) for a in args):
            raise ConfigError("z(N, k) takes two integer literals")
        n, k = args[0].value, args[1].value
        if n < 1:
            raise ConfigError("z(N, k) needs N >= 1")
        return CycNumber.zeta(n, k)
    raise ConfigError(f"unsupported scalar syntax: {ast.unparse(node)}")


def parse_scalar(value: Any) -> CycNumber:
    if isinstance(value, bool):
        raise ConfigError("booleans are not scalars")
    if isinstance(value, int):
        return CycNumber.rational(value)
    if isinstance(value, str):
        try:
            tree = ast.parse(value.strip(), mode="eval")
        except SyntaxError:
            raise ConfigError(f"cannot parse scalar {value!r}") from None
        try:
            return _cyc_eval(tree.body)
        except ZeroDivisionError:
            raise ConfigError(f"division by zero in {value!r}") from None
    if isinstance(value, float):
        raise ConfigError(f"floating-point scalar {value!r} is not exact; write it as a string like '1/2'")
    raise ConfigError(f"bad scalar {value!r}")


def _parse_matrix(rows: Any, where: str) -> list[list[CycNumber]]:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ConfigError(f"{where}: matrix must be a non-empty list of rows")
    out = [[parse_scalar(x) for x in r] for r in rows]
    n = len(out)
    if any(len(r) != n for r in out):
        raise ConfigError(f"{where}: matrix must be square")
    return out


def _to_matrix(rows: list[list[CycNumber]], order: int) -> Matrix:
    return Matrix([[x.embed(order) for x in r] for r in rows], order)


def load_config(path: str | Path) -> Config:
    path = Path(path)
    try:
        raw = tomllib.loads(path.read_text())
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return config_from_dict(raw, source=str(path))


def config_from_dict(raw: dict, source: str = "<dict>") -> Config:
    caps = Caps()
    for key, val in raw.get("caps", {}).items():
        if not hasattr(caps, key):
            raise ConfigError(f"unknown cap {key!r}")
        if not isinstance(val, int) or isinstance(val, bool) or val < 0:
            raise ConfigError(f"cap {key} must be a non-negative integer")
        setattr(caps, key, val)

    abstract = None
    if "abstract" in raw:
        abstract = _parse_abstract(raw["abstract"])

    if "group" not in raw:
        if abstract is None:
            raise ConfigError("missing [group] section")
        return Config(None, {}, [], caps, abstract, source, raw)

    try:
        group = AbelianGroup(raw["group"]["invariant_factors"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"[group]: {exc}") from None

    mod_entries = raw.get("modules", [])
    parsed = []
    order = 1
    for k, entry in enumerate(mod_entries):
        name = entry.get("name", f"V{k + 1}")
        try:
            degree = group.element(entry["degree"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"module {name}: bad degree ({exc})") from None
        if "actions" in entry:
            acts = entry["actions"]
            if not isinstance(acts, list) or len(acts) != group.rank:
                raise ConfigError(f"module {name}: need one matrix per generator ({group.rank})")
            mats = [_parse_matrix(a, f"module {name}") for a in acts]
            if len({len(m) for m in mats}) != 1:
                raise ConfigError(f"module {name}: matrices differ in size")
            if "dim" in entry and entry["dim"] != len(mats[0]):
                raise ConfigError(f"module {name}: dim does not match matrices")
        else:
            raise ConfigError(f"module {name}: missing actions")
        for m in mats:
            for r in m:
                for x in r:
                    order = lcm(order, x.order)
        parsed.append((name, degree, mats))

    coc = raw.get("cocycle", {})
    try:
        if "formula" in coc:
            phi = ThreeCocycle(group, formula=coc["formula"])
            # evaluate once to surface formula errors here
            phi(group.identity, group.identity, group.identity)
        elif "table" in coc:
            table = {}
            for entry in coc["table"]:
                key = (group.element(entry["a"]), group.element(entry["b"]), group.element(entry["c"]))
                table[key] = parse_scalar(entry["value"])
            phi = ThreeCocycle(group, table=table)
        else:
            phi = ThreeCocycle.trivial(group)
    except (FormulaError, KeyError, TypeError) as exc:
        raise ConfigError(f"[cocycle]: {exc}") from None

    cat = YDCategory(group, phi, order)
    modules: dict[str, YDModule] = {}
    for name, degree, mats in parsed:
        if name in modules:
            raise ConfigError(f"duplicate module name {name!r}")
        try:
            modules[name] = YDModule.from_generators(cat, name, degree, [_to_matrix(m, cat.order) for m in mats])
        except ModuleError as exc:
            raise ConfigError(str(exc)) from None

    names = raw.get("tuple", {}).get("modules", [])
    for n in names:
        if n not in modules:
            raise ConfigError(f"[tuple] names unknown module {n!r}")
    return Config(cat, modules, list(names), caps, abstract, source, raw)


def _parse_abstract(sec: dict) -> AbstractGraph:
    try:
        objects = list(sec["objects"])
        cartan = {k: [list(map(int, r)) for r in v] for k, v in sec["cartan"].items()}
        refl = {k: list(v) for k, v in sec["reflections"].items()}
        base = sec.get("base", objects[0])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ConfigError(f"[abstract]: {exc}") from None
    for o in objects:
        if o not in cartan or o not in refl:
            raise ConfigError(f"[abstract]: object {o!r} lacks cartan or reflections")
    return AbstractGraph(objects, cartan, refl, base)


def load_fixture() -> Config:
    return load_config(FIXTURE)
