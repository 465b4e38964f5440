"""Command-line front end.

    nichols-weyl <validate|cartan|graph|roots|titscone|hilbert> --config FILE
                 [--word-bound L] [--max-deg N] [--module NAME] [--dot FILE] [--report FILE]

Exit codes: 0 success, 2 validation failure, 3 cap exceeded, 4 parse error.
The JSON report (--report) has sorted keys and deterministic ordering, so
reruns on the same configuration produce byte-identical files.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .cartangraph import CartanGraph, explore, label_str
from .config import Config, ConfigError, load_config
from .exact import IntertwinerInconclusive
from .groupdata import check_three_cocycle, check_two_cocycle
from .nichols import ResourceCapExceeded, TensorSpace, cartan_entry, pairing_gram, symmetrizer
from .reflect import ModuleCatalog, ModuleTuple, Reflector
from .titscone import realization_report
from .weylroots import cartan_axioms, connectivity, real_roots

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_PARSE = 0, 2, 3, 4

# exhaustive cocycle checks are skipped beyond this many quadruples
MAX_COCYCLE_QUADRUPLES = 1 << 20


class Failure(Exception):
    def __init__(self, code: int, message: str, report: Optional[dict] = None):
        super().__init__(message)
        self.code = code
        self.report = report or {}


def _reflector(cfg: Config) -> Reflector:
    return Reflector(cfg.caps.max_ad_cap, cfg.caps.max_matrix_dim)


def _need_modules(cfg: Config, command: str) -> None:
    if cfg.cat is None or not cfg.tuple_names:
        raise Failure(EXIT_PARSE, f"{command} needs [group], [[modules]] and [tuple] sections")


# ---------------------------------------------------------------------------


def cmd_validate(cfg: Config, args) -> dict:
    _need_modules(cfg, "validate")
    G = cfg.group
    rep: dict = {"group": list(G.factors), "order": G.order}
    ok = True
    if G.order ** 4 <= MAX_COCYCLE_QUADRUPLES:
        bad = check_three_cocycle(cfg.cat.phi)
        rep["three_cocycle"] = {"checked": True, "violations": len(bad), "first": [_jsonable(b) for b in bad[:5]]}
        ok &= not bad
    else:
        rep["three_cocycle"] = {"checked": False, "reason": "group too large for the exhaustive check"}
    from .ydmod import is_simple, validate

    mods = {}
    for name in sorted(cfg.modules):
        m = cfg.modules[name]
        theta_bad = check_two_cocycle(cfg.cat.theta(m.degree)) if G.order ** 3 <= MAX_COCYCLE_QUADRUPLES else []
        v = validate(m)
        simple = is_simple(m) if v.ok else False
        mods[name] = {
            "degree": list(m.degree),
            "dim": m.dim,
            "two_cocycle_violations": len(theta_bad),
            "projective_rule": v.ok,
            "violations": [_jsonable(x) for x in v.violations[:5]],
            "simple": simple,
        }
        ok &= v.ok and not theta_bad
        if name in cfg.tuple_names:
            ok &= simple
    rep["modules"] = mods
    rep["tuple"] = cfg.tuple_names
    rep["ok"] = ok
    lines = [f"group Z{' x Z'.join(map(str, G.factors))}, {len(mods)} modules"]
    tc = rep["three_cocycle"]
    lines.append("3-cocycle identity: " + ("skipped" if not tc["checked"] else "ok" if not tc["violations"] else f"{tc['violations']} violations"))
    for name, info in mods.items():
        status = "ok" if info["projective_rule"] and not info["two_cocycle_violations"] else "FAIL"
        lines.append(f"  {name}: degree {info['degree']} dim {info['dim']} {status}{'' if info['simple'] else ' (not simple)'}")
    lines.append("validation: " + ("pass" if ok else "FAIL"))
    if not ok:
        raise Failure(EXIT_INVALID, "\n".join(lines), rep)
    rep["_text"] = lines
    return rep


def cmd_cartan(cfg: Config, args) -> dict:
    _need_modules(cfg, "cartan")
    t = cfg.base_tuple()
    sp = TensorSpace(t, cfg.caps.max_matrix_dim)
    n = len(t)
    A = [[0] * n for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        try:
            A[i][j] = cartan_entry(sp, i, j, cfg.caps.max_ad_cap)
        except ResourceCapExceeded as exc:
            raise Failure(EXIT_CAP, f"cap exceeded at ({i + 1},{j + 1}): {exc}", {"cap_exceeded": [i + 1, j + 1]})
    lines = ["Cartan matrix of " + label_str(tuple(cfg.tuple_names)) + ":"]
    lines += ["  [" + ", ".join(f"{x:2d}" for x in row) + "]" for row in A]
    return {"tuple": cfg.tuple_names, "cartan": A, "_text": lines}


def build_graph(cfg: Config) -> CartanGraph:
    if cfg.abstract is not None and (cfg.cat is None or not cfg.tuple_names):
        return CartanGraph.from_abstract(cfg.abstract)
    _need_modules(cfg, "graph")
    catalog = ModuleCatalog(cfg.modules[n] for n in sorted(cfg.modules))
    base = ModuleTuple(tuple(cfg.base_tuple()))
    return explore(base, _reflector(cfg), catalog, cfg.caps.max_objects)


def _graph_summary(g: CartanGraph, L: int) -> dict:
    pairs = [(i, j) for i in range(g.rank) for j in range(g.rank) if i < j]
    return {
        "rank": g.rank,
        "objects": [label_str(x) for x in g.objects],
        "object_count": len(g.objects),
        "base": label_str(g.base),
        "closed": g.is_closed(),
        "standard": g.is_standard(),
        "cg1_involution": not g.cg1_violations(),
        "cg2_rows": not g.cg2_violations(),
        "gcm": not g.gcm_violations(),
        "reflections": {label_str(x): [label_str(y) for y in g.r[x]] for x in g.objects},
        "cartan": {label_str(x): g.cartan[x] for x in g.objects},
        "rank_two_words_at_base": {
            f"(r{i + 1}r{j + 1})^3": label_str(g.apply_word([j, i] * 3)) for i, j in pairs
        },
        "connectivity": _jsonable(connectivity(g, L)),
    }


def cmd_graph(cfg: Config, args) -> dict:
    g = build_graph(cfg)
    rep = _graph_summary(g, cfg.caps.word_bound)
    if args.dot:
        Path(args.dot).write_text(g.to_dot())
    conn = rep["connectivity"]
    lines = [
        f"objects: {rep['object_count']} (closed={rep['closed']}, standard={rep['standard']})",
        f"CG1: {'ok' if rep['cg1_involution'] else 'FAIL'}  CG2: {'ok' if rep['cg2_rows'] else 'FAIL'}",
        f"connected: {conn['connected']}, at most one morphism per pair within L={conn['bound']}: "
        f"{conn['simply_connected_within_bound']}",
    ]
    if conn["witness"]:
        w = conn["witness"]
        lines.append(f"  two morphisms {w['source']} -> {w['target']}: words {w['words'][0]} and {w['words'][1]}")
    rep["_text"] = lines
    if not (rep["closed"] and rep["cg1_involution"] and rep["cg2_rows"] and rep["gcm"]):
        raise Failure(EXIT_INVALID, "\n".join(lines), rep)
    return rep


def cmd_roots(cfg: Config, args) -> dict:
    g = build_graph(cfg)
    L = cfg.caps.word_bound
    R = real_roots(g, g.base, L)
    ax = cartan_axioms(g, L)
    m_values = sorted({m for m in ax.m.values() if m is not None})
    rep = {
        "bound": L,
        "base": label_str(g.base),
        "roots": sorted(list(r) for r in R.roots),
        "root_count": len(R),
        "positive_roots": [list(r) for r in R.positive()],
        "m_values": m_values,
        "m_unbounded": sorted(
            [label_str(x), i + 1, j + 1] for (x, i, j), m in ax.m.items() if m is None
        ),
        "axioms": ax.summary(),
    }
    lines = [
        f"real roots at the base within word length {L}: {len(R)}",
        "m_ij over all objects: " + (", ".join(map(str, m_values)) or "none finite"),
        "axioms: " + ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in ax.summary().items() if k != "bound"),
    ]
    rep["_text"] = lines
    if not ax.ok:
        raise Failure(EXIT_INVALID, "\n".join(lines), rep)
    return rep


def cmd_titscone(cfg: Config, args) -> dict:
    g = build_graph(cfg)
    rep = realization_report(g, cfg.caps.word_bound, cfg.caps.chamber_word_bound, cfg.caps.grid_side, cfg.caps.grid_denominator)
    if rep["classification"] == "affine":
        v = ",".join(map(str, rep["null_vector"]))
        til = rep["tiling"]
        hs = "half-space verified" if rep["half_space_verified"] else f"half-space FAILED on {rep['half_space_violations']} chambers"
        line = f"affine, v=({v}), {hs}, tiling check: {til['violations']} violations"
        lines = [line, f"  {rep['chambers']} chambers (words <= {rep['chamber_word_bound']}), {til['points']} grid points, {til['uncovered']} uncovered"]
        rep["_text"] = lines
        if til["violations"] or not rep["half_space_verified"]:
            raise Failure(EXIT_INVALID, "\n".join(lines), rep)
    else:
        lines = [rep["classification"] + (f", {rep['root_count_at_bound']} roots" if rep["roots_closed_within_bound"] else "")]
        if rep["inconsistent"]:
            lines.append("  inconsistent: " + "; ".join(rep["notes"]))
        rep["_text"] = lines
    return rep


def cmd_hilbert(cfg: Config, args) -> dict:
    _need_modules(cfg, "hilbert")
    name = args.module or cfg.tuple_names[0]
    if name not in cfg.modules:
        raise Failure(EXIT_PARSE, f"unknown module {name!r}")
    V = cfg.modules[name]
    N = cfg.caps.max_degree
    dims, gram = [], []
    for n in range(N + 1):
        if V.dim ** n > cfg.caps.max_matrix_dim:
            raise Failure(EXIT_CAP, f"cap exceeded: V^(x){n} has dimension {V.dim ** n}")
        dims.append(symmetrizer(V, n).rank())
        gram.append(pairing_gram(V, n).rank())
    rep = {"module": name, "dims": dims, "pairing_ranks": gram, "consistent": dims == gram}
    rep["_text"] = [f"B({name}): " + ", ".join(map(str, dims)), "pairing ranks agree: " + str(dims == gram)]
    if dims != gram:
        raise Failure(EXIT_INVALID, "\n".join(rep["_text"]), rep)
    return rep


COMMANDS = {
    "validate": cmd_validate,
    "cartan": cmd_cartan,
    "graph": cmd_graph,
    "roots": cmd_roots,
    "titscone": cmd_titscone,
    "hilbert": cmd_hilbert,
}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        if x and all(isinstance(s, str) for s in x) and isinstance(x, tuple):
            return label_str(x)
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nichols-weyl", description="Nichols algebras, reflections, Cartan graphs and Tits cones.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--config", required=True, help="TOML configuration file")
    p.add_argument("--word-bound", type=int, help="word-length bound for roots and morphisms")
    p.add_argument("--chamber-bound", type=int, help="word-length bound for realized chambers")
    p.add_argument("--max-deg", type=int, help="top degree for hilbert")
    p.add_argument("--module", help="module name for hilbert (default: first tuple entry)")
    p.add_argument("--dot", help="write the Cartan graph in DOT format")
    p.add_argument("--report", help="write a JSON report")
    return p


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = make_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.word_bound is not None:
        cfg.caps.word_bound = args.word_bound
    if args.chamber_bound is not None:
        cfg.caps.chamber_word_bound = args.chamber_bound
    if args.max_deg is not None:
        cfg.caps.max_degree = args.max_deg
    code = EXIT_OK
    try:
        rep = COMMANDS[args.command](cfg, args)
    except Failure as f:
        rep = dict(f.report)
        rep["_text"] = str(f).splitlines()
        code = f.code
    except (ResourceCapExceeded, IntertwinerInconclusive) as exc:
        rep = {"_text": [f"cap exceeded: {exc}"]}
        code = EXIT_CAP
    text = rep.pop("_text", [])
    print("\n".join(text), file=out if code == EXIT_OK else sys.stderr if code == EXIT_PARSE else out)
    if args.report:
        rep = {"command": args.command, "exit_code": code, "result": _jsonable(rep)}
        Path(args.report).write_text(json.dumps(rep, sort_keys=True, indent=2) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
