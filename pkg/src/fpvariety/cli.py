"""Command-line entry point: ``fpvariety <command> [options]``.

Every command prints (or writes with ``--out``) one JSON document with sorted
keys and a ``"schema": 1`` field.  Exit codes: 0 success, 1 reproduction had
failures, 2 bad input, 3 budget exceeded, 4 internal invariant violated.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .census import (CosetLimitError, DEFAULT_MAX_COSETS, low_index_census, schreier_generators,
                     todd_coxeter)
from .polyring import SparsePoly
from .traces import TraceRewriteError
from .words import ParseError

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4

log = logging.getLogger("fpvariety")

# keys allowed in a --config file, with their converters
CONFIG_KEYS = {
    "presentation": str, "N": int, "max_cosets": int, "repeats": int, "map": str, "dim": int,
    "structure": str, "box": float, "res": int, "tol": float, "jobs": int, "out": str,
    "poly": str, "match": str, "at_infinity": lambda s: s.lower() in ("1", "true", "yes"),
    "tables": lambda s: s.lower() in ("1", "true", "yes"), "mesh": str,
}
POSITIVE = ("N", "max_cosets", "dim", "box", "res", "tol", "jobs")


class UsageError(ValueError):
    pass


def read_config(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment; unknown keys are rejected."""
    out = {}
    for n, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key, val = key.strip().replace("-", "_"), val.strip()
        if not sep:
            raise UsageError(f"{path}:{n}: expected key = value")
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        try:
            out[key] = CONFIG_KEYS[key](val)
        except ValueError as exc:
            raise UsageError(f"{path}:{n}: bad value for {key}: {exc}") from None
    return out


def _resolve_presentation(text: str):
    from .catalog import lookup_presentation
    if text is None or not text.strip():
        raise ParseError("empty presentation")
    p = Path(text)
    if "|" not in text and p.is_file():
        text = p.read_text().strip()
    return lookup_presentation(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fpvariety", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--jobs", type=int, help="worker processes")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("charvar", parents=[common], help="character-variety ideal and hypersurface")
    c.add_argument("presentation", nargs="?")
    c.add_argument("--match", help="comma-separated factor names to search variable assignments for")

    c = sub.add_parser("census", parents=[common], help="low-index subgroup census")
    c.add_argument("presentation", nargs="?")
    c.add_argument("--N", type=int)
    c.add_argument("--max-cosets", dest="max_cosets", type=int)
    c.add_argument("--tables", action="store_true", default=None, help="include coset tables")

    c = sub.add_parser("subst", parents=[common], help="substitution matrix and census invariance")
    c.add_argument("presentation", nargs="?")
    c.add_argument("--map")
    c.add_argument("--N", type=int)
    c.add_argument("--repeats", type=int)

    c = sub.add_parser("mic", parents=[common], help="fiducials from an index-d census and MIC checks")
    c.add_argument("presentation", nargs="?")
    c.add_argument("--dim", type=int)
    c.add_argument("--structure", choices=["single", "two-qubit"])
    c.add_argument("--tol", type=float)

    c = sub.add_parser("surface", parents=[common], help="singular points and mesh export")
    c.add_argument("poly", nargs="?", help="polynomial in x,y,z (default: the Hopf surface)")
    c.add_argument("--box", type=float)
    c.add_argument("--res", type=int)
    c.add_argument("--mesh", help="mesh output path")
    c.add_argument("--at-infinity", dest="at_infinity", action="store_true", default=None)

    c = sub.add_parser("reproduce", parents=[common], help="run every acceptance check")
    c.add_argument("--only", help="comma-separated check numbers")
    return ap


DEFAULTS = {"N": 7, "max_cosets": DEFAULT_MAX_COSETS, "repeats": 1, "map": "golden", "dim": 3,
            "structure": "single", "box": 5.0, "res": 64, "tol": 1e-9, "jobs": 1, "tables": False,
            "at_infinity": False}


def _settings(args: argparse.Namespace) -> dict:
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    merged = dict(DEFAULTS)
    merged.update(cfg)
    for k, v in vars(args).items():
        if v is not None and k not in ("config", "command"):
            merged[k] = v
    for k in POSITIVE:
        if k in merged and merged[k] is not None and merged[k] <= 0:
            raise UsageError(f"{k} must be positive")
    if merged.get("repeats", 0) < 0:
        raise UsageError("repeats must be non-negative")
    return merged


def cmd_charvar(s: dict) -> dict:
    from .charvar import character_variety
    p = _resolve_presentation(s.get("presentation"))
    match = [m for m in (s.get("match") or "").split(",") if m]
    res = character_variety(p, match=match)
    if not res.factored_check():
        raise AssertionError("factor table does not multiply back to the hypersurface")
    return res.to_json()


def cmd_census(s: dict) -> dict:
    p = _resolve_presentation(s.get("presentation"))
    res = low_index_census(p, s["N"], keep_tables=s["tables"], jobs=s["jobs"])
    for ts in res.tables.values():
        for t in ts:
            assert t.satisfies(p.relators) and t.is_permutation(), "census produced a bad table"
            # re-enumerate the subgroup from its Schreier generators as a cross-check
            n = todd_coxeter(p, schreier_generators(t), s["max_cosets"]).n
            assert n == t.n, f"subgroup of index {t.n} re-enumerates to {n} cosets"
    out = res.to_json(with_tables=s["tables"])
    out["presentation"] = p.to_str()
    return out


def cmd_subst(s: dict) -> dict:
    from .substitution import invariance_check
    from .words import named_map
    p = _resolve_presentation(s.get("presentation") or "a,b | [a,b]")
    e = named_map(s["map"], p.gens if s["map"].startswith("custom:") else "abcdefghijklmnopqrstuvwxyz")
    rep = invariance_check(p, e, s["N"], s["repeats"], jobs=s["jobs"])
    out = rep.to_json()
    out["map"] = e.to_str()
    out["presentation"] = p.to_str()
    return out


def cmd_mic(s: dict) -> dict:
    from .census import perm_rep
    from .micpovm import build_povm, fiducial_candidates, pauli_group, triple_product_geometry
    d = s["dim"]
    p = _resolve_presentation(s.get("presentation") or "a,b | a^2, b^3")
    paulis = pauli_group(d, s["structure"])
    census = low_index_census(p, d, keep_tables=True, jobs=s["jobs"])
    entries = []
    for ti, t in enumerate(census.tables.get(d, [])):
        for f in fiducial_candidates(perm_rep(t), paulis):
            if not f.magic:
                continue
            ps = build_povm(f, paulis)
            if ps.twirl_error() > 1e-10:
                raise AssertionError("twirl identity fails")
            item = ps.to_json()
            item["table"] = ti
            item["source"] = f.source
            if ps.is_mic:
                item["geometry"] = triple_product_geometry(ps, s["tol"]).to_json()
            entries.append(item)
    return {"schema": 1, "presentation": p.to_str(), "dim": d, "structure": s["structure"],
            "tables": len(census.tables.get(d, [])), "fiducials": entries}


def cmd_surface(s: dict) -> dict:
    from .catalog import F_H
    from .surface import ProjectiveSurface, export_mesh, search_singular
    f = SparsePoly.parse(s["poly"], ("x", "y", "z")) if s.get("poly") else F_H
    surf = ProjectiveSurface.from_affine(f)
    B = max(1, int(s["box"]))
    pts = search_singular(surf, B, at_infinity=s["at_infinity"])
    out = {"schema": 1, "poly": f.to_str(), "box": s["box"], "singular_points": [
        [str(v) for v in pt] for pt in pts], "chart": "t=0" if s["at_infinity"] else "t=1"}
    if s.get("mesh"):
        mesh = export_mesh(f, s["box"], s["res"], s["mesh"])
        out["mesh"] = {"path": s["mesh"], "vertices": len(mesh.vertices), "faces": len(mesh.faces)}
    return out


def cmd_reproduce(s: dict) -> dict:
    from .acceptance import run_all
    only = [int(x) for x in s["only"].split(",")] if s.get("only") else None
    results = run_all(only)
    for r in results:
        print(r.line(), file=sys.stderr)
    return {"schema": 1, "results": [r.to_json() for r in results],
            "passed": sum(r.ok for r in results), "total": len(results)}


COMMANDS = {"charvar": cmd_charvar, "census": cmd_census, "subst": cmd_subst, "mic": cmd_mic,
            "surface": cmd_surface, "reproduce": cmd_reproduce}


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    failure = None
    try:
        s = _settings(args)
        doc = COMMANDS[args.command](s)
        doc.setdefault("schema", 1)
        _emit(doc, s.get("out"))
        if args.command == "reproduce" and doc["passed"] < doc["total"]:
            return EXIT_FAILED
        return EXIT_OK
    except (ParseError, UsageError, ValueError, KeyError, FileNotFoundError) as exc:
        failure = (EXIT_PARSE, "parse", exc)
    except CosetLimitError as exc:
        failure = (EXIT_BUDGET, "budget", exc)
    except (AssertionError, TraceRewriteError, ArithmeticError) as exc:
        failure = (EXIT_INTERNAL, "internal", exc)
    code, kind, exc = failure
    err = {"schema": 1, "error": {"kind": kind, "message": str(exc), "status": code}}
    sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
