"""Command-line front end: ``cliffpair <command> --pair <id> [options]``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from . import spin
from .liealg import CATALOG, CatalogError, SymmetricPair, half_weight_sum, pair_from_id
from .multivec import UsageError

SCHEMA = "cliffpair/1"
COMMANDS = ("info", "primitives", "invariants", "hc", "verify-main", "verify-kostant", "verify-all")


@dataclass
class RunConfig:
    pair: str
    command: str
    format: str = "text"
    threads: int = 1
    confirm_large: bool = False
    max_p: Optional[int] = None
    timings: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        sys.exit(2)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cliffpair", description="Exact Clifford-algebra invariants of symmetric pairs.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--pair", required=True, help="one of: " + ", ".join(sorted(CATALOG)))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: $CLIFFPAIR_THREADS or 1)")
    p.add_argument("--confirm-large", action="store_true",
                   help="allow stretch pairs, which can run for hours")
    p.add_argument("--max-p", type=int, default=None,
                   help="override the desk bound on dim p (default %d)" % spin.DESK_BOUND_P)
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in reports")
    return p


def parse_config(argv: List[str]) -> RunConfig:
    parser = _parser()
    ns = parser.parse_args(argv)
    threads = ns.threads
    if threads is None:
        env = os.environ.get("CLIFFPAIR_THREADS")
        try:
            threads = int(env) if env else 1
        except ValueError:
            parser.error("CLIFFPAIR_THREADS must be an integer")
    if threads < 1:
        parser.error("thread count must be at least 1")
    if ns.pair not in CATALOG:
        try:
            pair_from_id(ns.pair)
        except CatalogError as exc:
            parser.error(str(exc))
    return RunConfig(ns.pair, ns.command, ns.format, threads, ns.confirm_large, ns.max_p, ns.timings)


# commands -------------------------------------------------------------------

def _info(pair: SymmetricPair, cfg: RunConfig) -> Tuple[dict, bool]:
    return {"family": pair.family, "group": pair.group_name, "primary": pair.primary,
            "stretch": CATALOG[pair.id][2], "dims": pair.dims,
            "positive_systems": len(pair.posSystems),
            "half_weight_sums": [[str(x) for x in half_weight_sum(pair, w)]
                                 for w in range(len(pair.posSystems))]}, True


def _primitives(pair: SymmetricPair, cfg: RunConfig) -> Tuple[dict, bool]:
    from .hc import primitive_gram
    from .invariants import primitives_p
    prims = primitives_p(pair)
    G = primitive_gram(pair)
    return {"primitives": [p.to_dict() for p in prims],
            "gram": [[str(x) for x in row] for row in G]}, True


def _invariants(pair: SymmetricPair, cfg: RunConfig) -> Tuple[dict, bool]:
    from .spin import Flavor, invariants_cl, invariants_wedge_graded, isotypic_idempotents
    lie = invariants_cl(pair, Flavor.CL_K_LIE)
    grp = invariants_cl(pair, Flavor.CL_K_GROUP)
    wg = invariants_wedge_graded(pair)
    pa = isotypic_idempotents(pair)
    return {"cl_k_lie": lie.to_dict(), "cl_k_group": grp.to_dict(),
            "wedge_graded_dims": wg.gradedDims, "projection_algebra": pa.to_dict()}, True


def _hc(pair: SymmetricPair, cfg: RunConfig) -> Tuple[dict, bool]:
    from .hc import build_hc, hc_alpha_check, hc_apply
    from .invariants import primitives_p
    from .spin import Flavor, invariants_cl, isotypic_idempotents
    inv = invariants_cl(pair, Flavor.CL_K_GROUP)
    pa = isotypic_idempotents(pair)
    out, ok = [], True
    for w in range(len(pair.posSystems)):
        hc = build_hc(pair, w)
        good, got, want = hc_alpha_check(pair, w)
        ok = ok and good
        out.append({"w": w, "projector_terms": len(hc.Pw.terms),
                    "alpha_t": {"pass": good, "got": got, "expected": want},
                    "primitives": [hc_apply(hc, p.element).to_list() for p in primitives_p(pair)],
                    "invariants": [hc_apply(hc, x).to_list() for x in inv.elements],
                    "idempotents": [hc_apply(hc, e).to_list() for e in pa.idempotents]})
    return {"projections": out}, ok


def _verify_main(pair: SymmetricPair, cfg: RunConfig) -> Tuple[dict, bool]:
    from .hc import verify_main_theorem
    rep = verify_main_theorem(pair, threads=cfg.threads)
    return rep.to_dict(timings=cfg.timings), rep.passed


def _verify_kostant(pair: SymmetricPair, cfg: RunConfig) -> Tuple[dict, bool]:
    from .filtration import verify_kostant
    rel = verify_kostant(pair, "A")
    ab = verify_kostant(pair, "H")
    return {"relative": rel.to_dict(), "absolute": ab.to_dict()}, rel.equal and ab.equal


def _verify_all(pair: SymmetricPair, cfg: RunConfig) -> Tuple[dict, bool]:
    main, ok1 = _verify_main(pair, cfg)
    kost, ok2 = _verify_kostant(pair, cfg)
    return {"main": main, "kostant": kost, "pass": ok1 and ok2}, ok1 and ok2


HANDLERS: Dict[str, Callable[[SymmetricPair, RunConfig], Tuple[dict, bool]]] = {
    "info": _info, "primitives": _primitives, "invariants": _invariants, "hc": _hc,
    "verify-main": _verify_main, "verify-kostant": _verify_kostant, "verify-all": _verify_all,
}


def render_text(data, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k in sorted(data):
            v = data[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append("%s%s:" % (pad, k))
                lines.append(render_text(v, indent + 1))
            else:
                lines.append("%s%s: %s" % (pad, k, _inline(v)))
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append("%s-" % pad)
                lines.append(render_text(v, indent + 1))
            else:
                lines.append("%s- %s" % (pad, _inline(v)))
    else:
        lines.append(pad + _inline(data))
    return "\n".join(lines)


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _inline(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    return str(v)


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        cfg = parse_config(list(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if CATALOG[cfg.pair][2] and cfg.command != "info" and not cfg.confirm_large:
        sys.stderr.write("%s is a stretch pair and may run for hours; pass --confirm-large\n" % cfg.pair)
        return 2
    if cfg.max_p is not None:
        spin.DESK_BOUND_P = cfg.max_p
    pair = pair_from_id(cfg.pair)
    try:
        result, ok = HANDLERS[cfg.command](pair, cfg)
    except UsageError as exc:
        sys.stderr.write("cliffpair: %s\n" % exc)
        return 2
    doc = {"schema": SCHEMA, "command": cfg.command, "pair": cfg.pair, "pass": ok, "result": result}
    if cfg.format == "json":
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        out.write(render_text(doc) + "\n")
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
