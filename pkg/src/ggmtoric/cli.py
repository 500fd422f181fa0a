"""Command-line front end: ``ggmtoric <command> --graph PATH|NAME [options]``."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import ci, fixtures
from .errors import GGMError, GraphFormatError, SizeLimit
from .graph import (
    Graph, biconnected_components, central_vertices, is_block_graph, non_clique_blocks,
    one_clique_partitions,
)
from .maps import build_matrix, kii_relation_check, row_space_equal
from .symlinalg import adjugate_entry, check_shortest_path_term, shortest_path_monomial

COMMANDS = ("classify", "ci", "verify", "counterexamples", "adjugate", "maps", "sagbi")

EXIT_OK, EXIT_INPUT, EXIT_GUARD = 0, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    graph: str | None
    degree_bound: int = 3
    trials: int = 16
    seed: int = 0
    output: str = "human"
    max_c: int | None = None
    export_cas: str | None = None


def load_graph(spec: str) -> Graph:
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        return Graph.load(path)
    return fixtures.named_graph(spec)


def derive_seed(g: Graph, seed: int) -> int:
    if seed:
        return seed
    digest = hashlib.sha256(json.dumps(g.to_json(), sort_keys=True).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _classify(cfg: RunConfig, g: Graph, seed: int) -> dict:
    connected = g.is_connected()
    parts = one_clique_partitions(g) if connected else []
    return {
        "connected": connected,
        "block": is_block_graph(g),
        "biconnected_components": [sorted(b) for b in biconnected_components(g)],
        "non_clique_blocks": [sorted(b) for b in non_clique_blocks(g)],
        "centers": sorted(central_vertices(g)),
        "partitions": len(parts),
        "one_clique_partitions": [p.to_json() for p in parts],
    }


def _generators(cfg: RunConfig, g: Graph) -> ci.GeneratorSet:
    if cfg.max_c is not None:
        return ci.ci_generators_full(g, cfg.max_c)
    return ci.ci_generators_1clique(g)


def _ci(cfg: RunConfig, g: Graph, seed: int) -> dict:
    gens = _generators(cfg, g)
    out = gens.to_json()
    del out["n"]
    return {"mode": "full" if cfg.max_c is not None else "1clique", "max_c": cfg.max_c, **out}


def _verify(cfg: RunConfig, g: Graph, seed: int) -> dict:
    verdict = ci.check_degree2_theorem(g, cfg.degree_bound, cfg.trials, seed)
    out = verdict.to_json()
    del out["graph"]
    return out


def _counterexamples(cfg: RunConfig, g: Graph, seed: int) -> dict:
    return ci.counterexample_suite(cfg.trials, seed)


def _adjugate(cfg: RunConfig, g: Graph, seed: int) -> dict:
    entries = []
    for i in g.vertices:
        for j in g.vertices:
            if i > j:
                continue
            sign, m = shortest_path_monomial(g, i, j)
            entries.append({
                "i": i,
                "j": j,
                "f": adjugate_entry(g, i, j).to_text(),
                "path_term": f"{sign}*{m}",
                "leading": check_shortest_path_term(g, i, j),
            })
    return {"entries": entries, "all_leading": all(e["leading"] for e in entries)}


def _maps(cfg: RunConfig, g: Graph, seed: int) -> dict:
    psi, phi = build_matrix(g, "psi"), build_matrix(g, "phi")
    return {
        "psi": psi.to_json(),
        "phi": phi.to_json(),
        "rank_psi": psi.rank(),
        "rank_phi": phi.rank(),
        "row_space_equal": row_space_equal(psi, phi),
        "kii_relation": kii_relation_check(g),
    }


def _sagbi(cfg: RunConfig, g: Graph, seed: int) -> dict:
    report = ci.sagbi_homogeneity_report(g)
    return {"homogeneous": all(r["phi_equal"] for r in report), "generators": report}


HANDLERS = {
    "classify": _classify,
    "ci": _ci,
    "verify": _verify,
    "counterexamples": _counterexamples,
    "adjugate": _adjugate,
    "maps": _maps,
    "sagbi": _sagbi,
}


def run(cfg: RunConfig) -> dict:
    """Execute a command and return its payload."""
    g = load_graph(cfg.graph) if cfg.graph else None
    if g is not None:
        seed = derive_seed(g, cfg.seed)
    else:
        seed = cfg.seed or int.from_bytes(hashlib.sha256(cfg.command.encode()).digest()[:8], "big")
    payload = {"command": cfg.command, "graph": g.to_json() if g else None, "seed": seed}
    payload.update(HANDLERS[cfg.command](cfg, g, seed))
    if cfg.export_cas and g is not None:
        gens = _generators(cfg, g) if g.n > 1 else ci.GeneratorSet(g.n)
        Path(cfg.export_cas).write_text(ci.export_cas(g, gens))
    return payload


def render_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def render_human(payload, indent: int = 0) -> str:
    """Indented key/value rendering of a payload; scalars and flat lists stay JSON-encoded."""
    pad = "  " * indent
    lines = []
    items = sorted(payload.items()) if isinstance(payload, dict) else [(None, x) for x in payload]
    for key, value in items:
        head = f"{pad}{key}:" if key is not None else f"{pad}-"
        if isinstance(value, (dict, list)) and value and not _inline(value):
            lines.append(head)
            lines.append(render_human(value, indent + 1).rstrip("\n"))
        else:
            lines.append(f"{head} {json.dumps(value)}")
    return "\n".join(lines) + "\n"


def _inline(value) -> bool:
    if not isinstance(value, list):
        return False
    return all(
        not isinstance(x, dict) and (not isinstance(x, list) or all(not isinstance(y, (dict, list)) for y in x))
        for x in value
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph JSON file or fixture name (fig1..fig4, ex14, path4, K<n>, ...)")
    common.add_argument("--degree-bound", type=int, default=3)
    common.add_argument("--trials", type=int, default=16)
    common.add_argument("--seed", type=int, default=0, help="0 derives a seed from the graph")
    common.add_argument("--max-c", type=int, default=None, help="use all separations with |C| <= N")
    common.add_argument("--output", choices=("human", "json"), default="human")
    common.add_argument("--export-cas", metavar="PATH", help="write a Macaulay2 cross-check script")
    parser = argparse.ArgumentParser(prog="ggmtoric", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def parse_config(argv: list[str] | None = None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.degree_bound < 2:
        parser.error("--degree-bound must be at least 2")
    if ns.trials < 1:
        parser.error("--trials must be at least 1")
    if not 0 <= ns.seed < 2 ** 64:
        parser.error("--seed must be a 64-bit unsigned integer")
    if ns.max_c is not None and ns.max_c < 0:
        parser.error("--max-c must be nonnegative")
    if ns.command != "counterexamples" and not ns.graph:
        parser.error("--graph is required")
    return RunConfig(ns.command, ns.graph, ns.degree_bound, ns.trials, ns.seed, ns.output,
                     ns.max_c, ns.export_cas)


def main(argv: list[str] | None = None) -> int:
    cfg = parse_config(argv)
    try:
        payload = run(cfg)
    except SizeLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (GraphFormatError, GGMError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = render_json(payload) if cfg.output == "json" else render_human(payload)
    sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
