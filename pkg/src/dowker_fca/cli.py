"""Command line entry point.

Each command reads one context and writes one artifact::

    dowker-fca concepts --input ctx.cxt --format dot --output lattice.dot
    dowker-fca verify --seed 7 --count 200

Without ``--input`` the bundled 4 x 6 running example is used.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields

from . import io
from .complexes import collapse, collapsed_context, d_ctx, face_poset, int_close_lattice, intersection_complex
from .concept import enumerate_concepts
from .cosheaf import dowker_cosheaf, recover_concepts
from .dot import export_dot
from .errors import DowkerError
from .homology import dowker_sheaf_cochain, sheaf_cohomology, simplicial_chain_complex, verify_dual_homology
from .verify import DEFAULT_SEED, RunConfig, run_verify

COMMANDS = ("concepts", "reduced", "hasse", "collapse", "intersection", "dowker", "cosheaf", "cohomology", "cor45", "verify")
FORMATS = ("json", "dot", "cxt", "csv")


class UsageError(Exception):
    pass


def _face_labels(ctx, mask):
    return "".join(ctx.object_labels(mask)) if all(len(g) == 1 for g in ctx.objects) else ",".join(ctx.object_labels(mask))


def _render(cfg: RunConfig, ctx, hyper) -> tuple[str, bool]:
    """Return the artifact text and whether the run succeeded."""
    fmt = cfg.format
    cmd = cfg.command

    def only(*allowed):
        if fmt not in allowed:
            raise UsageError(f"{cmd} supports --format {', '.join(allowed)}")

    if cmd == "verify":
        only("json")
        report = run_verify(cfg, ctx if cfg.input else None, hyper)
        return io.dumps(report), report["ok"]

    if cmd == "collapse":
        only("json", "cxt", "csv")
        if fmt == "cxt":
            return io.write_cxt(collapsed_context(ctx)), True
        if fmt == "csv":
            return io.write_csv(collapsed_context(ctx)), True
        return io.dumps(collapse(ctx).to_json()), True

    if cmd in ("concepts", "reduced", "hasse"):
        only("json", "dot")
        lattice = enumerate_concepts(ctx)
        reduced = cmd == "reduced"
        if fmt == "dot":
            return export_dot(lattice, reduced=reduced), True
        if cmd == "hasse":
            return io.dumps(lattice.poset.to_json(lambda i: lattice.concepts[i].format(ctx))), True
        return io.dumps(lattice.to_json(reduced=reduced)), True

    if cmd == "intersection":
        only("json", "dot")
        h = collapse(ctx)
        lattice = int_close_lattice(h)
        if fmt == "dot":
            return export_dot(lattice, lambda e: _face_labels(ctx, e) or "{}"), True
        out = {
            "hypergraph": h.to_json(),
            "intersection_complex": intersection_complex(h).to_json(),
            "lattice": lattice.to_json(lambda e: ctx.object_labels(e)),
        }
        return io.dumps(out), True

    if cmd == "dowker":
        only("json", "dot")
        asc = d_ctx(ctx, budget=cfg.face_budget)
        if fmt == "dot":
            return export_dot(face_poset(asc), lambda e: _face_labels(ctx, e)), True
        out = asc.to_json()
        out["f_vector"] = asc.f_vector()
        out["betti"] = simplicial_chain_complex(asc).betti()
        out["field"] = "Q"
        return io.dumps(out), True

    if cmd == "cosheaf":
        only("json", "dot")
        cs = dowker_cosheaf(ctx, budget=cfg.face_budget)
        if fmt == "dot":
            return export_dot(cs), True
        out = cs.to_json()
        out["recovered_concepts"] = [k.to_json(ctx) for k in recover_concepts(cs).pairs]
        return io.dumps(out), True

    if cmd == "cohomology":
        only("json")
        out = sheaf_cohomology(ctx, budget=cfg.face_budget).to_json(ctx)
        out["cochain"] = dowker_sheaf_cochain(ctx, budget=cfg.face_budget).to_json()
        return io.dumps(out), True

    if cmd == "cor45":
        only("json")
        return io.dumps(verify_dual_homology(ctx, budget=cfg.face_budget).to_json()), True

    raise UsageError(f"unknown command {cmd!r}")  # pragma: no cover - argparse restricts choices


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dowker-fca", description="Concept lattices, Dowker complexes and their (co)homology.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", "-i", help="context file (.cxt, .csv or .json); default: bundled running example")
    p.add_argument("--output", "-o", help="output file; default: stdout")
    p.add_argument("--format", "-f", choices=FORMATS, default="json")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random-suite seed (default {DEFAULT_SEED})")
    p.add_argument("--count", type=int, default=RunConfig.count, help="number of random contexts for verify")
    p.add_argument("--max-objects", type=int, default=RunConfig.max_objects)
    p.add_argument("--max-attributes", type=int, default=RunConfig.max_attributes)
    p.add_argument("--face-budget", type=int, default=RunConfig.face_budget)
    p.add_argument("--iso-budget", type=int, default=RunConfig.iso_budget)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for verify")
    return p


def parse_config(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    names = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in names})


def run(cfg: RunConfig) -> int:
    if cfg.seed < 0 or cfg.seed >= 2**64:
        raise UsageError("--seed must fit in 64 unsigned bits")
    if cfg.count < 0:
        raise UsageError("--count must be non-negative")
    for flag in ("max_objects", "max_attributes", "face_budget", "iso_budget", "jobs"):
        if getattr(cfg, flag) < 1:
            raise UsageError(f"--{flag.replace('_', '-')} must be at least 1")
    if cfg.input:
        ctx, hyper = io.read_context(cfg.input)
    else:
        ctx, hyper = io.parse_cxt(io.bundled_example_path().read_text(encoding="utf-8")), None
    text, ok = _render(cfg, ctx, hyper)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
        return run(cfg)
    except (UsageError, DowkerError, OSError) as exc:
        print(f"dowker-fca: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
