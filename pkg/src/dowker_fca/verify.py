"""Randomized and fixture-driven consistency suites.

Every context gets its own 64-bit seed derived from the run seed and its
index, so any single context can be regenerated in isolation.  Reports are
plain dicts; serialize them with :func:`dowker_fca.io.dumps` to get
byte-identical output for identical configs.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import _bits
from .complexes import DEFAULT_FACE_BUDGET, Hypergraph, d_ctx, verify_theorem1
from .concept import next_closure
from .context import FormalContext, check_galois_laws, running_example
from .cosheaf import verify_cosheaf_recovery
from .errors import DowkerError, SearchExhausted, TooLarge, WitnessError
from .homology import betti, sheaf_cohomology, simplicial_chain_complex, verify_dual_homology
from .order import DEFAULT_ISO_BUDGET

DEFAULT_SEED = 20160101
LAWS = ("galois", "oracle", "theorem1", "recovery", "sheaf_h0", "dual_homology", "duality")
ORACLE_LIMIT = 12


@dataclass(frozen=True)
class RunConfig:
    command: str = "verify"
    input: str | None = None
    output: str | None = None
    format: str = "json"
    seed: int = DEFAULT_SEED
    count: int = 200
    max_objects: int = 6
    max_attributes: int = 6
    face_budget: int = DEFAULT_FACE_BUDGET
    iso_budget: int = DEFAULT_ISO_BUDGET
    jobs: int = 1


def context_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


def random_context(rng: np.random.Generator, max_objects: int, max_attributes: int, total: bool = True) -> FormalContext:
    """Uniform shape in ``[1, max]`` per side and a uniform density in ``[0.2, 0.8]``.

    With ``total`` every empty row or column gets one random cross.
    """
    n = int(rng.integers(1, max_objects + 1))
    m = int(rng.integers(1, max_attributes + 1))
    mat = rng.random((n, m)) < rng.uniform(0.2, 0.8)
    if total:
        for g in np.flatnonzero(~mat.any(axis=1)):
            mat[g, rng.integers(m)] = True
        for j in np.flatnonzero(~mat.any(axis=0)):
            mat[rng.integers(n), j] = True
    return FormalContext.from_matrix(mat.astype(int).tolist())


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def _fail(exc: Exception) -> dict:
    out = {"ok": False, "error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, WitnessError) and exc.witness is not None:
        out["witness"] = _jsonable(exc.witness)
    return out


def _skip(reason: str) -> dict:
    return {"ok": None, "skipped": reason}


def _law_galois(ctx, hyper, cfg):
    v = check_galois_laws(ctx)
    return {"ok": True} if v else {"ok": False, "witness": _jsonable(v.witness)}


def _law_oracle(ctx, hyper, cfg):
    if ctx.n_objects > ORACLE_LIMIT:
        return _skip(f"more than {ORACLE_LIMIT} objects")
    got = list(next_closure(ctx))
    want = {ctx.derive_objects(A) for A in range(1 << ctx.n_objects)}
    if len(got) != len(set(got)) or set(got) != want:
        diff = sorted(set(got) ^ want, key=_bits.canonical_key)
        return {"ok": False, "witness": ctx.attribute_labels(diff[0]) if diff else "duplicate intent"}
    return {"ok": True, "concepts": len(got)}


def _law_theorem1(ctx, hyper, cfg):
    rep = verify_theorem1(ctx, hyper, iso_budget=cfg.iso_budget)
    return {"ok": True, "lattice_size": len(rep.extents)}


def _law_recovery(ctx, hyper, cfg):
    if not any(ctx.rows):
        return _skip("empty incidence")
    rec, lattice, _ = verify_cosheaf_recovery(ctx, iso_budget=cfg.iso_budget, budget=cfg.face_budget)
    return {"ok": True, "concepts": len(rec.pairs)}


def _law_sheaf_h0(ctx, hyper, cfg):
    if not ctx.is_total():
        return _skip("context is not total")
    sh = sheaf_cohomology(ctx, budget=cfg.face_budget)
    sizes = sum(_bits.count(ms) for ms in sh.decomposition.values())
    want = [ctx.n_attributes] + [0] * (len(sh.betti) - 1)
    if sh.betti != want or sizes != ctx.n_attributes:
        return {"ok": False, "witness": {"betti": sh.betti, "decomposition_total": sizes}}
    return {"ok": True, "betti": sh.betti}


def _law_dual_homology(ctx, hyper, cfg):
    if not ctx.is_total():
        return _skip("context is not total")
    rep = verify_dual_homology(ctx, budget=cfg.face_budget)
    return {"ok": True, "betti": rep.betti}


def _law_duality(ctx, hyper, cfg):
    if not ctx.is_total():
        return _skip("context is not total")
    b1 = betti(simplicial_chain_complex(d_ctx(ctx, budget=cfg.face_budget)))
    b2 = betti(simplicial_chain_complex(d_ctx(ctx.transpose(), budget=cfg.face_budget)))
    n = max(len(b1), len(b2))
    b1 += [0] * (n - len(b1))
    b2 += [0] * (n - len(b2))
    if b1 != b2:
        return {"ok": False, "witness": {"objects": b1, "attributes": b2}}
    return {"ok": True, "betti": b1}


_LAW_FUNCS = {
    "galois": _law_galois,
    "oracle": _law_oracle,
    "theorem1": _law_theorem1,
    "recovery": _law_recovery,
    "sheaf_h0": _law_sheaf_h0,
    "dual_homology": _law_dual_homology,
    "duality": _law_duality,
}


def check_context(ctx: FormalContext, cfg: RunConfig, hyper: Hypergraph | None = None) -> dict[str, dict]:
    """Run every law on one context; failures become report entries, never exceptions."""
    out = {}
    for name in LAWS:
        try:
            out[name] = _LAW_FUNCS[name](ctx, hyper, cfg)
        except (TooLarge, SearchExhausted) as exc:
            # a budget ran out: nothing was decided either way
            out[name] = _skip(f"{type(exc).__name__}: {exc}")
        except DowkerError as exc:
            out[name] = _fail(exc)
    return out


def _random_entry(args) -> dict:
    cfg, index = args
    seed = context_seed(cfg.seed, index)
    ctx = random_context(np.random.default_rng(seed), cfg.max_objects, cfg.max_attributes)
    return {
        "index": index,
        "source": "random",
        "seed": seed,
        "shape": [ctx.n_objects, ctx.n_attributes],
        "context": ctx.to_json()["incidence"],
        "laws": check_context(ctx, cfg),
    }


def run_verify(cfg: RunConfig, ctx: FormalContext | None = None, hyper: Hypergraph | None = None) -> dict:
    """Check the fixture context (default: the running example) plus ``cfg.count`` random ones.

    Random contexts are total and at most ``max_objects x max_attributes``.
    """
    if ctx is None:
        ctx, source = running_example(), "running_example"
    else:
        source = "input"
    entries = [
        {
            "index": 0,
            "source": source,
            "shape": [ctx.n_objects, ctx.n_attributes],
            "laws": check_context(ctx, cfg, hyper),
        }
    ]
    jobs = [(cfg, i) for i in range(1, cfg.count + 1)]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            entries += list(pool.map(_random_entry, jobs, chunksize=8))
    else:
        entries += [_random_entry(j) for j in jobs]
    summary = {law: {"pass": 0, "fail": 0, "skip": 0} for law in LAWS}
    for e in entries:
        for law, res in e["laws"].items():
            key = {True: "pass", False: "fail", None: "skip"}[res["ok"]]
            summary[law][key] += 1
    config = {k: v for k, v in asdict(cfg).items() if k not in ("command", "output", "format", "jobs")}
    return {
        "config": config,
        "field": "Q",
        "contexts": entries,
        "summary": summary,
        "ok": all(s["fail"] == 0 for s in summary.values()),
    }


__all__ = ["DEFAULT_SEED", "LAWS", "RunConfig", "check_context", "context_seed", "random_context", "run_verify"]
