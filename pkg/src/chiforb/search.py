"""Seeded hill-climbing search for F-free graphs of large chromatic number.

Restart ``r`` uses the split taken after ``r`` outputs of ``SplitMix64(seed)``, so each
restart is reproducible on its own and the result does not depend on how
restarts are spread over worker processes.  Moves are arc insertion, deletion
and reversal; a move that creates a forbidden copy is repaired by deletion.
A move is kept when chi does not drop.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from . import limits
from .coloring import chi_exact
from .digraph import OrientedGraph
from .errors import BadSpec, BudgetExhausted, TooLarge
from .generators import SplitMix64, grow_f_free, repair
from .patterns import PatternKind, find_induced, is_f_free, parse_pattern

log = logging.getLogger(__name__)

SEARCH_CAP = 24


@dataclass
class SearchJob:
    forbid: list = field(default_factory=list)
    target_chi: int = 3
    n: int = 10
    seed: int = 0
    budget: int = 1000
    restarts: int = 4
    density: float = 0.5
    init: OrientedGraph | None = None

    def __post_init__(self):
        self.forbid = [parse_pattern(f) if isinstance(f, str) else f for f in self.forbid]
        if self.target_chi < 2:
            raise BadSpec("target_chi must be >= 2")
        if self.budget <= 0:
            raise BadSpec("budget must be positive")
        if self.restarts <= 0:
            raise BadSpec("restarts must be positive")
        n = self.init.n if self.init is not None else self.n
        if n > min(SEARCH_CAP, limits.exact_cap()):
            raise TooLarge(f"search is capped at {min(SEARCH_CAP, limits.exact_cap())} vertices")
        if self.init is not None:
            self.n = self.init.n
            free, emb = is_f_free(self.init, self.forbid)
            if not free:
                raise BadSpec(f"initial graph contains {emb.pattern.name}")

    def to_dict(self) -> dict:
        return {
            "forbid": [f.name for f in self.forbid],
            "target_chi": self.target_chi,
            "n": self.n,
            "seed": self.seed,
            "budget": self.budget,
            "restarts": self.restarts,
            "density": self.density,
            "init": self.init.to_dict() if self.init is not None else None,
        }


@dataclass
class RestartResult:
    index: int
    graph: OrientedGraph
    chi: int
    iterations: int
    hit: bool


def _restart_rng(seed: int, index: int) -> SplitMix64:
    root = SplitMix64(seed)
    for _ in range(index):
        root.next_u64()
    return root.split()


def _budget_share(job: SearchJob, index: int) -> int:
    base, extra = divmod(job.budget, job.restarts)
    return base + (1 if index < extra else 0)


def _mutate(g: OrientedGraph, rng: SplitMix64) -> OrientedGraph:
    arcs = set(g.arcs)
    n = g.n
    move = rng.below(3)
    if move == 0 or not arcs:
        missing = [(i, j) for i in range(n) for j in range(i + 1, n) if not g.adjacent(i, j)]
        if missing:
            i, j = missing[rng.below(len(missing))]
            arcs.add((i, j) if rng.next_u64() & 1 == 0 else (j, i))
    else:
        ordered = sorted(arcs)
        a = ordered[rng.below(len(ordered))]
        arcs.discard(a)
        if move == 2:
            arcs.add((a[1], a[0]))
    return OrientedGraph(n, arcs)


def run_restart(job: SearchJob, index: int) -> RestartResult:
    rng = _restart_rng(job.seed, index)
    if job.init is not None:
        current = job.init
    else:
        current = grow_f_free(job.n, job.density, rng.next_u64(), job.forbid, max_tries=10_000)
    chi = chi_exact(current)[0]
    steps = _budget_share(job, index)
    done = 0
    while done < steps and chi < job.target_chi:
        done += 1
        cand = _mutate(current, rng)
        if job.forbid:
            try:
                cand = repair(cand, job.forbid, max_tries=cand.m + 1)
            except BudgetExhausted:
                continue
        c = chi_exact(cand)[0]
        if c >= chi:
            current, chi = cand, c
    return RestartResult(index, current, chi, done, chi >= job.target_chi)


def _run_indexed(args):
    job, index = args
    return run_restart(job, index)


def _key(r: RestartResult):
    return (-r.chi, r.graph.n, r.graph.arcs)


def detector_transcript(g: OrientedGraph, forbid: Sequence[PatternKind]) -> list[dict]:
    out = []
    for f in forbid:
        emb = find_induced(g, f)
        out.append({"pattern": f.name, "present": emb is not None,
                    "embedding": list(emb.map) if emb else None})
    return out


def certificate(g: OrientedGraph, forbid: Sequence[PatternKind]) -> dict:
    stats: dict = {}
    chi, col = chi_exact(g, stats)
    return {
        "graph": g.to_dict(),
        "chi": chi,
        "coloring": col.to_dict(),
        "chi_search": stats,
        "detectors": detector_transcript(g, forbid),
    }


def cmd_search(job: SearchJob, workers: int = 1) -> dict:
    """Run every restart and merge: the best chi wins, ties go to the
    lexicographically least ``(n, arcs)``."""
    tasks = [(job, r) for r in range(job.restarts)]
    if workers > 1:
        import multiprocessing

        with multiprocessing.Pool(workers) as pool:
            results = pool.map(_run_indexed, tasks)
    else:
        results = [_run_indexed(t) for t in tasks]
    best = min(results, key=_key)
    report = {
        "job": job.to_dict(),
        "found": best.chi >= job.target_chi,
        "best_chi": best.chi,
        "best": best.graph.to_dict(),
        "iterations": sum(r.iterations for r in results),
        "restarts": [{"index": r.index, "chi": r.chi, "iterations": r.iterations} for r in results],
    }
    if report["found"]:
        report["certificate"] = certificate(best.graph, job.forbid)
    return report
