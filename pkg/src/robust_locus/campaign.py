"""Empirical check of the c_max / c bounds on seeded random instances."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .cost import FAMILY_BOUNDS, cmax_cost, ratio_of, worst_case_cost
from .generators import FAMILIES, METRIC_KINDS, gen_random
from .model import CapacityError, InputError

CSV_HEADER = "family,metric_kind,n,sigma,c_max,c,ratio,bound,ok"
MIN_N = {"cycle": 3, "matching": 2}


def bound_tag(family: str, ptolemaic: bool, n: int) -> str:
    """Tightest proven tag for a whole-family subgraph on ``n`` vertices."""
    if family == "general-connected":
        return "ptolemaic" if ptolemaic else "general"
    if family == "star":
        return "star_ptolemaic" if ptolemaic else "star"
    if family == "tree":
        return "ptolemaic" if ptolemaic else "tree"
    if family == "cycle" and n == 3:
        return "triangle"
    if family in FAMILY_BOUNDS:
        return family
    raise InputError(f"unknown family {family!r}")


@dataclass(frozen=True)
class CampaignRow:
    family: str
    metric_kind: str
    seed: int
    n: int
    sigma: int
    c_max: float
    c: float | None
    ratio: float | None
    bound: float

    @property
    def skipped(self) -> bool:
        return self.c is None

    @property
    def ok(self) -> bool:
        return self.ratio is not None and self.ratio <= self.bound + 1e-9

    def csv(self) -> str:
        if self.skipped:
            return (
                f"{self.family},{self.metric_kind},{self.n},{self.sigma},"
                f"{self.c_max:.9f},,,{self.bound:.9f},skipped"
            )
        return (
            f"{self.family},{self.metric_kind},{self.n},{self.sigma},{self.c_max:.9f},"
            f"{self.c:.9f},{self.ratio:.9f},{self.bound:.9f},{str(self.ok).lower()}"
        )


def run_cell(
    family: str, metric_kind: str, seed: int, n_max: int, sigma_max: int, cap: int | None = None
) -> CampaignRow:
    rng = np.random.default_rng([seed, n_max, sigma_max])
    n = int(rng.integers(MIN_N.get(family, 3), n_max + 1))
    sigma = int(rng.integers(1, sigma_max + 1))
    inst = gen_random(family, n, sigma, metric_kind, seed)
    edges = inst.graph.edges
    bound = FAMILY_BOUNDS[bound_tag(family, metric_kind == "euclidean2d", n)]
    cm = cmax_cost(inst, edges)
    try:
        c, _ = worst_case_cost(inst, edges, cap)
    except CapacityError:
        return CampaignRow(family, metric_kind, seed, n, sigma, cm, None, None, bound)
    return CampaignRow(family, metric_kind, seed, n, sigma, cm, c, ratio_of(cm, c), bound)


def _cell(args: tuple) -> CampaignRow:
    return run_cell(*args)


def run_campaign(
    families: Sequence[str] = FAMILIES,
    metric_kinds: Sequence[str] = METRIC_KINDS,
    seeds: int = 100,
    n_max: int = 10,
    sigma_max: int = 3,
    jobs: int = 1,
    cap: int | None = None,
) -> list[CampaignRow]:
    for f in families:
        if f not in FAMILIES:
            raise InputError(f"unknown family {f!r}; expected one of {FAMILIES}")
    for k in metric_kinds:
        if k not in METRIC_KINDS:
            raise InputError(f"unknown metric kind {k!r}; expected one of {METRIC_KINDS}")
    if n_max < 3 or sigma_max < 1 or seeds < 1:
        raise InputError("need --n >= 3, --sigma >= 1 and --seeds >= 1")
    cells = [
        (f, k, s, n_max, sigma_max, cap) for f in families for k in metric_kinds for s in range(seeds)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_cell, cells, chunksize=16))
    else:
        rows = [_cell(c) for c in cells]
    rows.sort(key=lambda r: (r.family, r.metric_kind, r.seed))
    return rows


def format_rows(rows: Iterable[CampaignRow]) -> str:
    return "\n".join([CSV_HEADER] + [r.csv() for r in rows])
