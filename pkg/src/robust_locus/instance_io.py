"""JSON reading and writing of instances."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .model import InputError, Instance, MetricSpace, Problem


def metric_to_dict(metric: MetricSpace) -> dict[str, Any]:
    if metric.kind == "euclidean":
        assert metric.coords is not None
        return {
            "type": "euclidean",
            "dim": int(metric.coords.shape[1]),
            "points": metric.coords.tolist(),
        }
    if metric.kind == "graph":
        assert metric.weighted_edges is not None
        return {
            "type": "graph",
            "nodes": metric.size,
            "weighted_edges": [[a, b, w] for a, b, w in metric.weighted_edges],
        }
    return {
        "type": "explicit",
        "size": metric.size,
        "matrix": metric.dist.tolist(),
        "flavor": metric.flavor,
    }


def metric_from_dict(data: dict[str, Any]) -> MetricSpace:
    kind = data.get("type")
    try:
        if kind == "euclidean":
            points = data["points"]
            dim = int(data["dim"])
            if any(len(p) != dim for p in points):
                raise InputError(f"every point needs {dim} coordinates")
            return MetricSpace.euclidean(points)
        if kind == "explicit":
            matrix = data["matrix"]
            if len(matrix) != int(data["size"]):
                raise InputError("explicit matrix size does not match 'size'")
            return MetricSpace.explicit(matrix, flavor=data.get("flavor", "metric"))
        if kind == "graph":
            edges = [(int(a), int(b), float(w)) for a, b, w in data["weighted_edges"]]
            return MetricSpace.graph_induced(int(data["nodes"]), edges)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed {kind} metric: {exc}") from exc
    raise InputError(f"unknown metric type {kind!r}")


def problem_to_dict(problem: Problem) -> dict[str, Any]:
    if problem.kind == "sp":
        return {"type": "sp", "s": problem.s, "t": problem.t}
    if problem.kind == "evaluate":
        return {"type": "evaluate", "edge_set": [list(e) for e in problem.edge_set]}
    return {"type": problem.kind}


def problem_from_dict(data: dict[str, Any]) -> Problem:
    kind = data.get("type")
    if kind == "sp":
        return Problem.sp(int(data["s"]), int(data["t"]))
    if kind == "evaluate":
        return Problem.evaluate(tuple((int(i), int(j)) for i, j in data["edge_set"]))
    if kind in ("mst", "tsp"):
        return Problem(kind)
    raise InputError(f"unknown problem type {kind!r}")


def to_dict(instance: Instance) -> dict[str, Any]:
    return {
        "metric": metric_to_dict(instance.metric),
        "n": instance.n,
        "uncertainty": [list(u.positions) for u in instance.uncertainty],
        "edges": [list(e) for e in instance.graph.edges],
        "problem": problem_to_dict(instance.problem),
    }


def from_dict(data: dict[str, Any]) -> Instance:
    if not isinstance(data, dict):
        raise InputError("instance JSON must be an object")
    try:
        metric = metric_from_dict(data["metric"])
        problem = problem_from_dict(data["problem"])
        return Instance.build(
            int(data["n"]),
            [(int(i), int(j)) for i, j in data["edges"]],
            metric,
            [[int(p) for p in s] for s in data["uncertainty"]],
            problem,
        )
    except KeyError as exc:
        raise InputError(f"instance JSON is missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed instance JSON: {exc}") from exc


def dumps(instance: Instance) -> str:
    return json.dumps(to_dict(instance))


def loads(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return from_dict(data)


def load(path: str | Path) -> Instance:
    return loads(Path(path).read_text())


def dump(instance: Instance, path: str | Path) -> None:
    Path(path).write_text(dumps(instance) + "\n")
