"""Algorithm dispatch, timing and report rendering shared by the CLI."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass
from typing import Optional

from .baselines import dec_solve, ec_solve, sg3_solve, sg_solve
from .graph import ContractionTrace, CutAssignment, WeightMatrix, total_weight
from .oracle import DEFAULT_MAX_N, brute_force
from .stabilizer import StabilizerPolicy, stabilizer_solve

ALGORITHMS = ("stabilizer", "ec", "dec", "sg", "sg3", "exact")
CSV_FIELDS = (
    "instance",
    "n",
    "algorithm",
    "cut_weight",
    "total_weight",
    "ratio",
    "optimal_weight",
    "time_ms",
    "policy",
)


@dataclass(frozen=True)
class SolveOptions:
    tie_break: str = "lex"
    survivor: str = "small"
    dec_direction: str = "max-total"
    epsilon: Optional[float] = None
    engine: str = "heap"
    max_n: int = DEFAULT_MAX_N

    def policy_for(self, algorithm: str) -> str:
        if algorithm == "stabilizer":
            return StabilizerPolicy(self.tie_break, self.survivor, self.epsilon).describe()
        if algorithm == "dec":
            return f"direction={self.dec_direction}"
        if algorithm == "sg":
            return "order=natural"
        if algorithm == "exact":
            return f"max_n={self.max_n}"
        return ""


@dataclass
class Outcome:
    assignment: CutAssignment
    trace: Optional[ContractionTrace] = None
    optimal: object = None


def solve(W: WeightMatrix, algorithm: str, options: SolveOptions = SolveOptions()) -> Outcome:
    if options.epsilon is not None:
        W = W.with_epsilon(options.epsilon)
    if algorithm == "stabilizer":
        policy = StabilizerPolicy(options.tie_break, options.survivor, options.epsilon, options.engine)
        res = stabilizer_solve(W, policy)
        return Outcome(res.assignment, res.trace)
    if algorithm == "ec":
        return Outcome(*ec_solve(W))
    if algorithm == "dec":
        return Outcome(*dec_solve(W, options.dec_direction))
    if algorithm == "sg":
        return Outcome(sg_solve(W))
    if algorithm == "sg3":
        return Outcome(sg3_solve(W))
    if algorithm == "exact":
        res = brute_force(W, options.max_n)
        return Outcome(res.witness, optimal=res.optimal_weight)
    raise ValueError(f"unknown algorithm {algorithm!r}")


@dataclass
class RunReport:
    instance: str
    n: int
    algorithm: str
    cut_weight: object
    total_weight: object
    ratio: float
    optimal_weight: object
    time_ms: float
    policy: str

    def formatted(self) -> dict:
        """Row values as rendered in every output format."""
        return {
            "instance": self.instance,
            "n": self.n,
            "algorithm": self.algorithm,
            "cut_weight": self.cut_weight,
            "total_weight": self.total_weight,
            "ratio": None if math.isnan(self.ratio) else round(self.ratio, 3),
            "optimal_weight": self.optimal_weight,
            "time_ms": round(self.time_ms, 3),
            "policy": self.policy,
        }


def run(
    name: str,
    W: WeightMatrix,
    algorithm: str,
    options: SolveOptions = SolveOptions(),
    repeat: int = 1,
) -> tuple[RunReport, Outcome]:
    """Solve ``repeat`` times and report the fastest wall-clock time."""
    best_ms = math.inf
    outcome = None
    for _ in range(max(1, repeat)):
        start = time.perf_counter()
        outcome = solve(W, algorithm, options)
        best_ms = min(best_ms, (time.perf_counter() - start) * 1000.0)
    total = total_weight(W)
    cut = outcome.assignment.cut_weight
    ratio = cut / total if total != 0 else math.nan
    report = RunReport(
        name, W.n, algorithm, cut, total, ratio, outcome.optimal, best_ms, options.policy_for(algorithm)
    )
    return report, outcome


def _cell(field: str, value) -> str:
    if value is None:
        return ""
    if field in ("ratio", "time_ms"):
        return f"{value:.3f}"
    return repr(value) if isinstance(value, float) else str(value)


def render_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in reports:
        row = r.formatted()
        writer.writerow([_cell(f, row[f]) for f in CSV_FIELDS])
    return buf.getvalue()


def render_markdown(reports) -> str:
    lines = [
        "| " + " | ".join(CSV_FIELDS) + " |",
        "|" + "|".join("---" for _ in CSV_FIELDS) + "|",
    ]
    for r in reports:
        row = r.formatted()
        lines.append("| " + " | ".join(_cell(f, row[f]) for f in CSV_FIELDS) + " |")
    return "\n".join(lines) + "\n"


def render_json(reports) -> str:
    return json.dumps([r.formatted() for r in reports], indent=2) + "\n"


RENDERERS = {"csv": render_csv, "md": render_markdown, "json": render_json}


def render(reports, fmt: str) -> str:
    return RENDERERS[fmt](list(reports))
