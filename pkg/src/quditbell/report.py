"""Scenario sweeps and their table / JSON / CSV renderings."""
from __future__ import annotations

import csv
import io
import itertools
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import BoundsReport, build_report, closed_form_bound
from .errors import DimensionLimitError, EnumerationLimitError
from .lhv import ENUMERATION_CAP, MaxResult, brute_force_max, sampled_max
from .linalg import DIM_CAP, max_hermitian_eigenvalue
from .quantum import Scenario, bell_operator, quantum_expectation

CLASSICAL_METHODS = ("brute", "closed", "sample", "both")
QUANTUM_METHODS = ("state", "eigen", "bound")
FORMATS = ("table", "json", "csv")
CSV_COLUMNS = [
    "parties", "dim", "nu", "classical_closed", "classical_brute", "exhaustive",
    "quantum_expectation", "quantum_max_eig", "qcr", "violated",
]


class UsageError(ValueError):
    """Invalid run configuration (CLI exit code 2)."""


@dataclass
class RunConfig:
    parties: list[int]
    dims: list[int]
    nus: list[Fraction] = field(default_factory=lambda: [Fraction(0)])
    classical: str = "both"
    quantum: str = "state"
    samples: int = 100_000
    seed: int = 0
    workers: int | None = None
    max_strategies: int = ENUMERATION_CAP
    dim_cap: int = DIM_CAP
    format: str = "table"
    out: str | None = None
    timing: bool = False

    def validate(self):
        if not self.parties or not self.dims or not self.nus:
            raise UsageError("need at least one value each for parties, dim and variant")
        if self.classical not in CLASSICAL_METHODS:
            raise UsageError(f"classical method must be one of {CLASSICAL_METHODS}")
        if self.quantum not in QUANTUM_METHODS:
            raise UsageError(f"quantum method must be one of {QUANTUM_METHODS}")
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}")
        if self.classical == "sample" and self.samples < 1:
            raise UsageError("--samples must be >= 1")
        if self.workers is not None and self.workers < 1:
            raise UsageError("--threads must be >= 1")
        if self.max_strategies < 1:
            raise UsageError("--max-strategies must be >= 1")

    def scenarios(self) -> list[Scenario]:
        try:
            out = {Scenario(N, d, nu) for N, d, nu in itertools.product(self.parties, self.dims, self.nus)}
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        return sorted(out)


def _classical(s: Scenario, cfg: RunConfig):
    closed = closed_form_bound(s) if cfg.classical in ("closed", "both") else None
    if cfg.classical == "closed" and closed is None:
        raise UsageError(f"no closed-form bound for nu={s.nu}; use --classical brute or sample")
    brute: MaxResult | None = None
    if cfg.classical == "sample":
        brute = sampled_max(s, cfg.samples, cfg.seed, cfg.workers)
    elif cfg.classical == "brute" or (cfg.classical == "both" and closed is None):
        brute = brute_force_max(s, cfg.workers, cfg.max_strategies)
    elif cfg.classical == "both" and s.strategy_count <= cfg.max_strategies:
        brute = brute_force_max(s, cfg.workers, cfg.max_strategies)
    return closed, brute


def run_scenario(s: Scenario, cfg: RunConfig) -> BoundsReport:
    timing = {}
    t0 = time.perf_counter()
    closed, brute = _classical(s, cfg)
    timing["classical"] = (time.perf_counter() - t0) * 1e3
    t0 = time.perf_counter()
    max_eig = None
    if cfg.quantum == "bound":
        quantum, tag = s.dim - 1.0, "paper-constant"
    else:
        quantum, tag = quantum_expectation(s, cfg.dim_cap), "ghz-state"
        if cfg.quantum == "eigen":
            max_eig = max_hermitian_eigenvalue(bell_operator(s, cfg.dim_cap))
    timing["quantum"] = (time.perf_counter() - t0) * 1e3
    return build_report(s, closed, brute, quantum, tag, max_eig, timing if cfg.timing else None)


def run(cfg: RunConfig) -> list[BoundsReport]:
    """One report per scenario, sorted by (N, d, nu).

    Raises UsageError, EnumerationLimitError or DimensionLimitError.
    """
    cfg.validate()
    return [run_scenario(s, cfg) for s in cfg.scenarios()]


def _num(x: float | None):
    return None if x is None else float(f"{x:.12g}")


def report_to_dict(r: BoundsReport) -> dict:
    s = r.scenario
    brute = None
    if r.classical_brute is not None:
        b = r.classical_brute
        brute = {
            "value": _num(b.max_value),
            "exhaustive": b.exhaustive,
            "strategies_evaluated": b.strategies_evaluated,
            "argmax": {"alpha": list(b.argmax.alpha), "beta": list(b.argmax.beta)},
        }
    return {
        "scenario": {"parties": s.parties, "dim": s.dim, "nu": s.nu_text},
        "classical": {
            "closed": _num(r.classical_closed),
            "closed_clause": r.closed_clause,
            "brute": brute,
            "match": r.classical_match,
            "verified_by_enumeration": r.verified_by_enumeration,
        },
        "quantum": {
            "expectation": _num(r.quantum_expectation),
            "max_eigenvalue": _num(r.quantum_max_eigenvalue),
            "bound": _num(r.quantum_bound),
        },
        "qcr": _num(r.qcr),
        "violated": r.violated,
        "provenance": r.provenance,
        "timing_ms": {k: round(v, 3) for k, v in r.timing_ms.items()},
    }


def to_json(reports: list[BoundsReport]) -> str:
    return json.dumps([report_to_dict(r) for r in reports], indent=2) + "\n"


def to_csv(reports: list[BoundsReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        b = r.classical_brute
        w.writerow([
            r.scenario.parties, r.scenario.dim, r.scenario.nu_text,
            _fmt_csv(r.classical_closed),
            _fmt_csv(None if b is None else b.max_value),
            "" if b is None else str(b.exhaustive).lower(),
            _fmt_csv(r.quantum_expectation),
            _fmt_csv(r.quantum_max_eigenvalue),
            _fmt_csv(r.qcr),
            str(r.violated).lower(),
        ])
    return buf.getvalue()


def _fmt_csv(x):
    return "" if x is None else f"{x:.12g}"


def to_table(reports: list[BoundsReport]) -> str:
    head = ["N", "d", "nu", "classical", "brute", "quantum", "qcr", "violated"]
    rows = []
    for r in reports:
        b = r.classical_brute
        brute = "-" if b is None else f"{b.max_value:.5f}" + ("" if b.exhaustive else "~")
        rows.append([
            str(r.scenario.parties), str(r.scenario.dim), r.scenario.nu_text,
            "-" if r.classical_closed is None else f"{r.classical_closed:.5f}",
            brute, f"{r.quantum_expectation:.5f}", f"{r.qcr:.5f}", "yes" if r.violated else "no",
        ])
    widths = [max(len(h), *(len(row[i]) for row in rows)) for i, h in enumerate(head)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(line, widths)) for line in [head, *rows]]
    return "\n".join(lines) + "\n"


def render(reports: list[BoundsReport], fmt: str) -> str:
    return {"table": to_table, "json": to_json, "csv": to_csv}[fmt](reports)


__all__ = [
    "RunConfig", "UsageError", "run", "run_scenario", "render", "to_json", "to_csv", "to_table",
    "report_to_dict", "EnumerationLimitError", "DimensionLimitError",
]
