"""Task dispatch and the JSON analysis report.

Report schema (top level): version, ring, field, tasks, timing_ms.
Each task entry is {name, result, warnings}; results are built from
canonical Groebner strings and Hilbert-series data so that two runs of
the same session differ at most in timing_ms.
"""

import json
import time
from concurrent.futures import ThreadPoolExecutor

from ._version import __version__
from .connectivity import (
    BASE_FIELD_ONLY,
    component_ideals,
    endo_structure_report,
    hh_graph,
    lyubeznik_top,
)
from .homology import endo_stabilization, s2_fication, top_dimensional_part
from .ideals import ideal_dimension, ideal_height, minimal_primes


class AnalysisReport:
    __slots__ = ("version", "ring", "field", "tasks", "timing_ms")

    def __init__(self, version, ring, field, tasks, timing_ms):
        self.version = version
        self.ring = ring
        self.field = field
        self.tasks = list(tasks)
        self.timing_ms = timing_ms

    def to_json(self):
        return {
            "version": self.version,
            "ring": self.ring,
            "field": self.field,
            "tasks": self.tasks,
            "timing_ms": self.timing_ms,
        }

    def to_text(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, data):
        return cls(
            data["version"],
            data["ring"],
            data["field"],
            data["tasks"],
            data["timing_ms"],
        )

    def __eq__(self, other):
        return isinstance(other, AnalysisReport) and self.to_json() == other.to_json()


def _run_one(session, task, certify_field, budget):
    """(result, warnings) for a single task of a parsed session."""
    ideal = session.ideals[task.ideal]
    certify = certify_field or task.certify_field
    warnings = []
    result = {"ideal": task.ideal}

    if task.name == "dim":
        result["dim"] = ideal_dimension(ideal, budget=budget)

    elif task.name == "height":
        result["height"] = ideal_height(ideal, budget=budget)

    elif task.name == "minprimes":
        pl = minimal_primes(ideal, budget=budget)
        result["primes"] = [P.canonical_strings() for P in pl.primes]
        result["complete"] = pl.complete
        if not pl.complete:
            warnings.append(
                "decomposition incomplete within budget; prime list is partial"
            )

    elif task.name == "hhgraph":
        graph = hh_graph(ideal, certified_field=certify, budget=budget)
        result.update(graph.to_json())
        result["geometric_flag"] = graph.geometric_flag

    elif task.name == "lyubeznik":
        lam, flag = lyubeznik_top(ideal, certified_field=certify, budget=budget)
        result["lambda_top"] = lam
        result["geometric_flag"] = flag
        if flag == BASE_FIELD_ONLY:
            warnings.append(
                "field not certified: lambda_top is a lower bound for the "
                "geometric value"
            )

    elif task.name == "s2":
        b1, kernel = s2_fication(ideal, budget=budget)
        result["b1_hilbert"] = b1.hilbert(budget=budget).to_json()
        result["kernel"] = kernel.canonical_strings()

    elif task.name == "idtop":
        result["generators"] = top_dimensional_part(
            ideal, budget=budget
        ).canonical_strings()

    elif task.name == "endo":
        rep = endo_structure_report(ideal, certified_field=certify, budget=budget)
        data = rep.to_json()
        warnings.extend(data.pop("warnings"))
        data["geometric_flag"] = rep.graph.geometric_flag
        result.update(data)

    elif task.name == "components":
        ideals, certificate = component_ideals(
            ideal, certified_field=certify, budget=budget
        )
        result["components"] = [J.canonical_strings() for J in ideals]
        result["certificate"] = certificate

    elif task.name == "stabilize":
        rows = endo_stabilization(ideal, task.alpha_max, budget=budget)
        result["table"] = [
            {
                "alpha": alpha,
                "hilbert": h.to_json(),
                "coker_dim": coker,
            }
            for alpha, h, coker in rows
        ]
        result["coker_dims"] = [coker for _, _, coker in rows]

    else:  # pragma: no cover - parser restricts task names
        raise ValueError(f"unknown task {task.name!r}")

    return result, warnings


def run_session(session, certify_field=False, budget=None, jobs=1):
    """Execute every task of a session and assemble the report."""
    start = time.monotonic()

    def runner(task):
        result, warnings = _run_one(session, task, certify_field, budget)
        return {"name": task.name, "result": result, "warnings": warnings}

    if jobs > 1 and len(session.tasks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(runner, session.tasks))
    else:
        entries = [runner(task) for task in session.tasks]

    return AnalysisReport(
        version=__version__,
        ring=session.ring.describe(),
        field=session.ring.field.describe(),
        tasks=entries,
        timing_ms=int((time.monotonic() - start) * 1000),
    )


def run_task(session, task, certify_field=False, budget=None):
    """Single-task variant of run_session; returns a one-entry report."""
    start = time.monotonic()
    result, warnings = _run_one(session, task, certify_field, budget)
    return AnalysisReport(
        version=__version__,
        ring=session.ring.describe(),
        field=session.ring.field.describe(),
        tasks=[{"name": task.name, "result": result, "warnings": warnings}],
        timing_ms=int((time.monotonic() - start) * 1000),
    )
