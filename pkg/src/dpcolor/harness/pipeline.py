"""Dispatch a document through one command and build a reproducible report.

Exit statuses: 0 pass / solution found, 1 verified negative, 2 input error,
3 budget exceeded.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .. import configurations as cfg
from .. import discharging as dch
from ..errors import BudgetExceeded, DPColorError, InputError, PreconditionError
from ..plane_graph import PlaneGraph
from ..solver import (DEFAULT_BUDGET_VERTICES, dp_colorable_for_all_consistent,
                      find_dp_coloring, is_choosable)
from .document import GraphDocument, emit, parse_graph

COMMANDS = ("faces", "check-hypothesis", "configs", "discharge", "solve", "choosable",
            "verify-dichotomy")
EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class RunReport:
    command: str
    digest: str
    status: int
    seed: int
    budgets: dict
    results: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"command": self.command, "input_sha256": self.digest, "exit_status": self.status,
                "seed": self.seed, "budgets": self.budgets, "results": self.results}

    def machine(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    def text(self) -> str:
        lines = [f"command: {self.command}", f"input sha256: {self.digest}",
                 f"exit status: {self.status}"]
        for key in sorted(self.results):
            value = self.results[key]
            if isinstance(value, list):
                lines.append(f"{key}:")
                lines += [f"  {item}" for item in value]
            else:
                lines.append(f"{key}: {value}")
        return "\n".join(lines) + "\n"


def _cycle(c) -> list[int]:
    return list(c.vertices)


def _faces(g: PlaneGraph) -> dict:
    return {"faces": [f"f{f.id} len={f.length}{' (outer)' if f.is_outer else ''}: "
                      f"{' '.join(map(str, f.walk))}" for f in g.faces],
            "euler": g.euler_characteristic()}


def _witness(x):
    if isinstance(x, tuple):
        return [_witness(y) for y in x]
    return x


def _citations(items) -> list[str]:
    return [f"{code}: {json.dumps(_witness(w))}" for code, w in items]


def _hypothesis(g, convention) -> tuple[int, dict]:
    ok, pairs = cfg.check_hypothesis(g, 8, convention)
    return (EXIT_OK if ok else EXIT_NEGATIVE,
            {"hypothesis": "holds" if ok else "violated",
             "adjacent_pairs": [f"{_cycle(a)} ~ {_cycle(b)}" for a, b in pairs]})


def _configs(g, convention) -> tuple[int, dict]:
    rep = cfg.analyze(g, convention=convention)
    classes = {}
    for v, label in sorted(rep.vertex_classes.items()):
        classes.setdefault(label, []).append(v)
    return EXIT_OK, {
        "vertex_classes": [f"{label}: {classes[label]}" for label in sorted(classes)],
        "tetrads": [f"{list(t.path)} avoids_S={t.avoids_S}" for t in rep.tetrads],
        "special_9_faces": [f"f{s.face}: {list(s.labels)}" for s in rep.special_9_faces],
        "separating_cycles": [str(_cycle(c)) for c in rep.separating_cycles],
        "chords_of_D": [str(list(e)) for e in rep.chords_of_D],
        "citations": _citations(rep.citations()),
    }


def _discharge(g, convention) -> tuple[int, dict]:
    ledger = dch.apply_rules(g)
    verdict = dch.verify_charges(ledger, g, cfg.analyze(g, convention=convention))
    return (EXIT_OK if verdict.passed else EXIT_NEGATIVE, {
        "verdict": verdict.verdict,
        "outer_final": dch.fraction_str(verdict.outer_final),
        "initial_total": dch.fraction_str(ledger.total_initial()),
        "negatives": [f"{ledger.name(x)} = {dch.fraction_str(q)}" for x, q, _ in verdict.negatives],
        "audit": dch.charge_audit(ledger),
        "citations": _citations(verdict.citations),
    })


def _dichotomy(g, convention) -> tuple[int, dict]:
    status, res = _discharge(g, convention)
    explained = res["verdict"] == "PASS" or bool(res["citations"])
    res = {k: res[k] for k in ("verdict", "outer_final", "citations")}
    res["explained"] = explained
    return (EXIT_OK if explained else EXIT_NEGATIVE), res


def _solve(g, doc: GraphDocument) -> tuple[int, dict]:
    c = doc.assignment(g)
    phi = find_dp_coloring(g, c, doc.precolored or {})
    if phi is None:
        return EXIT_NEGATIVE, {"solution": "none"}
    return EXIT_OK, {"solution": [f"{v}: {phi[v]}" for v in sorted(phi)]}


def _choosable(g, doc, seed, budget_vertices, budget_samples) -> tuple[int, dict]:
    res = is_choosable(g, doc.k, budget_vertices=budget_vertices)
    out = {"choosable": res.choosable, "list_assignments_checked": res.assignments_checked}
    if res.witness is not None:
        out["witness_lists"] = [f"{v}: {list(res.witness[v])}" for v in sorted(res.witness)]
    try:
        sweep = dp_colorable_for_all_consistent(g, doc.k, samples=budget_samples, seed=seed)
        out["dp_all_consistent"] = sweep.colorable
        out["dp_mode"] = sweep.mode
        out["dp_assignments"] = sweep.assignments
    except BudgetExceeded as exc:
        out["dp_all_consistent"] = f"skipped: {exc}"
    return (EXIT_OK if res.choosable else EXIT_NEGATIVE), out


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def run_pipeline(doc: GraphDocument | str, command: str, seed: int = 0,
                 budget_vertices: int = DEFAULT_BUDGET_VERTICES, budget_samples: int | None = None,
                 convention: str = "edge") -> RunReport:
    """Run ``command`` on a document (object or text); never raises for
    input or budget problems, which become exit statuses 2 and 3."""
    budgets = {"vertices": budget_vertices, "samples": budget_samples}
    text = doc if isinstance(doc, str) else emit(doc)
    report = RunReport(command, digest(text), EXIT_OK, seed, budgets)
    try:
        if command not in COMMANDS:
            raise InputError(f"unknown command {command!r}")
        doc = parse_graph(text) if isinstance(doc, str) else doc
        g = doc.graph()
        if command == "faces":
            status, res = EXIT_OK, _faces(g)
        elif command == "check-hypothesis":
            status, res = _hypothesis(g, convention)
        elif command == "configs":
            status, res = _configs(g, convention)
        elif command == "discharge":
            status, res = _discharge(g, convention)
        elif command == "verify-dichotomy":
            status, res = _dichotomy(g, convention)
        elif command == "solve":
            status, res = _solve(g, doc)
        else:
            status, res = _choosable(g, doc, seed, budget_vertices, budget_samples)
    except BudgetExceeded as exc:
        status, res = EXIT_BUDGET, {"error": str(exc)}
    except (InputError, PreconditionError) as exc:
        status, res = EXIT_INPUT, {"error": str(exc)}
    except DPColorError as exc:
        status, res = EXIT_INPUT, {"error": str(exc)}
    report.status = status
    report.results = res
    return report
