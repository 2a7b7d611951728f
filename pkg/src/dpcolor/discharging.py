"""Exact charge accounting on a plane graph with outer face D.

Initial charges are ``d(v) - 4`` on vertices, ``d(f) - 4`` on internal faces
and ``d(D) + 4`` on D.  Rules (ids kept as R1..R7):

* R1  a non-special internal 3-face takes 1/3 from each incident internal vertex;
* R2  a 2-vertex takes 2/3 from each incident internal face;
* R3  an internal 3-vertex takes 2/3 (bad) or 1/2 (light) from each incident
  9+-face; a good one takes 1/3 from each incident face other than D;
* R4  an internal 4-vertex takes 1/3 from each incident 9+-face when its
  faces are one non-special 3-face and three 9+-faces, or two non-special
  3-faces and two 9+-faces; it takes 1/6 from each incident 9+-face when
  they are one non-special 3-face, one other 8--face and two 9+-faces;
* R5  every internal face passes its remaining positive charge to D;
* R6  a vertex of D with degree at least 3 gives 1 to each incident special
  8--face and 1/3 to every other incident internal 8--face;
* R7  D gives 4/3 to each incident 2-vertex and to each incident 3-vertex
  lying on an internal 8--face, and 1 to every other incident vertex.

R1-R4, R6 and R7 are evaluated together from the initial charges; R5 runs
afterwards on the resulting face charges.  Everything is ``Fraction``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import configurations as cfg
from .errors import InputError, PreconditionError
from .plane_graph import PlaneGraph

Element = tuple[str, int]
RULE_ORDER = ("R1", "R2", "R3", "R4", "R6", "R7", "R5")

ONE_THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)
HALF = Fraction(1, 2)
ONE_SIXTH = Fraction(1, 6)
FOUR_THIRDS = Fraction(4, 3)


def vertex(v: int) -> Element:
    return ("v", v)


def face(f: int) -> Element:
    return ("f", f)


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class Transfer:
    phase: int
    rule: str
    source: Element
    sink: Element
    amount: Fraction

    def as_dict(self, names) -> dict:
        return {"rule": self.rule, "from": names(self.source), "to": names(self.sink),
                "amount": fraction_str(self.amount)}


@dataclass
class ChargeLedger:
    initial: dict[Element, Fraction]
    transfers: tuple[Transfer, ...]
    outer: Element
    degrees: dict[Element, int] = field(default_factory=dict)

    def name(self, x: Element) -> str:
        if x == self.outer:
            return "D"
        return f"{x[0]}{x[1]}"

    def _settle(self, transfers) -> dict[Element, Fraction]:
        out = dict(self.initial)
        for t in transfers:
            out[t.source] -= t.amount
            out[t.sink] += t.amount
        return out

    @cached_property
    def final(self) -> dict[Element, Fraction]:
        return self._settle(self.transfers)

    @cached_property
    def after_local_rules(self) -> dict[Element, Fraction]:
        """Charges once R1-R4, R6 and R7 have run (before R5)."""
        return self._settle(t for t in self.transfers if t.phase == 1)

    def history(self, x: Element) -> list[Transfer]:
        return [t for t in self.transfers if x in (t.source, t.sink)]

    def total_initial(self) -> Fraction:
        return sum(self.initial.values(), Fraction(0))

    def total_final(self) -> Fraction:
        return sum(self.final.values(), Fraction(0))


# ------------------------------------------------------------------ charges


def _require(g: PlaneGraph, S: Iterable[int] | None) -> None:
    if g.outer_dart is None:
        raise InputError("the graph has no outer face")
    if not g.is_connected():
        raise InputError("charges need a connected plane graph")
    if S is not None:
        S = set(S)
        if len(S) == 1:
            raise PreconditionError(
                "a single precoloured vertex must first be reduced to a precoloured "
                "outer cycle (see the outer-face boundary condition)", witness=next(iter(S)))
        if S != set(g.outer_vertices):
            raise PreconditionError("S must be the vertex set of the outer face")


def initial_charges(g: PlaneGraph, S: Iterable[int] | None = None) -> ChargeLedger:
    _require(g, S)
    D = face(g.outer_face)
    init: dict[Element, Fraction] = {}
    deg: dict[Element, int] = {}
    for v in g.vertices:
        init[vertex(v)] = Fraction(g.degree(v) - 4)
        deg[vertex(v)] = g.degree(v)
    for f in g.faces:
        shift = 4 if f.is_outer else -4
        init[face(f.id)] = Fraction(f.length + shift)
        deg[face(f.id)] = f.length
    return ChargeLedger(init, (), D, deg)


def _r4_amount(g: PlaneGraph, faces) -> Fraction | None:
    if len(faces) != 4:
        return None
    ns3 = sum(cfg.is_nonspecial_triangle(g, f) for f in faces)
    big = sum(f.length >= 9 for f in faces)
    if (ns3, big) in ((1, 3), (2, 2)):
        return ONE_THIRD
    if ns3 == 1 and big == 2:
        return ONE_SIXTH
    return None


def local_transfers(g: PlaneGraph, classes: dict[int, str]) -> list[Transfer]:
    D = g.outer_face
    on_D = g.outer_vertices
    out = []

    def give(rule, src, dst, amount):
        out.append(Transfer(1, rule, src, dst, Fraction(amount)))

    for v in g.vertices:
        faces = cfg.incident_faces(g, v)
        internal_faces = [f for f in faces if not f.is_outer]
        d = g.degree(v)
        if v not in on_D:
            for f in internal_faces:
                if cfg.is_nonspecial_triangle(g, f):
                    give("R1", vertex(v), face(f.id), ONE_THIRD)
        if d == 2:
            for f in internal_faces:
                give("R2", face(f.id), vertex(v), TWO_THIRDS)
        if v not in on_D and d == 3:
            label = classes.get(v)
            for f in internal_faces:
                if label == cfg.BAD and f.length >= 9:
                    give("R3", face(f.id), vertex(v), TWO_THIRDS)
                elif label == cfg.LIGHT and f.length >= 9:
                    give("R3", face(f.id), vertex(v), HALF)
                elif label == cfg.GOOD:
                    give("R3", face(f.id), vertex(v), ONE_THIRD)
        if v not in on_D and d == 4:
            amount = _r4_amount(g, internal_faces)
            if amount is not None:
                for f in internal_faces:
                    if f.length >= 9:
                        give("R4", face(f.id), vertex(v), amount)
        if v in on_D and d >= 3:
            for f in internal_faces:
                if f.length <= 8:
                    amount = 1 if cfg.is_special_face(g, f) else ONE_THIRD
                    give("R6", vertex(v), face(f.id), amount)
        if v in on_D:
            short = any(f.length <= 8 for f in internal_faces)
            amount = FOUR_THIRDS if d == 2 or (d == 3 and short) else 1
            give("R7", face(D), vertex(v), amount)
    return out


def apply_rules(g: PlaneGraph, classes: dict[int, str] | None = None,
                S: Iterable[int] | None = None) -> ChargeLedger:
    base = initial_charges(g, S)
    classes = cfg.classify_3_vertices(g) if classes is None else classes
    phase1 = local_transfers(g, classes)
    mid = ChargeLedger(base.initial, tuple(phase1), base.outer, base.degrees)
    sweep = []
    for f in g.internal_faces():
        rest = mid.final[face(f.id)]
        if rest > 0:
            sweep.append(Transfer(2, "R5", face(f.id), base.outer, rest))
    rank = {r: i for i, r in enumerate(RULE_ORDER)}
    transfers = sorted(phase1 + sweep,
                       key=lambda t: (t.phase, rank[t.rule], t.source, t.sink, t.amount))
    return ChargeLedger(base.initial, tuple(transfers), base.outer, base.degrees)


# ------------------------------------------------------------ verification


@dataclass
class Verdict:
    passed: bool
    negatives: list[tuple[Element, Fraction, list[Transfer]]]
    outer_final: Fraction
    citations: list[tuple[str, object]]
    r6_overpaying: list[int]
    conserved: bool

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    @property
    def explained(self) -> bool:
        """Either the charges pass or some reducibility condition is cited."""
        return self.passed or bool(self.citations)


def r6_overpaying(g: PlaneGraph, ledger: ChargeLedger) -> list[int]:
    """Vertices of D with degree at least 5 that pay R6 to more than
    ``floor(d / 2)`` faces."""
    paid = defaultdict(int)
    for t in ledger.transfers:
        if t.rule == "R6":
            paid[t.source[1]] += 1
    return sorted(v for v, n in paid.items() if g.degree(v) >= 5 and n > g.degree(v) // 2)


def verify_charges(ledger: ChargeLedger, g: PlaneGraph,
                   report: cfg.ConfigReport | None = None) -> Verdict:
    """PASS iff every final charge is non-negative and D ends positive.

    On FAIL each negative element comes with its transfer history and the
    configuration report supplies every violated reducibility condition.
    """
    final = ledger.final
    negatives = [(x, final[x], ledger.history(x)) for x in sorted(final) if final[x] < 0]
    outer_final = final[ledger.outer]
    passed = not negatives and outer_final > 0
    citations = []
    if not passed:
        report = cfg.analyze(g) if report is None else report
        citations = report.citations()
    return Verdict(passed, negatives, outer_final, citations, r6_overpaying(g, ledger),
                   ledger.total_final() == ledger.total_initial())


def closing_residue(ledger: ChargeLedger, g: PlaneGraph, face_id: int):
    """``(residue, bound)`` for an internal 9+-face meeting at least two
    3+-vertices of D; the residue passed to D is at least ``(d - 8) / 3``."""
    f = g.faces[face_id]
    hits = [v for v in f.vertex_set & g.outer_vertices if g.degree(v) >= 3]
    if f.is_outer or f.length < 9 or len(hits) < 2:
        raise PreconditionError("needs an internal 9+-face with two 3+-vertices on D",
                                witness=face_id)
    return ledger.after_local_rules[face(face_id)], Fraction(f.length - 8, 3)


# -------------------------------------------------------------------- audit


@dataclass(frozen=True)
class AuditEntry:
    element: Element
    name: str
    start: str
    initial: Fraction
    incoming: tuple[tuple[Fraction, int, str], ...]
    outgoing: tuple[tuple[Fraction, int, str], ...]
    final: Fraction

    def delta(self) -> str:
        parts = [("+", a, n) for a, n, _ in self.incoming]
        parts += [("-", a, n) for a, n, _ in self.outgoing]
        text = "".join(sign + _term(a, n) for sign, a, n in parts)
        return text[1:] if text.startswith("+") else text

    def line(self) -> str:
        d = self.delta()
        if d and not d.startswith("-"):
            d = "+" + d
        return f"{self.start}{d}={fraction_str(self.final)}"


def _term(amount: Fraction, count: int) -> str:
    s = fraction_str(amount)
    if count == 1:
        return s
    return f"({s})*{count}" if amount.denominator != 1 else f"{s}*{count}"


def _group(transfers: Sequence[Transfer], rank) -> tuple[tuple[Fraction, int, str], ...]:
    groups: dict[Fraction, list] = {}
    for t in transfers:
        entry = groups.setdefault(t.amount, [0, t.rule])
        entry[0] += 1
        if rank[t.rule] < rank[entry[1]]:
            entry[1] = t.rule
    return tuple((a, n, r) for a, (n, r) in groups.items())


def audit_entry(ledger: ChargeLedger, x: Element) -> AuditEntry:
    rank = {r: i for i, r in enumerate(RULE_ORDER)}
    hist = ledger.history(x)
    inc = _group([t for t in hist if t.sink == x], rank)
    out = _group([t for t in hist if t.source == x], rank)
    inc = tuple(sorted(inc, key=lambda e: (rank[e[2]], -e[0])))
    out = tuple(sorted(out, key=lambda e: (-e[0], rank[e[2]])))
    d = ledger.degrees.get(x)
    init = ledger.initial[x]
    if x == ledger.outer:
        start = f"{d}+4"
    elif x[0] == "f" or (d is not None and d >= 4):
        start = f"{d}-4"
    else:
        start = fraction_str(init)
    return AuditEntry(x, ledger.name(x), start, init, inc, out, ledger.final[x])


def charge_audit(ledger: ChargeLedger) -> list[str]:
    """One arithmetic line per element that takes part in a transfer."""
    touched = sorted({x for t in ledger.transfers for x in (t.source, t.sink)})
    return [f"{ledger.name(x)}: {audit_entry(ledger, x).line()}" for x in touched]


def min_line(entries: Sequence[AuditEntry]) -> str:
    """Combine same-start entries into ``start+min{a, b}=m``."""
    starts = {e.start for e in entries}
    if len(starts) != 1:
        raise InputError("entries must share their initial charge")
    low = min(e.final for e in entries)
    return f"{entries[0].start}+min{{{', '.join(e.delta() for e in entries)}}}={fraction_str(low)}"


def pretty(line: str) -> str:
    """Typeset minus signs and products."""
    return line.replace("-", "−").replace("*", "×")
