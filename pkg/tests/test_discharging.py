import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dpcolor import configurations as cfg
from dpcolor import discharging as dch
from dpcolor.errors import InputError, PreconditionError
from dpcolor.harness import gadgets
from dpcolor.harness.corpus import generate_graphs
from dpcolor.plane_graph import PlaneGraph, cycle_graph, from_drawing

from helpers import random_plane_graph


def audit_of(gd, name):
    led = dch.apply_rules(gd.graph)
    return dch.audit_entry(led, dch.vertex(gd[name]))


def line_for(led, element):
    return dch.audit_entry(led, element).line()


# ------------------------------------------------------------ initial


def test_c12_initial_charges():
    g = cycle_graph(12)
    led = dch.initial_charges(g)
    assert all(led.initial[dch.vertex(v)] == -2 for v in g.vertices)
    inner = next(f.id for f in g.internal_faces())
    assert led.initial[dch.face(inner)] == 8
    assert led.initial[led.outer] == 16
    assert led.total_initial() == 0


def test_triangulation_sums_to_zero():
    pts = [(0, 10), (-9, -5), (9, -5), (0, 0), (1, 3)]
    edges = [(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2), (4, 0), (4, 3), (4, 2)]
    led = dch.initial_charges(from_drawing(pts, edges))
    assert led.total_initial() == 0
    assert all(isinstance(q, Fraction) for q in led.initial.values())


def test_disconnected_graph_rejected():
    g = PlaneGraph([[1], [0], [3], [2]])
    with pytest.raises(InputError):
        dch.initial_charges(g)


def test_single_precoloured_vertex_rejected():
    with pytest.raises(PreconditionError):
        dch.initial_charges(cycle_graph(9), S={0})
    with pytest.raises(PreconditionError):
        dch.initial_charges(cycle_graph(9), S={0, 1})
    assert dch.initial_charges(cycle_graph(9), S=range(9)).total_initial() == 0


# -------------------------------------------------------- rule examples


def test_two_vertex_on_D():
    gd = gadgets.boundary_vertex_gadget()
    assert audit_of(gd, "d4").line() == "-2+2/3+4/3=0"


def test_three_vertices_on_D():
    gd = gadgets.boundary_vertex_gadget()
    d1, d7 = audit_of(gd, "d1"), audit_of(gd, "d7")
    assert d1.line() == "-1+4/3-1/3=0"
    assert d7.line() == "-1+1=0"
    assert dch.pretty(dch.min_line([d1, d7])) == "−1+min{4/3−1/3, 1}=0"


def test_internal_bad_vertex_on_two_big_faces():
    gd = gadgets.boundary_vertex_gadget()
    assert audit_of(gd, "t").line() == "-1+(2/3)*2-1/3=0"


def test_ten_face_with_eight_bad_vertices():
    gd = gadgets.ten_face_gadget()
    g = gd.graph
    led = dch.apply_rules(g)
    f = g.dart_face[(gd["v1"], gd["v2"])]
    if g.faces[f].length != 10:
        f = g.dart_face[(gd["v2"], gd["v1"])]
    assert dch.pretty(line_for(led, dch.face(f))) == "10−4−(2/3)×8−(1/3)×2=0"


def test_nine_face_with_five_bad_three_light():
    gd = gadgets.nine_face_gadget()
    g = gd.graph
    led = dch.apply_rules(g)
    f = next(f.id for f in g.internal_faces()
             if f.length == 9 and {gd[f"v{i}"] for i in range(1, 10)} == f.vertex_set)
    assert dch.pretty(line_for(led, dch.face(f))) == "9−4−(2/3)×5−(1/2)×3−1/6=0"


def test_four_vertex_on_D_with_special_face():
    gd = gadgets.special_face_vertex_gadget()
    assert audit_of(gd, "d1").line() == "4-4+1-1=0"


def test_r5_sweeps_remainder_to_D():
    g = gadgets.ten_face_gadget().graph
    led = dch.apply_rules(g)
    r5 = {t.source: t for t in led.transfers if t.rule == "R5"}
    assert r5
    for f in g.internal_faces():
        x = dch.face(f.id)
        mid = led.after_local_rules[x]
        if mid > 0:
            assert r5[x].sink == led.outer and r5[x].amount == mid and r5[x].phase == 2
            assert led.final[x] == 0
        else:
            assert x not in r5 and led.final[x] == mid


def test_c12_inner_face_spends_exactly_its_charge():
    g = cycle_graph(12)
    led = dch.apply_rules(g)
    assert not [t for t in led.transfers if t.rule == "R5"]


def test_c12_ends_balanced():
    g = cycle_graph(12)
    led = dch.apply_rules(g)
    assert all(q == 0 for q in led.final.values())
    v = dch.verify_charges(led, g)
    assert not v.passed and v.outer_final == 0
    assert v.citations[0][0] == "all-vertices-on-boundary"
    assert v.explained and v.conserved


def test_internal_two_vertex_fails_with_citation():
    gd = gadgets.boundary_vertex_gadget()
    g = gd.graph
    v = dch.verify_charges(dch.apply_rules(g), g)
    assert v.verdict == "FAIL"
    assert {x for x, _, _ in v.negatives} == {dch.vertex(gd["p1"]), dch.vertex(gd["p2"])}
    assert all(hist for _, _, hist in v.negatives)
    assert ("internal-low-degree", gd["p1"]) in v.citations


def test_tetrad_instance_cites_tetrad():
    gd = gadgets.tetrad_gadget()
    g = gd.graph
    v = dch.verify_charges(dch.apply_rules(g), g)
    cited = [w for code, w in v.citations if code == "tetrad-avoiding-boundary"]
    assert frozenset(gd[f"v{i}"] for i in range(1, 5)) in {frozenset(w) for w in cited}


def test_verdict_uses_given_report():
    g = cycle_graph(12)
    led = dch.apply_rules(g)
    rep = cfg.analyze(g)
    assert dch.verify_charges(led, g, rep).citations == rep.citations()


# ------------------------------------------------------------------ audit


def test_audit_of_empty_ledger():
    g = cycle_graph(12)
    led = dch.initial_charges(g)
    assert dch.charge_audit(led) == []


def test_audit_names():
    g = cycle_graph(12)
    led = dch.apply_rules(g)
    lines = dch.charge_audit(led)
    assert "D: 12+4-(4/3)*12=0" in lines
    assert any(line.startswith("v0: -2+") for line in lines)


def test_min_line_requires_same_start():
    gd = gadgets.boundary_vertex_gadget()
    with pytest.raises(InputError):
        dch.min_line([audit_of(gd, "d1"), audit_of(gd, "d4")])


def test_fraction_str():
    assert dch.fraction_str(Fraction(-4, 6)) == "-2/3"
    assert dch.fraction_str(Fraction(3)) == "3"


# -------------------------------------------------------------- properties


def ledgers():
    out = []
    for mk in (gadgets.boundary_vertex_gadget, gadgets.ten_face_gadget,
               gadgets.nine_face_gadget, gadgets.special_nine_face_gadget,
               gadgets.tetrad_gadget, gadgets.special_face_vertex_gadget):
        out.append(mk().graph)
    for profile in ("sparse-girth", "boundary-heavy", "tetrad-gadget", "special9-gadget"):
        out += generate_graphs(5, 3, profile)
    return out


LEDGER_GRAPHS = ledgers()


@pytest.mark.parametrize("g", LEDGER_GRAPHS)
def test_conservation_and_positive_transfers(g):
    led = dch.apply_rules(g)
    assert led.total_initial() == 0
    assert led.total_final() == 0
    assert all(t.amount > 0 for t in led.transfers)
    assert all(led.final[dch.face(f.id)] <= 0 or f.is_outer for f in g.faces)


@given(st.integers(0, 10_000), st.integers(4, 20))
def test_conservation_on_random_plane_graphs(seed, n):
    g, _ = random_plane_graph(random.Random(seed), n, drop=0.4)
    led = dch.apply_rules(g)
    assert led.total_initial() == 0 == led.total_final()


@pytest.mark.parametrize("g", LEDGER_GRAPHS)
def test_closing_residue_bound(g):
    led = dch.apply_rules(g)
    for f in g.internal_faces():
        hits = [v for v in f.vertex_set & g.outer_vertices if g.degree(v) >= 3]
        if f.length < 9 or len(hits) < 2:
            with pytest.raises(PreconditionError):
                dch.closing_residue(led, g, f.id)
            continue
        residue, bound = dch.closing_residue(led, g, f.id)
        # a face pays each incident vertex at most 2/3 and pays nothing to
        # the two 3+-vertices it shares with D
        assert bound == Fraction(f.length - 8, 3)
        assert residue >= bound


@pytest.mark.parametrize("g", LEDGER_GRAPHS)
def test_r6_pays_at_most_half_the_degree(g):
    led = dch.apply_rules(g)
    paid = {}
    for t in led.transfers:
        if t.rule == "R6":
            paid[t.source] = paid.get(t.source, 0) + 1
    for (_, v), n in paid.items():
        if g.degree(v) >= 5 and cfg.check_hypothesis(g)[0]:
            assert n <= g.degree(v) // 2
    assert dch.r6_overpaying(g, led) == [] or not cfg.check_hypothesis(g)[0]
