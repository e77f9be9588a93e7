"""Component graph and endomorphism-ring structure.

Certifies the three structural laws: the component count t only grows
when the field is extended so a quadric splits; t and lambda are blind
to variable permutations; and the top Lyubeznik number only sees the
top-dimensional part of the ideal.  Component counts are cross-checked
by depth-first search on the reported edge set.
"""

import itertools
import random

import pytest

import oracles
from lyco import (
    BASE_FIELD_ONLY,
    EmptyGraph,
    FIELD_CERTIFIED,
    Ideal,
    QQ,
    RingCtx,
    SimpleExtension,
    component_ideals,
    connected_components,
    endo_structure_report,
    hh_graph,
    ideal_power,
    intersect,
    lyubeznik_top,
    minimal_primes,
    top_dimensional_part,
)

GAUSS = SimpleExtension(QQ, "i", [1, 0, 1])


def ideal(ring, *texts):
    return Ideal(ring, [ring.parse(t) for t in texts])


def components_by_dfs(graph):
    return oracles.dfs_components(len(graph.vertices), graph.edges)


# ---------------------------------------------------------------------------
# graph construction on frozen cases


def test_single_prime_graph():
    ring = RingCtx(QQ, ["x", "y", "z"], "grevlex")
    g = hh_graph(ideal(ring, "x"))
    assert g.d == 2
    assert len(g.vertices) == 1 and g.edges == []
    assert connected_components(g) == (1, [[0]])
    assert g.geometric_flag == BASE_FIELD_ONLY
    assert hh_graph(ideal(ring, "x"), certified_field=True).geometric_flag == FIELD_CERTIFIED


def test_two_lines_meeting_at_origin_are_adjacent():
    ring = RingCtx(QQ, ["x", "y"], "grevlex")
    g = hh_graph(ideal(ring, "x*y"))
    assert g.d == 1
    assert len(g.vertices) == 2
    # the lines meet at the origin: codimension one inside dimension one
    assert g.edges == [(0, 1)]
    assert connected_components(g)[0] == 1


def test_two_disjoint_planes_have_no_edge():
    ring = RingCtx(QQ, ["w", "x", "y", "z"], "grevlex")
    I = intersect(ideal(ring, "w", "x"), ideal(ring, "y", "z"))
    g = hh_graph(I)
    assert g.d == 2
    assert len(g.vertices) == 2
    # the planes meet only at the origin (dimension 0 != d-1 = 1)
    assert g.edges == []
    t, partition = connected_components(g)
    assert t == 2 and partition == [[0], [1]]


def test_three_planes_chain():
    # planes 1 and 3 both meet plane 2 in a line, so the graph is a path
    ring = RingCtx(QQ, ["x", "y", "z"], "grevlex")
    I = ideal(ring, "x*y*z")
    g = hh_graph(I)
    assert g.d == 2
    assert len(g.vertices) == 3
    # every pair of coordinate planes meets in a coordinate axis: K3
    assert g.edges == [(0, 1), (0, 2), (1, 2)]
    assert connected_components(g)[0] == 1


def test_unit_ideal_graph_is_empty_and_components_raise():
    ring = RingCtx(QQ, ["x", "y"], "grevlex")
    g = hh_graph(Ideal(ring, [ring.one]))
    assert g.vertices == [] and g.d == -1
    with pytest.raises(EmptyGraph):
        connected_components(g)
    assert g.to_json()["t"] is None


def test_graph_json_schema():
    ring = RingCtx(QQ, ["w", "x", "y", "z"], "grevlex")
    I = intersect(ideal(ring, "w", "x"), ideal(ring, "y", "z"))
    j = hh_graph(I).to_json()
    assert set(j) == {"d", "vertices", "edges", "t"}
    assert j["d"] == 2 and j["t"] == 2
    assert j["vertices"] == [["w", "x"], ["y", "z"]]
    assert j["edges"] == []


def test_dfs_oracle_agrees_on_catalog():
    R3 = RingCtx(QQ, ["x", "y", "z"], "grevlex")
    R4 = RingCtx(QQ, ["w", "x", "y", "z"], "grevlex")
    cases = [
        ideal(R3, "x*y"),
        ideal(R3, "x*y*z"),
        ideal(R3, "x"),
        intersect(ideal(R4, "w", "x"), ideal(R4, "y", "z")),
        intersect(
            intersect(ideal(R4, "w", "x"), ideal(R4, "y", "z")),
            ideal(R4, "w - y", "x - z"),
        ),
        ideal(R4, "w*y - x^2", "w*z - x*y", "x*z - y^2"),
    ]
    for I in cases:
        g = hh_graph(I)
        t, partition = connected_components(g)
        assert partition == components_by_dfs(g)
        assert t == len(components_by_dfs(g))


# ---------------------------------------------------------------------------
# the quadratic-splitting family: t is monotone under Q -> Q(i)


SPLITTING_FAMILY = [
    # (variables, generators): each contains a sum of two squares that
    # factors over Q(i) while everything else stays put
    (["x", "y", "z"], ["x^2 + y^2"]),
    (["w", "x", "y", "z"], ["w^2 + x^2", "y^2 + z^2", "w*y + x*z", "w*z - x*y"]),
    (["x", "y", "z"], ["x^2 + y^2", "z"]),
    (["u", "x", "y"], ["x^2 + 4*y^2"]),
    (["x", "y"], ["x^2 + y^2"]),
]


def test_t_monotone_under_field_extension():
    for names, gens in SPLITTING_FAMILY:
        ring_q = RingCtx(QQ, names, "grevlex")
        ring_g = RingCtx(GAUSS, names, "grevlex")
        I_q = Ideal(ring_q, [ring_q.parse(s) for s in gens])
        I_g = Ideal(ring_g, [ring_g.parse(s) for s in gens])
        t_q, _ = lyubeznik_top(I_q)
        t_g, flag = lyubeznik_top(I_g, certified_field=True)
        assert t_q <= t_g, (names, gens)
        assert flag == FIELD_CERTIFIED


def test_splitting_family_actually_splits():
    # the family is not vacuous: each member gains components over Q(i)
    gains = []
    for names, gens in SPLITTING_FAMILY:
        ring_q = RingCtx(QQ, names, "grevlex")
        ring_g = RingCtx(GAUSS, names, "grevlex")
        t_q, _ = lyubeznik_top(Ideal(ring_q, [ring_q.parse(s) for s in gens]))
        t_g, _ = lyubeznik_top(Ideal(ring_g, [ring_g.parse(s) for s in gens]))
        gains.append(t_g - t_q)
    assert all(g >= 0 for g in gains)
    assert any(g > 0 for g in gains)


def test_stable_ideals_keep_t_under_extension():
    # already-split or absolutely irreducible ideals: t must not change
    cases = [
        (["x", "y"], ["x*y"]),
        (["w", "x", "y", "z"], ["w", "x"]),
        (["x", "y", "z"], ["x^2 - y^2"]),
    ]
    for names, gens in cases:
        ring_q = RingCtx(QQ, names, "grevlex")
        ring_g = RingCtx(GAUSS, names, "grevlex")
        t_q, _ = lyubeznik_top(Ideal(ring_q, [ring_q.parse(s) for s in gens]))
        t_g, _ = lyubeznik_top(Ideal(ring_g, [ring_g.parse(s) for s in gens]))
        assert t_q == t_g


# ---------------------------------------------------------------------------
# permutation invariance


def permute_ideal(I, perm):
    """Rebuild I with variables permuted by perm (index -> new index)."""
    ring = I.ring
    new_ring = RingCtx(ring.field, list(ring.vars), ring.order)
    images = [new_ring.var(perm[i]) for i in range(ring.nvars)]
    return Ideal(new_ring, [g.substitute(new_ring, images) for g in I.gens])


def test_t_and_lambda_permutation_invariant():
    rng = random.Random(246)
    R4 = RingCtx(QQ, ["w", "x", "y", "z"], "grevlex")
    R3 = RingCtx(QQ, ["x", "y", "z"], "grevlex")
    catalog = [
        intersect(ideal(R4, "w", "x"), ideal(R4, "y", "z")),
        ideal(R3, "x*y*z"),
        ideal(R3, "x^2 - y^2"),
        ideal(R4, "w*y - x^2", "w*z - x*y", "x*z - y^2"),
    ]
    for I in catalog:
        base_t, _ = lyubeznik_top(I)
        nvars = I.ring.nvars
        perms = list(itertools.permutations(range(nvars)))
        rng.shuffle(perms)
        for perm in perms[:6]:
            J = permute_ideal(I, perm)
            t, _ = lyubeznik_top(J)
            assert t == base_t, (I, perm)


# ---------------------------------------------------------------------------
# lambda only sees the top-dimensional part


def test_lyubeznik_top_ignores_lower_dimensional_junk():
    R3 = RingCtx(QQ, ["x", "y", "z"], "grevlex")
    R4 = RingCtx(QQ, ["w", "x", "y", "z"], "grevlex")
    cases = [
        # plane plus a line off it
        intersect(ideal(R3, "x"), ideal(R3, "y", "z")),
        # two planes plus an embedded-point thickening
        intersect(
            intersect(ideal(R4, "w", "x"), ideal(R4, "y", "z")),
            ideal_power(ideal(R4, "w", "x", "y", "z"), 2),
        ),
        # pure top-dimensional input: fixed point
        ideal(R3, "x*y"),
    ]
    for I in cases:
        t_i, _ = lyubeznik_top(I)
        t_d, _ = lyubeznik_top(top_dimensional_part(I))
        assert t_i == t_d, I


def test_embedded_junk_does_not_change_the_graph():
    R4 = RingCtx(QQ, ["w", "x", "y", "z"], "grevlex")
    clean = intersect(ideal(R4, "w", "x"), ideal(R4, "y", "z"))
    dirty = intersect(clean, ideal_power(ideal(R4, "w", "x", "y"), 3))
    g_clean = hh_graph(top_dimensional_part(clean))
    g_dirty = hh_graph(top_dimensional_part(dirty))
    assert [v.canonical_strings() for v in g_clean.vertices] == [
        v.canonical_strings() for v in g_dirty.vertices
    ]
    assert g_clean.edges == g_dirty.edges


# ---------------------------------------------------------------------------
# endomorphism-ring report


def test_endo_report_connected_certified():
    ring = RingCtx(QQ, ["x", "y", "z"], "grevlex")
    rep = endo_structure_report(ideal(ring, "x"), certified_field=True)
    assert rep.t == 1 and rep.lambda_top == 1
    assert rep.b_is_local and rep.b_num_max_ideals == 1
    assert rep.b_free_rank == 1 and rep.b_iso_to_R
    assert rep.warnings == []


def test_endo_report_uncertified_is_hedged():
    ring = RingCtx(QQ, ["x", "y", "z"], "grevlex")
    rep = endo_structure_report(ideal(ring, "x^2 + y^2"))
    assert rep.t == 1 and rep.b_is_local
    assert not rep.b_iso_to_R
    assert any("not certified" in w for w in rep.warnings)


def test_endo_report_two_components():
    ring = RingCtx(GAUSS, ["w", "x", "y", "z"], "grevlex")
    I = ideal(ring, "w^2 + x^2", "y^2 + z^2", "w*y + x*z", "w*z - x*y")
    rep = endo_structure_report(I, certified_field=True)
    assert rep.t == 2 and rep.lambda_top == 2
    assert not rep.b_is_local
    assert rep.b_num_max_ideals == 2 and rep.b_free_rank == 2
    assert not rep.b_iso_to_R
    assert rep.graph.edges == []
    j = rep.to_json()
    assert j["t"] == 2 and j["graph"]["t"] == 2


def test_endo_report_over_modulus_has_no_free_rank():
    amb = RingCtx(QQ, ["u", "v", "x", "y"], "grevlex")
    RQ = amb.with_modulus(amb.parse("x*v - y*u"))
    rep = endo_structure_report(Ideal(RQ, [RQ.parse("x"), RQ.parse("y")]), certified_field=True)
    assert rep.t == 1
    assert rep.b_free_rank is None
    assert not rep.b_iso_to_R
    assert any("modulus" in w for w in rep.warnings)


# ---------------------------------------------------------------------------
# component ideals with additivity certificates


def test_component_ideals_two_planes():
    ring = RingCtx(QQ, ["w", "x", "y", "z"], "grevlex")
    A = ideal(ring, "w", "x")
    B = ideal(ring, "y", "z")
    ideals, cert = component_ideals(intersect(A, B))
    assert len(ideals) == 2
    keys = sorted(tuple(J.canonical_strings()) for J in ideals)
    assert keys == sorted([tuple(A.canonical_strings()), tuple(B.canonical_strings())])
    assert cert["kind"] == "component_additivity" and cert["equal"]


def test_component_ideals_connected_input():
    ring = RingCtx(QQ, ["x", "y", "z"], "grevlex")
    I = ideal(ring, "x*y*z")
    ideals, cert = component_ideals(I)
    assert len(ideals) == 1
    assert ideals[0].equals(I)
    assert cert["equal"]


def test_component_ideals_preserve_multiplicity_certificate():
    # non-reduced top part: (x^2) meet (y, z) - certificate must balance
    # with the double structure included
    ring = RingCtx(QQ, ["x", "y", "z"], "grevlex")
    I = intersect(ideal(ring, "x^2"), ideal(ring, "y", "z"))
    ideals, cert = component_ideals(I)
    assert len(ideals) == 1
    assert ideals[0].equals(ideal(ring, "x"))  # reduced component ideal
    assert cert["equal"]


def test_component_ideals_gauss_split():
    ring = RingCtx(GAUSS, ["w", "x", "y", "z"], "grevlex")
    I = ideal(ring, "w^2 + x^2", "y^2 + z^2", "w*y + x*z", "w*z - x*y")
    ideals, cert = component_ideals(I, certified_field=True)
    assert len(ideals) == 2
    assert cert["equal"]
    pl = minimal_primes(I, require_complete=True)
    keys_got = sorted(tuple(J.canonical_strings()) for J in ideals)
    keys_want = sorted(tuple(P.canonical_strings()) for P in pl.primes)
    assert keys_got == keys_want
