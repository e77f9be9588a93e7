"""Connectedness of top-dimensional components and what it implies.

The central object is the component graph of an ideal: one vertex per
top-dimensional minimal prime, an edge whenever two components meet in
codimension one inside V(I).  Its component count t determines the
highest Lyubeznik-type invariant and the maximal-ideal structure of the
endomorphism ring B of the top local-cohomology module.

Everything is computed over the declared coefficient field.  Over the
algebraic closure components can split further, so results carry a
geometric flag: BaseFieldOnly by default, FieldCertifiedByUser when the
caller asserts the declared field already splits all top-dimensional
components geometrically.
"""

from .errors import CertificateFailure, EmptyGraph, UnitIdeal
from .homology import canonical_module, top_dimensional_part
from .ideals import (
    Ideal,
    ideal_dimension,
    ideal_sum,
    intersect,
    minimal_primes,
    saturate,
)

FIELD_CERTIFIED = "FieldCertifiedByUser"
BASE_FIELD_ONLY = "BaseFieldOnly"


class HHGraph:
    """Component graph: top-dimensional primes, codimension-one incidences."""

    __slots__ = ("d", "vertices", "edges", "field", "geometric_flag")

    def __init__(self, d, vertices, edges, field, geometric_flag):
        self.d = d
        self.vertices = list(vertices)
        self.edges = sorted(tuple(sorted(e)) for e in edges)
        self.field = field
        self.geometric_flag = geometric_flag

    def __repr__(self):
        return (
            f"HHGraph(d={self.d}, vertices={len(self.vertices)}, "
            f"edges={len(self.edges)}, flag={self.geometric_flag})"
        )

    def to_json(self):
        t = None
        if self.vertices:
            t, _ = connected_components(self)
        return {
            "d": self.d,
            "vertices": [v.canonical_strings() for v in self.vertices],
            "edges": [list(e) for e in self.edges],
            "t": t,
        }


class EndoReport:
    """Structure of the endomorphism ring B of the top cohomology module.

    B is a product of t local rings, one per graph component; over a
    regular ambient ring it is R-free of rank t, and it is R itself
    exactly when the graph is connected over a certified field.
    """

    __slots__ = (
        "t",
        "components",
        "lambda_top",
        "b_is_local",
        "b_num_max_ideals",
        "b_free_rank",
        "b_iso_to_R",
        "warnings",
        "graph",
    )

    def __init__(
        self,
        t,
        components,
        lambda_top,
        b_is_local,
        b_num_max_ideals,
        b_free_rank,
        b_iso_to_R,
        warnings,
        graph,
    ):
        self.t = t
        self.components = components
        self.lambda_top = lambda_top
        self.b_is_local = b_is_local
        self.b_num_max_ideals = b_num_max_ideals
        self.b_free_rank = b_free_rank
        self.b_iso_to_R = b_iso_to_R
        self.warnings = list(warnings)
        self.graph = graph

    def to_json(self):
        return {
            "t": self.t,
            "components": [list(c) for c in self.components],
            "lambda_top": self.lambda_top,
            "b_is_local": self.b_is_local,
            "b_num_max_ideals": self.b_num_max_ideals,
            "b_free_rank": self.b_free_rank,
            "b_iso_to_R": self.b_iso_to_R,
            "warnings": list(self.warnings),
            "graph": self.graph.to_json(),
        }


def hh_graph(I, certified_field=False, budget=None):
    """Component graph of the top-dimensional primes of I.

    Vertices are the minimal primes of maximal dimension d, in canonical
    order; (i, j) is an edge iff dim R/(P_i + P_j) = d - 1, the
    codimension-one meeting condition in a catenary graded setting.
    """
    flag = FIELD_CERTIFIED if certified_field else BASE_FIELD_ONLY
    field = I.ring.field
    if I.is_unit:
        return HHGraph(-1, [], [], field, flag)
    primes = minimal_primes(I, budget=budget, require_complete=True).primes
    dims = [ideal_dimension(P, budget=budget) for P in primes]
    d = max(dims)
    vertices = [P for P, dim in zip(primes, dims) if dim == d]
    edges = []
    for i in range(len(vertices)):
        for j in range(i + 1, len(vertices)):
            try:
                meet = ideal_dimension(
                    ideal_sum(vertices[i], vertices[j]), budget=budget
                )
            except UnitIdeal:
                continue
            if meet == d - 1:
                edges.append((i, j))
    return HHGraph(d, vertices, edges, field, flag)


def connected_components(graph):
    """(t, partition): connected components of the graph by union-find."""
    n = len(graph.vertices)
    if n == 0:
        raise EmptyGraph("the component graph has no vertices")
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in graph.edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    groups = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    partition = sorted(sorted(g) for g in groups.values())
    return len(partition), partition


def lyubeznik_top(I, certified_field=False, budget=None):
    """(lambda, geometric_flag): component count of the graph of I_d.

    lambda is the highest Lyubeznik-type number; it equals the number of
    connected components of the graph of the top-dimensional part.  The
    flag records whether the declared field was certified sufficient.
    """
    graph = hh_graph(
        top_dimensional_part(I, budget=budget),
        certified_field=certified_field,
        budget=budget,
    )
    t, _ = connected_components(graph)
    return t, graph.geometric_flag


def endo_structure_report(I, certified_field=False, budget=None):
    """Structural report on the endomorphism ring B of H^c_I(R)."""
    graph = hh_graph(
        top_dimensional_part(I, budget=budget),
        certified_field=certified_field,
        budget=budget,
    )
    t, partition = connected_components(graph)
    warnings = []
    if graph.geometric_flag == BASE_FIELD_ONLY:
        warnings.append(
            "field not certified: components may split over an extension, "
            "so t and lambda_top are lower bounds"
        )
    regular_ambient = I.ring.modulus is None
    if regular_ambient:
        b_free_rank = t
    else:
        b_free_rank = None
        warnings.append(
            "ambient ring has a modulus: B need not be a finitely "
            "generated R-module, so no free rank is reported"
        )
    b_iso_to_R = (
        t == 1 and graph.geometric_flag == FIELD_CERTIFIED and regular_ambient
    )
    if t == 1 and not b_iso_to_R and regular_ambient:
        warnings.append(
            "graph is connected but the field is not certified, so "
            "B = R is not asserted"
        )
    return EndoReport(
        t=t,
        components=partition,
        lambda_top=t,
        b_is_local=(t == 1),
        b_num_max_ideals=t,
        b_free_rank=b_free_rank,
        b_iso_to_R=b_iso_to_R,
        warnings=warnings,
        graph=graph,
    )


def component_ideals(I, certified_field=False, budget=None):
    """Ideals I_1..I_t of the graph components, with an additivity certificate.

    I_j is the intersection of the primes in component j.  The
    certificate checks hilb K(I_d) = sum_j hilb K(J_j), where J_j is the
    part of I_d supported on component j (extracted by saturating away
    the other components; equal to I_j whenever I_d is radical).  The
    identity is exact because distinct components meet in codimension
    >= 2, which kills both connecting Ext terms; failure means the
    decomposition or the Ext machinery is broken and is a hard error.
    """
    i_d = top_dimensional_part(I, budget=budget)
    graph = hh_graph(i_d, certified_field=certified_field, budget=budget)
    t, partition = connected_components(graph)
    ring = I.ring

    ideals = []
    for comp in partition:
        J = None
        for v in comp:
            P = graph.vertices[v]
            J = P if J is None else intersect(J, P, budget)
        ideals.append(J)

    left = canonical_module(i_d, budget=budget).hilbert(budget=budget)
    right = None
    for comp in partition:
        if t == 1:
            part = i_d
        else:
            others = None
            for other_comp in partition:
                if other_comp is comp:
                    continue
                for v in other_comp:
                    P = graph.vertices[v]
                    others = P if others is None else intersect(others, P, budget)
            part = saturate(i_d, others, budget=budget)
        h = canonical_module(part, budget=budget).hilbert(budget=budget)
        right = h if right is None else right + h
    if left != right:
        raise CertificateFailure(
            f"component additivity failed: hilb K(I_d) = {left} but the "
            f"components sum to {right}"
        )
    certificate = {
        "kind": "component_additivity",
        "lhs": left.to_json(),
        "rhs": right.to_json(),
        "equal": True,
    }
    return ideals, certificate
