"""Graded modules, Hilbert series, Ext, canonical modules, S2-fication.

All homological work happens over the ambient polynomial ring P, where
free resolutions are finite.  Modules over a hypersurface quotient
R = P/(f) are handled by two standard reductions:

* Hilbert data: an R-presentation lifts to a P-presentation by
  adjoining the columns f*e_j; the graded vector space is unchanged.
* Ext over R: for an R-module M and the ring itself as coefficients,
  Ext_R^i(M, R) = Ext_P^{i+1}(M, P) twisted by -deg f.  (The change of
  rings collapses because Ext_P^q(R, P) is R(deg f) concentrated in
  q = 1; apply it to the P-resolution 0 -> P(-deg f) -> P -> R -> 0.)

Ext itself is cohomology of the dualized resolution: the kernel of a
transposed map is a syzygy computation, the image is lifted through the
kernel's Groebner data, and the resulting presentation is minimized so
that a zero module is exactly a rank-zero presentation (graded
Nakayama: a minimal presentation has no unit entries).
"""

import math

from .errors import (
    CertificateFailure,
    NegativeHilbertDifference,
    ResourceLimit,
)
from .groebner import (
    FreeChain,
    ModuleGB,
    column_degrees,
    free_resolution,
    minimize_chain,
    syzygy_columns,
    transpose_columns,
)
from .ideals import Ideal, ideal_dimension, ideal_power, intersect

# ---------------------------------------------------------------------------
# Hilbert series as Laurent numerator over (1-t)^e


class HilbertSeries:
    """numerator(t) / (1-t)^denom_exp with integer Laurent numerator.

    Stored in lowest terms: the numerator is not divisible by (1-t)
    unless the denominator exponent is zero.
    """

    __slots__ = ("numer", "denom_exp")

    def __init__(self, numer, denom_exp=0):
        numer = {int(k): int(v) for k, v in dict(numer).items() if v}
        if denom_exp < 0:
            raise ValueError("denominator exponent must be nonnegative")
        while denom_exp > 0 and numer and sum(numer.values()) == 0:
            numer = _divide_one_minus_t(numer)
            denom_exp -= 1
        if not numer:
            denom_exp = 0
        self.numer = numer
        self.denom_exp = denom_exp

    # -- arithmetic -----------------------------------------------------

    def _with_denom(self, e):
        """Numerator rescaled to denominator exponent e >= denom_exp."""
        out = dict(self.numer)
        for _ in range(e - self.denom_exp):
            nxt = {}
            for k, v in out.items():
                nxt[k] = nxt.get(k, 0) + v
                nxt[k + 1] = nxt.get(k + 1, 0) - v
            out = {k: v for k, v in nxt.items() if v}
        return out

    def __add__(self, other):
        e = max(self.denom_exp, other.denom_exp)
        a = self._with_denom(e)
        for k, v in other._with_denom(e).items():
            a[k] = a.get(k, 0) + v
        return HilbertSeries(a, e)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return HilbertSeries({k: c * v for k, v in self.numer.items()}, self.denom_exp)

    def shift(self, s):
        """Multiply by t^s (degree shift)."""
        return HilbertSeries({k + s: v for k, v in self.numer.items()}, self.denom_exp)

    def __eq__(self, other):
        return (
            isinstance(other, HilbertSeries)
            and self.numer == other.numer
            and self.denom_exp == other.denom_exp
        )

    def __hash__(self):
        return hash((tuple(sorted(self.numer.items())), self.denom_exp))

    # -- evaluation -----------------------------------------------------

    @property
    def is_zero(self):
        return not self.numer

    def min_degree(self):
        return min(self.numer) if self.numer else 0

    def coefficient(self, n):
        e = self.denom_exp
        if e == 0:
            return self.numer.get(n, 0)
        total = 0
        for k, v in self.numer.items():
            if n >= k:
                total += v * math.comb(n - k + e - 1, e - 1)
        return total

    def coefficients(self, upto, start=None):
        if start is None:
            start = min(self.min_degree(), 0)
        return [self.coefficient(n) for n in range(start, upto + 1)]

    def total(self):
        """Total dimension when finite (polynomial series), else None."""
        if self.denom_exp > 0 and self.numer:
            return None
        return sum(self.numer.values())

    # -- printing -------------------------------------------------------

    def __str__(self):
        if not self.numer:
            return "0"
        parts = []
        for k in sorted(self.numer):
            v = self.numer[k]
            if k == 0:
                term = str(abs(v))
            else:
                tpow = "t" if k == 1 else f"t^{k}"
                term = tpow if abs(v) == 1 else f"{abs(v)}*{tpow}"
            if not parts:
                parts.append(term if v > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if v > 0 else f"- {term}")
        num = " ".join(parts)
        if self.denom_exp == 0:
            return num
        if len(self.numer) > 1:
            num = f"({num})"
        denom = "(1-t)" if self.denom_exp == 1 else f"(1-t)^{self.denom_exp}"
        return f"{num}/{denom}"

    def __repr__(self):
        return f"HilbertSeries({self})"

    def to_json(self):
        return {
            "numerator": [[k, self.numer[k]] for k in sorted(self.numer)],
            "denominator_exponent": self.denom_exp,
            "display": str(self),
        }


def _divide_one_minus_t(numer):
    """Exact division of a Laurent polynomial by (1 - t)."""
    if not numer:
        return {}
    lo, hi = min(numer), max(numer)
    out = {}
    acc = 0
    for k in range(lo, hi):
        acc += numer.get(k, 0)
        if acc:
            out[k] = acc
    return out


# ---------------------------------------------------------------------------
# numerators of monomial quotients (the counting backbone)


def monomial_quotient_numerator(gens, nvars):
    """Numerator of hilb(P/I) over (1-t)^nvars for a monomial ideal I.

    gens: iterable of exponent tuples.  Pivot recursion from the exact
    sequence 0 -> (P/(I:x))(-1) -> P/I -> P/(I+(x)) -> 0, so that
    N(I) = N(I + (x)) + t * N(I : x), with pure-power ideals as the
    closed-form base case N = prod (1 - t^d_i).
    """
    memo = {}

    def minimalize(ms):
        ms = sorted(set(ms), key=lambda m: (sum(m), m))
        out = []
        for m in ms:
            if not any(all(p[i] <= m[i] for i in range(nvars)) for p in out):
                out.append(m)
        return tuple(out)

    def rec(ms):
        if not ms:
            return {0: 1}
        if any(sum(m) == 0 for m in ms):
            return {}
        hit = memo.get(ms)
        if hit is not None:
            return hit
        pivot = None
        for m in ms:
            support = [i for i in range(nvars) if m[i]]
            if len(support) > 1:
                pivot = support[0]
                break
        if pivot is None:
            # every generator is a pure power of a distinct variable
            power = {}
            for m in ms:
                i = next(i for i in range(nvars) if m[i])
                power[i] = min(power.get(i, m[i]), m[i])
            numer = {0: 1}
            for d in power.values():
                nxt = {}
                for k, v in numer.items():
                    nxt[k] = nxt.get(k, 0) + v
                    nxt[k + d] = nxt.get(k + d, 0) - v
                numer = {k: v for k, v in nxt.items() if v}
        else:
            x = tuple(1 if i == pivot else 0 for i in range(nvars))
            plus = minimalize([m for m in ms if m[pivot] == 0] + [x])
            colon = minimalize(
                tuple(e - 1 if i == pivot and e else e for i, e in enumerate(m))
                for m in ms
            )
            numer = dict(rec(plus))
            for k, v in rec(colon).items():
                numer[k + 1] = numer.get(k + 1, 0) + v
            numer = {k: v for k, v in numer.items() if v}
        memo[ms] = numer
        return numer

    return rec(minimalize(tuple(map(tuple, gens))))


# ---------------------------------------------------------------------------
# finitely presented graded modules


class PresentedModule:
    """Graded module coker(relations) on generators with given degrees.

    relations are columns (tuples of ring elements, one entry per
    generator).  Homogeneity of every column with respect to
    generator_shifts is enforced at construction.
    """

    __slots__ = ("ring", "generator_shifts", "relations", "_hilbert", "_gb")

    def __init__(self, ring, generator_shifts, relations):
        self.ring = ring
        self.generator_shifts = tuple(int(s) for s in generator_shifts)
        rels = []
        for col in relations:
            col = tuple(col)
            if len(col) != len(self.generator_shifts):
                raise ValueError("relation column length does not match rank")
            if any(not entry.is_zero() for entry in col):
                rels.append(col)
        if rels:
            column_degrees(rels, self.generator_shifts)
        self.relations = tuple(rels)
        self._hilbert = None
        self._gb = None

    @property
    def rank(self):
        return len(self.generator_shifts)

    def module_gb(self, budget=None):
        if self._gb is None:
            self._gb = ModuleGB(
                self.ring, self.rank, list(self.relations), budget=budget
            )
        return self._gb

    def is_zero(self, budget=None):
        """True iff the module is zero, decided by minimizing the presentation."""
        if self.rank == 0:
            return True
        return self.minimized(budget=budget).rank == 0

    def minimized(self, budget=None):
        """Equivalent module with no unit entries in its presentation.

        After minimization the relation matrix vanishes modulo the
        irrelevant maximal ideal, so the rank equals the minimal number
        of generators; in particular the module is zero iff rank is 0.
        """
        if self.rank == 0 or not self.relations:
            return self
        cols = list(self.relations)
        chain = FreeChain(
            self.ring,
            [self.rank, len(cols)],
            [cols],
            shifts=[
                list(self.generator_shifts),
                list(column_degrees(cols, self.generator_shifts)),
            ],
        )
        minimize_chain(chain)
        return PresentedModule(
            self.ring, chain.shifts[0], chain.mats[0] if chain.mats else []
        )

    def hilbert(self, budget=None):
        if self._hilbert is None:
            self._hilbert = hilbert_series(self, budget=budget)
        return self._hilbert

    def twist(self, s):
        """Degree shift M(-s): every generator degree goes up by s."""
        return PresentedModule(
            self.ring, [a + s for a in self.generator_shifts], self.relations
        )

    def __repr__(self):
        return (
            f"PresentedModule(rank={self.rank}, "
            f"relations={len(self.relations)}, ring={self.ring.describe()})"
        )


def quotient_module(ideal):
    """R/I as a presented module on one degree-zero generator."""
    gens = [g for g in ideal.groebner().basis if not g.is_zero()]
    return PresentedModule(ideal.ring, [0], [(g,) for g in gens])


def free_module(ring, shifts):
    return PresentedModule(ring, shifts, [])


# ---------------------------------------------------------------------------
# Hilbert series with independent certification


def _closed_resolution(ring, cols, rank0, shifts0, budget=None):
    """Free resolution guaranteed exact: runs until the kernel vanishes.

    The step cap is generous (syzygy chains over n variables close well
    before it); hitting the cap with a nonzero kernel raises
    ResourceLimit rather than returning a silently truncated chain.
    """
    cap = 3 * ring.nvars + 10
    chain = free_resolution(
        ring, cols, rank0, shifts0=shifts0, length=cap, budget=budget
    )
    if chain.length() == cap:
        tail = syzygy_columns(
            ring, chain.ranks[-2], chain.mats[-1], budget=budget
        )
        if tail:
            raise ResourceLimit(
                "free resolution did not close within the step cap"
            )
    return chain


def _ambient_presentation(module):
    """Lift a presentation over P/(f) to one over P with the same graded pieces.

    Over the quotient, relations hold modulo f; over P the same graded
    vector space is presented by the lifted columns together with f*e_j
    for every generator e_j.
    """
    ring = module.ring
    if ring.modulus is None:
        return ring, module.generator_shifts, list(module.relations)
    ambient = ring.ambient()
    rank = module.rank
    cols = [
        tuple(ambient.from_terms(entry.terms) for entry in col)
        for col in module.relations
    ]
    f = ambient.from_terms(ring.modulus.terms)
    for j in range(rank):
        cols.append(tuple(f if i == j else ambient.zero for i in range(rank)))
    return ambient, module.generator_shifts, cols


def hilbert_series(module, budget=None, check_depth=6):
    """Hilbert series of a graded module, computed twice and compared.

    Primary route: alternating sum over a minimal free resolution of
    the ambient-ring presentation.  Certification route: the initial
    module has the same Hilbert function, and its series reduces to
    monomial-ideal counting.  A mismatch raises CertificateFailure.
    """
    ambient, shifts, cols = _ambient_presentation(module)
    n = ambient.nvars

    if not shifts:
        return HilbertSeries({})

    # primary: free resolution run to closure, alternating sum of t^shift
    chain = _closed_resolution(
        ambient, cols, len(shifts), list(shifts), budget=budget
    )
    minimize_chain(chain)
    numer = {}
    sign = 1
    for level in chain.shifts:
        for s in level:
            numer[s] = numer.get(s, 0) + sign
        sign = -sign
    primary = HilbertSeries(numer, n)

    # certification: initial module of the relation submodule.  For each
    # generator e_j the leading terms landing in component j form a
    # monomial ideal I_j, and hilb M = sum_j t^shift_j * hilb(P/I_j).
    gb = ModuleGB(ambient, len(shifts), cols, budget=budget)
    per_component = {j: [] for j in range(len(shifts))}
    for comp, mono in gb.leading_terms():
        per_component[comp].append(mono)
    check = HilbertSeries({})
    for j, shift in enumerate(shifts):
        nj = monomial_quotient_numerator(per_component[j], n)
        check = check + HilbertSeries(nj, n).shift(shift)

    if primary != check:
        raise CertificateFailure(
            "Hilbert series mismatch between resolution "
            f"({primary}) and initial-module count ({check})"
        )
    lo = primary.min_degree()
    for d in range(lo, lo + check_depth + 1):
        if primary.coefficient(d) < 0:
            raise CertificateFailure(
                f"negative Hilbert coefficient {primary.coefficient(d)} in degree {d}"
            )
    return primary


# ---------------------------------------------------------------------------
# Ext into the ring


def _ext_over_free(ring, module, i, budget=None):
    """Ext^i(M, P) over a free polynomial ring as a PresentedModule."""
    shifts0 = list(module.generator_shifts)
    cols0 = list(module.relations)
    chain = free_resolution(
        ring, cols0, len(shifts0), shifts0=shifts0, length=i + 2, budget=budget
    )
    minimize_chain(chain)
    if i >= len(chain.ranks):
        return PresentedModule(ring, [], [])

    # dualize: generator degrees flip sign
    dual_shifts = [-a for a in chain.shifts[i]]
    rank = chain.ranks[i]

    # kernel of the transposed outgoing map d_{i+1}^T : F_i^* -> F_{i+1}^*
    if i + 1 < len(chain.ranks):
        out_map = transpose_columns(ring, chain.mats[i], rank)
        kernel_cols = syzygy_columns(ring, chain.ranks[i + 1], out_map, budget=budget)
    else:
        # no outgoing map: the kernel is everything
        kernel_cols = [
            tuple(ring.one if r == j else ring.zero for r in range(rank))
            for j in range(rank)
        ]
    if not kernel_cols:
        return PresentedModule(ring, [], [])

    kgb = ModuleGB(ring, rank, kernel_cols, budget=budget)
    gen_shifts = list(column_degrees(kernel_cols, dual_shifts))

    # image of the transposed incoming map d_i^T : F_{i-1}^* -> F_i^*,
    # written in the kernel generators, plus internal kernel syzygies
    relations = []
    if i > 0:
        in_map = transpose_columns(ring, chain.mats[i - 1], chain.ranks[i - 1])
        for col in in_map:
            lift = kgb.lift(col)
            if lift is None:
                raise CertificateFailure(
                    "image of dual map escaped the kernel; the complex "
                    "property of the resolution must have failed"
                )
            relations.append(tuple(lift))
    relations.extend(kgb.syzygies())

    return PresentedModule(ring, gen_shifts, relations).minimized(budget=budget)


def ext_module(module, i, budget=None):
    """Ext^i(M, R) as a presented module over the same ring R.

    Over a hypersurface quotient R = P/(f) this is computed as
    Ext_P^{i+1}(M, P) twisted by -deg f, then read as an R-module.
    """
    if i < 0:
        raise ValueError("Ext index must be nonnegative")
    ring = module.ring
    if ring.modulus is None:
        return _ext_over_free(ring, module, i, budget=budget)

    ambient, shifts, cols = _ambient_presentation(module)
    lifted = PresentedModule(ambient, shifts, cols)
    up = _ext_over_free(ambient, lifted, i + 1, budget=budget)
    deg_f = ring.modulus.total_degree()
    gen_shifts = [a + deg_f for a in up.generator_shifts]
    relations = [
        tuple(ring.from_terms(entry.terms) for entry in col)
        for col in up.relations
    ]
    return PresentedModule(ring, gen_shifts, relations).minimized(budget=budget)


# ---------------------------------------------------------------------------
# annihilators and canonical modules


def annihilator(module, budget=None):
    """Ann(M) as an ideal of the ring of definition."""
    ring = module.ring
    mod = module.minimized(budget=budget)
    if mod.rank == 0:
        return Ideal(ring, [ring.one])
    result = None
    rank = mod.rank
    for j in range(rank):
        # (0 :_R image of e_j): syzygies of [e_j | relations] in their
        # first coordinate give exactly the coefficients killing e_j
        cols = [tuple(ring.one if r == j else ring.zero for r in range(rank))]
        cols.extend(mod.relations)
        ann_j = [
            syz[0]
            for syz in syzygy_columns(ring, rank, cols, budget=budget)
            if not syz[0].is_zero()
        ]
        ideal_j = Ideal(ring, ann_j if ann_j else [ring.zero])
        result = ideal_j if result is None else intersect(result, ideal_j, budget)
    return result


def canonical_module(ideal, budget=None):
    """Graded canonical-type module Ext^c(R/I, R), c = codim of I."""
    ring = ideal.ring
    c = ring.dimension - ideal_dimension(ideal, budget=budget)
    return ext_module(quotient_module(ideal), c, budget=budget)


def top_dimensional_part(ideal, budget=None):
    """Intersection of the top-dimensional primary components of I.

    Computed without a primary decomposition as the annihilator of the
    canonical-type module Ext^c(R/I, R).
    """
    if ideal.is_unit:
        return Ideal(ideal.ring, [ideal.ring.one])
    return annihilator(canonical_module(ideal, budget=budget), budget=budget)


def s2_fication(ideal, budget=None):
    """The double-dual target B1 = Ext^c(Ext^c(R/I, R), R) and its kernel ideal.

    Returns (B1, kernel) where kernel is the ideal of elements of R
    acting by zero on the canonical-type module, i.e. the top-dimensional
    part I_d; R/I_d -> B1 is the S2-fication map on coordinate rings.
    """
    ring = ideal.ring
    c = ring.dimension - ideal_dimension(ideal, budget=budget)
    k_mod = ext_module(quotient_module(ideal), c, budget=budget)
    b1 = ext_module(k_mod, c, budget=budget)
    kernel = annihilator(k_mod, budget=budget)
    return b1, kernel


# ---------------------------------------------------------------------------
# endomorphism-tower stabilization


def endo_stabilization(ideal, alpha_max, budget=None, check_depth=6):
    """Hilbert data of B_alpha = Ext^c(Ext^c(R/I^alpha, R), R), alpha = 1..alpha_max.

    Returns a list of (alpha, HilbertSeries of B_alpha, coker_dim) where
    coker_dim is the total dimension of B_alpha / (R/I_d(alpha)) when
    finite, None when infinite.  A negative coefficient anywhere in the
    difference raises NegativeHilbertDifference.
    """
    if alpha_max < 1:
        raise ValueError("alpha_max must be at least 1")
    ring = ideal.ring
    out = []
    for alpha in range(1, alpha_max + 1):
        power = ideal_power(ideal, alpha)
        b_alpha, kernel = s2_fication(power, budget=budget)
        hilb_b = b_alpha.hilbert(budget=budget)
        hilb_a = quotient_module(kernel).hilbert(budget=budget)
        diff = hilb_b - hilb_a
        lo = min(diff.min_degree(), hilb_b.min_degree(), 0)
        hi = max(check_depth, lo + check_depth)
        for d in range(lo, hi + 1):
            if diff.coefficient(d) < 0:
                raise NegativeHilbertDifference(
                    f"alpha={alpha}: cokernel coefficient "
                    f"{diff.coefficient(d)} in degree {d}"
                )
        out.append((alpha, hilb_b, diff.total()))
    return out
