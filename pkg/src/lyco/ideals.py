"""Ideal arithmetic and minimal-prime decomposition.

Everything here reduces to Groebner computations in the ambient
polynomial ring; quotient rings are handled by adjoining the modulus.

The decomposition strategy is the classical contraction method driven
entirely by univariate factorization:

* cheap splits on reduced-basis generators (monomials, univariate
  generators, homogeneous bivariate generators, pure powers);
* zero-dimensional ideals: squarefree eliminants per variable, then a
  random primitive element whose minimal polynomial either certifies a
  field (prime) or factors and splits the ideal;
* positive dimension: pick a maximal independent set S, contract to the
  generic fiber over k(S) via saturation by the fiber leading
  coefficients, certify the fiber is a field through the minimal
  polynomial of a random element (irreducibility checked by a random
  specialization of S, which is sound), and branch into the leading
  coefficient locus.

Branches strictly grow the ideal, so the worklist terminates.  When no
certificate is reached within the attempt budget, the remaining piece
is reported with `complete=False` rather than guessed at.
"""

import hashlib
import itertools
import random

from . import univar as uv
from .errors import (
    DecompositionIncomplete,
    ResourceLimit,
    RingMismatch,
    UnitIdeal,
)
from .groebner import ModuleGB, groebner_basis
from .poly import Block, Polynomial, RingCtx, mono_divides
from .unifactor import factor_univariate_list, univariate_factor

_STD_MONOMIAL_LIMIT = 200_000


class Ideal:
    """An ideal with cached reduced Groebner data."""

    __slots__ = ("ring", "gens", "_gb")

    def __init__(self, ring, gens):
        self.ring = ring
        clean = []
        for g in gens:
            if g.ring != ring:
                g = ring.from_terms(g.terms)
            if not g.is_zero():
                clean.append(g)
        self.gens = tuple(clean)
        self._gb = None

    def groebner(self, budget=None):
        if self._gb is None:
            self._gb = groebner_basis(list(self.gens), ring=self.ring, budget=budget)
        return self._gb

    @property
    def is_unit(self):
        return self.groebner().is_unit

    @property
    def is_zero_ideal(self):
        return self.groebner().is_zero

    def nf(self, p):
        return self.groebner().nf(p)

    def contains(self, p):
        return self.groebner().contains(p)

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def equals(self, other):
        return self.contains_ideal(other) and other.contains_ideal(self)

    def plus(self, extra):
        """Ideal enlarged by further generators (iterable or single)."""
        if isinstance(extra, Polynomial):
            extra = [extra]
        elif isinstance(extra, Ideal):
            extra = extra.gens
        return Ideal(self.ring, list(self.gens) + list(extra))

    def canonical_key(self):
        gb = self.groebner()
        return (self.ring.describe(), tuple(str(g) for g in gb.basis))

    def canonical_strings(self):
        return [str(g) for g in self.groebner().basis]

    def __repr__(self):
        inside = ", ".join(str(g) for g in self.gens) or "0"
        return f"Ideal({inside})"


def _ideal_seed(ideal):
    h = hashlib.sha256()
    ring_desc, basis = ideal.canonical_key()
    h.update(ring_desc.encode())
    for s in basis:
        h.update(b"|")
        h.update(s.encode())
    return int.from_bytes(h.digest()[:8], "big")


# ---------------------------------------------------------------------------
# elimination, intersection, quotient, saturation


def _fresh_names(taken, base, count=1):
    out = []
    i = 0
    taken = set(taken)
    while len(out) < count:
        name = f"{base}{i}"
        if name not in taken:
            out.append(name)
            taken.add(name)
        i += 1
    return out


def _to_ambient_gens(ideal):
    """(ambient ring, generator list with the modulus adjoined)."""
    ring = ideal.ring
    if ring.modulus is None:
        return ring, list(ideal.gens)
    amb = ring.ambient()
    gens = [amb.from_terms(g.terms) for g in ideal.gens]
    gens.append(amb.from_terms(ring.modulus.terms))
    return amb, gens


def eliminate(ideal, drop, budget=None):
    """Ideal of k[kept vars] obtained by eliminating the named variables.

    Only free polynomial rings are supported; quotient ideals should be
    lifted by the caller.  Returns an Ideal over the smaller ring.
    """
    ring = ideal.ring
    if ring.modulus is not None:
        raise ValueError("eliminate expects a free polynomial ring")
    drop = [d if isinstance(d, str) else ring.vars[d] for d in drop]
    for d in drop:
        if d not in ring.vars:
            raise ValueError(f"unknown variable {d!r}")
    kept = [v for v in ring.vars if v not in drop]
    work = RingCtx(ring.field, tuple(drop) + tuple(kept), order=Block(len(drop)))
    images_by_name = {v: work.var(v) for v in ring.vars}
    mapped = [
        g.substitute(work, [images_by_name[v] for v in ring.vars])
        for g in ideal.gens
    ]
    gb = groebner_basis(mapped, ring=work, budget=budget)
    target = RingCtx(ring.field, tuple(kept), order=ring.order)
    kept_images_work_to_target = []
    for v in work.vars:
        kept_images_work_to_target.append(
            target.var(v) if v in kept else target.zero
        )
    out = []
    ndrop = len(drop)
    for g in gb.basis:
        if all(m[i] == 0 for m, _ in g.terms for i in range(ndrop)):
            out.append(g.substitute(target, kept_images_work_to_target))
    return Ideal(target, out)


def intersect(I, J, budget=None):
    """I cap J via the standard single-variable trick.

    Over a quotient ring the modulus is adjoined once as a plain
    generator; the contracted ideal is then exactly the pullback of the
    intersection (evaluating the auxiliary variable at 0 and 1 gives
    both containments).
    """
    ring = I.ring
    if J.ring != ring:
        raise RingMismatch("ideals live in different rings")
    amb = ring.ambient()
    gens_i = [amb.from_terms(g.terms) for g in I.gens]
    gens_j = [amb.from_terms(g.terms) for g in J.gens]
    (tname,) = _fresh_names(amb.vars, "t")
    work = RingCtx(amb.field, (tname,) + amb.vars, order=Block(1))
    imgs = [work.var(v) for v in amb.vars]
    t = work.var(tname)
    mixed = [t * g.substitute(work, imgs) for g in gens_i]
    mixed += [(work.one - t) * g.substitute(work, imgs) for g in gens_j]
    if ring.modulus is not None:
        f_amb = amb.from_terms(ring.modulus.terms)
        mixed.append(f_amb.substitute(work, imgs))
    gb = groebner_basis(mixed, ring=work, budget=budget)
    back = [ring.var(v) for v in amb.vars]
    out = []
    for g in gb.basis:
        if all(m[0] == 0 for m, _ in g.terms):
            out.append(g.substitute(ring, [ring.zero] + back))
    return Ideal(ring, out)


def exact_divide(p, g):
    """q with q*g = p, via a module lift; raises when not divisible."""
    ring = p.ring
    if p.is_zero():
        return ring.zero
    M = ModuleGB(ring, 1, [(g,)])
    lifted = M.lift((p,))
    if lifted is None:
        raise ValueError("polynomial is not divisible")
    return lifted[0]


def ideal_quotient(I, J, budget=None):
    """(I : J); J may be an Ideal or a single polynomial."""
    if isinstance(J, Ideal):
        if J.ring != I.ring:
            raise RingMismatch("ideals live in different rings")
        out = None
        for g in J.gens:
            part = _quotient_single(I, g, budget=budget)
            out = part if out is None else intersect(out, part, budget=budget)
        return out if out is not None else Ideal(I.ring, [I.ring.one])
    return _quotient_single(I, J, budget=budget)


def _quotient_single(I, g, budget=None):
    ring = I.ring
    if g.ring != ring:
        g = ring.from_terms(g.terms)
    if g.is_zero():
        raise ValueError("cannot form a quotient by zero")
    inter = intersect(I, Ideal(ring, [g]), budget=budget)
    return Ideal(ring, [exact_divide(p, g) for p in inter.gens])


def saturate(I, J, budget=None):
    """(I : J^infinity); J may be an Ideal or a single polynomial.

    For an ideal J with generators g_i this is the intersection of the
    single-generator saturations (r clears J^N exactly when it clears a
    large power of every generator).
    """
    if isinstance(J, Ideal):
        if J.ring != I.ring:
            raise RingMismatch("ideals live in different rings")
        out = None
        for g in J.gens:
            part = _saturate_single(I, g, budget=budget)
            out = part if out is None else intersect(out, part, budget=budget)
        return out if out is not None else Ideal(I.ring, list(I.gens))
    return _saturate_single(I, J, budget=budget)


def _saturate_single(I, g, budget=None):
    ring = I.ring
    if g.ring != ring:
        g = ring.from_terms(g.terms)
    if g.is_zero():
        raise ValueError("cannot saturate by zero")
    if g.is_constant():
        return Ideal(ring, list(I.gens))
    amb, gens = _to_ambient_gens(I)
    g_amb = amb.from_terms(g.terms)
    (wname,) = _fresh_names(amb.vars, "w")
    work = RingCtx(amb.field, (wname,) + amb.vars, order=Block(1))
    imgs = [work.var(v) for v in amb.vars]
    w = work.var(wname)
    mixed = [p.substitute(work, imgs) for p in gens]
    mixed.append(work.one - w * g_amb.substitute(work, imgs))
    gb = groebner_basis(mixed, ring=work, budget=budget)
    back = [ring.var(v) for v in amb.vars]
    out = []
    for p in gb.basis:
        if all(m[0] == 0 for m, _ in p.terms):
            out.append(p.substitute(ring, [ring.zero] + back))
    return Ideal(ring, out)


def ideal_power(I, e):
    if e < 0:
        raise ValueError("negative ideal power")
    if e == 0:
        return Ideal(I.ring, [I.ring.one])
    gens = list(I.gens)
    out = list(gens)
    for _ in range(e - 1):
        out = [a * b for a in out for b in gens]
        # dedupe products to keep generator lists small
        seen = {}
        for p in out:
            seen.setdefault(tuple(p.monic().terms), p)
        out = list(seen.values())
    return Ideal(I.ring, out)


def ideal_sum(I, J):
    if J.ring != I.ring:
        raise ValueError("ideals live in different rings")
    return Ideal(I.ring, list(I.gens) + list(J.gens))


# ---------------------------------------------------------------------------
# dimension and height


def _lm_supports(lms):
    return [frozenset(i for i, e in enumerate(m) if e) for m in lms]


def _is_independent(subset, supports):
    return not any(sup <= subset for sup in supports)


def independent_set_dimension(lms, nvars):
    """Largest size of a variable set meeting no leading support."""
    supports = [s for s in _lm_supports(lms)]
    if frozenset() in supports:  # a constant leading monomial: unit ideal
        return -1
    for size in range(nvars, -1, -1):
        for combo in itertools.combinations(range(nvars), size):
            if _is_independent(frozenset(combo), supports):
                return size
    return -1


def ideal_dimension(I, budget=None):
    """Krull dimension of R/I for a proper ideal."""
    amb, gens = _to_ambient_gens(I)
    gb = groebner_basis(gens, ring=amb, budget=budget)
    if gb.is_unit:
        raise UnitIdeal("the unit ideal has no dimension")
    return independent_set_dimension(gb.leading_monomials(), amb.nvars)


def ideal_height(I, budget=None):
    """Height of a proper ideal.

    The ambient rings here are polynomial rings or hypersurface
    quotients; both are catenary and equidimensional, so the minimum
    codimension over minimal primes equals dim R - dim R/I exactly.
    """
    return I.ring.dimension - ideal_dimension(I, budget=budget)


def radical_contains(I, g, budget=None):
    """Whether g lies in the radical of I (saturation turns unit)."""
    if g.ring != I.ring:
        g = I.ring.from_terms(g.terms)
    if g.is_zero():
        return True
    if g.is_constant():
        return I.groebner(budget).is_unit
    return _saturate_single(I, g, budget=budget).is_unit


# ---------------------------------------------------------------------------
# cheap factorization pieces of a single polynomial


def _poly_pieces(g):
    """Distinct irreducible pieces of g when cheaply computable.

    Covers monomials, univariate polynomials and homogeneous bivariate
    polynomials (dehomogenize, factor, rehomogenize).  Returns None when
    no cheap route applies; returns a list of pieces otherwise.  A
    result of [g] (up to scaling) means g is certified irreducible by
    these routes.
    """
    ring = g.ring
    if g.is_zero() or g.is_constant():
        return None
    sup = g.support_vars()
    if len(g.terms) == 1:
        # monomial: the variables of its support
        return [ring.var(i) for i in sup]
    content = tuple(
        min(m[i] for m, _ in g.terms) for i in range(ring.nvars)
    )
    if any(content):
        stripped = ring.from_dict(
            {
                tuple(e - content[i] for i, e in enumerate(m)): c
                for m, c in g.terms
            }
        )
        pieces = [ring.var(i) for i, e in enumerate(content) if e]
        rest = _poly_pieces(stripped)
        return pieces + (rest if rest is not None else [stripped])
    if len(sup) == 1:
        _, parts = univariate_factor(g)
        return [f for f, _ in parts]
    if len(sup) == 2 and g.is_homogeneous():
        i, j = sup
        D = g.total_degree()
        # g = sum c_a x_i^a x_j^(D-a); u(t) = sum c_a t^a
        K = ring.field
        coeffs = [K.zero] * (D + 1)
        for m, c in g.terms:
            coeffs[m[i]] = c
        coeffs = uv.normalize(K, coeffs)
        lowest = next(a for a, c in enumerate(coeffs) if c != K.zero)
        pieces = []
        if lowest > 0:
            pieces.append(ring.var(i))
            coeffs = coeffs[lowest:]
        if uv.degree(coeffs) + lowest < D:
            pieces.append(ring.var(j))
        for f_coeffs, _ in factor_univariate_list(K, coeffs):
            d = uv.degree(f_coeffs)
            terms = {}
            for a, c in enumerate(f_coeffs):
                if c != K.zero:
                    exps = [0] * ring.nvars
                    exps[i] = a
                    exps[j] = d - a
                    terms[tuple(exps)] = c
            pieces.append(ring.from_dict(terms))
        return pieces
    return None


def _cheap_split(gb):
    """Factor pieces of some reduced-basis element, or None.

    A piece list with more than one element, or one that differs from
    the generator itself, yields a sound branching of the variety.
    """
    for g in gb.basis:
        pieces = _poly_pieces(g)
        if pieces is None:
            continue
        if len(pieces) > 1:
            return pieces
        piece = pieces[0]
        if piece.monic() != g.monic():
            return pieces  # strict radical shrink (g was a proper power)
    return None


# ---------------------------------------------------------------------------
# zero-dimensional decomposition


def _standard_monomials(lms, nvars):
    """All monomials outside the initial ideal (must be finite here)."""
    from collections import deque

    out = []
    seen = set()
    start = (0,) * nvars
    queue = deque([start])
    seen.add(start)
    while queue:
        m = queue.popleft()
        if any(mono_divides(lm, m) for lm in lms):
            continue
        out.append(m)
        if len(out) > _STD_MONOMIAL_LIMIT:
            raise ResourceLimit("standard monomial basis too large")
        for i in range(nvars):
            nxt = m[:i] + (m[i] + 1,) + m[i + 1 :]
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return out


class _Echelon:
    """Incremental echelon over a field, tracking combinations."""

    def __init__(self, field):
        self.field = field
        self.rows = []  # (pivot index, vector dict, combination list)

    def insert(self, vec, comb):
        """Reduce and insert; returns the dependency when vec drops to 0."""
        K = self.field
        vec = dict(vec)
        comb = list(comb)
        for pivot, rvec, rcomb in self.rows:
            c = vec.get(pivot)
            if c is None or c == K.zero:
                continue
            for k, v in rvec.items():
                nv = K.sub(vec.get(k, K.zero), K.mul(c, v))
                if nv == K.zero:
                    vec.pop(k, None)
                else:
                    vec[k] = nv
            for idx, v in enumerate(rcomb):
                if idx < len(comb):
                    comb[idx] = K.sub(comb[idx], K.mul(c, v))
                else:
                    comb.append(K.neg(K.mul(c, v)))
        vec = {k: v for k, v in vec.items() if v != K.zero}
        if not vec:
            return comb
        pivot = max(vec)
        inv = K.inv(vec[pivot])
        vec = {k: K.mul(inv, v) for k, v in vec.items()}
        comb = [K.mul(inv, v) for v in comb]
        self.rows.append((pivot, vec, comb))
        return None


def _nf_vector(gb, p, index):
    r = gb.nf(p)
    return {index[m]: c for m, c in r.terms}


def _minpoly_in_quotient(gb, ell, index, dim_bound):
    """Monic minimal polynomial (coefficient list) of ell modulo gb."""
    ring = ell.ring
    K = ring.field
    ech = _Echelon(K)
    cur = ring.one
    power = 0
    while power <= dim_bound + 1:
        comb = [K.zero] * power + [K.one]
        dep = ech.insert(_nf_vector(gb, cur, index), comb)
        if dep is not None:
            return uv.normalize(K, dep)
        cur = gb.nf(cur * ell)
        power += 1
    raise ResourceLimit("minimal polynomial search exceeded the dimension bound")


def _coeffs_to_poly(coeffs, ell):
    ring = ell.ring
    out = ring.zero
    p = ring.one
    for c in coeffs:
        if c != ring.field.zero:
            out = out + p.scale(c)
        p = p * ell
    return out


def _zero_dim_step(ideal, rng):
    """One processing step for a zero-dimensional ideal.

    Returns ('prime', None) | ('split', [polys to adjoin]) |
    ('incomplete', None).
    """
    ring = ideal.ring
    K = ring.field
    gb = ideal.groebner()
    std = _standard_monomials(gb.leading_monomials(), ring.nvars)
    D = len(std)
    index = {m: i for i, m in enumerate(std)}
    if D == 1:
        return ("prime", None)  # the quotient is the base field itself
    for i in range(ring.nvars):
        xi = ring.var(i)
        mu = _minpoly_in_quotient(gb, xi, index, D)
        if uv.degree(mu) < 1:
            continue
        parts = factor_univariate_list(K, mu)
        if len(parts) > 1 or parts[0][1] > 1:
            return ("split", [_coeffs_to_poly(f, xi) for f, _ in parts])
        if uv.degree(mu) == D:
            return ("prime", None)
    # every coordinate eliminant is irreducible; take random combinations
    for attempt in range(30):
        coeffs = [K.from_int(rng.randrange(-12 - attempt, 13 + attempt))
                  for _ in range(ring.nvars)]
        ell = ring.zero
        for i, c in enumerate(coeffs):
            if c != K.zero:
                ell = ell + ring.var(i).scale(c)
        if ell.is_zero() or ell.is_constant():
            continue
        mu = _minpoly_in_quotient(gb, ell, index, D)
        if uv.degree(mu) < 1:
            continue
        parts = factor_univariate_list(K, mu)
        if len(parts) > 1 or parts[0][1] > 1:
            return ("split", [_coeffs_to_poly(f, ell) for f, _ in parts])
        if uv.degree(mu) == D:
            return ("prime", None)
    return ("incomplete", None)


# ---------------------------------------------------------------------------
# positive dimension: contraction to the generic fiber


def _as_t_poly(p, t_index):
    """Split p by powers of variable t_index: {t_degree: t-free poly}."""
    ring = p.ring
    buckets = {}
    for m, c in p.terms:
        d = m[t_index]
        rest = m[:t_index] + (0,) + m[t_index + 1 :]
        buckets.setdefault(d, {})[rest] = c
    return {d: ring.from_dict(terms) for d, terms in buckets.items()}


def _t_degree(p, t_index):
    return max((m[t_index] for m, _ in p.terms), default=-1)


def _t_leading_coeff(p, t_index):
    d = _t_degree(p, t_index)
    split = _as_t_poly(p, t_index)
    return split[d], d


def _pseudo_rem(f, g, t_index):
    """Pseudo-remainder of f by g, both viewed as univariate in t."""
    ring = f.ring
    lc_g, dg = _t_leading_coeff(g, t_index)
    t = ring.var(t_index)
    while not f.is_zero():
        df = _t_degree(f, t_index)
        if df < dg:
            break
        lc_f, _ = _t_leading_coeff(f, t_index)
        f = f * lc_g - g * lc_f * t ** (df - dg)
    return f


def _pseudo_gcd(polys, t_index):
    """A gcd over k(S) of the given polynomials, up to k[S]-content."""
    work = [p for p in polys if not p.is_zero()]
    if not work:
        return None
    work.sort(key=lambda p: _t_degree(p, t_index))
    g = work[0]
    for p in work[1:]:
        a, b = p, g
        while not b.is_zero():
            r = _pseudo_rem(a, b, t_index)
            a, b = b, r
        g = a
        if _t_degree(g, t_index) <= 0:
            break
    return g


def _pseudo_div(f, g, t_index):
    """(quotient, remainder) of lc(g)^k * f by g, univariate in t."""
    ring = f.ring
    lc_g, dg = _t_leading_coeff(g, t_index)
    t = ring.var(t_index)
    q = ring.zero
    while not f.is_zero():
        df = _t_degree(f, t_index)
        if df < dg:
            break
        lc_f, _ = _t_leading_coeff(f, t_index)
        shift = lc_f * t ** (df - dg)
        q = q * lc_g + shift
        f = f * lc_g - g * shift
    return q, f


def _fiber_data(ideal, S, budget=None):
    """Block-order basis data for the fiber over k(S).

    Returns (work ring, mapped basis, dep leading monomials, fiber
    dimension over k(S)) or None when the fiber is not finite.
    """
    ring = ideal.ring
    deps = [i for i in range(ring.nvars) if i not in S]
    names = tuple(ring.vars[i] for i in deps) + tuple(ring.vars[i] for i in S)
    work = RingCtx(ring.field, names, order=Block(len(deps)))
    imgs_by_name = {v: work.var(v) for v in ring.vars}
    mapped = [
        g.substitute(work, [imgs_by_name[v] for v in ring.vars])
        for g in ideal.gens
    ]
    gb = groebner_basis(mapped, ring=work, budget=budget)
    ndep = len(deps)
    dep_lms = []
    for g in gb.basis:
        lm = g.leading_monomial()
        dep_part = lm[:ndep]
        if all(e == 0 for e in dep_part):
            # an element of J  intersect k[S]: S was not independent
            return None
        dep_lms.append(dep_part)
    # fiber is finite iff every dependent variable has a pure power lead
    for i in range(ndep):
        if not any(
            lm[i] > 0 and all(lm[j] == 0 for j in range(ndep) if j != i)
            for lm in dep_lms
        ):
            return None
    std = _standard_monomials(dep_lms, ndep)
    return work, gb, deps, len(std)


def _fiber_leading_coeffs(gb, ndep):
    """Distinct k[S]-leading coefficients of the block basis elements."""
    out = {}
    zeros = (0,) * ndep
    for g in gb.basis:
        lm = g.leading_monomial()
        dep_part = lm[:ndep]
        terms = {}
        for m, c in g.terms:
            if m[:ndep] == dep_part:
                terms[zeros + m[ndep:]] = c
        lc = g.ring.from_dict(terms)
        key = tuple(lc.monic().terms)
        out.setdefault(key, lc)
    return list(out.values())


def _specialize_certify_irreducible(mu, t_index, s_indices, rng):
    """Certify irreducibility of mu over k(S) by specializing S.

    Sound: a factorization over k(S) would clear denominators and
    specialize (degrees preserved when the leading coefficient survives).
    Returns True when some specialization is irreducible of full degree.
    """
    ring = mu.ring
    K = ring.field
    d_full = _t_degree(mu, t_index)
    for attempt in range(12):
        images = []
        for i in range(ring.nvars):
            if i == t_index:
                images.append(ring.var(i))
            elif i in s_indices:
                images.append(
                    ring.from_scalar(
                        K.from_int(rng.randrange(-20 - attempt, 21 + attempt))
                    )
                )
            else:
                images.append(ring.var(i))
        bar = mu.substitute(ring, images)
        if _t_degree(bar, t_index) != d_full:
            continue
        coeffs = [K.zero] * (d_full + 1)
        ok = True
        for m, c in bar.terms:
            if any(e and i != t_index for i, e in enumerate(m)):
                ok = False
                break
            coeffs[m[t_index]] = c
        if not ok:
            continue
        parts = factor_univariate_list(K, coeffs)
        if len(parts) == 1 and parts[0][1] == 1:
            return True
    return False


def _positive_dim_step(ideal, dim, rng, budget=None):
    """Contraction step.  Returns (verdict, payload):

    ('prime', None)                the ideal itself is prime
    ('split', [ideals])            replace by these ideals
    ('incomplete', None)           could not make progress
    """
    ring = ideal.ring
    fiber = None
    for S in itertools.combinations(range(ring.nvars), dim):
        fiber = _fiber_data(ideal, frozenset(S), budget=budget)
        if fiber is not None:
            S_set = frozenset(S)
            break
    if fiber is None:
        return ("incomplete", None)
    work, gb_block, deps, d_fiber = fiber
    ndep = len(deps)

    # saturate by each distinct fiber leading coefficient
    lcs = _fiber_leading_coeffs(gb_block, ndep)
    lc_pieces = []
    for lc in lcs:
        if lc.is_constant():
            continue
        back = lc.substitute(ring, [ring.var(v) for v in work.vars])
        pieces = _poly_pieces(back)
        lc_pieces.extend(pieces if pieces else [back])
    # dedupe
    seen = {}
    for p in lc_pieces:
        seen.setdefault(tuple(p.monic().terms), p)
    lc_pieces = list(seen.values())

    sat = ideal
    for p in lc_pieces:
        sat = saturate(sat, p, budget=budget)
    sat_equal = sat.equals(ideal)
    branches = []
    if not sat_equal:
        branches = [ideal.plus(p) for p in lc_pieces]
        fiber = _fiber_data(sat, S_set, budget=budget)
        if fiber is None:
            for S in itertools.combinations(range(ring.nvars), dim):
                fiber = _fiber_data(sat, frozenset(S), budget=budget)
                if fiber is not None:
                    break
        if fiber is None:
            # the saturation dropped dimension; recurse through the worklist
            return ("split", [sat] + branches)
        work, gb_block, deps, d_fiber = fiber
        ndep = len(deps)

    # adjoin T = random combination of the dependent variables and
    # eliminate the dependents to find its minimal polynomial over k(S)
    (tname,) = _fresh_names(work.vars, "T")
    for attempt in range(8):
        coeffs = [
            work.field.from_int(rng.randrange(-9 - attempt, 10 + attempt))
            for _ in range(ndep)
        ]
        if all(c == work.field.zero for c in coeffs):
            continue
        ring_t = RingCtx(
            work.field,
            tuple(work.vars[:ndep]) + (tname,) + tuple(work.vars[ndep:]),
            order=Block(ndep),
        )
        imgs = [ring_t.var(v) for v in work.vars]
        mapped = [g.substitute(ring_t, imgs) for g in gb_block.basis]
        ell_t = ring_t.zero
        for i, c in enumerate(coeffs):
            if c != work.field.zero:
                ell_t = ell_t + ring_t.var(work.vars[i]).scale(c)
        mapped.append(ring_t.var(tname) - ell_t)
        gb_t = groebner_basis(mapped, ring=ring_t, budget=budget)
        elim = []
        for g in gb_t.basis:
            if all(all(m[i] == 0 for i in range(ndep)) for m, _ in g.terms):
                elim.append(g)
        t_index = ndep
        mu = _pseudo_gcd(elim, t_index)
        if mu is None or _t_degree(mu, t_index) < 1:
            continue

        # squarefree over k(S)?  check with a pseudo-gcd against d(mu)/dT
        dmu = _t_derivative(mu, t_index)
        g_sf = _pseudo_gcd([mu, dmu], t_index)
        if g_sf is not None and _t_degree(g_sf, t_index) >= 1:
            q_sf, _ = _pseudo_div(mu, g_sf, t_index)
            outs = []
            for piece in (g_sf, q_sf):
                outs.append(_t_substitute(piece, t_index, coeffs, work, ring))
            target = sat if not sat_equal else ideal
            return ("split", [target.plus(p) for p in outs] + branches)

        # cheap factorization of mu as a plain polynomial
        pieces = _poly_pieces(mu)
        if pieces is not None and (
            len(pieces) > 1 or pieces[0].monic() != mu.monic()
        ):
            outs = [_t_substitute(p, t_index, coeffs, work, ring) for p in pieces]
            target = sat if not sat_equal else ideal
            return ("split", [target.plus(p) for p in outs] + branches)

        if _t_degree(mu, t_index) == d_fiber:
            s_indices = set(range(ndep + 1, ring_t.nvars))
            if _specialize_certify_irreducible(mu, t_index, s_indices, rng):
                if sat_equal:
                    return ("prime", None)
                return ("split_prime", ([sat], branches))
    if not sat_equal:
        return ("split", [sat] + branches)
    return ("incomplete", None)


def _t_derivative(p, t_index):
    ring = p.ring
    out = {}
    for m, c in p.terms:
        e = m[t_index]
        if e == 0:
            continue
        nm = m[:t_index] + (e - 1,) + m[t_index + 1 :]
        out[nm] = ring.field.mul(ring.field.from_int(e), c)
    return ring.from_dict(out)


def _t_substitute(p, t_index, coeffs, work, target):
    """Map p in k[deps, T, S] to the original ring with T -> sum c_i dep_i."""
    ring_t = p.ring
    ell = target.zero
    dep_names = work.vars[: len(coeffs)]
    for c, name in zip(coeffs, dep_names):
        if c != target.field.zero:
            ell = ell + target.var(name).scale(c)
    images = []
    for v in ring_t.vars:
        if v == ring_t.vars[t_index]:
            images.append(ell)
        else:
            images.append(target.var(v))
    return p.substitute(target, images)


# ---------------------------------------------------------------------------
# the decomposition driver


class PrimeList:
    """Minimal primes plus the decomposition field and a completeness flag.

    When complete is False, `primes` still covers the variety but some
    listed component could not be certified prime (it is returned as-is
    rather than silently split incorrectly).
    """

    def __init__(self, primes, field, complete):
        self.primes = primes
        self.field = field
        self.complete = complete

    @property
    def components(self):
        return self.primes

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)


def minimal_primes(I, budget=None, require_complete=False):
    """Minimal primes of I, over the ring of I (quotients included)."""
    ring = I.ring
    amb, gens = _to_ambient_gens(I)
    work = [Ideal(amb, gens)]
    found = []
    incomplete = []
    seen = set()
    guard = 0
    while work:
        guard += 1
        if guard > 5000:
            raise ResourceLimit("decomposition worklist exceeded 5000 steps")
        J = work.pop()
        gb = J.groebner(budget)
        if gb.is_unit:
            continue
        key = J.canonical_key()
        if key in seen:
            continue
        seen.add(key)
        J = Ideal(amb, list(gb.basis))  # canonical generators
        J._gb = gb
        if gb.is_zero:
            found.append(J)
            continue
        split = _cheap_split(gb)
        if split:
            work.extend(J.plus(p) for p in split)
            continue
        d = independent_set_dimension(gb.leading_monomials(), amb.nvars)
        rng = random.Random(_ideal_seed(J))
        if d == 0:
            verdict, payload = _zero_dim_step(J, rng)
            if verdict == "prime":
                found.append(J)
            elif verdict == "split":
                work.extend(J.plus(p) for p in payload)
            else:
                incomplete.append(J)
            continue
        verdict, payload = _positive_dim_step(J, d, rng, budget=budget)
        if verdict == "prime":
            found.append(J)
        elif verdict == "split":
            work.extend(payload)
        elif verdict == "split_prime":
            primes, rest = payload
            found.extend(primes)
            work.extend(rest)
        else:
            incomplete.append(J)

    complete = not incomplete
    if require_complete and not complete:
        raise DecompositionIncomplete(
            "could not certify a complete minimal-prime decomposition"
        )
    candidates = found + incomplete
    # prune non-minimal members (drop P when some other Q is contained in it)
    pruned = []
    for i, P in enumerate(candidates):
        redundant = False
        for j, Q in enumerate(candidates):
            if i == j:
                continue
            if P.contains_ideal(Q):
                # Q subseteq P; keep P only if they are equal and i < j
                if Q.contains_ideal(P):
                    if j < i:
                        redundant = True
                        break
                else:
                    redundant = True
                    break
        if not redundant:
            pruned.append(P)
    # map back to the original ring
    out = []
    for P in pruned:
        if ring.modulus is None:
            comp = Ideal(ring, list(P.groebner().basis))
        else:
            mapped = [ring.from_terms(g.terms) for g in P.groebner().basis]
            comp = Ideal(ring, [g for g in mapped if not g.is_zero()])
        out.append(comp)
    out.sort(key=lambda P: tuple(P.canonical_strings()))
    return PrimeList(out, ring.field, complete)


def is_prime(I, budget=None):
    """Whether I is prime; requires a complete decomposition."""
    gb = I.groebner(budget)
    if gb.is_unit:
        return False
    dec = minimal_primes(I, budget=budget, require_complete=True)
    if len(dec.components) != 1:
        return False
    return dec.components[0].equals(I)
