"""Buchberger engines for ideals and for submodules of free modules.

Two engines share the same skeleton:

* the polynomial engine works on `Polynomial` directly and may use the
  coprimality (product) criterion, which is only valid in rank one;
* the module engine works on component-tagged term lists; it only uses
  the chain criterion, which stays valid for modules.

Syzygies, membership certificates and lifts all come from one module
computation: adjoin a unit column per input column, run Buchberger with
a position-block order in which the original components dominate, and
read results from the tracking block (`ModuleGB`).

Over a quotient ring R = P/(f) everything is delegated to the ambient
polynomial ring P: ideal bases adjoin f, module computations adjoin the
columns f*e_i.  Results are mapped back to R at the boundary.

Free resolutions (`free_resolution`) iterate syzygies and are truncated
at a requested length; `minimize_chain` strips unit entries so Betti
numbers and graded shifts can be read off.
"""

import heapq

from .errors import NonHomogeneousInput, ResourceLimit
from .poly import (
    Polynomial,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

#: default ceiling on processed S-pairs per basis computation
DEFAULT_PAIR_BUDGET = 500_000

_CACHE = None


def set_gb_cache(cache):
    """Install a basis cache (duck-typed: .lookup(ring, gens) / .store)."""
    global _CACHE
    _CACHE = cache


def get_gb_cache():
    return _CACHE


# ---------------------------------------------------------------------------
# polynomial normal form


def normal_form(p, basis):
    """Fully reduce p by a list of monic polynomials (tail included)."""
    ring = p.ring
    reducers = [(g.leading_monomial(), g) for g in basis if not g.is_zero()]
    out = []
    work = p
    while not work.is_zero():
        m, c = work.terms[0]
        hit = None
        for lm, g in reducers:
            if mono_divides(lm, m):
                hit = (lm, g)
                break
        if hit is None:
            out.append((m, c))
            work = Polynomial(ring, work.terms[1:])
            continue
        lm, g = hit
        work = work - g * ring.monomial(mono_div(m, lm), c)
    return Polynomial(ring, tuple(out))


def spolynomial(f, g):
    """S-polynomial (computed on the monic normalizations)."""
    ring = f.ring
    f, g = f.monic(), g.monic()
    mf, mg = f.leading_monomial(), g.leading_monomial()
    lcm = mono_lcm(mf, mg)
    return f * ring.monomial(mono_div(lcm, mf)) - g * ring.monomial(
        mono_div(lcm, mg)
    )


def _pair_key(order, lms, i, j):
    lcm = mono_lcm(lms[i], lms[j])
    return (mono_deg(lcm), order.key(lcm), i, j)


def _buchberger_poly(ring, gens, budget):
    """Reduced Groebner basis in a plain polynomial ring."""
    basis = []
    for g in gens:
        if not g.is_zero():
            basis.append(g.monic())
    basis.sort(key=lambda p: p.sort_key())
    # dedupe
    basis = [g for i, g in enumerate(basis) if i == 0 or g != basis[i - 1]]
    if not basis:
        return []
    order = ring.order
    lms = [g.leading_monomial() for g in basis]
    heap = []
    for j in range(len(basis)):
        for i in range(j):
            heapq.heappush(heap, _pair_key(order, lms, i, j))
    remaining = budget
    while heap:
        _, _, i, j = heapq.heappop(heap)
        remaining -= 1
        if remaining < 0:
            raise ResourceLimit(
                f"pair budget of {budget} exhausted in basis computation"
            )
        lcm = mono_lcm(lms[i], lms[j])
        # product criterion (valid in rank one only)
        if lcm == mono_mul(lms[i], lms[j]):
            continue
        # chain criterion, strict-divisor form
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not mono_divides(lms[k], lcm):
                continue
            if mono_lcm(lms[i], lms[k]) != lcm and mono_lcm(lms[j], lms[k]) != lcm:
                skip = True
                break
        if skip:
            continue
        r = normal_form(spolynomial(basis[i], basis[j]), basis)
        if r.is_zero():
            continue
        r = r.monic()
        basis.append(r)
        lms.append(r.leading_monomial())
        n = len(basis) - 1
        for i2 in range(n):
            heapq.heappush(heap, _pair_key(order, lms, i2, n))
        if r.is_constant():
            break  # unit ideal; no pair can matter any more
    return _interreduce(ring, basis)


def _interreduce(ring, basis):
    """Minimalize leading monomials, then tail-reduce; monic, sorted."""
    order = ring.order
    work = sorted(
        (g for g in basis if not g.is_zero()),
        key=lambda g: order.key(g.leading_monomial()),
    )
    kept = []
    kept_lms = []
    for g in work:
        lm = g.leading_monomial()
        if any(mono_divides(k, lm) for k in kept_lms):
            continue
        kept.append(g)
        kept_lms.append(lm)
    out = []
    for idx, g in enumerate(kept):
        others = [h for k, h in enumerate(kept) if k != idx]
        r = normal_form(g, others)
        if not r.is_zero():
            out.append(r.monic())
    out.sort(key=lambda g: order.key(g.leading_monomial()), reverse=True)
    return out


class GroebnerBasis:
    """Reduced basis of an ideal, with membership and normal forms.

    Over a quotient ring the reduction set is computed in the ambient
    ring with the modulus adjoined, then mapped back; normal forms in R
    reduce by the modulus through ring arithmetic itself.
    """

    __slots__ = ("ring", "generators", "basis", "_lms")

    def __init__(self, ring, generators, basis):
        self.ring = ring
        self.generators = tuple(generators)
        self.basis = tuple(basis)
        self._lms = tuple(g.leading_monomial() for g in self.basis)

    @property
    def is_unit(self):
        return len(self.basis) == 1 and self.basis[0].is_constant()

    @property
    def is_zero(self):
        return not self.basis

    def leading_monomials(self):
        return self._lms

    def nf(self, p):
        if p.ring != self.ring:
            p = self.ring.from_terms(p.terms)
        return normal_form(p, self.basis)

    def contains(self, p):
        return self.nf(p).is_zero()

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"GroebnerBasis({len(self.basis)} elements over {self.ring.describe()})"


def groebner_basis(gens, ring=None, budget=None):
    """Reduced Groebner basis of the ideal generated by `gens`.

    Works in quotient rings by adjoining the modulus in the ambient ring
    and mapping the result back (the modulus itself is dropped).
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need generators or an explicit ring")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
    budget = DEFAULT_PAIR_BUDGET if budget is None else budget

    if ring.modulus is None:
        basis = _cached_buchberger(ring, gens, budget)
        return GroebnerBasis(ring, gens, basis)

    amb = ring.ambient()
    lifted = [amb.from_terms(g.terms) for g in gens]
    lifted.append(amb.from_terms(ring.modulus.terms))
    basis = _cached_buchberger(amb, lifted, budget)
    f = amb.from_terms(ring.modulus.terms)
    mapped = []
    for g in basis:
        if g == f:
            continue
        mapped.append(Polynomial(ring, g.terms))
    return GroebnerBasis(ring, gens, mapped)


def _cached_buchberger(ring, gens, budget):
    if _CACHE is not None:
        canon = sorted(str(g) for g in gens if not g.is_zero())
        hit = _CACHE.lookup(ring, canon)
        if hit is not None:
            return [ring.parse(s) for s in hit]
        basis = _buchberger_poly(ring, gens, budget)
        _CACHE.store(ring, canon, [str(g) for g in basis])
        return basis
    return _buchberger_poly(ring, gens, budget)


# ---------------------------------------------------------------------------
# module engine
#
# A vector in R^r is handled as a tuple of terms ((comp, exps), coeff),
# sorted descending under a position-block order: components below
# `split` dominate the rest; inside a block the ring order decides,
# with the lower component winning ties.


class ModOrder:
    def __init__(self, ring_order, split):
        self.ring_order = ring_order
        self.split = split

    def key(self, mono):
        comp, exps = mono
        return (
            1 if comp < self.split else 0,
            self.ring_order.key(exps),
            -comp,
        )


def _vec_from_column(column, morder):
    terms = []
    for comp, p in enumerate(column):
        for m, c in p.terms:
            terms.append(((comp, m), c))
    terms.sort(key=lambda t: morder.key(t[0]), reverse=True)
    return tuple(terms)


def _vec_to_column(ring, rank, vec):
    per_comp = [dict() for _ in range(rank)]
    for (comp, m), c in vec:
        per_comp[comp][m] = c
    return tuple(ring.from_dict(d) for d in per_comp)


def _vec_scale(field, vec, c):
    return tuple((m, field.mul(c, a)) for m, a in vec)


def _vec_combine(field, morder, a, b, mono, coeff):
    """a - coeff * x^mono * b, both sorted descending under morder."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ma = a[i][0]
        comp_b, mb_raw = b[j][0]
        mb = (comp_b, mono_mul(mb_raw, mono))
        ka, kb = morder.key(ma), morder.key(mb)
        if ka > kb:
            out.append(a[i])
            i += 1
        elif kb > ka:
            out.append((mb, field.neg(field.mul(coeff, b[j][1]))))
            j += 1
        else:
            c = field.sub(a[i][1], field.mul(coeff, b[j][1]))
            if c != field.zero:
                out.append((ma, c))
            i += 1
            j += 1
    out.extend(a[i:])
    while j < nb:
        comp_b, mb_raw = b[j][0]
        out.append(
            ((comp_b, mono_mul(mb_raw, mono)), field.neg(field.mul(coeff, b[j][1])))
        )
        j += 1
    return tuple(out)


def _vec_nf(field, morder, v, basis, stop_at_split=None):
    """Normal form of vector v against monic-leading module elements.

    With `stop_at_split`, terms in components >= the split are emitted
    untouched (used to keep tracking blocks intact).
    """
    out = []
    work = v
    while work:
        (comp, m), c = work[0]
        if stop_at_split is not None and comp >= stop_at_split:
            out.extend(work)
            break
        hit = None
        for lt, g in basis:
            gcomp, gm = lt
            if gcomp == comp and mono_divides(gm, m):
                hit = (gm, g)
                break
        if hit is None:
            out.append(work[0])
            work = work[1:]
            continue
        gm, g = hit
        work = _vec_combine(field, morder, work, g, mono_div(m, gm), c)
    return tuple(out)


def _module_buchberger(ring, vecs, morder, budget):
    """Reduced module basis; input vectors already sorted under morder."""
    field = ring.field
    basis = []
    for v in vecs:
        if v:
            lc = v[0][1]
            if lc != field.one:
                v = _vec_scale(field, v, field.inv(lc))
            basis.append(v)
    basis.sort(key=lambda v: tuple((morder.key(m), _c_key(c)) for m, c in v))
    basis = [v for i, v in enumerate(basis) if i == 0 or v != basis[i - 1]]
    lts = [v[0][0] for v in basis]
    heap = []

    def push_pairs(n):
        for i in range(n):
            if lts[i][0] != lts[n][0]:
                continue
            lcm = mono_lcm(lts[i][1], lts[n][1])
            heapq.heappush(
                heap, (mono_deg(lcm), morder.key((lts[i][0], lcm)), i, n)
            )

    for n in range(len(basis)):
        push_pairs(n)
    remaining = budget
    while heap:
        _, _, i, j = heapq.heappop(heap)
        remaining -= 1
        if remaining < 0:
            raise ResourceLimit(
                f"pair budget of {budget} exhausted in module basis computation"
            )
        comp = lts[i][0]
        lcm = mono_lcm(lts[i][1], lts[j][1])
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or lts[k][0] != comp:
                continue
            if not mono_divides(lts[k][1], lcm):
                continue
            if (
                mono_lcm(lts[i][1], lts[k][1]) != lcm
                and mono_lcm(lts[j][1], lts[k][1]) != lcm
            ):
                skip = True
                break
        if skip:
            continue
        f, g = basis[i], basis[j]
        sp = _vec_combine(
            field,
            morder,
            _shift_vec(f, mono_div(lcm, lts[i][1]), field, morder),
            g,
            mono_div(lcm, lts[j][1]),
            field.one,
        )
        red = [(v[0][0], v) for v in basis]
        r = _vec_nf(field, morder, sp, red)
        if not r:
            continue
        lc = r[0][1]
        if lc != field.one:
            r = _vec_scale(field, r, field.inv(lc))
        basis.append(r)
        lts.append(r[0][0])
        push_pairs(len(basis) - 1)
    return _module_interreduce(field, morder, basis)


def _c_key(c):
    return str(c)


def _shift_vec(v, mono, field, morder):
    return tuple(((comp, mono_mul(m, mono)), c) for (comp, m), c in v)


def _module_interreduce(field, morder, basis):
    work = sorted((v for v in basis if v), key=lambda v: morder.key(v[0][0]))
    kept = []
    for v in work:
        comp, m = v[0][0]
        if any(
            k[0][0][0] == comp and mono_divides(k[0][0][1], m) for k in kept
        ):
            continue
        kept.append(v)
    out = []
    for idx, v in enumerate(kept):
        red = [(w[0][0], w) for k, w in enumerate(kept) if k != idx]
        r = _vec_nf(field, morder, v, red)
        if r:
            lc = r[0][1]
            if lc != field.one:
                r = _vec_scale(field, r, field.inv(lc))
            out.append(r)
    out.sort(key=lambda v: morder.key(v[0][0]), reverse=True)
    return out


class ModuleGB:
    """Groebner data for the column span of a matrix over R (or R/(f)).

    One elimination computation answers membership, normal forms, lifts
    through the columns and the syzygy module.  Columns are tuples of
    polynomials of length `rank`.
    """

    def __init__(self, ring, rank, columns, budget=None):
        self.ring = ring
        self.rank = rank
        self.columns = [tuple(col) for col in columns]
        budget = DEFAULT_PAIR_BUDGET if budget is None else budget
        for col in self.columns:
            if len(col) != rank:
                raise ValueError("column length does not match rank")
            for entry in col:
                if entry.ring != ring:
                    raise ValueError("column entry in wrong ring")

        if ring.modulus is None:
            self._amb = ring
            work_cols = [list(col) for col in self.columns]
        else:
            amb = ring.ambient()
            self._amb = amb
            work_cols = [
                [amb.from_terms(p.terms) for p in col] for col in self.columns
            ]
            f = amb.from_terms(ring.modulus.terms)
            for i in range(rank):
                col = [amb.zero] * rank
                col[i] = f
                work_cols.append(col)
        self._n_orig = len(self.columns)
        self._n_work = len(work_cols)
        ext_rank = rank + self._n_work
        self._morder = ModOrder(self._amb.order, rank)
        ext_vecs = []
        for j, col in enumerate(work_cols):
            unit = [self._amb.zero] * self._n_work
            unit[j] = self._amb.one
            ext_vecs.append(_vec_from_column(list(col) + unit, self._morder))
        self._gb = _module_buchberger(self._amb, ext_vecs, self._morder, budget)
        self._gb_red = [(v[0][0], v) for v in self._gb]
        self._lead = [
            v[0][0] for v in self._gb if v[0][0][0] < rank
        ]  # initial module of the column span, ambient coordinates

    # -- queries -------------------------------------------------------

    def leading_terms(self):
        """(component, monomial) leading pairs, in ambient coordinates."""
        return list(self._lead)

    def ambient_ring(self):
        return self._amb

    def _extend(self, column):
        amb = self._amb
        col = [amb.from_terms(p.terms) for p in column]
        col += [amb.zero] * self._n_work
        return _vec_from_column(col, self._morder)

    def nf_with_lift(self, column):
        """(residue column over R, lift coefficients over R).

        residue = column - sum(lift[j] * columns[j]); the lift covers the
        reducible part even when the residue is nonzero.
        """
        v = self._extend(column)
        r = _vec_nf(self._amb.field, self._morder, v, self._gb_red)
        res = [dict() for _ in range(self.rank)]
        lift = [dict() for _ in range(self._n_orig)]
        for (comp, m), c in r:
            if comp < self.rank:
                res[comp][m] = c
            elif comp - self.rank < self._n_orig:
                lift[comp - self.rank][m] = self._amb.field.neg(c)
        residue = tuple(self.ring.from_dict(d) for d in res)
        lifts = tuple(self.ring.from_dict(d) for d in lift)
        return residue, lifts

    def nf(self, column):
        return self.nf_with_lift(column)[0]

    def contains(self, column):
        return all(p.is_zero() for p in self.nf(column))

    def lift(self, column):
        """Coefficients expressing column in the generators, else None."""
        residue, lifts = self.nf_with_lift(column)
        if any(not p.is_zero() for p in residue):
            return None
        return lifts

    def syzygies(self):
        """Generating columns (length = #columns) of the syzygy module."""
        out = []
        for v in self._gb:
            if v and v[0][0][0] >= self.rank:
                col = _vec_to_column(
                    self._amb, self.rank + self._n_work, v
                )[self.rank : self.rank + self._n_orig]
                mapped = tuple(
                    self.ring.from_terms(p.terms) for p in col
                )
                if any(not p.is_zero() for p in mapped):
                    out.append(mapped)
        out.sort(key=lambda col: tuple(p.sort_key() for p in col))
        return out


def syzygy_columns(ring, rank, columns, budget=None):
    """Syzygies of the given columns of R^rank, as columns of R^len(columns)."""
    if not columns:
        return []
    return ModuleGB(ring, rank, columns, budget=budget).syzygies()


# ---------------------------------------------------------------------------
# free chains and resolutions


def column_degrees(columns, row_shifts):
    """Degrees of homogeneous columns given target row shifts.

    Raises NonHomogeneousInput when an entry is not homogeneous or a
    column mixes degrees.
    """
    degs = []
    for col in columns:
        deg = None
        for i, p in enumerate(col):
            if p.is_zero():
                continue
            if not p.is_homogeneous():
                raise NonHomogeneousInput(
                    f"matrix entry {p} is not homogeneous"
                )
            d = p.total_degree() + row_shifts[i]
            if deg is None:
                deg = d
            elif deg != d:
                raise NonHomogeneousInput(
                    "column mixes degrees; the complex is not graded"
                )
        degs.append(0 if deg is None else deg)
    return degs


class FreeChain:
    """A chain of free modules F_0 <- F_1 <- ... with matrices and shifts.

    mats[k] maps F_{k+1} -> F_k and is stored column-major; shifts[k]
    lists the generator degrees of F_k (graded case).
    """

    def __init__(self, ring, ranks, mats, shifts=None):
        self.ring = ring
        self.ranks = list(ranks)
        self.mats = [[tuple(col) for col in m] for m in mats]
        self.shifts = None if shifts is None else [list(s) for s in shifts]

    def length(self):
        return len(self.mats)

    def check_complex(self):
        """Verify d_k o d_{k+1} = 0 for all k; returns True or raises."""
        for k in range(len(self.mats) - 1):
            outer, inner = self.mats[k], self.mats[k + 1]
            for col in inner:
                acc = [self.ring.zero] * self.ranks[k]
                for j, entry in enumerate(col):
                    if entry.is_zero():
                        continue
                    target = outer[j]
                    for i in range(self.ranks[k]):
                        acc[i] = acc[i] + entry * target[i]
                if any(not p.is_zero() for p in acc):
                    raise AssertionError(
                        f"composition d_{k+1} o d_{k+2} is not zero"
                    )
        return True

    def betti_numbers(self):
        return list(self.ranks)


def free_resolution(
    ring, columns, rank0, shifts0=None, length=None, budget=None, graded=True
):
    """Free resolution of coker(columns: R^s -> R^rank0), truncated.

    Stops early when the kernel is zero.  With graded=True (default)
    the generator degrees of each step are tracked, starting from
    shifts0 (degrees of the F_0 basis; default all zero).
    """
    if length is None:
        length = ring.nvars + 1
    ranks = [rank0]
    mats = []
    shifts = None
    if graded:
        shifts = [([0] * rank0 if shifts0 is None else list(shifts0))]
    cols = [tuple(col) for col in columns if any(not p.is_zero() for p in col)]
    for _ in range(length):
        if not cols:
            break
        mats.append(cols)
        ranks.append(len(cols))
        if graded:
            shifts.append(column_degrees(cols, shifts[-1]))
        cols = syzygy_columns(ring, ranks[-2], cols, budget=budget)
    return FreeChain(ring, ranks, mats, shifts=shifts)


def minimize_chain(chain):
    """Strip unit entries from a chain in place; returns the chain.

    Unit entries correspond to basis elements split off trivially; the
    result has the same homology with no nonzero constant entries.
    """
    ring = chain.ring
    mats = [
        [list(col) for col in m] for m in chain.mats
    ]  # mutable copies, column-major
    ranks = chain.ranks
    shifts = chain.shifts

    def drop_zero_columns(k):
        # a zero column can only be removed when the matching generator
        # of F_{k+1} is unused by the next matrix as well
        keep = []
        for j, col in enumerate(mats[k]):
            if any(not p.is_zero() for p in col):
                keep.append(j)
            elif k + 1 < len(mats) and any(
                not c[j].is_zero() for c in mats[k + 1]
            ):
                keep.append(j)
        if len(keep) != len(mats[k]):
            mats[k] = [mats[k][j] for j in keep]
            if k + 1 < len(mats):
                mats[k + 1] = [
                    [col[j] for j in keep] for col in mats[k + 1]
                ]
            ranks[k + 1] = len(keep)
            if shifts is not None:
                shifts[k + 1] = [shifts[k + 1][j] for j in keep]

    progress = True
    while progress:
        progress = False
        for k in range(len(mats)):
            unit = None
            for j, col in enumerate(mats[k]):
                for i, entry in enumerate(col):
                    if not entry.is_zero() and entry.is_constant():
                        unit = (i, j)
                        break
                if unit:
                    break
            if unit is None:
                continue
            i, j = unit
            u = mats[k][j][i].constant_coeff()
            field = ring.field
            pivot = mats[k][j]
            multipliers = {}
            for j2, col in enumerate(mats[k]):
                if j2 == j or col[i].is_zero():
                    continue
                lam = col[i].scale(field.inv(u))
                multipliers[j2] = lam
                mats[k][j2] = [
                    col[t] - lam * pivot[t] for t in range(len(col))
                ]
            # the column operations above change the basis of F_{k+1}:
            # compensate with row operations on the next matrix
            if k + 1 < len(mats):
                for col in mats[k + 1]:
                    adjust = ring.zero
                    for j2, lam in multipliers.items():
                        adjust = adjust + lam * col[j2]
                    col[j] = col[j] + adjust
            # remove column j and row i of d_{k+1}; row j of d_{k+2};
            # column i of d_k
            mats[k] = [
                [col[t] for t in range(len(col)) if t != i]
                for j2, col in enumerate(mats[k])
                if j2 != j
            ]
            if k + 1 < len(mats):
                for col in mats[k + 1]:
                    if not col[j].is_zero():
                        raise AssertionError(
                            "minimization left a nonzero entry in a dropped row"
                        )
                mats[k + 1] = [
                    [col[t] for t in range(len(col)) if t != j]
                    for col in mats[k + 1]
                ]
            if k > 0:
                mats[k - 1] = [
                    col for j2, col in enumerate(mats[k - 1]) if j2 != i
                ]
            ranks[k] -= 1
            ranks[k + 1] -= 1
            if shifts is not None:
                del shifts[k][i]
                del shifts[k + 1][j]
            progress = True
    for k in range(len(mats)):
        drop_zero_columns(k)
    # drop trailing zero modules
    while mats and not mats[-1]:
        mats.pop()
        ranks.pop()
        if shifts is not None:
            shifts.pop()
    chain.mats = [[tuple(col) for col in m] for m in mats]
    chain.ranks = ranks
    chain.shifts = shifts
    return chain


def transpose_columns(ring, columns, rank):
    """Columns of the transposed matrix (matrix given column-major)."""
    ncols = len(columns)
    out = []
    for i in range(rank):
        out.append(tuple(columns[j][i] for j in range(ncols)))
    return out
