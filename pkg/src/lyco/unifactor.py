"""Univariate factorization over the supported coefficient fields.

Strategy by field:

* F_q           squarefree part, distinct-degree, Cantor-Zassenhaus splits
                (trace variant when q is even)
* Q             squarefree part, good prime, Cantor-Zassenhaus mod p,
                Hensel lifting, subset recombination (Zassenhaus)
* Q(alpha)      Trager's norm reduction to Q, gcds back over Q(alpha);
                guarded to extension degree <= 4 and input degree <= 8

The list-level entry point is `factor_univariate_list(K, coeffs)`; the
polynomial-level API `univariate_factor(p)` lives at the bottom.  All
randomness is drawn from a generator seeded by the input, so results are
reproducible run to run.
"""

import itertools
import math
import random
from fractions import Fraction

from . import univar as uv
from .errors import ResourceLimit, ZeroPolynomial


# ---------------------------------------------------------------------------
# squarefree part (all characteristics)


def _pth_root_poly(K, f):
    """Inverse Frobenius on a polynomial with zero derivative (char p)."""
    p = K.characteristic
    deg = getattr(K, "deg", 1)
    out = []
    for i in range(0, len(f), p):
        c = f[i]
        for _ in range(deg - 1):
            c = _freepow(K, c, p)
        out.append(c)
    return uv.normalize(K, out)


def _freepow(K, c, p):
    r = K.one
    b = c
    e = p
    while e:
        if e & 1:
            r = K.mul(r, b)
        e >>= 1
        if e:
            b = K.mul(b, b)
    return r


def squarefree_part(K, f):
    """Monic product of the distinct irreducible factors of f."""
    f = uv.monic(K, f)
    if uv.degree(f) < 1:
        return [K.one]
    d = uv.derivative(K, f)
    if uv.is_zero(d):
        return squarefree_part(K, _pth_root_poly(K, f))
    g = uv.gcd(K, f, d)
    w = uv.divmod_(K, f, g)[0]
    # strip every w-factor out of g; what survives has multiplicity
    # divisible by char and is handled recursively
    y = g
    while True:
        c = uv.gcd(K, y, w)
        if uv.degree(c) < 1:
            break
        y = uv.divmod_(K, y, c)[0]
    if uv.degree(y) >= 1:
        extra = squarefree_part(K, y)
        w = uv.mul(K, w, extra)
    return uv.monic(K, w)


# ---------------------------------------------------------------------------
# finite fields


def _field_size(K):
    return K.characteristic ** getattr(K, "deg", 1)


def _random_element(K, rng):
    p = K.characteristic
    deg = getattr(K, "deg", 1)
    if deg == 1:
        return K.from_int(rng.randrange(p))
    e = K.zero
    power = K.one
    for _ in range(deg):
        e = K.add(e, K.mul(K.from_int(rng.randrange(p)), power))
        power = K.mul(power, K.generator)
    return e


def _random_poly(K, rng, deg_bound):
    while True:
        cs = [_random_element(K, rng) for _ in range(deg_bound)]
        cs = uv.normalize(K, cs)
        if uv.degree(cs) >= 1:
            return cs


def _equal_degree_split(K, f, d, rng):
    """f = product of irreducibles all of degree d; full split."""
    n = uv.degree(f)
    if n == d:
        return [f]
    q = _field_size(K)
    x = [K.zero, K.one]
    for _ in range(200):
        a = _random_poly(K, rng, n)
        g = uv.gcd(K, a, f)
        if 0 < uv.degree(g) < n:
            pass
        elif q % 2 == 1:
            b = uv.pow_mod(K, a, (q**d - 1) // 2, f)
            g = uv.gcd(K, uv.sub(K, b, [K.one]), f)
        else:
            # char 2: additive trace map
            k = d * round(math.log2(q))
            t = list(a)
            acc = list(a)
            for _ in range(k - 1):
                acc = uv.rem(K, uv.mul(K, acc, acc), f)
                t = uv.add(K, t, acc)
            g = uv.gcd(K, t, f)
        if 0 < uv.degree(g) < n:
            rest = uv.divmod_(K, f, g)[0]
            return _equal_degree_split(K, g, d, rng) + _equal_degree_split(
                K, rest, d, rng
            )
    raise ResourceLimit("equal-degree splitting did not converge")


def _factor_squarefree_fq(K, f, rng):
    q = _field_size(K)
    out = []
    v = uv.monic(K, f)
    h = [K.zero, K.one]  # x^(q^d) mod v, updated in place
    d = 0
    while uv.degree(v) > 0:
        d += 1
        if 2 * d > uv.degree(v):
            out.append(v)
            break
        h = uv.pow_mod(K, h, q, v)
        g = uv.gcd(K, uv.sub(K, h, [K.zero, K.one]), v)
        if uv.degree(g) > 0:
            out.extend(_equal_degree_split(K, g, d, rng))
            v = uv.divmod_(K, v, g)[0]
            h = uv.rem(K, h, v)
    return out


# ---------------------------------------------------------------------------
# rationals: Hensel machinery on integer coefficient lists


_PRIMES = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137,
]


def _z_normalize(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _z_primitive(f):
    g = 0
    for c in f:
        g = math.gcd(g, c)
    if g == 0:
        return list(f)
    out = [c // g for c in f]
    if out and out[-1] < 0:
        out = [-c for c in out]
    return out


def _z_mul(f, g, q=None):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    if q:
        out = [c % q for c in out]
    return _z_normalize(out)


def _z_sub(f, g, q=None):
    n = max(len(f), len(g))
    out = [(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)]
    if q:
        out = [c % q for c in out]
    return _z_normalize(out)


def _z_add(f, g, q=None):
    n = max(len(f), len(g))
    out = [(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)]
    if q:
        out = [c % q for c in out]
    return _z_normalize(out)


def _z_red(f, q):
    return _z_normalize([c % q for c in f])


def _z_balanced(f, q):
    out = []
    for c in f:
        c %= q
        if c > q // 2:
            c -= q
        out.append(c)
    return _z_normalize(out)


def _z_divmod_monic(f, h, q=None):
    """Divide by monic h; over Z, or mod q when given."""
    f = list(f)
    dh = len(h) - 1
    qout = [0] * max(0, len(f) - dh)
    while len(f) - 1 >= dh and f:
        c = f[-1]
        d = len(f) - 1 - dh
        qout[d] = c
        for i in range(len(h)):
            f[d + i] -= c * h[i]
        if q:
            f = [x % q for x in f]
        f = _z_normalize(f)
    if q:
        qout = [x % q for x in qout]
    return _z_normalize(qout), f


def _hensel_pair(f, g, h, s, t, p, target):
    """Lift f = g*h (mod p), s*g + t*h = 1 (mod p), h and g monic, to mod p^k >= target.

    Returns (g, h, modulus).
    """
    q = p
    while q < target:
        q2 = q * q
        e = _z_sub(_z_red(f, q2), _z_mul(g, h, q2), q2)
        qq, r = _z_divmod_monic(_z_mul(s, e, q2), h, q2)
        g = _z_add(g, _z_add(_z_mul(t, e, q2), _z_mul(qq, g, q2), q2), q2)
        h = _z_add(h, r, q2)
        # refresh the Bezout pair, keeping deg s < deg h
        b = _z_sub(_z_add(_z_mul(s, g, q2), _z_mul(t, h, q2), q2), [1], q2)
        c, d = _z_divmod_monic(_z_mul(s, b, q2), h, q2)
        s = _z_sub(s, d, q2)
        t = _z_sub(_z_sub(t, _z_mul(t, b, q2), q2), _z_mul(c, g, q2), q2)
        q = q2
    return g, h, q


def _hensel_tree(f, p, parts, target):
    """Lift the mod-p factor list `parts` of monic f to mod p^k >= target."""
    if len(parts) == 1:
        q = p
        while q < target:
            q *= q
        return [_z_red(f, q)], q
    mid = len(parts) // 2
    from .fields import PrimeField

    Fp = PrimeField(p)
    gg = [1]
    for part in parts[:mid]:
        gg = _z_mul(gg, part, p)
    hh = [1]
    for part in parts[mid:]:
        hh = _z_mul(hh, part, p)
    a = [Fp.coerce(c) for c in gg]
    b = [Fp.coerce(c) for c in hh]
    d, s, t = uv.xgcd(Fp, a, b)
    assert len(d) == 1, "lift halves are not coprime"
    s = [int(c) for c in s]
    t = [int(c) for c in t]
    g_lift, h_lift, q = _hensel_pair(f, gg, hh, s, t, p, target)
    left, _ = _hensel_tree(g_lift, p, parts[:mid], q)
    right, _ = _hensel_tree(h_lift, p, parts[mid:], q)
    return left + right, q


def _mignotte_bound(f):
    n = len(f) - 1
    norm = math.isqrt(sum(c * c for c in f)) + 1
    return 2**n * norm


def _factor_z_monic_squarefree(f, rng):
    """Irreducible monic integer factors of a monic squarefree integer poly."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    from .fields import PrimeField

    for p in _PRIMES:
        if f[-1] % p == 0:
            continue
        Fp = PrimeField(p)
        fp = [Fp.coerce(c) for c in f]
        fp = uv.normalize(Fp, fp)
        if uv.degree(fp) != n:
            continue
        if uv.degree(uv.gcd(Fp, fp, uv.derivative(Fp, fp))) != 0:
            continue
        parts = _factor_squarefree_fq(Fp, uv.monic(Fp, fp), rng)
        break
    else:
        raise ResourceLimit("no good prime found for factorization")
    if len(parts) == 1:
        return [f]
    parts_z = [[int(c) for c in part] for part in parts]
    target = 2 * _mignotte_bound(f) + 1
    lifted, q = _hensel_tree(_z_red(f, _hensel_modulus(p, target)), p, parts_z, target)
    lifted = [_z_balanced(part, q) for part in lifted]
    # subset recombination
    result = []
    current = list(f)
    live = list(lifted)
    size = 1
    while 2 * size <= len(live):
        hit = None
        for combo in itertools.combinations(range(len(live)), size):
            cand = [1]
            for i in combo:
                cand = _z_mul(cand, live[i], q)
            cand = _z_balanced(cand, q)
            quo, rem_ = _z_divmod_monic(current, cand)
            if not rem_:
                hit = (combo, cand, quo)
                break
        if hit is None:
            size += 1
            continue
        combo, cand, quo = hit
        result.append(cand)
        current = quo
        live = [x for i, x in enumerate(live) if i not in combo]
    if len(current) > 1:
        result.append(current)
    return result


def _hensel_modulus(p, target):
    q = p
    while q < target:
        q *= q
    return q


def _factor_rational_squarefree(K, f, rng):
    """Monic irreducible factors over Q of a squarefree monic input."""
    den = 1
    for c in f:
        den = den * c.denominator // math.gcd(den, c.denominator)
    fz = _z_primitive([int(c * den) for c in f])
    n = len(fz) - 1
    L = fz[-1]
    if n == 1:
        return [uv.monic(K, f)]
    # monicize by x -> x/L
    g = [fz[i] * L ** (n - 1 - i) for i in range(n)] + [1]
    gfactors = _factor_z_monic_squarefree(g, rng)
    out = []
    for G in gfactors:
        mapped = _z_primitive([c * L**i for i, c in enumerate(G)])
        out.append(uv.monic(K, [Fraction(c) for c in mapped]))
    return out


# ---------------------------------------------------------------------------
# Q(alpha): Trager's norm method


def _sylvester_resultant_y(m_coeffs, G):
    """Res_y(m(y), G(x,y)) with G given as y-coefficient list of Q[x] polys.

    Entries are Fraction coefficient lists; Bareiss fraction-free
    elimination keeps every division exact.
    """
    from .fields import QQ

    dm = len(m_coeffs) - 1
    dG = len(G) - 1
    size = dm + dG
    mat = [[[] for _ in range(size)] for _ in range(size)]
    for row in range(dG):
        for k, c in enumerate(m_coeffs):
            mat[row][row + dm - k] = [Fraction(c)] if c else []
    for row in range(dm):
        for k, cpoly in enumerate(G):
            mat[dG + row][row + dG - k] = list(cpoly)
    sign = 1
    prev = [Fraction(1)]
    for k in range(size - 1):
        if not mat[k][k]:
            swap = next((r for r in range(k + 1, size) if mat[r][k]), None)
            if swap is None:
                return []
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = uv.sub(
                    QQ,
                    uv.mul(QQ, mat[i][j], mat[k][k]),
                    uv.mul(QQ, mat[i][k], mat[k][j]),
                )
                quo, rem_ = _poly_divexact(num, prev)
                assert not rem_, "Bareiss division was not exact"
                mat[i][j] = quo
            mat[i][k] = []
        prev = mat[k][k]
    det = mat[size - 1][size - 1]
    return det if sign > 0 else [-c for c in det]


def _poly_divexact(f, g):
    from .fields import QQ

    return uv.divmod_(QQ, f, g)


def _factor_qext_squarefree(K, f, rng):
    """Trager: factor a squarefree monic f over Q(alpha)."""
    from .fields import QQ

    if uv.degree(f) > 8:
        raise ResourceLimit("extension-field factorization limited to degree 8")
    if K.deg > 4:
        raise ResourceLimit("extension degree limited to 4")
    m_q = [Fraction(c) for c in K.minpoly]
    for s_abs in range(0, 40):
        for s in ({0} if s_abs == 0 else {s_abs, -s_abs}):
            # g_s(x) = f(x - s*alpha); substitute and collect y-powers
            shift_elt = K.mul(K.from_int(-s), K.generator)
            fs = uv.shift(K, f, shift_elt)
            dG = max(
                (next((k for k in range(K.deg - 1, -1, -1) if c[k] != QQ.zero), 0))
                for c in fs
                if c != K.zero
            )
            G = []
            for k in range(dG + 1):
                G.append(uv.normalize(QQ, [Fraction(c[k]) for c in fs]))
            while G and not G[-1]:
                G.pop()
            norm = _sylvester_resultant_y(m_q, G)
            if not norm:
                continue
            dn = uv.derivative(QQ, norm)
            if uv.degree(uv.gcd(QQ, norm, dn)) != 0:
                continue
            # norm is squarefree: factor over Q and pull back
            nf = _factor_rational_squarefree(QQ, uv.monic(QQ, norm), rng)
            if len(nf) == 1:
                return [f]
            out = []
            back = K.mul(K.from_int(s), K.generator)
            for piece in nf:
                lifted = [K.lift(c) for c in piece]
                shifted = uv.shift(K, lifted, back)
                g = uv.gcd(K, f, shifted)
                if uv.degree(g) >= 1:
                    out.append(uv.monic(K, g))
            assert sum(uv.degree(g) for g in out) == uv.degree(f)
            return out
    raise ResourceLimit("no squarefree norm found")


# ---------------------------------------------------------------------------
# entry points


def factor_univariate_list(K, coeffs, seed=None):
    """Factor into [(monic irreducible coefficient list, multiplicity)]."""
    from .fields import PrimeField, RationalField, SimpleExtension

    f = uv.normalize(K, [K.coerce(c) for c in coeffs])
    if uv.degree(f) < 1:
        return []
    if seed is None:
        seed = len(f) * 1009 + uv.degree(f)
    rng = random.Random(seed)
    sq = squarefree_part(K, f)
    if isinstance(K, RationalField):
        parts = _factor_rational_squarefree(K, sq, rng)
    elif isinstance(K, PrimeField) or (
        isinstance(K, SimpleExtension) and K.characteristic > 0
    ):
        parts = _factor_squarefree_fq(K, sq, rng)
    elif isinstance(K, SimpleExtension):
        parts = _factor_qext_squarefree(K, sq, rng)
    else:
        raise TypeError(f"unsupported field {K!r}")
    out = []
    rest = uv.monic(K, f)
    for part in sorted(parts, key=lambda g: (uv.degree(g), [str(c) for c in g])):
        mult = 0
        while True:
            quo, rem_ = uv.divmod_(K, rest, part)
            if rem_:
                break
            rest = quo
            mult += 1
        if mult:
            out.append((part, mult))
    assert uv.degree(rest) == 0, "factorization lost degree"
    return out


def univariate_factor(p, field=None):
    """Factor a univariate polynomial: returns (unit, [(factor, mult), ...]).

    The input must involve at most one ring variable; factors come back
    monic and irreducible, unit a field element.  Passing `field`
    factors over that (larger) field instead: coefficients are coerced
    and the factors live in the corresponding ring.
    """
    ring = p.ring
    if field is not None and field != ring.field:
        from .poly import RingCtx

        bigger = RingCtx(field, ring.vars, order=ring.order)
        p = bigger.from_dict({m: field.coerce(c) for m, c in p.terms})
        ring = bigger
    if p.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    sup = p.support_vars()
    if len(sup) > 1:
        raise ValueError("univariate_factor needs a univariate input")
    if not sup:
        return p.constant_coeff(), []
    i = sup[0]
    deg = p.degree_in(i)
    cs = [ring.field.zero] * (deg + 1)
    for m, c in p.terms:
        cs[m[i]] = c
    unit = cs[-1]
    parts = factor_univariate_list(ring.field, cs)
    out = []
    for coeff_list, mult in parts:
        d = {}
        for e, c in enumerate(coeff_list):
            if c != ring.field.zero:
                exps = [0] * ring.nvars
                exps[i] = e
                d[tuple(exps)] = c
        out.append((ring.from_dict(d), mult))
    return unit, out
