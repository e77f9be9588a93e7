"""Dense univariate polynomial arithmetic over an abstract field.

Polynomials are plain lists of field elements, low degree first, with no
trailing zeros (the zero polynomial is the empty list).  Every function
takes the field object `K` explicitly; `K` only has to provide the small
arithmetic protocol used by the field classes in `fields.py`.

This layer backs the extension-field inverse, univariate factorization,
and the eliminant manipulations in the prime decomposer.
"""

from .errors import ZeroInversion


def normalize(K, cs):
    out = list(cs)
    while out and out[-1] == K.zero:
        out.pop()
    return out


def degree(cs):
    return len(cs) - 1


def is_zero(cs):
    return not cs


def add(K, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else K.zero
        b = g[i] if i < len(g) else K.zero
        out.append(K.add(a, b))
    return normalize(K, out)


def sub(K, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else K.zero
        b = g[i] if i < len(g) else K.zero
        out.append(K.sub(a, b))
    return normalize(K, out)


def neg(K, f):
    return [K.neg(a) for a in f]


def scale(K, c, f):
    if c == K.zero:
        return []
    return normalize(K, [K.mul(c, a) for a in f])


def mul(K, f, g):
    if not f or not g:
        return []
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == K.zero:
            continue
        for j, b in enumerate(g):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return normalize(K, out)


def divmod_(K, f, g):
    """Quotient and remainder of f by g (g nonzero)."""
    if not g:
        raise ZeroInversion("univariate division by zero")
    f = list(f)
    q = [K.zero] * max(0, len(f) - len(g) + 1)
    inv_lc = K.inv(g[-1])
    while len(f) >= len(g):
        c = K.mul(f[-1], inv_lc)
        d = len(f) - len(g)
        q[d] = c
        for i, b in enumerate(g):
            f[d + i] = K.sub(f[d + i], K.mul(c, b))
        f = normalize(K, f)
        if not f:
            break
    return normalize(K, q), f


def rem(K, f, g):
    return divmod_(K, f, g)[1]


def monic(K, f):
    if not f:
        return f
    if f[-1] == K.one:
        return list(f)
    inv = K.inv(f[-1])
    return [K.mul(inv, a) for a in f]


def gcd(K, f, g):
    """Monic greatest common divisor."""
    a, b = list(f), list(g)
    while b:
        a, b = b, rem(K, a, b)
    return monic(K, a)


def xgcd(K, f, g):
    """Extended gcd: returns (d, s, t) with s*f + t*g = d, d monic."""
    a, b = list(f), list(g)
    sa, sb = [K.one], []
    ta, tb = [], [K.one]
    while b:
        q, r = divmod_(K, a, b)
        a, b = b, r
        sa, sb = sb, sub(K, sa, mul(K, q, sb))
        ta, tb = tb, sub(K, ta, mul(K, q, tb))
    if not a:
        return [], [], []
    c = K.inv(a[-1])
    return scale(K, c, a), scale(K, c, sa), scale(K, c, ta)


def evaluate(K, f, x):
    acc = K.zero
    for c in reversed(f):
        acc = K.add(K.mul(acc, x), c)
    return acc


def derivative(K, f):
    out = []
    for i in range(1, len(f)):
        out.append(K.mul(K.from_int(i), f[i]))
    return normalize(K, out)


def pow_mod(K, f, e, m):
    """f^e mod m by binary powering."""
    result = [K.one]
    base = rem(K, f, m)
    while e > 0:
        if e & 1:
            result = rem(K, mul(K, result, base), m)
        e >>= 1
        base = rem(K, mul(K, base, base), m)
    return result


def shift(K, f, a):
    """f(x + a) by synthetic substitution."""
    out = []
    for c in reversed(f):
        out = add(K, mul(K, out, [a, K.one]), [c])
    return out
