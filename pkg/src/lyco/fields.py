"""Exact coefficient fields: Q, F_p, and simple extensions of either.

Elements are plain data so they hash and compare canonically:

* rationals      -> fractions.Fraction
* prime fields   -> int in [0, p)
* extensions     -> tuple of base elements, coordinates in 1, a, ..., a^(m-1)

A field object carries the arithmetic; polynomials store bare elements and
call back into their ring's field.  All arithmetic is exact; floats are
rejected at coercion time.
"""

from fractions import Fraction

from . import univar
from .errors import NonInvertible, ZeroInversion


class Field:
    """Shared protocol; concrete fields fill in the primitives."""

    generator = None  # extension generator element, if any

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def coerce_many(self, xs):
        return [self.coerce(x) for x in xs]

    def __repr__(self):
        return self.describe()


class RationalField(Field):
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroInversion("1/0 in Q")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def to_str(self, a):
        return str(a)

    def describe(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


def _is_prime(n):
    """Trial division; fine for the supported range p < 2**31."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField(Field):
    def __init__(self, p):
        if not isinstance(p, int) or not 2 <= p < 2**31:
            raise ValueError(f"prime field characteristic out of range: {p}")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroInversion(f"1/0 in F{self.p}")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroInversion(f"denominator divisible by {self.p}")
            return self.mul(x.numerator % self.p, self.inv(x.denominator % self.p))
        raise TypeError(f"cannot coerce {x!r} into F{self.p}")

    def to_str(self, a):
        return str(a)

    def describe(self):
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


class SimpleExtension(Field):
    """base(gen) with gen a root of a monic irreducible minimal polynomial.

    The base must be Q or F_p (no towers).  Irreducibility of the minimal
    polynomial is verified at construction via univariate factorization.
    """

    def __init__(self, base, gen_name, minpoly, check_irreducible=True):
        if isinstance(base, SimpleExtension):
            raise ValueError("extension towers are not supported")
        self.base = base
        self.gen_name = gen_name
        mp = [base.coerce(c) for c in minpoly]
        mp = univar.normalize(base, mp)
        if len(mp) < 3:
            raise ValueError("minimal polynomial must have degree >= 2")
        if mp[-1] != base.one:
            raise ValueError("minimal polynomial must be monic")
        self.minpoly = mp
        self.deg = len(mp) - 1
        self.characteristic = base.characteristic
        self.zero = tuple([base.zero] * self.deg)
        self.one = tuple([base.one] + [base.zero] * (self.deg - 1))
        self.generator = tuple(
            [base.zero, base.one] + [base.zero] * (self.deg - 2)
        )
        # reduction table for a^k, k = deg .. 2*deg-2
        self._red = []
        cur = [base.neg(c) for c in mp[:-1]]  # a^deg
        self._red.append(list(cur))
        for _ in range(self.deg - 2):
            cur = [base.zero] + cur  # multiply by a
            # fold degree-deg coefficient
            if len(cur) > self.deg:
                top = cur.pop()
                cur = [
                    base.add(cur[i], base.mul(top, self._red[0][i]))
                    for i in range(self.deg)
                ]
            self._red.append(list(cur))
        if check_irreducible:
            from .unifactor import factor_univariate_list

            parts = factor_univariate_list(base, mp)
            if len(parts) != 1 or parts[0][1] != 1:
                raise ValueError(
                    f"minimal polynomial of {gen_name} is reducible over {base.describe()}"
                )

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.base
        return tuple(B.neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        m = self.deg
        prod = [B.zero] * (2 * m - 1)
        for i, x in enumerate(a):
            if x == B.zero:
                continue
            for j, y in enumerate(b):
                prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        out = prod[:m]
        for k in range(m, 2 * m - 1):
            c = prod[k]
            if c == B.zero:
                continue
            red = self._red[k - m]
            out = [B.add(out[i], B.mul(c, red[i])) for i in range(m)]
        return tuple(out)

    def inv(self, a):
        if a == self.zero:
            raise ZeroInversion(f"1/0 in {self.describe()}")
        cs = univar.normalize(self.base, list(a))
        d, s, _t = univar.xgcd(self.base, cs, self.minpoly)
        if len(d) != 1:
            raise NonInvertible("gcd with minimal polynomial is not 1")
        s = univar.scale(self.base, self.base.inv(d[0]), s)
        s = univar.rem(self.base, s, self.minpoly)
        return tuple(s + [self.base.zero] * (self.deg - len(s)))

    def from_int(self, n):
        return tuple([self.base.from_int(n)] + [self.base.zero] * (self.deg - 1))

    def coerce(self, x):
        if isinstance(x, tuple) and len(x) == self.deg:
            return tuple(self.base.coerce(c) for c in x)
        if isinstance(x, (int, Fraction)):
            return tuple([self.base.coerce(x)] + [self.base.zero] * (self.deg - 1))
        raise TypeError(f"cannot coerce {x!r} into {self.describe()}")

    def lift(self, x):
        """Embed a base-field element."""
        return tuple([self.base.coerce(x)] + [self.base.zero] * (self.deg - 1))

    def coords(self, a):
        return list(a)

    def is_rational(self, a):
        return all(c == self.base.zero for c in a[1:])

    def to_str(self, a):
        B = self.base
        parts = []
        for k, c in enumerate(a):
            if c == B.zero:
                continue
            if k == 0:
                parts.append(B.to_str(c))
            else:
                pw = self.gen_name if k == 1 else f"{self.gen_name}^{k}"
                if c == B.one:
                    parts.append(pw)
                elif c == B.neg(B.one):
                    parts.append(f"-{pw}")
                else:
                    parts.append(f"{B.to_str(c)}*{pw}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def minpoly_str(self):
        B = self.base
        parts = []
        for k in range(self.deg, -1, -1):
            c = self.minpoly[k]
            if c == B.zero:
                continue
            pw = "1" if k == 0 else (self.gen_name if k == 1 else f"{self.gen_name}^{k}")
            if k == 0:
                parts.append(B.to_str(c))
            elif c == B.one:
                parts.append(pw)
            elif c == B.neg(B.one):
                parts.append(f"-{pw}")
            else:
                parts.append(f"{B.to_str(c)}*{pw}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def describe(self):
        return f"{self.base.describe()}({self.gen_name})/{self.minpoly_str()}"

    def __eq__(self, other):
        return (
            isinstance(other, SimpleExtension)
            and other.base == self.base
            and other.gen_name == self.gen_name
            and other.minpoly == self.minpoly
        )

    def __hash__(self):
        return hash(("ext", self.base, self.gen_name, tuple(self.minpoly)))


QQ = RationalField()


def field_inverse(a, field):
    """Multiplicative inverse of `a` in `field` (errors on zero)."""
    return field.inv(field.coerce(a))
