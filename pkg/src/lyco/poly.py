"""Sparse multivariate polynomials over an exact field.

A ring context fixes the field, the variable names, a global monomial
order, and optionally a hypersurface modulus f; polynomials over a quotient
ring are kept in normal form against f.  Monomials are bare exponent
tuples; terms are (exponents, coefficient) pairs stored strictly
descending in the ring's order, so the leading term is terms[0].

Exponents are bounded to 16 bits; larger products raise MonomialOverflow
rather than silently growing.
"""

from fractions import Fraction

from .errors import (
    MonomialOverflow,
    NonHomogeneousInput,
    RingMismatch,
    UndeclaredVariable,
    ZeroPolynomial,
)

MAX_EXP = 0xFFFF


# ---------------------------------------------------------------------------
# monomial orders


class Lex:
    name = "lex"

    @staticmethod
    def key(exps):
        return exps

    def __eq__(self, other):
        return isinstance(other, Lex)

    def __hash__(self):
        return hash("lex")

    def __repr__(self):
        return "lex"


class GrevLex:
    name = "grevlex"

    @staticmethod
    def key(exps):
        return (sum(exps), tuple(-e for e in reversed(exps)))

    def __eq__(self, other):
        return isinstance(other, GrevLex)

    def __hash__(self):
        return hash("grevlex")

    def __repr__(self):
        return "grevlex"


class Block:
    """Eliminates the first `elim_count` variables; grevlex on both blocks."""

    def __init__(self, elim_count):
        self.elim_count = elim_count
        self.name = f"block({elim_count})"

    def key(self, exps):
        k = self.elim_count
        head, tail = exps[:k], exps[k:]
        return (sum(head), tuple(-e for e in reversed(head)),
                sum(tail), tuple(-e for e in reversed(tail)))

    def __eq__(self, other):
        return isinstance(other, Block) and other.elim_count == self.elim_count

    def __hash__(self):
        return hash(("block", self.elim_count))

    def __repr__(self):
        return self.name


ORDERS = {"lex": Lex, "grevlex": GrevLex}


def make_order(name):
    if isinstance(name, (Lex, GrevLex, Block)):
        return name
    if isinstance(name, tuple) and len(name) == 2 and name[0] == "block":
        return Block(name[1])
    if name in ORDERS:
        return ORDERS[name]()
    raise ValueError(f"unknown monomial order {name!r}")


# ---------------------------------------------------------------------------
# monomial helpers (exponent tuples)


def mono_mul(u, v):
    w = tuple(a + b for a, b in zip(u, v))
    for e in w:
        if e > MAX_EXP:
            raise MonomialOverflow(f"exponent {e} exceeds 16 bits")
    return w


def mono_div(u, v):
    """u / v, assuming divisibility."""
    return tuple(a - b for a, b in zip(u, v))


def mono_divides(v, u):
    return all(a <= b for a, b in zip(v, u))


def mono_lcm(u, v):
    return tuple(max(a, b) for a, b in zip(u, v))


def mono_deg(u):
    return sum(u)


# ---------------------------------------------------------------------------
# ring context


class RingCtx:
    """Polynomial ring k[vars] with a monomial order, or its quotient by (f)."""

    def __init__(self, field, variables, order="grevlex", modulus=None):
        self.field = field
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable names")
        if field.generator is not None and hasattr(field, "gen_name"):
            if field.gen_name in self.vars:
                raise ValueError(
                    f"variable {field.gen_name!r} collides with the field generator"
                )
        self.nvars = len(self.vars)
        self.order = make_order(order)
        self.modulus = None
        self._ambient = None
        self._zero_exps = (0,) * self.nvars
        self.zero = Polynomial(self, ())
        self.one = Polynomial(self, ((self._zero_exps, field.one),))
        if modulus is not None:
            self.modulus = self._coerce_modulus(modulus)

    # -- construction -------------------------------------------------

    def ambient(self):
        """The ring without its modulus (itself when already free)."""
        if self.modulus is None:
            return self
        if self._ambient is None:
            self._ambient = self.modulus.ring
        return self._ambient

    def with_modulus(self, f):
        r = RingCtx(self.field, self.vars, self.order)
        amb_f = r.from_terms(f.terms)
        return RingCtx(self.field, self.vars, self.order, modulus=amb_f)

    def with_order(self, order):
        return RingCtx(self.field, self.vars, order, modulus=self.modulus)

    def _coerce_modulus(self, f):
        if not isinstance(f, Polynomial):
            raise TypeError("modulus must be a Polynomial")
        if f.is_zero() or f.is_constant():
            raise ValueError("modulus must be a nonconstant polynomial")
        if not f.is_homogeneous():
            raise NonHomogeneousInput(
                "modulus must be homogeneous to keep the quotient graded"
            )
        # store monic, in the ambient order of this ring
        terms = _sort_terms(self.order, dict(f.terms))
        lc = terms[0][1]
        if lc != self.field.one:
            inv = self.field.inv(lc)
            terms = [(m, self.field.mul(inv, c)) for m, c in terms]
        return Polynomial(RingCtx(self.field, self.vars, self.order), tuple(terms))

    @property
    def dimension(self):
        """Krull dimension of the ring context itself."""
        return self.nvars - (1 if self.modulus is not None else 0)

    def var(self, i):
        if isinstance(i, str):
            i = self.vars.index(i)
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, ((tuple(exps), self.field.one),))

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def from_int(self, n):
        return self.from_scalar(self.field.from_int(n))

    def from_scalar(self, c):
        c = self.field.coerce(c)
        if c == self.field.zero:
            return self.zero
        return Polynomial(self, ((self._zero_exps, c),))

    def monomial(self, exps, coeff=None):
        coeff = self.field.one if coeff is None else self.field.coerce(coeff)
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent tuple has wrong length")
        for e in exps:
            if not 0 <= e <= MAX_EXP:
                raise MonomialOverflow(f"exponent {e} out of range")
        if coeff == self.field.zero:
            return self.zero
        return self._normalize({exps: coeff})

    def from_dict(self, d):
        clean = {}
        for exps, c in d.items():
            exps = tuple(exps)
            if len(exps) != self.nvars:
                raise ValueError(
                    f"exponent tuple of length {len(exps)} in a "
                    f"{self.nvars}-variable ring"
                )
            for e in exps:
                if not 0 <= e <= MAX_EXP:
                    raise MonomialOverflow(f"exponent {e} out of range")
            c = self.field.coerce(c)
            if c != self.field.zero:
                clean[exps] = c
        return self._normalize(clean)

    def from_terms(self, terms):
        return self.from_dict(dict(terms))

    def _normalize(self, d):
        p = Polynomial(self, tuple(_sort_terms(self.order, d)))
        if self.modulus is not None and not p.is_zero():
            p = _reduce_single(p, self.modulus, self)
        return p

    def parse(self, text):
        return parse_polynomial(self, text)

    # -- identity -----------------------------------------------------

    def describe(self):
        s = f"{self.field.describe()}[{','.join(self.vars)}] order={self.order.name}"
        if self.modulus is not None:
            s += f" mod {self.modulus}"
        return s

    def __repr__(self):
        return f"RingCtx({self.describe()})"

    def __eq__(self, other):
        return (
            isinstance(other, RingCtx)
            and other.field == self.field
            and other.vars == self.vars
            and other.order == self.order
            and (other.modulus is None) == (self.modulus is None)
            and (self.modulus is None or other.modulus.terms == self.modulus.terms)
        )

    def __hash__(self):
        mod = None if self.modulus is None else self.modulus.terms
        return hash((self.field, self.vars, self.order, mod))


def _sort_terms(order, d):
    key = order.key
    return sorted(d.items(), key=lambda kv: key(kv[0]), reverse=True)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms  # tuple[(exps, coeff)], descending, coeffs nonzero

    # -- basic queries --------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and mono_deg(self.terms[0][0]) == 0)

    def is_one(self):
        return (
            len(self.terms) == 1
            and mono_deg(self.terms[0][0]) == 0
            and self.terms[0][1] == self.ring.field.one
        )

    def leading_monomial(self):
        if not self.terms:
            raise ZeroPolynomial("leading term of 0")
        return self.terms[0][0]

    def leading_coeff(self):
        if not self.terms:
            raise ZeroPolynomial("leading term of 0")
        return self.terms[0][1]

    def leading_term(self):
        if not self.terms:
            raise ZeroPolynomial("leading term of 0")
        return Polynomial(self.ring, (self.terms[0],))

    def constant_coeff(self):
        zero_exps = self.ring._zero_exps
        for m, c in self.terms:
            if m == zero_exps:
                return c
        return self.ring.field.zero

    def total_degree(self):
        if not self.terms:
            return -1
        return max(mono_deg(m) for m, _ in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        d = mono_deg(self.terms[0][0])
        return all(mono_deg(m) == d for m, _ in self.terms)

    def support_vars(self):
        """Indices of variables that actually occur."""
        seen = set()
        for m, _ in self.terms:
            for i, e in enumerate(m):
                if e:
                    seen.add(i)
        return sorted(seen)

    def degree_in(self, i):
        return max((m[i] for m, _ in self.terms), default=-1)

    def monic(self):
        if not self.terms:
            return self
        lc = self.terms[0][1]
        F = self.ring.field
        if lc == F.one:
            return self
        inv = F.inv(lc)
        return Polynomial(self.ring, tuple((m, F.mul(inv, c)) for m, c in self.terms))

    def coeff_of(self, exps):
        exps = tuple(exps)
        for m, c in self.terms:
            if m == exps:
                return c
        return self.ring.field.zero

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if self.ring is other.ring:
            return
        if self.ring != other.ring:
            raise RingMismatch(
                f"operands in different rings: {self.ring.describe()} vs {other.ring.describe()}"
            )

    def __add__(self, other):
        other = self._coerce_operand(other)
        self._check(other)
        return Polynomial(self.ring, _merge(self.ring, self.terms, other.terms, 1))

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        other = self._coerce_operand(other)
        self._check(other)
        return Polynomial(self.ring, _merge(self.ring, self.terms, other.terms, -1))

    def __rsub__(self, other):
        return self._coerce_operand(other).__sub__(self)

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, tuple((m, F.neg(c)) for m, c in self.terms))

    def __mul__(self, other):
        other = self._coerce_operand(other)
        self._check(other)
        R = self.ring
        F = R.field
        if not self.terms or not other.terms:
            return R.zero
        acc = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                c = F.mul(c1, c2)
                if m in acc:
                    s = F.add(acc[m], c)
                    if s == F.zero:
                        del acc[m]
                    else:
                        acc[m] = s
                else:
                    acc[m] = c
        p = Polynomial(R, tuple(_sort_terms(R.order, acc)))
        if R.modulus is not None and p.terms:
            p = _reduce_single(p, R.modulus, R)
        return p

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c):
        F = self.ring.field
        c = F.coerce(c)
        if c == F.zero:
            return self.ring.zero
        return Polynomial(self.ring, tuple((m, F.mul(c, k)) for m, k in self.terms))

    def _coerce_operand(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, tuple):
            return self.ring.from_scalar(other)
        return NotImplemented

    def substitute(self, target_ring, images):
        """Map self through vars[i] -> images[i] (polynomials or scalars)."""
        imgs = []
        for x in images:
            if isinstance(x, Polynomial):
                imgs.append(x)
            else:
                imgs.append(target_ring.from_scalar(x))
        out = target_ring.zero
        for m, c in self.terms:
            if self.ring.field == target_ring.field:
                c2 = c
            else:
                c2 = _convert_scalar(self.ring.field, target_ring.field, c)
            term = target_ring.from_scalar(c2)
            for i, e in enumerate(m):
                if e:
                    term = term * imgs[i] ** e
            out = out + term
        return out

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.from_scalar(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.vars, self.ring.order, self.terms))

    def __bool__(self):
        return bool(self.terms)

    def sort_key(self):
        key = self.ring.order.key
        return tuple((key(m), _coeff_key(c)) for m, c in self.terms)

    # -- display -------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        names = self.ring.vars
        chunks = []
        for m, c in self.terms:
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
            )
            cs = F.to_str(c)
            neg = False
            if _plain_negative(cs):
                neg = True
                cs = cs[1:]
            if "+" in cs or "-" in cs:
                cs = f"({cs})"
            body = cs if not mono else (mono if cs == "1" else f"{cs}*{mono}")
            chunks.append(("-" if neg else "+", body))
        sign, body = chunks[0]
        out = body if sign == "+" else "-" + body
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"<{self} over {self.ring.field.describe()}[{','.join(self.ring.vars)}]>"


def _coeff_key(c):
    if isinstance(c, tuple):
        return tuple(_coeff_key(x) for x in c)
    if isinstance(c, Fraction):
        return (c.numerator, c.denominator)
    return (c,)


def _plain_negative(s):
    return s.startswith("-") and "+" not in s[1:] and "-" not in s[1:]


def _convert_scalar(src_field, dst_field, c):
    if src_field == dst_field:
        return c
    # base-field element into an extension of the same base
    if hasattr(dst_field, "base") and dst_field.base == src_field:
        return dst_field.lift(c)
    return dst_field.coerce(c)


def _merge(ring, a, b, sign):
    """Merge two descending term tuples; sign applies to b."""
    F = ring.field
    key = ring.order.key
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        ma, ca = a[i]
        mb, cb = b[j]
        if ma == mb:
            c = F.add(ca, cb) if sign > 0 else F.sub(ca, cb)
            if c != F.zero:
                out.append((ma, c))
            i += 1
            j += 1
        elif key(ma) > key(mb):
            out.append((ma, ca))
            i += 1
        else:
            out.append((mb, cb if sign > 0 else F.neg(cb)))
            j += 1
    out.extend(a[i:])
    if sign > 0:
        out.extend(b[j:])
    else:
        out.extend((m, F.neg(c)) for m, c in b[j:])
    return tuple(out)


def _reduce_single(p, g, ring):
    """Normal form of p against the single polynomial g (monic)."""
    lm = g.terms[0][0]
    gt = g.terms
    F = ring.field
    key = ring.order.key
    work = list(p.terms)
    out = []
    while work:
        m, c = work[0]
        if mono_divides(lm, m):
            shift = mono_div(m, lm)
            # work -= c * shift * g
            sub_terms = tuple((mono_mul(shift, mg), F.mul(c, cg)) for mg, cg in gt)
            work = list(_merge(ring, tuple(work), sub_terms, -1))
        else:
            out.append((m, c))
            work = work[1:]
    return Polynomial(ring, tuple(out))


def leading_term(p):
    """Order-maximal term of p as a one-term polynomial."""
    return p.leading_term()


def poly_multiply(f, g):
    """Product in the shared ring context (RingMismatch otherwise)."""
    return f * g


# ---------------------------------------------------------------------------
# expression parser


_TOKEN_CHARS = set("+-*^/() \t")


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch in "+-*^/()":
            toks.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j], i))
            i = j
            continue
        raise _ParseErr(f"unexpected character {ch!r}", i)
    toks.append(("end", None, n))
    return toks


class _ParseErr(Exception):
    def __init__(self, msg, col):
        self.msg = msg
        self.col = col


class _Parser:
    def __init__(self, ring, toks):
        self.ring = ring
        self.toks = toks
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expr(self):
        kind, _, _ = self.peek()
        neg = False
        if kind in "+-":
            neg = self.take()[0] == "-"
        p = self.term()
        if neg:
            p = -p
        while True:
            kind, _, _ = self.peek()
            if kind == "+":
                self.take()
                p = p + self.term()
            elif kind == "-":
                self.take()
                p = p - self.term()
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            kind, _, _ = self.peek()
            if kind == "*":
                self.take()
                p = p * self.factor()
            elif kind in ("num", "name", "("):
                p = p * self.factor()  # implicit product
            else:
                return p

    def factor(self):
        kind, val, col = self.peek()
        if kind == "-":
            self.take()
            return -self.factor()
        p = self.atom()
        kind, _, _ = self.peek()
        if kind == "^":
            self.take()
            k2, e, c2 = self.take()
            if k2 != "num":
                raise _ParseErr("exponent must be a nonnegative integer", c2)
            if e > MAX_EXP:
                raise _ParseErr(f"exponent {e} exceeds 16 bits", c2)
            p = p**e
        return p

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            k2, v2, _ = self.peek()
            if k2 == "/":
                save = self.pos
                self.take()
                k3, v3, c3 = self.take()
                if k3 != "num":
                    self.pos = save
                else:
                    if v3 == 0:
                        raise _ParseErr("division by zero", c3)
                    return self.ring.from_scalar(Fraction(val, v3))
            return self.ring.from_int(val)
        if kind == "name":
            if val in self.ring.vars:
                return self.ring.var(val)
            F = self.ring.field
            if getattr(F, "gen_name", None) == val:
                return self.ring.from_scalar(F.generator)
            parts = self._split_symbols(val)
            if parts is not None:
                # glued product like `wy`: requeue the remaining symbols
                # so that `^` still binds to the last factor only
                for offset, name in enumerate(parts[1:], 1):
                    self.toks.insert(
                        self.pos + offset - 1, ("name", name, col)
                    )
                first = parts[0]
                if first in self.ring.vars:
                    return self.ring.var(first)
                return self.ring.from_scalar(F.generator)
            raise _ParseErr(f"undeclared symbol {val!r}", col)
        if kind == "(":
            p = self.expr()
            k2, _, c2 = self.take()
            if k2 != ")":
                raise _ParseErr("expected ')'", c2)
            return p
        raise _ParseErr(f"unexpected token {val!r}", col)

    def _split_symbols(self, text):
        """Greedy longest-match split of a glued name into declared symbols."""
        symbols = sorted(self.ring.vars, key=len, reverse=True)
        gen = getattr(self.ring.field, "gen_name", None)
        if gen is not None:
            symbols = sorted(symbols + [gen], key=len, reverse=True)
        parts = []
        i = 0
        while i < len(text):
            for s in symbols:
                if text.startswith(s, i):
                    parts.append(s)
                    i += len(s)
                    break
            else:
                return None
        return parts if len(parts) > 1 else None


def parse_polynomial(ring, text):
    """Parse an expression like `x^2*y - 3/2*z` in the given ring.

    `*` is optional between adjacent factors; `^` denotes powers; rational
    coefficients are written a/b with integer literals.
    """
    try:
        parser = _Parser(ring, _tokenize(text))
        p = parser.expr()
        kind, val, col = parser.peek()
        if kind != "end":
            raise _ParseErr(f"trailing input at {val!r}", col)
        return p
    except _ParseErr as e:
        if "undeclared symbol" in e.msg:
            raise UndeclaredVariable(e.msg, col=e.col) from None
        from .errors import SessionSyntaxError

        raise SessionSyntaxError(e.msg, col=e.col) from None
