"""Line-oriented session files: ring, modulus, ideals, tasks.

Grammar (one statement per line; blank lines and `#` comments ignored):

    ring <name> = <fieldspec>[v1,...,vn] order=<lex|grevlex>
    modulus <poly>
    ideal <name> = <poly>{, <poly>}
    task <taskname> [<ideal>] [--alpha-max N] [--certify-field]

fieldspec is `Q`, `F<p>` for a prime p, or `Q(<g>)/<minpoly>` for a
simple extension (e.g. `Q(i)/i^2+1`).  Polynomials use `^` for powers
and optional `*` between factors.  The modulus, if present, must come
before any ideal so every ideal lives in the quotient ring.

A task line may name the ideal it operates on; with a single declared
ideal the name can be omitted.
"""

import re
from fractions import Fraction

from .errors import (
    DuplicateName,
    NonHomogeneousInput,
    SessionSyntaxError,
    UndeclaredVariable,
)
from .fields import QQ, PrimeField, SimpleExtension
from .ideals import Ideal
from .poly import RingCtx

TASK_NAMES = (
    "dim",
    "height",
    "minprimes",
    "hhgraph",
    "lyubeznik",
    "s2",
    "idtop",
    "endo",
    "components",
    "stabilize",
)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")

DEFAULT_ALPHA_MAX = 3


class Task:
    __slots__ = ("name", "ideal", "alpha_max", "certify_field")

    def __init__(self, name, ideal, alpha_max=None, certify_field=False):
        self.name = name
        self.ideal = ideal
        self.alpha_max = alpha_max
        self.certify_field = certify_field

    def __eq__(self, other):
        return (
            isinstance(other, Task)
            and self.name == other.name
            and self.ideal == other.ideal
            and self.alpha_max == other.alpha_max
            and self.certify_field == other.certify_field
        )

    def __repr__(self):
        return f"Task({self.to_line()!r})"

    def to_line(self):
        parts = ["task", self.name, self.ideal]
        if self.alpha_max is not None:
            parts.append(f"--alpha-max {self.alpha_max}")
        if self.certify_field:
            parts.append("--certify-field")
        return " ".join(parts)


class Session:
    """Parsed session: one ring, named ideals, ordered task list."""

    __slots__ = ("ring_name", "ring", "field_text", "ideals", "tasks")

    def __init__(self, ring_name, ring, field_text, ideals, tasks):
        self.ring_name = ring_name
        self.ring = ring
        self.field_text = field_text
        self.ideals = dict(ideals)
        self.tasks = list(tasks)

    def __eq__(self, other):
        return (
            isinstance(other, Session)
            and self.ring_name == other.ring_name
            and self.ring == other.ring
            and self.field_text == other.field_text
            and {n: [str(g) for g in i.gens] for n, i in self.ideals.items()}
            == {n: [str(g) for g in i.gens] for n, i in other.ideals.items()}
            and self.tasks == other.tasks
        )

    def to_text(self):
        """Canonical printable form; reparsing yields an equal session."""
        ring = self.ring
        lines = [
            f"ring {self.ring_name} = {self.field_text}"
            f"[{','.join(ring.vars)}] order={ring.order.name}"
        ]
        if ring.modulus is not None:
            lines.append(f"modulus {ring.modulus}")
        for name, ideal in self.ideals.items():
            gens = ", ".join(str(g) for g in ideal.gens) or "0"
            lines.append(f"ideal {name} = {gens}")
        for task in self.tasks:
            lines.append(task.to_line())
        return "\n".join(lines) + "\n"


def _parse_field(text, lineno):
    text = text.strip()
    if text == "Q":
        return QQ
    m = re.fullmatch(r"F(\d+)", text)
    if m:
        try:
            return PrimeField(int(m.group(1)))
        except ValueError as e:
            raise SessionSyntaxError(str(e), line=lineno) from None
    m = re.fullmatch(r"Q\(([A-Za-z_][A-Za-z0-9_]*)\)/(.+)", text)
    if m:
        gen, minpoly_text = m.group(1), m.group(2).strip()
        work = RingCtx(QQ, [gen], "lex")
        try:
            mp = work.parse(minpoly_text)
        except SessionSyntaxError as e:
            raise SessionSyntaxError(
                f"bad minimal polynomial {minpoly_text!r}: {e}", line=lineno
            ) from None
        coeffs = [Fraction(0)] * (mp.total_degree() + 1)
        for (e,), c in mp.terms:
            coeffs[e] = c
        try:
            return SimpleExtension(QQ, gen, coeffs)
        except ValueError as e:
            raise SessionSyntaxError(str(e), line=lineno) from None
    raise SessionSyntaxError(
        f"unrecognized field {text!r} (expected Q, F<p>, or Q(<g>)/<minpoly>)",
        line=lineno,
    )


def _parse_ring_line(rest, lineno):
    m = re.fullmatch(
        r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+?)\s*"
        r"\[\s*([^\]]*)\s*\]\s*order\s*=\s*(\w+)\s*",
        rest,
    )
    if m is None:
        raise SessionSyntaxError(
            "expected `ring <name> = <field>[vars] order=<lex|grevlex>`",
            line=lineno,
        )
    name, field_text, vars_text, order = m.groups()
    field_text = field_text.strip()
    field = _parse_field(field_text, lineno)
    variables = [v.strip() for v in vars_text.split(",") if v.strip()]
    if not variables:
        raise SessionSyntaxError("ring declares no variables", line=lineno)
    for v in variables:
        if not _IDENT.match(v):
            raise SessionSyntaxError(f"bad variable name {v!r}", line=lineno)
    if len(set(variables)) != len(variables):
        raise DuplicateName("duplicate ring variable", line=lineno)
    if order not in ("lex", "grevlex"):
        raise SessionSyntaxError(
            f"unknown order {order!r} (lex or grevlex)", line=lineno
        )
    try:
        ring = RingCtx(field, variables, order)
    except ValueError as e:
        raise SessionSyntaxError(str(e), line=lineno) from None
    return name, ring, field_text


def _parse_task_line(rest, lineno, ideal_names):
    toks = rest.split()
    if not toks:
        raise SessionSyntaxError("task line names no task", line=lineno)
    name = toks[0]
    if name not in TASK_NAMES:
        raise SessionSyntaxError(
            f"unknown task {name!r} (one of {', '.join(TASK_NAMES)})",
            line=lineno,
        )
    ideal = None
    alpha_max = None
    certify = False
    i = 1
    while i < len(toks):
        tok = toks[i]
        if tok == "--alpha-max":
            if name != "stabilize":
                raise SessionSyntaxError(
                    "--alpha-max only applies to the stabilize task",
                    line=lineno,
                )
            if i + 1 >= len(toks) or not toks[i + 1].isdigit():
                raise SessionSyntaxError(
                    "--alpha-max needs a positive integer", line=lineno
                )
            alpha_max = int(toks[i + 1])
            if alpha_max < 1:
                raise SessionSyntaxError(
                    "--alpha-max needs a positive integer", line=lineno
                )
            i += 2
        elif tok == "--certify-field":
            certify = True
            i += 1
        elif tok.startswith("--"):
            raise SessionSyntaxError(f"unknown task flag {tok!r}", line=lineno)
        elif ideal is None:
            ideal = tok
            i += 1
        else:
            raise SessionSyntaxError(
                f"unexpected token {tok!r} on task line", line=lineno
            )
    if ideal is None:
        if len(ideal_names) == 1:
            ideal = ideal_names[0]
        elif not ideal_names:
            raise SessionSyntaxError(
                "task before any ideal declaration", line=lineno
            )
        else:
            raise SessionSyntaxError(
                f"task {name!r} must name an ideal "
                f"(declared: {', '.join(ideal_names)})",
                line=lineno,
            )
    elif ideal not in ideal_names:
        raise SessionSyntaxError(
            f"task references undeclared ideal {ideal!r}", line=lineno
        )
    if name == "stabilize" and alpha_max is None:
        alpha_max = DEFAULT_ALPHA_MAX
    return Task(name, ideal, alpha_max, certify)


def parse_session(text):
    """Parse session text; diagnostics carry the line number."""
    ring_name = None
    ring = None
    field_text = None
    ideals = {}
    tasks = []
    saw_ideal = False

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")

        if keyword == "ring":
            if ring is not None:
                raise DuplicateName("second ring declaration", line=lineno)
            ring_name, ring, field_text = _parse_ring_line(rest, lineno)

        elif keyword == "modulus":
            if ring is None:
                raise SessionSyntaxError(
                    "modulus before ring declaration", line=lineno
                )
            if ring.modulus is not None:
                raise DuplicateName("second modulus declaration", line=lineno)
            if saw_ideal:
                raise SessionSyntaxError(
                    "modulus must precede ideal declarations", line=lineno
                )
            try:
                f = ring.parse(rest.strip())
            except UndeclaredVariable as e:
                raise UndeclaredVariable(str(e), line=lineno) from None
            except SessionSyntaxError as e:
                raise SessionSyntaxError(str(e), line=lineno) from None
            if f.is_zero() or f.is_constant():
                raise SessionSyntaxError(
                    "modulus must be a nonconstant polynomial", line=lineno
                )
            try:
                ring = ring.with_modulus(f)
            except NonHomogeneousInput as e:
                raise SessionSyntaxError(str(e), line=lineno) from None

        elif keyword == "ideal":
            if ring is None:
                raise SessionSyntaxError(
                    "ideal before ring declaration", line=lineno
                )
            m = re.fullmatch(
                r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)\s*", rest
            )
            if m is None:
                raise SessionSyntaxError(
                    "expected `ideal <name> = <poly>{, <poly>}`", line=lineno
                )
            name, gens_text = m.groups()
            if name in ideals:
                raise DuplicateName(
                    f"ideal {name!r} declared twice", line=lineno
                )
            gens = []
            for chunk in gens_text.split(","):
                chunk = chunk.strip()
                if not chunk:
                    raise SessionSyntaxError(
                        "empty generator in ideal declaration", line=lineno
                    )
                try:
                    gens.append(ring.parse(chunk))
                except UndeclaredVariable as e:
                    raise UndeclaredVariable(str(e), line=lineno) from None
                except SessionSyntaxError as e:
                    raise SessionSyntaxError(str(e), line=lineno) from None
            ideals[name] = Ideal(ring, gens)
            saw_ideal = True

        elif keyword == "task":
            tasks.append(_parse_task_line(rest, lineno, list(ideals)))

        else:
            raise SessionSyntaxError(
                f"unknown statement {keyword!r}", line=lineno
            )

    if ring is None:
        raise SessionSyntaxError("session declares no ring")
    return Session(ring_name, ring, field_text, ideals, tasks)


def extend_session_field(session, gen, minpoly_text):
    """Rebuild a session over Q(<gen>) with the given minimal polynomial.

    Only sessions over Q can be extended (no towers); every declared
    polynomial is re-read over the new field, so generators may also use
    the new symbol only if they did not before (they cannot have).
    """
    if session.ring.field is not QQ:
        raise SessionSyntaxError(
            "only sessions over Q can be extended with --extend"
        )
    field = _parse_field(f"Q({gen})/{minpoly_text}", None)
    old = session.ring
    base = RingCtx(field, old.vars, old.order.name)
    if old.modulus is None:
        ring = base
    else:
        ring = base.with_modulus(base.parse(str(old.modulus)))
    ideals = {
        name: Ideal(ring, [ring.parse(str(g)) for g in ideal.gens])
        for name, ideal in session.ideals.items()
    }
    return Session(
        session.ring_name,
        ring,
        f"Q({gen})/{minpoly_text}",
        ideals,
        session.tasks,
    )
