"""Session files: grammar, diagnostics, round-trip, field extension."""

import pathlib

import pytest

from lyco import (
    DuplicateName,
    QQ,
    SessionSyntaxError,
    SimpleExtension,
    UndeclaredVariable,
    extend_session_field,
    parse_session,
)

SESSIONS_DIR = pathlib.Path(__file__).resolve().parent.parent / "demos" / "sessions"

GOLDEN = """\
ring R = Q[w,x,y,z] order=grevlex
ideal I = w^2 + x^2, y^2 + z^2, w*y + x*z, w*z - x*y
task minprimes I
task lyubeznik I --certify-field
"""


def test_parse_golden_session():
    s = parse_session(GOLDEN)
    assert s.ring_name == "R"
    assert s.ring.vars == ("w", "x", "y", "z") or list(s.ring.vars) == ["w", "x", "y", "z"]
    assert s.field_text == "Q"
    assert list(s.ideals) == ["I"]
    assert len(s.ideals["I"].gens) == 4
    assert [t.name for t in s.tasks] == ["minprimes", "lyubeznik"]
    assert s.tasks[1].certify_field and not s.tasks[0].certify_field
    assert s.tasks[0].ideal == "I"


def test_round_trip_on_shipped_corpus():
    files = sorted(SESSIONS_DIR.glob("*.lyco"))
    assert len(files) >= 7, "session corpus missing"
    for path in files:
        text = path.read_text()
        s = parse_session(text)
        printed = s.to_text()
        s2 = parse_session(printed)
        assert s == s2, path.name
        # printing is a fixed point after one pass
        assert parse_session(printed).to_text() == printed, path.name


def test_comments_and_blank_lines_ignored():
    s = parse_session(
        """
# leading comment

ring R = Q[x,y] order=lex
# interior comment
ideal J = x*y
task dim J
"""
    )
    assert list(s.ideals) == ["J"]
    assert s.ring.order.__class__.__name__ == "Lex"


def test_field_specs():
    s = parse_session("ring R = F7[x] order=lex\nideal I = x\ntask dim I\n")
    assert s.ring.field.p == 7
    s = parse_session(
        "ring R = Q(i)/i^2+1[x,y] order=grevlex\nideal I = x - i*y\ntask dim I\n"
    )
    assert s.ring.field == SimpleExtension(QQ, "i", [1, 0, 1])
    # generator usable in polynomials, including glued products
    assert s.ideals["I"].gens[0] == s.ring.parse("x - iy")


def test_modulus_declaration():
    s = parse_session(
        "ring R = Q[u,v,x,y] order=grevlex\nmodulus x*v - y*u\nideal I = x, y\ntask height I\n"
    )
    assert s.ring.modulus is not None
    assert str(s.ring.modulus) == "v*x - u*y"
    assert s.ring.dimension == 3
    assert "modulus v*x - u*y" in s.to_text()  # printed in canonical form


def test_default_ideal_resolution():
    # a single declared ideal may be omitted from the task line
    s = parse_session("ring R = Q[x] order=lex\nideal I = x\ntask dim\n")
    assert s.tasks[0].ideal == "I"
    # with two ideals the task must name one
    with pytest.raises(SessionSyntaxError):
        parse_session(
            "ring R = Q[x] order=lex\nideal I = x\nideal J = x^2\ntask dim\n"
        )


def test_stabilize_defaults_alpha():
    s = parse_session("ring R = Q[x,y] order=lex\nideal I = x\ntask stabilize I\n")
    assert s.tasks[0].alpha_max == 3
    s = parse_session(
        "ring R = Q[x,y] order=lex\nideal I = x\ntask stabilize I --alpha-max 5\n"
    )
    assert s.tasks[0].alpha_max == 5


def test_error_diagnostics_carry_line_numbers():
    cases = [
        ("ideal I = x\n", "ring"),  # ideal before ring
        ("ring R = Q[x] order=lex\nring S = Q[y] order=lex\n", "ring"),
        ("ring R = Q[x] order=lex\nideal I = x\nideal I = x^2\n", "I"),
        ("ring R = Q[x] order=lex\nideal I = y\n", "y"),
        ("ring R = Q[x] order=lex\nideal I = x\ntask frobnicate I\n", "frobnicate"),
        ("ring R = Q[x] order=lex\nideal I = x\ntask dim J\n", "J"),
        ("ring R = Q[x] order=lex\nideal I = x\ntask dim I --alpha-max 2\n", "alpha"),
        ("ring R = Q[x] order=lex\nideal I = x\ntask stabilize I --alpha-max 0\n", "alpha"),
        ("ring R = Q[x] order=bogus\n", "order"),
        ("ring R = F4[x] order=lex\n", "prime"),
        ("ring R = Q[x] order=lex\nmodulus x^2\nideal I = x\nmodulus x^3\n", "modulus"),
        ("ring R = Q[x,y] order=lex\nideal I = x\nmodulus x*y\n", "modulus"),
        ("ring R = Q[x,y] order=lex\nmodulus x^2 + y\n", "homogeneous"),
    ]
    for text, needle in cases:
        with pytest.raises(SessionSyntaxError) as exc:
            parse_session(text)
        assert needle.lower() in str(exc.value).lower(), (text, str(exc.value))


def test_session_without_tasks_is_valid():
    # declarations alone are a legal session (useful with --extend later)
    s = parse_session("ring R = Q[x] order=lex\nideal I = x\n")
    assert s.tasks == [] or len(s.tasks) == 0


def test_line_number_in_error():
    with pytest.raises(SessionSyntaxError) as exc:
        parse_session("ring R = Q[x] order=lex\nideal I = x\nideal I = x^2\n")
    assert isinstance(exc.value, DuplicateName)
    assert exc.value.line == 3


def test_undeclared_variable_is_specific():
    with pytest.raises(UndeclaredVariable):
        parse_session("ring R = Q[x] order=lex\nideal I = x + zz\n")


def test_extend_session_field():
    s = parse_session(GOLDEN)
    s2 = extend_session_field(s, "i", "i^2 + 1")
    assert s2.ring.field == SimpleExtension(QQ, "i", [1, 0, 1])
    # same generators, reinterpreted over the bigger field
    assert [str(g) for g in s2.ideals["I"].gens] == [
        str(g) for g in s.ideals["I"].gens
    ]
    # tasks survive
    assert [t.name for t in s2.tasks] == [t.name for t in s.tasks]
    # extension from a non-rational base is refused
    with pytest.raises(SessionSyntaxError):
        extend_session_field(s2, "j", "j^2 + 1")
    # reducible minimal polynomial is refused
    with pytest.raises(SessionSyntaxError):
        extend_session_field(s, "a", "a^2 - 1")


def test_session_to_text_shape():
    s = parse_session(GOLDEN)
    text = s.to_text()
    lines = text.splitlines()
    assert lines[0] == "ring R = Q[w,x,y,z] order=grevlex"
    assert lines[1].startswith("ideal I = ")
    assert lines[2] == "task minprimes I"
    assert lines[3] == "task lyubeznik I --certify-field"
    assert text.endswith("\n")
