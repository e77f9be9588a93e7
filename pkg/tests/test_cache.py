"""On-disk basis cache: round-trip, keying, corruption, validation."""

import json
import os
import pathlib

import pytest

from lyco import PolyRing, QQ, GrevLex, groebner_basis
from lyco.cache import (
    GBCache,
    default_cache_dir,
    install_cache,
    resolve_cache_dir,
    uninstall_cache,
)


@pytest.fixture
def ring():
    return PolyRing(QQ, ("x", "y", "z"), GrevLex())


@pytest.fixture
def cache(tmp_path):
    c = install_cache(str(tmp_path))
    yield c
    uninstall_cache()


def _entry_paths(root):
    return sorted(pathlib.Path(root).rglob("*.json"))


def test_store_lookup_round_trip(ring, cache):
    gens = [ring.parse("x^2 - y*z"), ring.parse("x*y - z^2")]
    gb1 = groebner_basis(gens)
    assert cache.misses == 1 and cache.hits == 0
    assert len(_entry_paths(cache.root)) == 1
    gb2 = groebner_basis(gens)
    assert cache.hits == 1
    assert [str(g) for g in gb1.basis] == [str(g) for g in gb2.basis]
    assert gb2.contains(gens[0]) and gb2.contains(gens[1])


def test_key_invariant_under_generator_permutation(ring, cache):
    f, g, h = ring.parse("x^2"), ring.parse("x*y - z^2"), ring.parse("y^3")
    groebner_basis([f, g, h])
    assert (cache.hits, cache.misses) == (0, 1)
    groebner_basis([h, f, g])
    groebner_basis([g, h, f])
    assert (cache.hits, cache.misses) == (2, 1)
    assert len(_entry_paths(cache.root)) == 1
    # zero generators do not perturb the key
    groebner_basis([ring.zero, h, f, g])
    assert (cache.hits, cache.misses) == (3, 1)


def test_distinct_rings_do_not_collide(ring, cache):
    other = PolyRing(QQ, ("x", "y", "z"), GrevLex())
    assert GBCache.key(ring, ["x"]) == GBCache.key(other, ["x"])
    lex_ring = PolyRing(QQ, ("x", "y", "z"), __import__("lyco").poly.Lex())
    assert GBCache.key(ring, ["x"]) != GBCache.key(lex_ring, ["x"])
    assert GBCache.key(ring, ["x"]) != GBCache.key(ring, ["y"])


def test_corrupt_entry_is_silent_miss_and_recomputed(ring, cache):
    gens = [ring.parse("x^2 - y*z"), ring.parse("x*y - z^2")]
    expected = [str(g) for g in groebner_basis(gens).basis]
    (path,) = _entry_paths(cache.root)
    path.write_text("{ this is not json")
    gb = groebner_basis(gens)
    assert [str(g) for g in gb.basis] == expected
    assert cache.misses == 2
    # the bad entry was replaced by a good one
    payload = json.loads(path.read_text())
    assert payload["basis"] == expected


def test_truncated_and_wrong_shape_entries_miss(ring, cache):
    gens = [ring.parse("x - y")]
    groebner_basis(gens)
    (path,) = _entry_paths(cache.root)
    for bad in ["", '{"basis": "x - y"}', '{"version": "9"}', "[]"]:
        path.write_text(bad)
        before = cache.misses
        gb = groebner_basis(gens)
        assert cache.misses == before + 1
        assert [str(g) for g in gb.basis] == ["x - y"]


def test_validation_rejects_tampered_basis(ring, cache):
    gens = [ring.parse("x^2 - y*z"), ring.parse("x*y - z^2")]
    good = groebner_basis(gens)
    (path,) = _entry_paths(cache.root)
    payload = json.loads(path.read_text())

    def poisoned(basis_strings):
        path.write_text(json.dumps({**payload, "basis": basis_strings}))
        before = cache.misses
        gb = groebner_basis(gens)
        assert cache.misses == before + 1, basis_strings
        assert [str(g) for g in gb.basis] == [str(g) for g in good.basis]

    poisoned(["2*x"])                      # not monic
    poisoned(["x", "x*y"])                 # divisible leading monomials
    poisoned(["y"])                        # generators do not reduce to zero
    poisoned(["x - y", "0"])               # zero element
    poisoned(["x + ", "y"])                # unparseable


def test_uninstall_stops_caching(ring, tmp_path):
    c = install_cache(str(tmp_path))
    groebner_basis([ring.parse("x")])
    uninstall_cache()
    groebner_basis([ring.parse("x")])
    assert (c.hits, c.misses) == (0, 1)


def test_resolve_cache_dir_precedence(monkeypatch):
    monkeypatch.delenv("LYCO_CACHE", raising=False)
    assert resolve_cache_dir() == default_cache_dir()
    assert resolve_cache_dir("/tmp/flagdir") == "/tmp/flagdir"
    monkeypatch.setenv("LYCO_CACHE", "/tmp/envdir")
    assert resolve_cache_dir("/tmp/flagdir") == "/tmp/envdir"
    assert resolve_cache_dir() == "/tmp/envdir"
    assert default_cache_dir().endswith(os.path.join(".cache", "lyco"))


def test_unwritable_root_degrades_gracefully(ring):
    c = install_cache("/proc/definitely/not/writable")
    try:
        gb = groebner_basis([ring.parse("x^2"), ring.parse("x*y")])
        assert [str(g) for g in gb.basis] == ["x*y", "x^2"]
        assert c.hits == 0
    finally:
        uninstall_cache()
