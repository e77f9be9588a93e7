"""Content-addressed on-disk cache of reduced Groebner bases.

Keys are SHA-256 hashes of the ring description plus the sorted
canonical generator strings, so generator order never matters.  Values
are JSON files holding the reduced basis as strings.

A cached entry is never trusted blindly: on lookup the basis is parsed
back and checked structurally (monic, pairwise non-divisible leading
monomials) and semantically (every original generator reduces to zero
against it).  Any failure, parse error, or I/O problem is treated as a
miss and the basis is recomputed; the cache can slow things down but
never change an answer.
"""

import hashlib
import json
import os
import sys
import tempfile

from ._version import __version__
from .groebner import normal_form, set_gb_cache
from .poly import mono_divides

ENV_VAR = "LYCO_CACHE"


def default_cache_dir():
    return os.path.join(os.path.expanduser("~"), ".cache", "lyco")


def resolve_cache_dir(flag_value=None):
    """Cache directory: LYCO_CACHE wins over the flag, then the default."""
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    if flag_value:
        return flag_value
    return default_cache_dir()


class GBCache:
    """Duck-typed basis cache pluggable into the Groebner engine."""

    def __init__(self, root, verbose=False):
        self.root = root
        self.verbose = verbose
        self.hits = 0
        self.misses = 0

    # -- keying ---------------------------------------------------------

    @staticmethod
    def key(ring, canon_gens):
        h = hashlib.sha256()
        h.update(ring.describe().encode())
        for s in canon_gens:
            h.update(b"\0")
            h.update(s.encode())
        return h.hexdigest()

    def _path(self, key):
        return os.path.join(self.root, key[:2], key + ".json")

    # -- engine protocol --------------------------------------------------

    def lookup(self, ring, canon_gens):
        path = self._path(self.key(ring, canon_gens))
        try:
            with open(path, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
            basis_strings = payload["basis"]
            if not isinstance(basis_strings, list):
                raise ValueError("basis is not a list")
            basis = [ring.parse(s) for s in basis_strings]
            if not self._validate(ring, canon_gens, basis):
                raise ValueError("validation failed")
        except FileNotFoundError:
            self.misses += 1
            return None
        except Exception as e:
            self.misses += 1
            self._warn(f"ignoring corrupt cache entry {path}: {e}")
            return None
        self.hits += 1
        return basis_strings

    def store(self, ring, canon_gens, basis_strings):
        path = self._path(self.key(ring, canon_gens))
        payload = {
            "version": __version__,
            "ring": ring.describe(),
            "basis": list(basis_strings),
        }
        try:
            os.makedirs(os.path.dirname(path), exist_ok=True)
            fd, tmp = tempfile.mkstemp(
                dir=os.path.dirname(path), suffix=".tmp"
            )
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, sort_keys=True)
            os.replace(tmp, path)
        except OSError as e:
            self._warn(f"cache store failed ({e}); continuing without")

    # -- internals --------------------------------------------------------

    @staticmethod
    def _validate(ring, canon_gens, basis):
        for g in basis:
            if g.is_zero():
                return False
            if g.leading_coeff() != ring.field.one:
                return False
        lms = [g.leading_monomial() for g in basis]
        for i, a in enumerate(lms):
            for j, b in enumerate(lms):
                if i != j and mono_divides(a, b):
                    return False
        for s in canon_gens:
            if not normal_form(ring.parse(s), basis).is_zero():
                return False
        return True

    def _warn(self, message):
        if self.verbose:
            print(f"lyco: {message}", file=sys.stderr)


def install_cache(root, verbose=False):
    """Create a GBCache at root and plug it into the engine; returns it."""
    cache = GBCache(root, verbose=verbose)
    set_gb_cache(cache)
    return cache


def uninstall_cache():
    set_gb_cache(None)
