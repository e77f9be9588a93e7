"""Exact commutative algebra for connectivity invariants of local cohomology.

The package computes, for an explicit ideal I in a polynomial ring (or
a hypersurface quotient) over Q, F_p, or a simple extension of Q:

* reduced Groebner bases, eliminations, intersections, saturations;
* minimal primes, dimension, and height;
* graded free resolutions, certified Hilbert series, Ext modules;
* the canonical-type module, the top-dimensional part I_d, and the
  S2-fication of R/I;
* the component graph of the top-dimensional primes, its component
  count t, the highest Lyubeznik-type number (= t), and the structure
  of the endomorphism ring of the top local-cohomology module;
* the Hilbert data of the stabilization tower B_alpha.

All arithmetic is exact.  The `lyco` command line runs session files
and emits deterministic JSON reports.
"""

from ._version import __version__
from .cache import GBCache, install_cache, resolve_cache_dir, uninstall_cache
from .connectivity import (
    BASE_FIELD_ONLY,
    FIELD_CERTIFIED,
    EndoReport,
    HHGraph,
    component_ideals,
    connected_components,
    endo_structure_report,
    hh_graph,
    lyubeznik_top,
)
from .errors import (
    CertificateFailure,
    DecompositionIncomplete,
    DuplicateName,
    EmptyGraph,
    LycoError,
    MonomialOverflow,
    NegativeHilbertDifference,
    NonHomogeneousInput,
    NonInvertible,
    ResourceLimit,
    RingMismatch,
    SessionSyntaxError,
    UndeclaredVariable,
    UnitIdeal,
    ZeroInversion,
    ZeroPolynomial,
)
from .fields import QQ, PrimeField, SimpleExtension
from .groebner import (
    FreeChain,
    GroebnerBasis,
    ModuleGB,
    free_resolution,
    groebner_basis,
    minimize_chain,
    normal_form,
    syzygy_columns,
)
from .homology import (
    HilbertSeries,
    PresentedModule,
    annihilator,
    canonical_module,
    endo_stabilization,
    ext_module,
    free_module,
    hilbert_series,
    monomial_quotient_numerator,
    quotient_module,
    s2_fication,
    top_dimensional_part,
)
from .ideals import (
    Ideal,
    PrimeList,
    eliminate,
    ideal_dimension,
    ideal_height,
    ideal_power,
    ideal_quotient,
    ideal_sum,
    intersect,
    is_prime,
    minimal_primes,
    radical_contains,
    saturate,
)
from .poly import Polynomial, RingCtx
from .report import AnalysisReport, run_session, run_task
from .session import Session, Task, extend_session_field, parse_session
from .unifactor import univariate_factor

__all__ = [
    "__version__",
    "AnalysisReport",
    "BASE_FIELD_ONLY",
    "CertificateFailure",
    "DecompositionIncomplete",
    "DuplicateName",
    "EmptyGraph",
    "EndoReport",
    "FIELD_CERTIFIED",
    "FreeChain",
    "GBCache",
    "GroebnerBasis",
    "HHGraph",
    "HilbertSeries",
    "Ideal",
    "LycoError",
    "ModuleGB",
    "MonomialOverflow",
    "NegativeHilbertDifference",
    "NonHomogeneousInput",
    "NonInvertible",
    "Polynomial",
    "PresentedModule",
    "PrimeField",
    "PrimeList",
    "QQ",
    "ResourceLimit",
    "RingCtx",
    "RingMismatch",
    "Session",
    "SessionSyntaxError",
    "SimpleExtension",
    "Task",
    "UndeclaredVariable",
    "UnitIdeal",
    "ZeroInversion",
    "ZeroPolynomial",
    "annihilator",
    "canonical_module",
    "component_ideals",
    "connected_components",
    "eliminate",
    "endo_stabilization",
    "endo_structure_report",
    "ext_module",
    "extend_session_field",
    "free_module",
    "free_resolution",
    "groebner_basis",
    "hh_graph",
    "hilbert_series",
    "ideal_dimension",
    "ideal_height",
    "ideal_power",
    "ideal_quotient",
    "ideal_sum",
    "install_cache",
    "intersect",
    "is_prime",
    "lyubeznik_top",
    "minimal_primes",
    "minimize_chain",
    "monomial_quotient_numerator",
    "normal_form",
    "parse_session",
    "quotient_module",
    "radical_contains",
    "resolve_cache_dir",
    "run_session",
    "run_task",
    "s2_fication",
    "saturate",
    "syzygy_columns",
    "top_dimensional_part",
    "uninstall_cache",
    "univariate_factor",
]
