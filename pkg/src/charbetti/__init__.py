"""Graded Betti tables of monomial ideals and their dependence on the
characteristic of the base field."""

__version__ = "0.1.0"

from .betti import (  # noqa: E402
    BettiTable,
    CancellationStep,
    MultigradedBetti,
    betti_table,
    cancellation_feasible,
    char_dependence_scan,
    hochster_multigraded,
    is_componentwise_linear,
    is_linear_resolution,
    powers_report,
)
from .complex import SimplicialComplex, is_vertex_decomposable, sr_complex, sr_ideal  # noqa: E402
from .homology import HomologyGroup, homology_Z, homology_dim, torsion_primes  # noqa: E402
from .ideal import FieldSpec, Monomial, MonomialIdeal, polarize  # noqa: E402
