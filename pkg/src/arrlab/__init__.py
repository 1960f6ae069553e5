"""Exact arrangement laboratory.

Construction and analysis of central plane arrangements in R^3 and affine
line arrangements in the plane over exact ordered fields (Q and Q(sqrt5)):
intersection posets and Poincare polynomials, factorization search, the
bounded complex with vertex links, and the circuit/weight linear feasibility
test that certifies asphericity of the coned arrangement.
"""

from .arrangement import (
    AffineLine,
    ArrangementError,
    CentralArrangement,
    CentralPlane,
    LineArrangement,
    ParseError,
    build_icosidodecahedral,
    builtin,
    cone,
    decone,
    default_decone_index,
    parse_arrangement,
    serialize_arrangement,
)
from .cells import (
    BoundedComplex,
    CellComplex,
    Corner,
    Link,
    bounded_complex,
    build_complex,
    face_census,
    gamma_of,
    is_simplicial,
    link,
    link_census,
)
from .factored import (
    Factorization,
    find_factorization,
    find_factorization_bruteforce,
    is_valid_factorization,
)
from .falk import (
    Circuit,
    ConstraintSystem,
    WeightError,
    build_constraints,
    enumerate_circuits,
    evaluate_circuit,
    solve,
    verify,
)
from .lpcore import (
    FeasibilityResult,
    LPRow,
    StandardFormLP,
    check_certificate,
    solve_feasibility,
)
from .poset import (
    Flat,
    IntersectionPoset,
    IntPolynomial,
    intersection_poset,
    poincare_polynomial,
    splits_over_integers,
)
from .scalar import (
    GOLDEN,
    GoldenScalar,
    PHI,
    RATIONAL,
    Rational,
    SQRT5,
    compare,
    format_scalar,
    parse_scalar,
    sign,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
