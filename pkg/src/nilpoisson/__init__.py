"""Exact computer algebra for delta-Poisson and transposed delta-Poisson
bracket structures on null-filiform associative algebras.

The library constructs the n-dimensional null-filiform associative algebra
(e_i * e_j = e_{i+j}), solves exactly for every bracket compatible with the
delta-Poisson identity [x, y.z] = delta([x,y].z + y.[x,z]) or its transposed
companion delta z.[x,y] = [z.x, y] + [x, z.y], and reduces the solutions to
canonical forms under the automorphism group, with explicit isomorphism
witnesses and invariants.  All arithmetic is exact: rationals, single
radical extensions Q[x]/(x^m - q), and sparse polynomials over Q.
"""

from .algebra import (
    Bracket,
    CommAlgebra,
    PoissonPair,
    ResidualReport,
    bracket_apply,
    check_identity,
    multiply,
    power_dims,
)
from .classify import (
    CanonicalForm,
    InvariantTuple,
    IsoWitness,
    canonicalize,
    catalog_match,
    invariants,
    iso_test,
    transform_params,
    verify_transform_formula,
)
from .exactnum import (
    DomainError,
    MPoly,
    RadExt,
    Rat,
    TowerError,
    mpoly_substitute,
    parse_rat,
    radext_arith,
    rat_root,
    rat_to_str,
)
from .families import FamilySpec, canonical_catalog, delta_special_values, instantiate
from .nullfiliform import (
    Automorphism,
    build_automorphism,
    compose,
    compose_invert,
    identity_automorphism,
    invert,
    mu0,
    push_bracket,
)
from .solver import (
    AnsatzBracket,
    LinearSystem,
    MatchReport,
    SolutionSpace,
    UnsupportedModeError,
    assemble,
    jacobi_reduce,
    match_family,
    nullspace,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "AnsatzBracket",
    "Automorphism",
    "Bracket",
    "CanonicalForm",
    "CommAlgebra",
    "DomainError",
    "FamilySpec",
    "InvariantTuple",
    "IsoWitness",
    "LinearSystem",
    "MPoly",
    "MatchReport",
    "PoissonPair",
    "RadExt",
    "Rat",
    "ResidualReport",
    "SolutionSpace",
    "TowerError",
    "UnsupportedModeError",
    "assemble",
    "bracket_apply",
    "build_automorphism",
    "canonical_catalog",
    "canonicalize",
    "catalog_match",
    "check_identity",
    "compose",
    "compose_invert",
    "delta_special_values",
    "identity_automorphism",
    "instantiate",
    "invariants",
    "invert",
    "iso_test",
    "jacobi_reduce",
    "match_family",
    "mpoly_substitute",
    "mu0",
    "multiply",
    "nullspace",
    "parse_rat",
    "power_dims",
    "push_bracket",
    "radext_arith",
    "rat_root",
    "rat_to_str",
    "solve",
    "transform_params",
    "verify_transform_formula",
]
