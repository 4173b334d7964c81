"""Intersection cohomology of stratified simplicial pseudomanifolds."""

from .axioms import (
    SYSTEMS, AxiomReport, Clause, check, check_1doubleprime_c, check_AX1, check_AX1prime,
    check_AX2, check_AX2doubleprime, check_AX2prime, check_AX3, check_AX3doubleprime,
)
from .complex import (
    SimplicialComplex, Stratification, closure, default_stratification, link, load_complex,
    open_star, pseudoboundary, stratum_sanity_check, subject_to, validate_stratification,
)
from .deligne import (
    DeligneBuild, LocalSystem, build_deligne, complement_cohomology, constant_system,
    full_pushforward, intersection_cohomology,
)
from .errors import IcSheafError, ValidationError
from .infinity import INF, NEG_INF
from .linalg import QQ, Betti, ChainMap, CochainComplex, Field, cohomology, cone, parse_field
from .perversity import ExtendedPerversity, Perversity, dual, extend, inverse, parse_perversity, preset
from .sheaf import (
    CellSheaf, attachment, constant_sheaf, costalk_betti, hypercohomology, pushforward, reduce,
    restrict, sections, truncate,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "Betti",
    "CellSheaf",
    "ChainMap",
    "Clause",
    "CochainComplex",
    "DeligneBuild",
    "ExtendedPerversity",
    "Field",
    "INF",
    "IcSheafError",
    "LocalSystem",
    "NEG_INF",
    "Perversity",
    "QQ",
    "SYSTEMS",
    "SimplicialComplex",
    "Stratification",
    "ValidationError",
    "attachment",
    "build_deligne",
    "check",
    "check_1doubleprime_c",
    "check_AX1",
    "check_AX1prime",
    "check_AX2",
    "check_AX2doubleprime",
    "check_AX2prime",
    "check_AX3",
    "check_AX3doubleprime",
    "closure",
    "cohomology",
    "complement_cohomology",
    "cone",
    "constant_sheaf",
    "constant_system",
    "costalk_betti",
    "default_stratification",
    "dual",
    "extend",
    "full_pushforward",
    "hypercohomology",
    "intersection_cohomology",
    "inverse",
    "link",
    "load_complex",
    "open_star",
    "parse_field",
    "parse_perversity",
    "preset",
    "pseudoboundary",
    "pushforward",
    "reduce",
    "restrict",
    "sections",
    "stratum_sanity_check",
    "subject_to",
    "truncate",
    "validate_stratification",
]
