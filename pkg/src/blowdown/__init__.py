"""Exact divisor and intersection computations on blown-up rational surfaces.

The package is organized bottom-up:

  exactlin     exact rational/integer linear algebra (solve, SNF, definiteness)
  surface      the lattice model: blow-ups, named divisors, pairing, genus
  contraction  negative-definite contractions: pullback, discrepancies,
               quotient singularities, class groups, rank-one positivity
  cohomology   Riemann-Roch characteristics and the vanishing pipelines
  cone         polarized cone data and the Cohen-Macaulay certificate
  explorer     the parameterized family of constructions
  scenario     scenario files, checks, reports
  cli          command-line front end (repro / run / explore)
"""

from .cohomology import (
    AnticanonicalSectionsReport,
    KvvFailureReport,
    VanishingVerdict,
    euler_characteristic,
    h0_on_quadric,
    kollar_bound,
    vanishing_case_analysis,
    verify_h0_anticanonical_zero,
    verify_kvv_failure,
)
from .cone import (
    ConeModel,
    KltDecision,
    PairClass,
    build_cone,
    cone_klt_decision,
    local_cohomology_certificate,
)
from .contraction import (
    ChainLabel,
    ClassGroupReport,
    Contraction,
    SingClass,
    SingularPointReport,
    contract,
    hirzebruch_jung_type,
)
from .errors import (
    GeometryError,
    LerayHypothesisError,
    NotContractibleError,
    ScenarioError,
    SingularMatrixError,
)
from .exactlin import (
    IntMatrix,
    SnfDecomposition,
    determinant,
    is_negative_definite,
    signature,
    smith_normal_form,
    solve_linear,
)
from .explorer import (
    Construction,
    ExplorationReport,
    explore_frobenius,
    frobenius_construction,
)
from .scenario import (
    Report,
    Scenario,
    bundled_scenario,
    load_scenario,
    run_repro,
    run_scenario,
)
from .surface import PrimeDivisor, QDivisor, SurfaceModel, new_plane, new_quadric

__version__ = "0.1.0"

__all__ = [
    "AnticanonicalSectionsReport",
    "ChainLabel",
    "ClassGroupReport",
    "ConeModel",
    "Construction",
    "Contraction",
    "ExplorationReport",
    "GeometryError",
    "IntMatrix",
    "KltDecision",
    "KvvFailureReport",
    "LerayHypothesisError",
    "NotContractibleError",
    "PairClass",
    "PrimeDivisor",
    "QDivisor",
    "Report",
    "Scenario",
    "ScenarioError",
    "SingClass",
    "SingularMatrixError",
    "SingularPointReport",
    "SnfDecomposition",
    "SurfaceModel",
    "VanishingVerdict",
    "bundled_scenario",
    "build_cone",
    "cone_klt_decision",
    "contract",
    "determinant",
    "euler_characteristic",
    "explore_frobenius",
    "frobenius_construction",
    "h0_on_quadric",
    "hirzebruch_jung_type",
    "is_negative_definite",
    "kollar_bound",
    "load_scenario",
    "local_cohomology_certificate",
    "new_plane",
    "new_quadric",
    "run_repro",
    "run_scenario",
    "signature",
    "smith_normal_form",
    "solve_linear",
    "vanishing_case_analysis",
    "verify_h0_anticanonical_zero",
    "verify_kvv_failure",
]
