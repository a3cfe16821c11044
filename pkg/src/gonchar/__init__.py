"""Exact and multiprecision toolkit for Gonchar polynomials.

The package splits along certification boundaries:

  polycore         exact integer/rational polynomial algebra and the
                   Gonchar family constructors
  rootkit_real     certified real-root isolation and the critical
                   distance R_q (rho = R_1 - 1)
  rootkit_complex  certified complex zero sets (disjoint inclusion disks)
  factorlab        finite-field factor-degree irreducibility certificates
  zerogeom         zero classification, census, circle-zero angles, and
                   limit-curve distance probes
  equilibrium      signed equilibrium density on the sphere and its
                   potential checks
  gonchar_cli      the `gonchar` command-line front end

Everything certified is exact-integer or interval-checked multiprecision;
floating point appears only in equilibrium (cross-checked against closed
forms) and in non-asserting probes.
"""

from .errors import (
    DomainError,
    GoncharError,
    InexactDivisionError,
    InternalInvariantError,
    NumericFailure,
    UnresolvedClassification,
)
from .polycore import (
    GoncharInstance,
    IntPoly,
    RatQ,
    derivative,
    divide_exact,
    eval_exact,
    exact_gcd,
    gonchar_poly,
    gonchar_poly_q,
    reciprocal,
    shift_at_one,
    sign_changes,
)
from .rootkit_real import (
    Interval,
    RootApprox,
    asymptotic_estimate,
    cauchy_bound,
    critical_distance,
    eval_sign,
    isolate_real_roots,
    refine_root,
    residual_scan,
    rho,
    squarefree_part,
    sturm_count,
    xi_monotone_check,
)
from .rootkit_complex import (
    ComplexMP,
    ZeroDisk,
    ZeroSet,
    all_zeros,
    certify_all_simple,
    gonchar_zero_set,
    inversion_closure_check,
)
from .factorlab import (
    FactorPattern,
    IrredVerdict,
    exceptional_factorizations,
    factor_degrees_mod_p,
    factor_mod_p,
    irreducibility_certificate,
    known_divisibility,
    reduced_polynomial,
)
from .zerogeom import (
    Census,
    Region,
    ThetaSolution,
    ThetaSolutionSet,
    census,
    classify,
    conjecture_probes,
    gamma_distance,
    max_gamma_distance,
    q_aux_poly,
    q_structure_check,
    theta_solutions,
)
from .equilibrium import (
    AxialPoint,
    CapReport,
    DensityProfile,
    c_d,
    density,
    density_profile,
    positive_cap,
    total_mass,
    uniform_potential,
    weighted_potential_residual,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "GoncharError",
    "DomainError",
    "InexactDivisionError",
    "NumericFailure",
    "UnresolvedClassification",
    "InternalInvariantError",
    # polycore
    "RatQ",
    "IntPoly",
    "GoncharInstance",
    "gonchar_poly",
    "gonchar_poly_q",
    "eval_exact",
    "derivative",
    "exact_gcd",
    "divide_exact",
    "reciprocal",
    "shift_at_one",
    "sign_changes",
    # rootkit_real
    "Interval",
    "RootApprox",
    "eval_sign",
    "squarefree_part",
    "cauchy_bound",
    "sturm_count",
    "isolate_real_roots",
    "refine_root",
    "critical_distance",
    "rho",
    "asymptotic_estimate",
    "residual_scan",
    "xi_monotone_check",
    # rootkit_complex
    "ComplexMP",
    "ZeroDisk",
    "ZeroSet",
    "all_zeros",
    "gonchar_zero_set",
    "certify_all_simple",
    "inversion_closure_check",
    # factorlab
    "FactorPattern",
    "IrredVerdict",
    "known_divisibility",
    "reduced_polynomial",
    "exceptional_factorizations",
    "factor_degrees_mod_p",
    "factor_mod_p",
    "irreducibility_certificate",
    # zerogeom
    "Region",
    "Census",
    "ThetaSolution",
    "ThetaSolutionSet",
    "theta_solutions",
    "classify",
    "census",
    "gamma_distance",
    "max_gamma_distance",
    "conjecture_probes",
    "q_aux_poly",
    "q_structure_check",
    # equilibrium
    "AxialPoint",
    "DensityProfile",
    "CapReport",
    "uniform_potential",
    "density",
    "density_profile",
    "total_mass",
    "positive_cap",
    "weighted_potential_residual",
    "c_d",
]
