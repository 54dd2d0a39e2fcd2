"""Numerical toolkit for lambda-spirallike and lambda-Robertson functions on the unit disk."""

from .analytic import FunctionSpec, Jet2, Kind, alpha_primitive, eval_jet, principal_pow
from .classes import (equivalence_check, lambda_arg, monotone_lambda_arg_check,
                      robertson_report, spirallike_report)
from .errors import (DegenerateError, DivergenceError, DomainError, GridTooCoarseError,
                     NoAdmissibleMuError, PreconditionError, QuadratureError, RobertsonError)
from .grid import GridSpec, MembershipReport, Verdict
from .growth import (asymptotic_check, boundedness_integral, collision_search, cubic_root_x0,
                     growth_bounds, royster_mu)
from .loewner import (CaratheodorySpec, chain_eval, chain_positivity_report, eq43_lhs,
                      herglotz_disk_check, lemma_b_check)
from .qcext import (H_s, HottaParams, admissible_k, becker_extend, dilatation_field,
                    hotta_check, theorem3_condition_report)

__version__ = "0.1.0"

__all__ = [
    "FunctionSpec",
    "Jet2",
    "Kind",
    "alpha_primitive",
    "eval_jet",
    "principal_pow",
    "equivalence_check",
    "lambda_arg",
    "monotone_lambda_arg_check",
    "robertson_report",
    "spirallike_report",
    "DegenerateError",
    "DivergenceError",
    "DomainError",
    "GridTooCoarseError",
    "NoAdmissibleMuError",
    "PreconditionError",
    "QuadratureError",
    "RobertsonError",
    "GridSpec",
    "MembershipReport",
    "Verdict",
    "asymptotic_check",
    "boundedness_integral",
    "collision_search",
    "cubic_root_x0",
    "growth_bounds",
    "royster_mu",
    "CaratheodorySpec",
    "chain_eval",
    "chain_positivity_report",
    "eq43_lhs",
    "herglotz_disk_check",
    "lemma_b_check",
    "H_s",
    "HottaParams",
    "admissible_k",
    "becker_extend",
    "dilatation_field",
    "hotta_check",
    "theorem3_condition_report",
]
