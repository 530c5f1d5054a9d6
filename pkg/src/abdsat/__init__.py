"""Propositional abduction through strong backdoors and SAT.

An abduction instance is a CNF theory over variables V together with
hypotheses H and manifestations M.  A solution is a set S of hypotheses
such that the theory plus S is consistent and entails every
manifestation.  Deciding solvability is hard in general, but once a
small strong Horn or Krom backdoor of the theory is known the problem
reduces to SAT with only a modest (fixed-parameter) blowup.  This
package detects such backdoors, builds the reductions, solves and
enumerates through them, and cross-checks everything against direct
semantic definitions.
"""

from .backdoor import (
    BackdoorSet,
    detect_horn_backdoor,
    detect_krom_backdoor,
    smallest_backdoor,
    verify_strong_backdoor,
)
from .encoding import Encoding, decode_solution, roles_json
from .errors import (
    AbdsatError,
    BackdoorError,
    CapExceeded,
    InstanceError,
    SolverError,
)
from .formula import (
    Clause,
    CnfFormula,
    Literal,
    Variable,
    is_horn,
    is_krom,
    neg,
    pos,
    reduct,
    resolution_closure,
)
from .horn import check_solution_horn, encode_horn_solv, least_model
from .instance import (
    AbductionInstance,
    GenLimits,
    build_instance,
    load_instance,
    parse_instance,
    random_instance,
)
from .krom import check_solution_krom, encode_krom_solv, trimres
from .oracle import oracle_is_solution, oracle_solve, oracle_subset_minimal
from .pipeline import (
    check_solution,
    encode_instance,
    enumerate_minimal_solutions,
    enumerate_solutions,
    pick_backdoor,
    relevance,
    solve_instance,
)
from .solver import SolverConfig, parse_dimacs, solve, to_dimacs
from .subsetmin import encode_subsetmin

__version__ = "0.1.0"

__all__ = [
    "AbductionInstance",
    "AbdsatError",
    "BackdoorError",
    "BackdoorSet",
    "CapExceeded",
    "Clause",
    "CnfFormula",
    "Encoding",
    "GenLimits",
    "InstanceError",
    "Literal",
    "SolverConfig",
    "SolverError",
    "Variable",
    "build_instance",
    "check_solution",
    "check_solution_horn",
    "check_solution_krom",
    "decode_solution",
    "detect_horn_backdoor",
    "detect_krom_backdoor",
    "encode_horn_solv",
    "encode_instance",
    "encode_krom_solv",
    "encode_subsetmin",
    "enumerate_minimal_solutions",
    "enumerate_solutions",
    "is_horn",
    "is_krom",
    "least_model",
    "load_instance",
    "neg",
    "oracle_is_solution",
    "oracle_solve",
    "oracle_subset_minimal",
    "parse_dimacs",
    "parse_instance",
    "pick_backdoor",
    "pos",
    "random_instance",
    "reduct",
    "relevance",
    "resolution_closure",
    "roles_json",
    "smallest_backdoor",
    "solve",
    "solve_instance",
    "to_dimacs",
    "trimres",
    "verify_strong_backdoor",
]
