"""Exact solver for r-pseudoforest deletion on multigraphs."""

from .errors import (
    GuardError,
    InconsistencyError,
    InvalidParameterError,
    InvalidVertexError,
    ParseError,
    PFDError,
    PreconditionError,
)
from .generator import GenSpec, planted_instance, random_multigraph
from .multigraph import MultiGraph
from .oracle import oracle_all_min_solutions, oracle_min_deletion
from .recognition import ComponentExcess, component_excess, is_r_pseudoforest
from .reducer import Instance, ReductionTrace, lift_solution, reduce
from .solver import (
    Decision,
    Solution,
    SolverStats,
    fallback_exact,
    solve_decision,
    solve_minimize,
    theorem_bound,
    top_degree_set,
)

__version__ = "0.1.0"
