"""Fair and efficient allocation of indivisible goods among agents on a graph.

Agents have additive 0/1 valuations and sit on an undirected graph.  The
package checks graph envy-freeness and three proportionality notions,
searches for fair Pareto-efficient allocations, solves the quasi-global
proportionality case exactly as a flow problem, and builds hardness
reductions from clique, cutting, linear SAT and 3-colouring with
brute-force oracles for those source problems.
"""

from .criteria import (
    CRITERIA,
    CriterionReport,
    Violation,
    check,
    check_complete,
    check_gef,
    check_gp,
    check_lp,
    check_non_wasteful,
    check_pareto_efficient,
    check_qp,
)
from .errors import FairnetError
from .model import (
    Allocation,
    Instance,
    InstanceDiagnostics,
    diagnose,
    validate_allocation,
    validate_instance,
)
from .qp import FlowNetwork, QpSolveResult, build_qp_network, solve_qp_pareto
from .solvers import (
    SolveResult,
    enumerate_nonwasteful_complete,
    solve_eef_gef,
    solve_eef_lp,
    solve_identical_connected,
)

__version__ = "0.1.0"

__all__ = [
    "CRITERIA",
    "Allocation",
    "CriterionReport",
    "FairnetError",
    "FlowNetwork",
    "Instance",
    "InstanceDiagnostics",
    "QpSolveResult",
    "SolveResult",
    "Violation",
    "build_qp_network",
    "check",
    "check_complete",
    "check_gef",
    "check_gp",
    "check_lp",
    "check_non_wasteful",
    "check_pareto_efficient",
    "check_qp",
    "diagnose",
    "enumerate_nonwasteful_complete",
    "solve_eef_gef",
    "solve_eef_lp",
    "solve_identical_connected",
    "solve_qp_pareto",
    "validate_allocation",
    "validate_instance",
]
