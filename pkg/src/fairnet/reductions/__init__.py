"""Reductions from classic hard problems to fair efficient allocation.

Each reduction returns a :class:`ReductionArtifact` and comes with a forward
witness map (source certificate to allocation) and a backward one.
"""

from __future__ import annotations

from ..errors import ReductionError
from ..model import Allocation
from . import clique_goods, clique_vc, coloring, cutting, lsat
from .base import ReductionArtifact, Role, meets_target, trivial_no
from .clique_goods import reduce_clique_goods
from .clique_vc import reduce_clique_vertexcover
from .coloring import reduce_3col_lpa
from .cutting import reduce_cutting_to_two_types
from .lsat import is_path_forest, is_single_path, reduce_lsat_paths

MODULES = {
    cutting.NAME: cutting,
    clique_goods.NAME: clique_goods,
    clique_vc.NAME: clique_vc,
    lsat.NAME: lsat,
    coloring.NAME: coloring,
}
REDUCTIONS = tuple(MODULES)
REDUCE = {
    cutting.NAME: reduce_cutting_to_two_types,
    clique_goods.NAME: reduce_clique_goods,
    clique_vc.NAME: reduce_clique_vertexcover,
    lsat.NAME: reduce_lsat_paths,
    coloring.NAME: reduce_3col_lpa,
}


def _module(artifact: ReductionArtifact):
    try:
        return MODULES[artifact.reduction]
    except KeyError:
        raise ReductionError(f"unknown reduction {artifact.reduction!r}") from None


def witness_to_allocation(artifact: ReductionArtifact, witness) -> Allocation:
    """Map a source certificate to the allocation built in the forward proof."""
    return _module(artifact).forward(artifact, witness)


def allocation_to_witness(artifact: ReductionArtifact, allocation: Allocation):
    """Extract a verified source certificate from a fair efficient allocation."""
    return _module(artifact).backward(artifact, allocation)


__all__ = [
    "REDUCE",
    "REDUCTIONS",
    "ReductionArtifact",
    "Role",
    "allocation_to_witness",
    "is_path_forest",
    "is_single_path",
    "meets_target",
    "reduce_3col_lpa",
    "reduce_clique_goods",
    "reduce_clique_vertexcover",
    "reduce_cutting_to_two_types",
    "reduce_lsat_paths",
    "trivial_no",
    "witness_to_allocation",
]
