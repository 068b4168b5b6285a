"""Max-Cut by greedy signed edge contraction, with classic baselines,
an exhaustive oracle and TSPLIB benchmark tooling."""

from .baselines import dec_solve, ec_solve, sg3_solve, sg_solve
from .formats import load_instance, parse_mcut, parse_tsplib, to_weight_matrix
from .graph import (
    CutAssignment,
    GraphError,
    WeightMatrix,
    build_matrix,
    cut_weight,
    from_array,
    side_weights,
    total_weight,
)
from .oracle import OracleSizeError, brute_force
from .stabilizer import (
    StabilizerForest,
    StabilizerPolicy,
    contract_step,
    propagate_signs,
    stabilizer_solve,
)

__all__ = [
    "CutAssignment",
    "GraphError",
    "OracleSizeError",
    "StabilizerForest",
    "StabilizerPolicy",
    "WeightMatrix",
    "brute_force",
    "build_matrix",
    "contract_step",
    "cut_weight",
    "dec_solve",
    "ec_solve",
    "from_array",
    "load_instance",
    "parse_mcut",
    "parse_tsplib",
    "propagate_signs",
    "side_weights",
    "sg3_solve",
    "sg_solve",
    "stabilizer_solve",
    "to_weight_matrix",
    "total_weight",
]
