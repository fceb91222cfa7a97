from .builders import (
    NodeLayout,
    build_1d_circuit,
    build_2d_circuit,
    build_circuit,
    prepare_ensemble_register,
    prepare_node_register,
)
from .kernel import NodeKernel
from .rule import AcceptanceSpec, IsingParams, flip_delta_e, metropolis_flip_prob
from .verification import (
    TruthTableRow,
    VerificationReport,
    VerificationRow,
    truth_table,
    verify_circuit,
)

__all__ = [
    "AcceptanceSpec",
    "IsingParams",
    "NodeKernel",
    "NodeLayout",
    "TruthTableRow",
    "VerificationReport",
    "VerificationRow",
    "build_1d_circuit",
    "build_2d_circuit",
    "build_circuit",
    "flip_delta_e",
    "metropolis_flip_prob",
    "prepare_ensemble_register",
    "prepare_node_register",
    "truth_table",
    "verify_circuit",
]
