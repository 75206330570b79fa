from .statevector import (
    MAX_QUBITS,
    TOLERANCE,
    HadamardLayer,
    Register,
    RegisterLayout,
    StateVector,
    XorOracle,
    apply_function_oracle,
    apply_hadamard,
    apply_hadamard_all,
    apply_inverse,
    apply_op,
    apply_x,
    basis_state,
    dump_state,
    load_state,
    measure_register,
    prepare_subspace_state,
    project_register,
    register_distribution,
    uniform_superposition,
    zero_state,
)
from .density import (
    DensityMatrix,
    density_from_ensemble,
    dephase,
    reduced_density_matrix,
    trace_distance,
)

__all__ = [
    "MAX_QUBITS",
    "TOLERANCE",
    "HadamardLayer",
    "Register",
    "RegisterLayout",
    "StateVector",
    "XorOracle",
    "apply_function_oracle",
    "apply_hadamard",
    "apply_hadamard_all",
    "apply_inverse",
    "apply_op",
    "apply_x",
    "basis_state",
    "dump_state",
    "load_state",
    "measure_register",
    "prepare_subspace_state",
    "project_register",
    "register_distribution",
    "uniform_superposition",
    "zero_state",
    "DensityMatrix",
    "density_from_ensemble",
    "dephase",
    "reduced_density_matrix",
    "trace_distance",
]
