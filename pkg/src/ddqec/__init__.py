"""Dynamical-decoupling generator sets for stabilizer and subsystem codes."""
from .codes import (
    CodeSpec, ConcatenatedCode, bacon_shor, cat_state_stabilizers, catalog, concatenate,
    count_parameters, default_catalog, five_qubit, four_two_two, repetition, steane, validate,
)
from .ddgs import (
    CostModel, DdgsResult, DomainPlan, brute_force_minimal_ddgs, code_error_basis,
    concatenated_sldd, cost, custom_ddgs, decouples, error_group_basis, full_pauli_ddgs, plan_domains,
    sldd, union_compose,
)
from .pauli import (
    GeneratorSet, PauliOperator, centralizer, commutes, extract_generators, multiply,
    subgroup_intersection_trivial, to_matrix,
)
from .sequences import (
    PulseSequence, build_sequence, cdd_sequence, first_order_filter_check, nudd_sequence,
    toggling_pulse_products,
)
from .verifier import (
    NoiseModel, decoupling_order_fit, effective_hamiltonian, evolve, moos_decompose,
    random_noise, syndrome_preservation,
)

__version__ = "0.1.0"
