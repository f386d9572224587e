"""
SLDD versus full-Pauli decoupling cost
======================================

Compare generator-set sizes and the resulting pulse-interval counts.
"""

from fractions import Fraction

from ddqec import CostModel, catalog, cost, full_pauli_ddgs, sldd
from ddqec.codes import concatenate, count_parameters
from ddqec.ddgs import code_error_basis, concatenated_sldd, decouples

for name in ("steane", "five_qubit", "four_two_two", "bacon_shor(3)"):
    code = catalog(name)
    omega = sldd(code)
    full = full_pauli_ddgs(code.n)
    # the SLDD set decouples every error outside stabilizers and gauges
    assert decouples(omega, code_error_basis(code))
    print(f"{name:>14}: |SLDD| = {omega.size:2d}   |full| = {full.size:2d}")

# cost is f(N) ** |omega|; for Bacon-Shor(m) the SLDD cost is the m-th root of the full cost
model = CostModel("NUDD", 2)
for m in (2, 3, 4):
    a, b = cost(2 * m, model), cost(2 * m * m, model)
    print(f"bacon_shor({m}): c_SLDD = {a}, c_full = {b}, c_SLDD**{m} == c_full: {a ** m == b}")

# concatenated Steane code: structural construction agrees with the counting formula
for R in (1, 2):
    cc = concatenate(catalog("steane"), R)
    size = concatenated_sldd(cc).size
    counts = count_parameters(7, 1, 0, R)
    ratio = Fraction(size, 2 * counts.n_R)
    print(f"steane R={R}: {cc.n_qubits} qubits, |SLDD| = {size} (formula {counts.omega_size}), exponent ratio {ratio}")
