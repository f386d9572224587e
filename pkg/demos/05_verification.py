"""
Measuring the decoupling order
==============================

Simulate a qubit coupled to a one-qubit bath, extract the effective
Hamiltonian and fit how its undecoupled part scales with the total time T.
"""

from ddqec import build_sequence, custom_ddgs, repetition, sldd
from ddqec.verifier import decoupling_order_fit, log_grid, random_noise

noise = random_noise(n_sys=1, n_bath=1, locality=1, J=1.0, seed=0)
xz = custom_ddgs(["X", "Z"])
grid = log_grid(1e-3, 1e-1, 6)

# slope N+1 is expected for an order-N sequence, slope 1 without pulses
for family, N in (("CDD", 1), ("NUDD", 2)):
    report = decoupling_order_fit(build_sequence(family, xz, N), noise, xz, grid)
    print(f"{family}{N}: slope {report.fitted_slope:.3f}, baseline {report.baseline_slope:.3f}, pass {report.passed}")

# higher orders need a coarser grid before the residual hits double-precision noise
coarse = log_grid(3e-2, 5e-1, 6)
report = decoupling_order_fit(build_sequence("CDD", xz, 3), noise, xz, coarse)
print(f"CDD3 on [3e-2, 5e-1]: slope {report.fitted_slope:.3f}")

# repetition code: the protected part of H_eff does not mix syndrome blocks
code = repetition(3)
omega = sldd(code)
noise3 = random_noise(n_sys=3, n_bath=1, locality=2, seed=0)
report = decoupling_order_fit(build_sequence("CDD", omega, 1), noise3, omega, grid, code=code)
print(f"repetition(3): leakage slope {report.leakage_slope:.3f}, max H0 leakage {max(report.h0_leakage):.1e}")
