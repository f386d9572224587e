"""
Planning decoupling domains
===========================

Pick the concatenation level that keeps the per-domain pulse count within a
polynomial budget in the total number of logical qubits.
"""

from ddqec import CostModel, plan_domains

model = CostModel("NUDD", 1)  # f(N) = 2
for k_total in (2 ** 10, 2 ** 20, 2 ** 40):
    plan = plan_domains(k_total, 7, 1, 0, model, p=3)
    print(f"k_total = 2^{k_total.bit_length() - 1}: budget W = {plan.generator_budget}, "
          f"levels R = {plan.levels}, |omega| per domain = {plan.omega_size_per_domain}, "
          f"physical qubits per domain = {plan.domain_size_physical}")

# a budget too small for even one level returns the R = 0 sentinel
tight = plan_domains(2, 7, 1, 0, CostModel("CDD", 3), p=1)
print("tight budget:", tight.levels, tight.within_budget, tight.notes)
