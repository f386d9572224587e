"""
CDD and NUDD pulse schedules
============================

Synthesize schedules from a generator set and inspect their structure.
"""

import json

from ddqec import build_sequence, custom_ddgs, sldd, repetition
from ddqec.sequences import first_order_filter_check, toggling_pulse_products

xz = custom_ddgs(["X", "Z"])
cdd = build_sequence("CDD", xz, 1)
print("CDD1 over {X, Z}:", [(str(iv.fraction), str(iv.pulse_after)) for iv in cdd.intervals])
print("toggling frames:", [str(g) for g in toggling_pulse_products(cdd)])

# UDD interval fractions for N = 2 are 1/4, 1/2, 1/4
nudd = build_sequence("NUDD", custom_ddgs(["X"]), 2)
print("NUDD2 over {X}:", [float(f) for f in nudd.fractions])

# interval counts grow as f(N) ** |omega|
for N in (1, 2, 3):
    print(f"N={N}: CDD {len(build_sequence('CDD', xz, N))} intervals, NUDD {len(build_sequence('NUDD', xz, N))}")

# every synthesized schedule cancels anticommuting errors at first order
omega = sldd(repetition(3))
seq = build_sequence("CDD", omega, 1)
print("repetition(3) SLDD, CDD1:", len(seq), "intervals; first-order check:", first_order_filter_check(seq, omega))
print(json.dumps(nudd.to_dict(), indent=1)[:300], "...")
