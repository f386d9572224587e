"""
Pauli operators and the code catalog
====================================

Build Pauli strings, multiply them with phases, and check catalog codes.
"""

from ddqec import PauliOperator, catalog, default_catalog, validate
from ddqec.pauli import centralizer, commutes

# Paulis are parsed from strings; products keep track of the phase
x = PauliOperator.from_string("X")
z = PauliOperator.from_string("Z")
print("X * Z =", x * z)
print("XX and ZZ commute:", commutes(PauliOperator.from_string("XX"), PauliOperator.from_string("ZZ")))

# every catalog code validates cleanly
for code in default_catalog():
    print(f"{code.name:>15} {code.label():>12}  problems: {validate(code) or 'none'}")

# Bacon-Shor(3) is a subsystem code: four stabilizers plus four gauge pairs
bs = catalog("bacon_shor(3)")
print("stabilizers:", bs.stabilizers.strings())
print("gauge generators:", [str(g) for g in bs.gauge_generators])

# the centralizer of the stabilizer group contains logicals and gauges
print("centralizer rank of S:", len(centralizer(bs.stabilizers)), "=", bs.n + bs.k + bs.r)
