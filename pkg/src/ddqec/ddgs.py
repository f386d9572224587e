"""DD generator sets: construction, the decoupling test, optimality search, cost.

A generator set ``omega`` decouples an error group ``B`` when the only Pauli
(mod phase) lying both in ``B`` and in the centralizer of ``omega`` is the
identity.  Dimension counting gives ``|omega| >= rank(B)`` for any such set,
and the SLDD choice (stabilizers plus logical generators) meets that bound
for the error group ``P_n / <S, G>``.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .codes import count_parameters, require_valid
from .pauli import (
    GeneratorSet, PauliOperator, centralizer, embed, generator_set_from_matrix,
    subgroup_intersection_trivial,
)

KINDS = ("full_pauli", "sldd", "concatenated_sldd", "union", "custom")
FAMILIES = ("CDD", "NUDD")


@dataclass(frozen=True)
class DdgsResult:
    omega: GeneratorSet
    kind: str = "custom"
    source: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown DDGS kind {self.kind!r}")

    @property
    def size(self):
        return len(self.omega)

    @property
    def n_qubits(self):
        return self.omega.n_qubits

    def to_dict(self):
        return {"kind": self.kind, "n_qubits": self.n_qubits,
                "generators": self.omega.strings(), "size": self.size,
                "source": list(self.source)}

    @classmethod
    def from_dict(cls, d):
        return cls(GeneratorSet(d["n_qubits"], d["generators"]), d.get("kind", "custom"),
                   tuple(d.get("source", ())))


def custom_ddgs(generators, n_qubits=None):
    gens = [PauliOperator.from_string(g) if isinstance(g, str) else g for g in generators]
    n = n_qubits or gens[0].n_qubits
    return DdgsResult(GeneratorSet(n, gens), "custom")


def full_pauli_ddgs(n):
    if n < 1:
        raise ValueError("n must be >= 1")
    gens = [PauliOperator.single(n, i, c) for i in range(n) for c in "XZ"]
    return DdgsResult(GeneratorSet(n, gens), "full_pauli", (f"P{n}",))


def sldd(code):
    """Stabilizer generators followed by (X_L, Z_L) for each logical qubit."""
    require_valid(code)
    gens = list(code.stabilizers) + code.logical_generators
    return DdgsResult(GeneratorSet(code.n, gens), "sldd", (code.name,))


def concatenated_sldd(cc):
    gens = [s for level in cc.per_level_stabilizers for s in level] + list(cc.top_logicals)
    return DdgsResult(GeneratorSet(cc.n_qubits, gens), "concatenated_sldd",
                      (f"{cc.base.name}^R={cc.levels}",))


def union_compose(parts, embedding=None, n_qubits=None):
    """Embed DDGS on disjoint qubit sets into one register and concatenate.

    `embedding` gives, per part, the 0-based target qubit of each of its
    qubits; by default parts are laid out consecutively.
    """
    parts = list(parts)
    if embedding is None:
        embedding, offset = [], 0
        for p in parts:
            embedding.append(list(range(offset, offset + p.n_qubits)))
            offset += p.n_qubits
    embedding = [list(e) for e in embedding]
    if len(embedding) != len(parts):
        raise ValueError("one embedding per part is required")
    used = [q for e in embedding for q in e]
    if len(set(used)) != len(used):
        raise ValueError("parts overlap under the embedding")
    if n_qubits is None:
        n_qubits = max(used) + 1 if used else 1
    if used and max(used) >= n_qubits:
        raise ValueError("embedding exceeds the register size")
    gens = []
    for part, e in zip(parts, embedding):
        if len(e) != part.n_qubits:
            raise ValueError("embedding length must equal the part's qubit count")
        gens += [embed(g, e, n_qubits) for g in part.omega]
    source = tuple(s for p in parts for s in (p.source or (p.kind,)))
    return DdgsResult(GeneratorSet(n_qubits, gens), "union", source)


def decouples(omega, error_basis):
    """Whether `omega` decouples the group generated by `error_basis`."""
    omega_set = omega.omega if isinstance(omega, DdgsResult) else omega
    if omega_set.n_qubits != error_basis.n_qubits:
        raise ValueError("qubit count mismatch")
    return subgroup_intersection_trivial(centralizer(omega_set), error_basis)


def error_group_basis(protected):
    """Coset representatives for P_n modulo the group generated by `protected`.

    Unit vectors (single-qubit X or Z) completing ``protected`` to a basis of
    the full 2n-dimensional space, chosen in qubit order.
    """
    n = protected.n_qubits
    return generator_set_from_matrix(gf2.complement_basis(protected.matrix(), 2 * n), n)


def code_error_basis(code):
    """Error group for a code: everything outside <S, G>."""
    return error_group_basis(GeneratorSet(code.n, list(code.stabilizers) + code.gauge_generators))


@dataclass(frozen=True)
class BruteForceResult:
    minimal_size: int
    witness: GeneratorSet
    basis_decouples_itself: bool
    subspaces_checked: int


def brute_force_minimal_ddgs(error_basis, n=None, size_cap=None, max_qubits=3):
    """Smallest generator set decoupling <error_basis>, by exhaustive search.

    Decoupling depends only on the span of a candidate set, so candidates are
    enumerated as subspaces of GF(2)^{2n} in increasing dimension.  The first
    hit in enumeration order is the reported witness.  Returns None if no set
    of size <= size_cap decouples.
    """
    n = error_basis.n_qubits if n is None else n
    if n != error_basis.n_qubits:
        raise ValueError("qubit count mismatch")
    if n > max_qubits:
        raise ValueError(f"brute force is limited to n <= {max_qubits} qubits")
    size_cap = 2 * n if size_cap is None else min(size_cap, 2 * n)
    bmat = error_basis.matrix()
    b_rank = len(error_basis)
    self_ok = decouples(GeneratorSet(n, error_basis), error_basis)
    checked = 0
    for size in range(0, size_cap + 1):
        for basis in gf2.enumerate_subspaces(size, 2 * n):
            checked += 1
            cent = gf2.nullspace(_swap(basis), 2 * n) if size else np.eye(2 * n, dtype=np.uint8)
            if b_rank == 0 or gf2.rank(np.vstack([cent, bmat])) == cent.shape[0] + b_rank:
                return BruteForceResult(size, generator_set_from_matrix(basis, n), self_ok, checked)
    return None


def _swap(mat):
    n = mat.shape[1] // 2
    return np.hstack([mat[:, n:], mat[:, :n]])


@dataclass(frozen=True)
class CostModel:
    family: str
    order: int

    def __post_init__(self):
        fam = self.family.upper()
        if fam not in FAMILIES:
            raise ValueError(f"unknown DD family {self.family!r}")
        if self.order < 1:
            raise ValueError("order N must be >= 1")
        object.__setattr__(self, "family", fam)

    @property
    def f_of_N(self):
        return 2 ** self.order if self.family == "CDD" else self.order + 1


def cost(omega_size, model):
    """Number of pulse intervals f(N)**|omega|, as an exact integer."""
    if omega_size < 0:
        raise ValueError("omega_size must be >= 0")
    return model.f_of_N ** omega_size


def integer_log(base, value):
    """Largest W with base**W <= value (exact)."""
    if base < 2 or value < 1:
        raise ValueError("need base >= 2 and value >= 1")
    # float estimate only seeds the search; the loops decide exactly
    w = max(0, int((value.bit_length() - 1) / math.log2(base)) - 1)
    while base ** (w + 1) <= value:
        w += 1
    while w > 0 and base ** w > value:
        w -= 1
    return w


@dataclass(frozen=True)
class DomainPlan:
    k_total: int
    code: tuple
    family: str
    order: int
    budget_exponent: int
    generator_budget: int
    levels: int
    domain_size_logical: int
    domain_size_physical: int
    domain_count: int
    last_domain_size: int
    omega_size_per_domain: int
    cost_per_domain: int
    within_budget: bool
    notes: list = field(default_factory=list)

    def to_dict(self):
        d = dict(self.__dict__)
        d["code"] = list(self.code)
        d["cost_per_domain"] = str(self.cost_per_domain)
        d["budget"] = str(self.k_total ** self.budget_exponent)
        return d


def plan_domains(k_total, n, k, r, model, p):
    """Largest concatenation depth whose per-domain SLDD cost stays within k_total**p.

    The generator budget W is the largest integer with f(N)**W <= k_total**p.
    Levels R = 0 is the sentinel for "even one level is over budget".
    """
    if k_total < 1 or p < 1:
        raise ValueError("need k_total >= 1 and p >= 1")
    f = model.f_of_N
    budget = k_total ** p
    W = integer_log(f, budget)
    size_at = lambda R: count_parameters(n, k, r, R).omega_size  # noqa: E731
    notes = []
    if size_at(1) > W:
        omega1 = size_at(1)
        notes.append("one concatenation level already exceeds the budget")
        return DomainPlan(k_total, (n, k, r), model.family, model.order, p, W, 0, 0, 0, 0, 0,
                          omega1, f ** omega1, False, notes)
    R = 1
    while size_at(R + 1) <= W:
        R += 1
    k_D = k ** R
    count = math.ceil(k_total / k_D)
    last = k_total - (count - 1) * k_D
    if last != k_D:
        notes.append(f"last domain holds {last} of {k_D} logical qubits")
    omega = size_at(R)
    c = f ** omega
    return DomainPlan(k_total, (n, k, r), model.family, model.order, p, W, R, k_D, n ** R,
                      count, last, omega, c, c <= budget, notes)
