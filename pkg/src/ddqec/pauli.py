"""Binary-symplectic n-qubit Pauli operators.

An operator is stored as ``i**phase_exp * X^x Z^z`` where ``X^x Z^z`` is the
tensor product over qubits of ``X^{x_j} Z^{z_j}``, qubit 0 leftmost (qubit 1 in
the 1-based indexing used by every text format).  With this convention
``X Z = -iY``, so the Hermitian ``Y`` itself carries ``phase_exp = 1``.

Symplectic row vectors are laid out as ``(x_0 .. x_{n-1} | z_0 .. z_{n-1})``.
GF(2) linear algebra (rank, centralizer, intersections) ignores phases.
"""
import os
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import gf2

DENSE_LIMIT_ENV = "DDQEC_DENSE_LIMIT"
DEFAULT_DENSE_LIMIT = 12

_PREFIXES = {"": 0, "+": 0, "+1": 0, "+i": 1, "i": 1, "-": 2, "-1": 2, "-i": 3}
_SIGN_TEXT = {0: "", 1: "+i", 2: "-", 3: "-i"}
_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_BITS = {v: k for k, v in _LETTER.items()}


class DenseLimitError(RuntimeError):
    """A dense matrix would exceed the configured qubit limit."""


def dense_limit():
    return int(os.environ.get(DENSE_LIMIT_ENV, DEFAULT_DENSE_LIMIT))


def check_dense(n_qubits):
    limit = dense_limit()
    if n_qubits > limit:
        raise DenseLimitError(
            f"{n_qubits} qubits exceeds the dense limit of {limit} "
            f"(set {DENSE_LIMIT_ENV} to override)")


@dataclass(frozen=True)
class PauliOperator:
    x_bits: tuple
    z_bits: tuple
    phase_exp: int = 0

    def __post_init__(self):
        x = tuple(int(b) & 1 for b in self.x_bits)
        z = tuple(int(b) & 1 for b in self.z_bits)
        if len(x) != len(z):
            raise ValueError("x_bits and z_bits must have equal length")
        if not x:
            raise ValueError("a Pauli operator needs at least one qubit")
        object.__setattr__(self, "x_bits", x)
        object.__setattr__(self, "z_bits", z)
        object.__setattr__(self, "phase_exp", int(self.phase_exp) % 4)

    @property
    def n_qubits(self):
        return len(self.x_bits)

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n):
        return cls((0,) * n, (0,) * n)

    @classmethod
    def single(cls, n, qubit, letter):
        """`letter` on 0-based `qubit`, identity elsewhere (Hermitian)."""
        x = [0] * n
        z = [0] * n
        x[qubit], z[qubit] = _BITS[letter]
        return cls(x, z, x[qubit] & z[qubit])

    @classmethod
    def from_vector(cls, vec, phase_exp=None):
        """Build from a symplectic row; defaults to the positive Hermitian representative."""
        vec = np.asarray(vec, dtype=np.uint8).ravel()
        n = vec.size // 2
        x, z = tuple(vec[:n]), tuple(vec[n:])
        if phase_exp is None:
            phase_exp = sum(a & b for a, b in zip(x, z))
        return cls(x, z, phase_exp)

    @classmethod
    def from_string(cls, text):
        """Parse e.g. ``"XZIIY"``, ``"-ZZ"`` or ``"+iX"``.  ``−`` (U+2212) is accepted."""
        s = text.strip().replace("−", "-")
        i = 0
        while i < len(s) and s[i] not in "IXYZ":
            i += 1
        prefix, body = s[:i], s[i:]
        if prefix not in _PREFIXES:
            raise ValueError(f"bad phase prefix {prefix!r} in {text!r}")
        if not body or any(c not in "IXYZ" for c in body):
            raise ValueError(f"bad Pauli string {text!r}")
        x = [_BITS[c][0] for c in body]
        z = [_BITS[c][1] for c in body]
        return cls(x, z, _PREFIXES[prefix] + body.count("Y"))

    # -- views --------------------------------------------------------------

    @property
    def vector(self):
        return np.array(self.x_bits + self.z_bits, dtype=np.uint8)

    @property
    def y_count(self):
        return sum(a & b for a, b in zip(self.x_bits, self.z_bits))

    @property
    def support(self):
        return tuple(j for j, (a, b) in enumerate(zip(self.x_bits, self.z_bits)) if a or b)

    @property
    def weight(self):
        return len(self.support)

    def is_identity(self):
        """True when the operator is a multiple of the identity."""
        return not any(self.x_bits) and not any(self.z_bits)

    def is_hermitian(self):
        return (self.phase_exp - self.y_count) % 2 == 0

    def hermitian(self):
        """The representative with sign +1 in front of the letter string."""
        return PauliOperator(self.x_bits, self.z_bits, self.y_count)

    def letters(self):
        return "".join(_LETTER[a, b] for a, b in zip(self.x_bits, self.z_bits))

    def __str__(self):
        return _SIGN_TEXT[(self.phase_exp - self.y_count) % 4] + self.letters()

    def __repr__(self):
        return f"PauliOperator({str(self)!r})"

    def __mul__(self, other):
        return multiply(self, other)

    def equal_mod_phase(self, other):
        return self.x_bits == other.x_bits and self.z_bits == other.z_bits


def _check_same_size(p, q):
    if p.n_qubits != q.n_qubits:
        raise ValueError(f"qubit count mismatch: {p.n_qubits} vs {q.n_qubits}")


def multiply(p, q):
    """Exact product ``p @ q``: moving Z^{z_p} past X^{x_q} costs (-1)^{z_p . x_q}."""
    _check_same_size(p, q)
    swap = sum(a & b for a, b in zip(p.z_bits, q.x_bits))
    x = tuple(a ^ b for a, b in zip(p.x_bits, q.x_bits))
    z = tuple(a ^ b for a, b in zip(p.z_bits, q.z_bits))
    return PauliOperator(x, z, p.phase_exp + q.phase_exp + 2 * swap)


def product_of(paulis, n):
    out = PauliOperator.identity(n)
    for p in paulis:
        out = multiply(out, p)
    return out


def symplectic_product(p, q):
    _check_same_size(p, q)
    s = sum(a & b for a, b in zip(p.x_bits, q.z_bits))
    s += sum(a & b for a, b in zip(p.z_bits, q.x_bits))
    return s % 2


def commutes(p, q):
    return symplectic_product(p, q) == 0


def swap_halves(mat):
    """Map (x|z) rows to (z|x); ``A @ swap_halves(B).T`` gives symplectic products."""
    mat = gf2.as_gf2(mat)
    n = mat.shape[1] // 2
    return np.hstack([mat[:, n:], mat[:, :n]])


def symplectic_gram(a, b):
    """Matrix of pairwise symplectic products between rows of `a` and rows of `b`."""
    a = gf2.as_gf2(a)
    b = gf2.as_gf2(b)
    return (a.astype(np.int64) @ swap_halves(b).T.astype(np.int64)) % 2


def to_matrix(p):
    """Dense ``2^n x 2^n`` matrix of `p` including its phase."""
    n = p.n_qubits
    check_dense(n)
    dim = 1 << n
    weights = 1 << np.arange(n - 1, -1, -1)
    xmask = int(np.dot(p.x_bits, weights))
    zmask = int(np.dot(p.z_bits, weights))
    cols = np.arange(dim)
    parity = np.zeros(dim, dtype=np.int64)
    bits = cols & zmask
    while bits.any():
        parity ^= bits & 1
        bits >>= 1
    mat = np.zeros((dim, dim), dtype=complex)
    mat[cols ^ xmask, cols] = (1j ** p.phase_exp) * (1 - 2 * parity)
    return mat


def all_paulis(n, include_identity=False):
    """Every n-qubit Pauli modulo phase, as positive Hermitian representatives."""
    out = []
    for vec in product((0, 1), repeat=2 * n):
        if not include_identity and not any(vec):
            continue
        out.append(PauliOperator.from_vector(vec))
    return out


class GeneratorSet:
    """Ordered, GF(2)-independent list of Hermitian Pauli operators."""

    def __init__(self, n_qubits, generators=()):
        gens = tuple(PauliOperator.from_string(g) if isinstance(g, str) else g
                     for g in generators)
        if n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        for g in gens:
            if g.n_qubits != n_qubits:
                raise ValueError(f"generator {g} is not on {n_qubits} qubits")
            if not g.is_hermitian():
                raise ValueError(f"generator {g} is not Hermitian")
        self.n_qubits = n_qubits
        self.generators = gens
        if gens and gf2.rank(self.matrix()) != len(gens):
            raise ValueError("generators are not independent over GF(2)")

    def matrix(self):
        if not self.generators:
            return np.zeros((0, 2 * self.n_qubits), dtype=np.uint8)
        return np.array([g.vector for g in self.generators], dtype=np.uint8)

    @property
    def rank(self):
        return len(self.generators)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def __eq__(self, other):
        return (isinstance(other, GeneratorSet) and other.n_qubits == self.n_qubits
                and other.generators == self.generators)

    def __repr__(self):
        return f"GeneratorSet({self.n_qubits}, {self.strings()})"

    def strings(self):
        return [str(g) for g in self.generators]

    def contains(self, p):
        """Whether `p` lies in the generated group modulo phase."""
        return gf2.in_rowspace(self.matrix(), p.vector)

    def same_span(self, other):
        a, b = self.matrix(), other.matrix()
        return (self.n_qubits == other.n_qubits and len(self) == len(other)
                and gf2.rank(np.vstack([a, b])) == len(self))

    def __add__(self, other):
        return GeneratorSet(self.n_qubits, self.generators + tuple(other))


def generator_set_from_matrix(mat, n):
    return GeneratorSet(n, [PauliOperator.from_vector(row) for row in gf2.as_gf2(mat, 2 * n)])


def extract_generators(elements, n_qubits=None):
    """Greedy GF(2)-independent subset of `elements` spanning the same group mod phase."""
    elements = [PauliOperator.from_string(e) if isinstance(e, str) else e for e in elements]
    if not elements:
        if n_qubits is None:
            raise ValueError("n_qubits is required for an empty element list")
        return GeneratorSet(n_qubits)
    n = elements[0].n_qubits
    for e in elements:
        _check_same_size(elements[0], e)
    keep = gf2.independent_rows(np.array([e.vector for e in elements]))
    return GeneratorSet(n, [elements[i] if elements[i].is_hermitian() else elements[i].hermitian()
                            for i in keep])


def centralizer(omega):
    """Generators of all Paulis commuting with every element of `omega` (size 2n - |omega|)."""
    n = omega.n_qubits
    if len(omega) == 0:
        return generator_set_from_matrix(np.eye(2 * n, dtype=np.uint8), n)
    basis = gf2.nullspace(swap_halves(omega.matrix()), 2 * n)
    return generator_set_from_matrix(basis, n)


def subgroup_intersection_trivial(a, b):
    """True iff the groups generated by `a` and `b` share only the identity (mod phase)."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("qubit count mismatch")
    if len(a) == 0 or len(b) == 0:
        return True
    return gf2.rank(np.vstack([a.matrix(), b.matrix()])) == gf2.rank(a.matrix()) + gf2.rank(b.matrix())


def embed(p, qubits, n):
    """Place `p` onto the 0-based `qubits` of an n-qubit register."""
    if len(qubits) != p.n_qubits:
        raise ValueError("embedding length must equal the operator size")
    x = [0] * n
    z = [0] * n
    for src, dst in enumerate(qubits):
        x[dst] = p.x_bits[src]
        z[dst] = p.z_bits[src]
    return PauliOperator(x, z, p.phase_exp)


def symplectic_pairs(elements):
    """Symplectic Gram-Schmidt on a list of Paulis.

    Returns ``(pairs, center)``: ``pairs`` is a list of (a, b) with a, b
    anticommuting and commuting with every other returned operator, and
    ``center`` spans the part of the group commuting with everything.
    """
    todo = [e.hermitian() for e in elements]
    pairs = []
    center = []
    while todo:
        a = todo.pop(0)
        if a.is_identity():
            continue
        j = next((i for i, t in enumerate(todo) if not commutes(a, t)), None)
        if j is None:
            center.append(a)
            continue
        b = todo.pop(j)
        fixed = []
        for c in todo:
            if not commutes(c, b):
                c = multiply(c, a)
            if not commutes(c, a):
                c = multiply(c, b)
            fixed.append(c.hermitian())
        # earlier center elements already commute with a and b
        todo = fixed
        pairs.append((a, b))
    return pairs, center
