"""Stabilizer and subsystem codes: definition, validation, catalog, concatenation.

Catalog generator conventions (qubits 1-based, left to right):

``repetition(n)``  bit-flip code, S = {Z_i Z_{i+1}}, X_L = X^n, Z_L = Z_1.
``five_qubit``     S = cyclic shifts of XZZXI, X_L = XXXXX, Z_L = ZZZZZ.
``steane``         S = {IIIXXXX, IXXIIXX, XIXIXIX} and the same with Z,
                   X_L = X^7, Z_L = Z^7.
``four_two_two``   S = {XXXX, ZZZZ}, (X_L1, Z_L1) = (XXII, ZIZI),
                   (X_L2, Z_L2) = (XIXI, ZZII).
``bacon_shor(m)``  m x m grid, qubit (row i, col j) -> i*m + j.
                   S = X on columns j, j+1 and Z on rows i, i+1.
                   Gauge group generated by X X on horizontal neighbours and
                   Z Z on vertical neighbours, split into r = (m-1)^2
                   anticommuting pairs by symplectic Gram-Schmidt.
                   X_L = X on column 1, Z_L = Z on row 1.
"""
import re
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .pauli import (
    GeneratorSet, PauliOperator, check_dense, commutes, embed, multiply,
    symplectic_pairs, to_matrix,
)

CODE_FORMAT_VERSION = 1


class InvalidCodeError(ValueError):
    def __init__(self, message, report=()):
        self.report = list(report)
        if self.report:
            message = message + "\n" + "\n".join("  - " + r for r in self.report)
        super().__init__(message)


@dataclass(frozen=True)
class CodeSpec:
    n: int
    k: int
    r: int
    d: int
    stabilizers: GeneratorSet
    logicals: tuple = ()
    gauges: tuple = ()
    name: str = "custom"

    @property
    def Q(self):
        return len(self.stabilizers)

    @property
    def logical_generators(self):
        return [p for pair in self.logicals for p in pair]

    @property
    def gauge_generators(self):
        return [p for pair in self.gauges for p in pair]

    def label(self):
        if self.r:
            return f"[[{self.n},{self.k},{self.r},{self.d}]]"
        return f"[[{self.n},{self.k},{self.d}]]"


def _p(s):
    return PauliOperator.from_string(s)


def _make_code(n, k, r, d, stabs, logicals, gauges, name):
    code = CodeSpec(n, k, r, d, GeneratorSet(n, [_p(s) if isinstance(s, str) else s for s in stabs]),
                    tuple((_p(a) if isinstance(a, str) else a, _p(b) if isinstance(b, str) else b)
                          for a, b in logicals),
                    tuple((_p(a) if isinstance(a, str) else a, _p(b) if isinstance(b, str) else b)
                          for a, b in gauges),
                    name)
    return code


def validate(code, projector_limit=9):
    """Check every CodeSpec axiom; return a list of violations (empty when valid)."""
    report = []
    n = code.n
    stabs = list(code.stabilizers)
    logical = code.logical_generators
    gauge = code.gauge_generators
    everything = stabs + logical + gauge

    if code.k < 0 or code.r < 0 or code.n < 1:
        report.append(f"bad parameters n={code.n}, k={code.k}, r={code.r}")
    if len(stabs) != n - code.k - code.r:
        report.append(f"expected {n - code.k - code.r} stabilizer generators, got {len(stabs)}")
    if len(code.logicals) != code.k:
        report.append(f"expected {code.k} logical pairs, got {len(code.logicals)}")
    if len(code.gauges) != code.r:
        report.append(f"expected {code.r} gauge pairs, got {len(code.gauges)}")
    for p in everything:
        if p.n_qubits != n:
            report.append(f"{p} does not act on {n} qubits")
            return report
        if not p.is_hermitian():
            report.append(f"{p} is not Hermitian")

    for i, s in enumerate(stabs):
        for t in stabs[i + 1:]:
            if not commutes(s, t):
                report.append(f"stabilizers {s} and {t} anticommute")
        for p in logical + gauge:
            if not commutes(s, p):
                report.append(f"stabilizer {s} anticommutes with {p}")

    def check_pairs(pairs, others, kind):
        for i, (a, b) in enumerate(pairs):
            if commutes(a, b):
                report.append(f"{kind} pair {i + 1} ({a}, {b}) commutes")
            for j, (c, e) in enumerate(pairs):
                if j == i:
                    continue
                for u in (a, b):
                    for v in (c, e):
                        if not commutes(u, v):
                            report.append(f"{kind} {u} anticommutes with {kind} {v} of another pair")
            for u in (a, b):
                for v in others:
                    if not commutes(u, v):
                        report.append(f"{kind} {u} anticommutes with {v}")

    check_pairs(code.logicals, gauge, "logical")
    check_pairs(code.gauges, logical, "gauge")

    if everything:
        rk = gf2.rank(np.array([p.vector for p in everything]))
        if rk != len(everything):
            report.append(f"generators are dependent: rank {rk} < {len(everything)}")
    if stabs and n <= projector_limit and not report:
        proj = np.eye(1 << n, dtype=complex)
        for s in stabs:
            proj = proj @ (np.eye(1 << n) + to_matrix(s)) / 2
        rk = int(round(np.trace(proj).real))
        if rk != 1 << (code.k + code.r):
            report.append(f"stabilizer projector has rank {rk}, expected {1 << (code.k + code.r)}")
    return report


def require_valid(code):
    report = validate(code)
    if report:
        raise InvalidCodeError(f"code {code.name!r} is invalid", report)
    return code


# -- catalog -----------------------------------------------------------------

def repetition(n=3):
    if n < 3 or n % 2 == 0:
        raise ValueError("repetition code needs odd n >= 3")
    stabs = ["I" * i + "ZZ" + "I" * (n - i - 2) for i in range(n - 1)]
    return _make_code(n, 1, 0, 1, stabs, [("X" * n, "Z" + "I" * (n - 1))], [], f"repetition({n})")


def five_qubit():
    stabs = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
    return _make_code(5, 1, 0, 3, stabs, [("XXXXX", "ZZZZZ")], [], "five_qubit")


def steane():
    rows = ["IIIXXXX", "IXXIIXX", "XIXIXIX"]
    stabs = rows + [r.replace("X", "Z") for r in rows]
    return _make_code(7, 1, 0, 3, stabs, [("X" * 7, "Z" * 7)], [], "steane")


def four_two_two():
    return _make_code(4, 2, 0, 2, ["XXXX", "ZZZZ"],
                      [("XXII", "ZIZI"), ("XIXI", "ZZII")], [], "four_two_two")


def bacon_shor(m=3):
    if m < 2:
        raise ValueError("bacon_shor needs m >= 2")
    n = m * m

    def on(letter, cells):
        chars = ["I"] * n
        for i, j in cells:
            chars[i * m + j] = letter
        return _p("".join(chars))

    stabs = [on("X", [(i, c) for i in range(m) for c in (j, j + 1)]) for j in range(m - 1)]
    stabs += [on("Z", [(r, j) for r in (i, i + 1) for j in range(m)]) for i in range(m - 1)]
    gauge_ops = [on("X", [(i, j), (i, j + 1)]) for i in range(m) for j in range(m - 1)]
    gauge_ops += [on("Z", [(i, j), (i + 1, j)]) for i in range(m - 1) for j in range(m)]
    pairs, center = symplectic_pairs(gauge_ops)
    sgen = GeneratorSet(n, stabs)
    if len(pairs) != (m - 1) ** 2 or not all(sgen.contains(c) for c in center):
        raise AssertionError("Bacon-Shor gauge split failed")
    logical = (on("X", [(i, 0) for i in range(m)]), on("Z", [(0, j) for j in range(m)]))
    return _make_code(n, 1, (m - 1) ** 2, m, stabs, [logical], pairs, f"bacon_shor({m})")


CATALOG = {
    "repetition": repetition,
    "five_qubit": five_qubit,
    "steane": steane,
    "four_two_two": four_two_two,
    "bacon_shor": bacon_shor,
}


def catalog(name, *params):
    """Look up a catalog code, e.g. ``catalog("bacon_shor", 3)`` or ``catalog("bacon_shor(3)")``."""
    m = re.fullmatch(r"\s*(\w+)\s*(?:\(\s*(\d+)\s*\))?\s*", name)
    if not m or m.group(1) not in CATALOG:
        raise KeyError(f"unknown code {name!r}; choose from {sorted(CATALOG)}")
    if m.group(2) is not None:
        params = (int(m.group(2)),) + tuple(params)
    return require_valid(CATALOG[m.group(1)](*params))


def default_catalog():
    return [repetition(3), five_qubit(), steane(), four_two_two(), bacon_shor(3)]


def cat_state_stabilizers(a):
    """Stabilizer generators {X^a, Z_i Z_{i+1}} of the a-qubit cat state."""
    if a < 2:
        raise ValueError("cat state needs a >= 2")
    gens = ["X" * a] + ["I" * i + "ZZ" + "I" * (a - i - 2) for i in range(a - 1)]
    return GeneratorSet(a, gens)


# -- concatenation -----------------------------------------------------------

@dataclass(frozen=True)
class CountParameters:
    n_R: int
    Q_R: int
    L_R: int
    G_R: int
    omega_size: int


def count_parameters(n, k, r, R):
    """Generator counts of an [[n,k,r]] code concatenated R times (exact integers)."""
    if not (n > k + r and k >= 1 and r >= 0 and R >= 1):
        raise ValueError(f"need n > k + r, k >= 1, r >= 0, R >= 1; got n={n}, k={k}, r={r}, R={R}")
    n_R = n ** R
    L_R = k ** R
    G_R = (k + r) ** R - L_R
    Q_R = n_R - L_R - G_R
    return CountParameters(n_R, Q_R, L_R, G_R, Q_R + 2 * L_R)


@dataclass(frozen=True)
class ConcatenatedCode:
    base: CodeSpec
    levels: int
    per_level_stabilizers: tuple
    top_logicals: tuple
    level_logicals: tuple = field(default=(), repr=False)

    @property
    def n_qubits(self):
        return self.base.n ** self.levels

    def all_stabilizers(self):
        return GeneratorSet(self.n_qubits, [s for level in self.per_level_stabilizers for s in level])


def _lift(p, xl, zl):
    """Replace each single-qubit letter of `p` by the inner logical on the matching block."""
    m = xl.n_qubits
    N = p.n_qubits * m
    out = PauliOperator.identity(N)
    for j in range(p.n_qubits):
        block = range(j * m, (j + 1) * m)
        if p.x_bits[j]:
            out = multiply(out, embed(xl, block, N))
        if p.z_bits[j]:
            out = multiply(out, embed(zl, block, N))
    return out.hermitian()


def concatenate(code, R, max_qubits=4096):
    """Structural concatenation of a k = 1 stabilizer code, R levels deep."""
    if code.k != 1 or code.r != 0:
        raise ValueError("structural concatenation supports k = 1, r = 0 codes only; "
                         "use count_parameters for general (n, k, r)")
    if R < 1:
        raise ValueError("R must be >= 1")
    n = code.n
    if n ** R > max_qubits:
        raise OverflowError(f"{n}**{R} qubits exceeds {max_qubits}")
    total = n ** R
    xl, zl = code.logicals[0]
    levels = []
    level_logicals = [(xl, zl)]
    stabs_q = list(code.stabilizers)
    for q in range(1, R + 1):
        size = n ** q
        tiled = [embed(s, range(b * size, (b + 1) * size), total)
                 for b in range(total // size) for s in stabs_q]
        levels.append(GeneratorSet(total, tiled))
        if q < R:
            inner_x, inner_z = level_logicals[-1]
            stabs_q = [_lift(s, inner_x, inner_z) for s in code.stabilizers]
            level_logicals.append((_lift(xl, inner_x, inner_z), _lift(zl, inner_x, inner_z)))
    return ConcatenatedCode(code, R, tuple(levels), level_logicals[-1], tuple(level_logicals))


# -- text format -------------------------------------------------------------

_HEADER = re.compile(r"\[\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]\]\s*(\S.*)?")
_SECTIONS = ("S", "LX", "LZ", "GX", "GZ")


def dumps_code(code):
    lines = [f"# code-format {CODE_FORMAT_VERSION}",
             f"[[{code.n},{code.k},{code.r},{code.d}]] {code.name}", "S:"]
    lines += [str(s) for s in code.stabilizers]
    lines += ["LX:"] + [str(a) for a, _ in code.logicals]
    lines += ["LZ:"] + [str(b) for _, b in code.logicals]
    if code.gauges:
        lines += ["GX:"] + [str(a) for a, _ in code.gauges]
        lines += ["GZ:"] + [str(b) for _, b in code.gauges]
    return "\n".join(lines) + "\n"


def loads_code(text):
    """Parse the code text format; raise InvalidCodeError with the validate() report."""
    header = None
    sections = {s: [] for s in _SECTIONS}
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#"):
            m = re.fullmatch(r"#\s*code-format\s+(\d+)", line)
            if m and int(m.group(1)) != CODE_FORMAT_VERSION:
                raise ValueError(f"unsupported code-format version {m.group(1)}")
            continue
        if not line:
            continue
        if header is None:
            m = _HEADER.fullmatch(line)
            if not m:
                raise ValueError(f"bad header line {line!r}")
            header = m
            continue
        if line.endswith(":") and line[:-1].strip() in _SECTIONS:
            current = line[:-1].strip()
            continue
        if current is None:
            raise ValueError(f"Pauli string {line!r} outside a section")
        sections[current].append(PauliOperator.from_string(line))
    if header is None:
        raise ValueError("missing [[n,k,r,d]] header")
    n, k, r, d = (int(header.group(i)) for i in range(1, 5))
    name = (header.group(5) or "custom").strip()
    if len(sections["LX"]) != len(sections["LZ"]) or len(sections["GX"]) != len(sections["GZ"]):
        raise InvalidCodeError(f"code {name!r} is invalid", ["unpaired logical or gauge operators"])
    for p in (q for sec in sections.values() for q in sec):
        if p.n_qubits != n:
            raise InvalidCodeError(f"code {name!r} is invalid", [f"{p} does not act on {n} qubits"])
    try:
        stabs = GeneratorSet(n, sections["S"])
    except ValueError as exc:
        raise InvalidCodeError(f"code {name!r} is invalid", [str(exc)]) from exc
    code = CodeSpec(n, k, r, d, stabs, tuple(zip(sections["LX"], sections["LZ"])),
                    tuple(zip(sections["GX"], sections["GZ"])), name)
    return require_valid(code)


def stabilizer_projectors(code, n_bath=0):
    """Dense syndrome projectors, keyed by sign tuples (+1/-1 per stabilizer)."""
    check_dense(code.n + n_bath)
    dim = 1 << code.n
    mats = [to_matrix(s) for s in code.stabilizers]
    out = {}
    for signs in np.ndindex(*(2,) * len(mats)):
        proj = np.eye(dim, dtype=complex)
        for s, m in zip(signs, mats):
            proj = proj @ (np.eye(dim) + (1 - 2 * s) * m) / 2
        if n_bath:
            proj = np.kron(proj, np.eye(1 << n_bath))
        out[tuple(1 - 2 * s for s in signs)] = proj
    return out
