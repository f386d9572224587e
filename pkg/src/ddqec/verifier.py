"""Dense system+bath simulation of ideal-pulse DD and decoupling-order fits.

Conventions
-----------
The joint Hilbert space is ``system (x) bath`` with the system factor on the
left.  The effective Hamiltonian is defined by ``U(T) = exp(i T H_eff)``, so
free evolution ``exp(-i H T)`` gives ``H_eff = -H``.  Only norms of the
decomposed parts enter any check, so the sign never matters.
"""
import csv
import io
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

import numpy as np
import scipy.linalg

from .codes import stabilizer_projectors
from .ddgs import DdgsResult
from .pauli import PauliOperator, check_dense, to_matrix
from .sequences import identity_sequence

SATURATION_FLOOR = 1e-11
SLOPE_MARGIN = 0.35
LEAKAGE_SLOPE_MARGIN = 0.3
H0_LEAKAGE_TOL = 1e-10
BRANCH_MARGIN = 1e-3


class BranchAmbiguityError(ValueError):
    """An eigenphase of U sits too close to the branch cut of the logarithm."""


@dataclass(frozen=True)
class NoiseTerm:
    coefficient: float
    system_pauli: PauliOperator
    bath_operator: np.ndarray


@dataclass(frozen=True, eq=False)
class NoiseModel:
    n_sys: int
    n_bath: int
    locality: int
    terms: tuple
    norm_target: float
    seed: int = None

    @property
    def dim(self):
        return 1 << (self.n_sys + self.n_bath)

    @cached_property
    def hamiltonian(self):
        H = np.zeros((self.dim, self.dim), dtype=complex)
        for t in self.terms:
            H += t.coefficient * np.kron(to_matrix(t.system_pauli), t.bath_operator)
        return (H + H.conj().T) / 2

    @cached_property
    def eig(self):
        return np.linalg.eigh(self.hamiltonian)

    def norm(self):
        return float(np.max(np.abs(self.eig[0])))


def _gue(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2


def _local_paulis(n, k):
    out = [PauliOperator.identity(n)]
    for w in range(1, k + 1):
        for support in combinations(range(n), w):
            for letters in product("XYZ", repeat=w):
                chars = ["I"] * n
                for q, c in zip(support, letters):
                    chars[q] = c
                out.append(PauliOperator.from_string("".join(chars)))
    return out


def random_noise(n_sys, n_bath, locality, J=1.0, seed=0, max_terms=256):
    """Random k-local system-bath Hamiltonian rescaled to operator norm J.

    Each system Pauli of weight <= locality (the identity included, giving the
    pure-bath term) is tensored with an independent GUE bath operator.
    """
    check_dense(n_sys + n_bath)
    if not 1 <= locality <= n_sys:
        raise ValueError("locality must lie in [1, n_sys]")
    if J <= 0:
        raise ValueError("J must be positive")
    rng = np.random.default_rng(seed)
    paulis = _local_paulis(n_sys, locality)
    if len(paulis) > max_terms:
        keep = np.sort(rng.choice(np.arange(1, len(paulis)), max_terms - 1, replace=False))
        paulis = [paulis[0]] + [paulis[i] for i in keep]
    bdim = 1 << n_bath
    raw = []
    for p in paulis:
        bath = _gue(rng, bdim) if n_bath else np.ones((1, 1))
        raw.append((float(rng.normal()), p, bath))
    model = NoiseModel(n_sys, n_bath, locality, tuple(NoiseTerm(*t) for t in raw), J, seed)
    scale = J / model.norm()
    return NoiseModel(n_sys, n_bath, locality,
                      tuple(NoiseTerm(c * scale, p, b) for c, p, b in raw), J, seed)


def _pulse_matrix(p, n_bath, cache):
    m = cache.get(p)
    if m is None:
        m = np.kron(to_matrix(p), np.eye(1 << n_bath))
        cache[p] = m
    return m


def evolve(seq, noise, T):
    """Piecewise-constant evolution with instantaneous pulses at interval ends.

    Any global phase left by the net pulse product is divided out, so a
    closing sequence is compared directly with free evolution.
    """
    if seq.n_qubits != noise.n_sys:
        raise ValueError(f"sequence acts on {seq.n_qubits} qubits, noise model on {noise.n_sys}")
    if T <= 0:
        raise ValueError("T must be positive")
    w, V = noise.eig
    Vh = V.conj().T
    props = {}
    pulses = {}
    U = np.eye(noise.dim, dtype=complex)
    for iv in seq.intervals:
        step = props.get(iv.fraction)
        if step is None:
            step = (V * np.exp(-1j * w * float(iv.fraction) * T)) @ Vh
            props[iv.fraction] = step
        U = step @ U
        if iv.pulse_after is not None:
            U = _pulse_matrix(iv.pulse_after, noise.n_bath, pulses) @ U
    net = seq.net_pulse()
    if net.is_identity():
        U = U * (1j ** net.phase_exp).conjugate()
    return U


def effective_hamiltonian(U, T, margin=BRANCH_MARGIN):
    """Hermitian H_eff with exp(i T H_eff) = U, from the principal eigenphases."""
    Tm, Z = scipy.linalg.schur(U, output="complex")
    phases = np.angle(np.diag(Tm))
    if np.max(np.abs(phases)) > np.pi - margin:
        raise BranchAmbiguityError(
            "an eigenphase of U is within %.1e of +-pi; use a smaller T" % margin)
    H = (Z * (phases / T)) @ Z.conj().T
    return (H + H.conj().T) / 2


def _generator_matrices(omega, n_bath):
    gens = omega.omega if isinstance(omega, DdgsResult) else omega
    return [np.kron(to_matrix(g), np.eye(1 << n_bath)) for g in gens]


def twirl(H, mats):
    """Average of H over the group generated by Pauli `mats` (applied one generator at a time)."""
    for g in mats:
        H = (H + g @ H @ g.conj().T) / 2
    return H


def twirl_group_sum(H, mats, max_generators=12):
    """Same projection, summed literally over all 2^m subset products."""
    if len(mats) > max_generators:
        raise ValueError(f"group sum over {len(mats)} generators refused (limit {max_generators})")
    acc = np.zeros_like(H)
    for bits in product((0, 1), repeat=len(mats)):
        g = np.eye(H.shape[0], dtype=complex)
        for b, m in zip(bits, mats):
            if b:
                g = g @ m
        acc += g @ H @ g.conj().T
    return acc / (1 << len(mats))


def moos_decompose(H_eff, omega, n_bath=0):
    """Split H_eff into the part commuting with every element of omega and the rest."""
    H0 = twirl(H_eff, _generator_matrices(omega, n_bath))
    return H0, H_eff - H0


def _norm(A):
    return float(np.linalg.norm(A, 2))


def syndrome_preservation(H, code, n_bath=0):
    """Worst off-block leakage and worst in-block logical action of H."""
    if (code.n + n_bath) > 0 and H.shape[0] != 1 << (code.n + n_bath):
        raise ValueError("Hamiltonian size does not match code and bath")
    projectors = stabilizer_projectors(code, n_bath)
    logical_mats = [np.kron(to_matrix(p), np.eye(1 << n_bath)) for p in code.logical_generators]
    leak = 0.0
    action = 0.0
    blocks = {s: H @ P for s, P in projectors.items()}
    for s, HP in blocks.items():
        for s2, P2 in projectors.items():
            if s2 == s:
                inner = P2 @ HP
                action = max(action, _norm(inner - twirl(inner, logical_mats)))
            else:
                leak = max(leak, _norm(P2 @ HP))
    return {"max_leakage": leak, "max_logical_action": action, "blocks": len(projectors)}


def fit_slope(T_grid, values, floor):
    """Least-squares slope of log(values) against log(T), skipping saturated points."""
    T = np.asarray(T_grid, dtype=float)
    v = np.asarray(values, dtype=float)
    mask = v > floor
    if mask.sum() < 3:
        raise ValueError(f"only {int(mask.sum())} points above the floor {floor:g}; need 3")
    if mask.sum() < 4:
        warnings.warn("fewer than 4 usable points for the slope fit", RuntimeWarning)
    slope, _ = np.polyfit(np.log10(T[mask]), np.log10(v[mask]), 1)
    return float(slope)


@dataclass
class DecouplingReport:
    sequence: dict
    family: str
    target_order: int
    intervals: int
    T_grid: list
    residual_norms: list
    baseline_norms: list
    fitted_slope: float
    baseline_slope: float
    slope_pass: bool
    noise: dict
    syndrome_leakage: list = field(default_factory=list)
    h0_leakage: list = field(default_factory=list)
    leakage_slope: float = None
    leakage_pass: bool = None
    code: str = None

    @property
    def passed(self):
        return self.slope_pass and self.leakage_pass is not False

    def to_dict(self):
        return dict(self.__dict__, passed=self.passed)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["T", "residual", "baseline", "leakage"])
        for i, T in enumerate(self.T_grid):
            leak = self.syndrome_leakage[i] if self.syndrome_leakage else ""
            w.writerow([repr(T), repr(self.residual_norms[i]), repr(self.baseline_norms[i]),
                        repr(leak) if leak != "" else ""])
        return buf.getvalue()


def log_grid(t_min, t_max, points):
    return [float(t) for t in np.logspace(np.log10(t_min), np.log10(t_max), points)]


def decoupling_order_fit(seq, noise, omega, T_grid, target_order=None, code=None,
                         floor=SATURATION_FLOOR):
    """Measure how T * ||H_r|| scales with T and compare to the target order.

    With a `code`, also tracks T * (off-block leakage of H_eff) and the raw
    off-block leakage of H_0 across the syndrome projectors.
    """
    T_grid = [float(t) for t in T_grid]
    if any(b <= a for a, b in zip(T_grid, T_grid[1:])):
        raise ValueError("T_grid must be strictly increasing")
    N = seq.order if target_order is None else target_order
    J = noise.norm()
    base_seq = identity_sequence(noise.n_sys)
    residuals, baselines, leak, h0_leak = [], [], [], []
    for T in T_grid:
        H_eff = effective_hamiltonian(evolve(seq, noise, T), T)
        H0, Hr = moos_decompose(H_eff, omega, noise.n_bath)
        residuals.append(T * _norm(Hr))
        Hb = effective_hamiltonian(evolve(base_seq, noise, T), T)
        baselines.append(T * _norm(moos_decompose(Hb, omega, noise.n_bath)[1]))
        if code is not None:
            leak.append(T * syndrome_preservation(H_eff, code, noise.n_bath)["max_leakage"])
            h0_leak.append(syndrome_preservation(H0, code, noise.n_bath)["max_leakage"])
    slope = fit_slope(T_grid, residuals, floor * J)
    base_slope = fit_slope(T_grid, baselines, floor * J)
    report = DecouplingReport(
        sequence=seq.to_dict(), family=seq.family, target_order=N, intervals=len(seq),
        T_grid=T_grid, residual_norms=residuals, baseline_norms=baselines,
        fitted_slope=slope, baseline_slope=base_slope,
        slope_pass=slope >= (N + 1) - SLOPE_MARGIN,
        noise={"n_sys": noise.n_sys, "n_bath": noise.n_bath, "locality": noise.locality,
               "J": noise.norm_target, "seed": noise.seed},
    )
    if code is not None:
        report.code = code.name
        report.syndrome_leakage = leak
        report.h0_leakage = h0_leak
        report.leakage_slope = fit_slope(T_grid, leak, floor * J)
        report.leakage_pass = (max(h0_leak) <= H0_LEAKAGE_TOL
                               and report.leakage_slope >= (N + 1) - LEAKAGE_SLOPE_MARGIN)
    return report
