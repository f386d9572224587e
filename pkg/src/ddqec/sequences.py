"""CDD and NUDD pulse schedules built from a DD generator set.

A schedule is a list of free-evolution intervals; each interval carries the
(ideal, instantaneous) pulse applied at its end, or None.  Pulses that meet at
a boundary are merged into their product.  Intervals are never merged, so an
interval count always equals f(N)**|omega|.

Generators are nested outermost-last: the last generator in `omega` forms
the outermost layer of the construction.
"""
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .ddgs import DdgsResult
from .pauli import PauliOperator, multiply, swap_halves

FIRST_ORDER_TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    fraction: Fraction
    pulse_after: PauliOperator = None


@dataclass(frozen=True)
class PulseSequence:
    n_qubits: int
    intervals: tuple
    family: str = "custom"
    order: int = 0
    generator_order: tuple = ()

    def __post_init__(self):
        if not self.intervals:
            raise ValueError("a sequence needs at least one interval")
        if sum(iv.fraction for iv in self.intervals) != 1:
            raise ValueError("interval fractions must sum to exactly 1")
        if any(iv.fraction <= 0 for iv in self.intervals):
            raise ValueError("interval fractions must be positive")

    def __len__(self):
        return len(self.intervals)

    @property
    def fractions(self):
        return np.array([float(iv.fraction) for iv in self.intervals])

    @property
    def pulses(self):
        return [iv.pulse_after for iv in self.intervals]

    def net_pulse(self):
        """Time-ordered product of every pulse (later pulses on the left)."""
        g = PauliOperator.identity(self.n_qubits)
        for p in self.pulses:
            if p is not None:
                g = multiply(p, g)
        return g

    def closes(self):
        return self.net_pulse().is_identity()

    def to_dict(self):
        return {
            "family": self.family,
            "order": self.order,
            "n_qubits": self.n_qubits,
            "generator_order": [str(g) for g in self.generator_order],
            "intervals": [{"fraction": decimal_string(iv.fraction),
                           "pulse": None if iv.pulse_after is None else str(iv.pulse_after)}
                          for iv in self.intervals],
        }

    @classmethod
    def from_dict(cls, d):
        intervals = tuple(
            Interval(Fraction(iv["fraction"]),
                     None if iv["pulse"] is None else PauliOperator.from_string(iv["pulse"]))
            for iv in d["intervals"])
        total = sum(iv.fraction for iv in intervals)
        if total != 1:
            # non-dyadic fractions were rounded on output; the last interval absorbs it
            last = intervals[-1]
            intervals = intervals[:-1] + (Interval(last.fraction + 1 - total, last.pulse_after),)
        return cls(d["n_qubits"], intervals, d["family"], d["order"],
                   tuple(PauliOperator.from_string(g) for g in d["generator_order"]))


def decimal_string(frac, min_digits=15):
    """Decimal text for `frac`: exact for dyadic rationals, 20 digits otherwise."""
    frac = Fraction(frac)
    den = frac.denominator
    if den & (den - 1) == 0:
        # p / 2^e == p * 5^e / 10^e
        e = den.bit_length() - 1
        digits = str(frac.numerator * 5 ** e).rjust(e + 1, "0")
        text = digits[:-e] + "." + digits[-e:] if e else digits + ".0"
    else:
        with localcontext() as ctx:
            ctx.prec = 20
            text = str(Decimal(frac.numerator) / Decimal(frac.denominator))
    sig = len(text.replace(".", "").replace("-", "").lstrip("0"))
    if sig < min_digits:
        text += "0" * (min_digits - sig)
    return text


# -- construction helpers ----------------------------------------------------

def _merge(p, q):
    """Pulse `q` applied right after `p` (either may be None)."""
    if p is None:
        return q
    if q is None:
        return p
    out = multiply(q, p)
    return None if out.is_identity() else out.hermitian()


def _scaled(block, factor):
    return [(frac * factor, p) for frac, p in block]


def _append_pulse(block, pulse):
    frac, p = block[-1]
    block[-1] = (frac, _merge(p, pulse))


def _join(blocks_and_pulses):
    out = []
    for item in blocks_and_pulses:
        if isinstance(item, PauliOperator):
            _append_pulse(out, item)
        else:
            out.extend(item)
    return out


def identity_sequence(n_qubits):
    return PulseSequence(n_qubits, (Interval(Fraction(1)),), "custom", 0)


def _gens(omega):
    return tuple(omega.omega) if isinstance(omega, DdgsResult) else tuple(omega)


def cdd_sequence(omega, N):
    """Concatenated DD of level N over the group generated by `omega`.

    Level 1 nests one echo per generator,
    ``U_j = U_{j-1} W_j U_{j-1} W_j`` with ``U_0`` a free interval;
    level N substitutes the level N-1 schedule into every free interval.
    """
    gens = _gens(omega)
    n = omega.n_qubits
    if N < 1:
        raise ValueError("order N must be >= 1")
    if not gens:
        return identity_sequence(n)
    m = len(gens)
    block = [(Fraction(1), None)]
    for _ in range(N):
        block = _scaled(block, Fraction(1, 2 ** m))
        for g in gens:
            block = _join([block, g, list(block), g])
    return PulseSequence(n, tuple(Interval(f, p) for f, p in block), "CDD", N, gens)


def _snap(t, max_den=64, ulps=8):
    """Exact binary value of `t`, or a nearby small-denominator rational (sin^2(pi/4) -> 1/2)."""
    near = Fraction(t).limit_denominator(max_den)
    if abs(float(near) - t) <= ulps * math.ulp(t):
        return near
    return Fraction(t)


@lru_cache(maxsize=None)
def udd_fractions(N):
    """Interval fractions of UDD_N: differences of sin^2(j pi / (2N + 2)), as exact binary fractions."""
    times = [math.sin(j * math.pi / (2 * N + 2)) ** 2 for j in range(1, N + 1)]
    fr = [_snap(t) for t in times]
    deltas = [fr[0]] + [b - a for a, b in zip(fr, fr[1:])]
    deltas.append(1 - sum(deltas))
    return tuple(deltas)


def nudd_sequence(omega, N):
    """Nested UDD of order N; every layer contributes N+1 intervals.

    For odd N a closing pulse is appended to each layer so that the layer's
    pulses multiply to the identity.
    """
    gens = _gens(omega)
    n = omega.n_qubits
    if N < 1:
        raise ValueError("order N must be >= 1")
    if not gens:
        return identity_sequence(n)
    deltas = udd_fractions(N)
    block = [(Fraction(1), None)]
    for g in gens:
        parts = []
        for i, d in enumerate(deltas):
            parts.append(_scaled(block, d))
            if i < N or N % 2 == 1:
                parts.append(g)
        block = _join(parts)
    # float-derived fractions: keep the exact sum at 1
    total = sum(f for f, _ in block)
    f, p = block[-1]
    block[-1] = (f + 1 - total, p)
    return PulseSequence(n, tuple(Interval(f, p) for f, p in block), "NUDD", N, gens)


def build_sequence(family, omega, N):
    family = family.upper()
    if family == "CDD":
        return cdd_sequence(omega, N)
    if family == "NUDD":
        return nudd_sequence(omega, N)
    raise ValueError(f"unknown family {family!r}")


def toggling_pulse_products(seq):
    """Prefix pulse products g_j; interval j sees g_j^dagger H g_j."""
    g = PauliOperator.identity(seq.n_qubits)
    frames = []
    for iv in seq.intervals:
        frames.append(g)
        if iv.pulse_after is not None:
            g = multiply(iv.pulse_after, g)
    return frames


def frame_weights(seq):
    """Total duration spent in each distinct toggling frame (mod phase)."""
    n2 = 2 * seq.n_qubits
    pulses = np.zeros((len(seq), n2), dtype=np.uint8)
    for j, iv in enumerate(seq.intervals[:-1]):
        if iv.pulse_after is not None:
            pulses[j + 1] = iv.pulse_after.vector
    # frame j is the XOR of every earlier pulse
    frames = np.bitwise_xor.accumulate(pulses, axis=0)
    if n2 <= 62:
        keys = frames.astype(np.int64) @ (np.int64(1) << np.arange(n2, dtype=np.int64))
        _, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
        mats = frames[first]
    else:
        mats, inverse = np.unique(frames, axis=0, return_inverse=True)
    weights = np.zeros(len(mats))
    np.add.at(weights, inverse.ravel(), [float(iv.fraction) for iv in seq.intervals])
    return mats, weights


def _all_error_vectors(n):
    ints = np.arange(1, 4 ** n, dtype=np.int64)
    return (ints[:, None] >> np.arange(2 * n - 1, -1, -1)) & 1


def first_order_filter_check(seq, omega, errors=None, tol=FIRST_ORDER_TOL):
    """Every error anticommuting with `omega` averages to zero over the schedule.

    `errors` defaults to all Paulis on the register (mod phase); pass a
    GeneratorSet or list to restrict the check.
    """
    gens = _gens(omega)
    n = seq.n_qubits
    if errors is None:
        emat = _all_error_vectors(n)
    else:
        errs = list(errors)
        if not errs:
            return True
        emat = np.array([e.vector for e in errs], dtype=np.int64)
    if gens:
        gmat = np.array([g.vector for g in gens], dtype=np.int64)
        hit = ((emat @ swap_halves(gmat).T.astype(np.int64)) % 2).any(axis=1)
    else:
        hit = emat.any(axis=1)
    emat = emat[hit]
    if emat.shape[0] == 0:
        return True
    frames, weights = frame_weights(seq)
    signs = 1 - 2 * ((frames.astype(np.int64) @ swap_halves(emat).T.astype(np.int64)) % 2)
    sums = weights @ signs
    return bool(np.all(np.abs(sums) <= tol))
