import json
import math
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from ddqec.codes import repetition
from ddqec.ddgs import CostModel, DdgsResult, cost, custom_ddgs, full_pauli_ddgs, sldd
from ddqec.pauli import GeneratorSet, PauliOperator, all_paulis, to_matrix
from ddqec.sequences import (
    Interval, PulseSequence, build_sequence, cdd_sequence, decimal_string,
    first_order_filter_check, identity_sequence, nudd_sequence, toggling_pulse_products,
    udd_fractions,
)

P = PauliOperator.from_string


def _omegas():
    return [custom_ddgs(["X"]), custom_ddgs(["X", "Z"]), full_pauli_ddgs(2),
            sldd(repetition(3)), custom_ddgs(["XX", "ZZ", "XI"])]


def dense_net_pulse(seq):
    """Ordered matrix product of every pulse, independent of the Pauli tableau."""
    m = np.eye(1 << seq.n_qubits, dtype=complex)
    for p in seq.pulses:
        if p is not None:
            m = to_matrix(p) @ m
    return m


class TestExamples:
    def test_spin_echo(self):
        for seq in (cdd_sequence(custom_ddgs(["X"]), 1), nudd_sequence(custom_ddgs(["X"]), 1)):
            assert seq.fractions.tolist() == [0.5, 0.5]
            assert [str(p) for p in seq.pulses] == ["X", "X"]
            assert [str(g) for g in toggling_pulse_products(seq)] == ["I", "X"]

    def test_xy4_like(self):
        seq = cdd_sequence(custom_ddgs(["X", "Z"]), 1)
        assert len(seq) == 4
        assert all(f == Fraction(1, 4) for f in (iv.fraction for iv in seq.intervals))
        frames = toggling_pulse_products(seq)
        assert {tuple(g.vector) for g in frames} == {tuple(p.vector) for p in all_paulis(1, True)}

    def test_nudd2_fractions(self):
        seq = nudd_sequence(custom_ddgs(["X"]), 2)
        assert len(seq) == 3
        assert np.allclose(seq.fractions, [0.25, 0.5, 0.25], atol=1e-12, rtol=0)
        assert udd_fractions(1) == (Fraction(1, 2), Fraction(1, 2))

    @pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
    def test_udd_fractions_formula(self, N):
        times = [math.sin(j * math.pi / (2 * N + 2)) ** 2 for j in range(N + 2)]
        times[-1] = 1.0
        expected = np.diff(times)
        assert sum(udd_fractions(N)) == 1
        assert np.allclose([float(f) for f in udd_fractions(N)], expected, atol=1e-14)

    def test_counts(self):
        assert len(cdd_sequence(custom_ddgs(["X", "Z"]), 2)) == 16
        assert len(nudd_sequence(custom_ddgs(["X", "Z"]), 2)) == 9

    def test_identity_sequence(self):
        seq = identity_sequence(2)
        assert len(seq) == 1 and seq.closes()
        assert [str(g) for g in toggling_pulse_products(seq)] == ["II"]
        assert cdd_sequence(DdgsResult(GeneratorSet(2)), 1) == seq
        assert nudd_sequence(DdgsResult(GeneratorSet(2)), 3) == seq

    def test_rejects(self):
        with pytest.raises(ValueError):
            cdd_sequence(custom_ddgs(["X"]), 0)
        with pytest.raises(ValueError):
            build_sequence("XY8", custom_ddgs(["X"]), 1)
        with pytest.raises(ValueError):
            PulseSequence(1, (Interval(Fraction(1, 2)), Interval(Fraction(1, 3))))
        with pytest.raises(ValueError):
            PulseSequence(1, (Interval(Fraction(0)), Interval(Fraction(1))))


@pytest.mark.parametrize("family", ["CDD", "NUDD"])
@pytest.mark.parametrize("N", [1, 2, 3])
class TestInvariants:
    def test_count_equals_cost(self, family, N):
        for omega in _omegas():
            seq = build_sequence(family, omega, N)
            assert len(seq) == cost(omega.size, CostModel(family, N))

    def test_closes_and_sums(self, family, N):
        for omega in _omegas():
            seq = build_sequence(family, omega, N)
            assert sum(iv.fraction for iv in seq.intervals) == 1
            assert all(iv.fraction > 0 for iv in seq.intervals)
            assert seq.closes()
            net = dense_net_pulse(seq)
            assert np.allclose(net, net[0, 0] * np.eye(len(net)))

    def test_first_order(self, family, N):
        for omega in _omegas():
            assert first_order_filter_check(build_sequence(family, omega, N), omega)

    def test_permutation_invariance(self, family, N):
        gens = list(full_pauli_ddgs(2).omega)[:3]
        schedules = set()
        for perm in permutations(gens):
            omega = custom_ddgs(list(perm))
            seq = build_sequence(family, omega, N)
            assert len(seq) == cost(3, CostModel(family, N))
            assert first_order_filter_check(seq, omega)
            schedules.add(tuple(str(p) for p in seq.pulses))
        assert len(schedules) > 1

    def test_json_round_trip(self, family, N):
        seq = build_sequence(family, custom_ddgs(["X", "Z"]), N)
        text = json.dumps(seq.to_dict())
        back = PulseSequence.from_dict(json.loads(text))
        assert back.pulses == seq.pulses
        assert np.allclose(back.fractions, seq.fractions, atol=1e-15, rtol=0)
        assert json.dumps(back.to_dict()) == text


def test_cdd_fractions_exact():
    seq = cdd_sequence(full_pauli_ddgs(2), 2)
    assert {iv.fraction for iv in seq.intervals} == {Fraction(1, 256)}
    d = seq.to_dict()
    assert PulseSequence.from_dict(d) == seq


def test_decimal_string():
    assert decimal_string(Fraction(1, 4)) == "0.250000000000000"
    assert decimal_string(1) == "1.00000000000000"
    assert Fraction(decimal_string(Fraction(3, 2 ** 60))) == Fraction(3, 2 ** 60)
    assert len(decimal_string(Fraction(1, 3)).lstrip("0.")) >= 15


class TestFirstOrderCheck:
    def test_echo_cancels_z(self):
        echo = cdd_sequence(custom_ddgs(["X"]), 1)
        assert first_order_filter_check(echo, custom_ddgs(["X"]), [P("Z")])

    def test_identity_fails(self):
        seq = identity_sequence(1)
        assert not first_order_filter_check(seq, custom_ddgs(["X"]), [P("Z")])

    def test_rep3_every_error(self):
        omega = sldd(repetition(3))
        seq = cdd_sequence(omega, 1)
        assert len(seq) == 16
        assert first_order_filter_check(seq, omega)

    def test_wrong_omega_detected(self):
        # an echo over X leaves X errors; claiming {X, Z} must fail
        seq = cdd_sequence(custom_ddgs(["X"]), 1)
        assert not first_order_filter_check(seq, custom_ddgs(["X", "Z"]))

    def test_matches_dense_average(self):
        # averaged toggling-frame error, computed densely
        omega = custom_ddgs(["XX", "ZZ"])
        seq = nudd_sequence(omega, 2)
        frames = toggling_pulse_products(seq)
        for e in all_paulis(2):
            E = to_matrix(e)
            avg = sum(float(iv.fraction) * to_matrix(g).conj().T @ E @ to_matrix(g)
                      for g, iv in zip(frames, seq.intervals))
            cancels = np.allclose(avg, 0, atol=1e-12)
            anticommutes = not all(np.allclose(E @ to_matrix(g), to_matrix(g) @ E) for g in omega.omega)
            if anticommutes:
                assert cancels
        assert first_order_filter_check(seq, omega)
