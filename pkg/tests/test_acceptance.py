"""Acceptance criteria 1-8, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the summary lines
(they are also printed without ``-s`` through capsys.disabled()).
"""
import random
import time

import numpy as np
import pytest

from ddqec import gf2
from ddqec.codes import (
    bacon_shor, catalog, concatenate, count_parameters, default_catalog, four_two_two,
    repetition, steane,
)
from ddqec.ddgs import (
    CostModel, brute_force_minimal_ddgs, concatenated_sldd, cost, custom_ddgs, decouples,
    full_pauli_ddgs, plan_domains, sldd,
)
from ddqec.pauli import GeneratorSet, all_paulis, centralizer, extract_generators, generator_set_from_matrix
from ddqec.sequences import build_sequence, first_order_filter_check, identity_sequence
from ddqec.verifier import decoupling_order_fit, log_grid, random_noise

T_GRID = log_grid(1e-3, 1e-1, 6)
SEEDS = (0, 1, 2)


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail, elapsed):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s) {detail}")
        assert ok, detail
    return emit


def test_criterion_1_cardinalities(verdict):
    t0 = time.perf_counter()
    checks = [sldd(steane()).size == 8, sldd(bacon_shor(3)).size == 6,
              sldd(four_two_two()).size == 6]
    checks += [full_pauli_ddgs(n).size == 2 * n for n in range(1, 10)]
    for code, Rmax in ((steane(), 2), (repetition(3), 3)):
        for R in range(1, Rmax + 1):
            n, k, r = code.n, code.k, code.r
            formula = n ** R - (k + r) ** R + 2 * k ** R
            structural = concatenated_sldd(concatenate(code, R)).size
            checks.append(structural == formula == count_parameters(n, k, r, R).omega_size)
    elapsed = time.perf_counter() - t0
    verdict(1, all(checks) and elapsed < 1, f"{sum(checks)}/{len(checks)} identities exact", elapsed)


def test_criterion_2_cost_relations(verdict):
    t0 = time.perf_counter()
    checks = []
    for m in (2, 3, 4):
        size = sldd(bacon_shor(m)).size
        for N in (1, 2, 3):
            for fam in ("CDD", "NUDD"):
                model = CostModel(fam, N)
                checks.append(cost(size, model) ** m == cost(2 * m * m, model))
    elapsed = time.perf_counter() - t0
    verdict(2, all(checks) and elapsed < 1, f"{sum(checks)}/{len(checks)} big-integer equalities", elapsed)


def _subgroups(n):
    for dim in range(2 * n + 1):
        for basis in gf2.enumerate_subspaces(dim, 2 * n):
            yield generator_set_from_matrix(basis, n)


def test_criterion_3_minimal_size_brute_force(verdict):
    t0 = time.perf_counter()
    tested = mismatches = 0
    for n in (1, 2):
        for B in _subgroups(n):
            tested += 1
            mismatches += brute_force_minimal_ddgs(B).minimal_size != len(B)
    rng = random.Random(2024)
    paulis = all_paulis(3)
    for _ in range(12):
        B = extract_generators(rng.sample(paulis, rng.randint(1, 6)))
        tested += 1
        mismatches += brute_force_minimal_ddgs(B).minimal_size != len(B)
    p2 = full_pauli_ddgs(2).omega
    none_of_three = brute_force_minimal_ddgs(p2, size_cap=3) is None
    p2_self = decouples(full_pauli_ddgs(2), p2)
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and none_of_three and p2_self and elapsed < 300
    verdict(3, ok, f"{tested} subgroups, {mismatches} mismatches; P2 size-3 none={none_of_three}, "
                   f"P2 self-decouples={p2_self}", elapsed)


def _exhaustive_centralizer(gens, n):
    g = np.array([p.vector for p in gens], dtype=np.int64).reshape(-1, 2 * n)
    ints = np.arange(4 ** n, dtype=np.int64)
    vecs = (ints[:, None] >> np.arange(2 * n - 1, -1, -1)) & 1
    swapped = np.hstack([g[:, n:], g[:, :n]])
    keep = ~((vecs @ swapped.T) % 2).any(axis=1)
    return {v.tobytes() for v in vecs[keep].astype(np.uint8)}


def test_criterion_4_centralizer_oracle(verdict):
    t0 = time.perf_counter()
    rng = np.random.default_rng(11)
    bad = 0
    for n in (1, 2, 3, 4):
        for _ in range(50):
            rows = rng.integers(0, 2, size=(rng.integers(1, 2 * n + 1), 2 * n), dtype=np.uint8)
            gens = extract_generators([generator_set_from_matrix(r[None, :], n)[0]
                                       for r in rows if r.any()] or [], n_qubits=n)
            cent = centralizer(gens)
            spanned = {v.tobytes() for v in _span(cent.matrix(), 2 * n)}
            bad += spanned != _exhaustive_centralizer(list(gens), n)
    code_bad = []
    for code in default_catalog():
        expected = GeneratorSet(code.n, list(code.stabilizers) + code.gauge_generators)
        if not centralizer(sldd(code).omega).same_span(expected):
            code_bad.append(code.name)
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and not code_bad and elapsed < 60
    verdict(4, ok, f"200 random sets, {bad} disagreements; catalog mismatches {code_bad}", elapsed)


def _span(mat, ncols):
    mat = np.asarray(mat, dtype=np.int64).reshape(-1, ncols)
    out = [np.zeros(ncols, dtype=np.uint8)]
    for row in mat:
        out += [(v ^ row).astype(np.uint8) for v in out]
    return out


def test_criterion_5_decoupling_scaling(verdict):
    t0 = time.perf_counter()
    xz = custom_ddgs(["X", "Z"])
    ranges = {"CDD1": (1.7, 2.6), "NUDD2": (2.6, 3.6), "baseline": (0.7, 1.3)}
    slopes = {key: [] for key in ranges}
    for seed in SEEDS:
        noise = random_noise(1, 1, 1, J=1.0, seed=seed)
        r = decoupling_order_fit(build_sequence("CDD", xz, 1), noise, xz, T_GRID)
        slopes["CDD1"].append(r.fitted_slope)
        slopes["baseline"].append(r.baseline_slope)
        slopes["NUDD2"].append(decoupling_order_fit(build_sequence("NUDD", xz, 2), noise, xz,
                                                    T_GRID).fitted_slope)
    ok = all(lo <= s <= hi for key, (lo, hi) in ranges.items() for s in slopes[key])
    elapsed = time.perf_counter() - t0
    detail = "; ".join(f"{k} {[round(s, 3) for s in v]} in {ranges[k]}" for k, v in slopes.items())
    verdict(5, ok and elapsed < 600, detail, elapsed)


def test_criterion_6_syndrome_preservation(verdict):
    t0 = time.perf_counter()
    code = repetition(3)
    omega = sldd(code)
    noise = random_noise(3, 1, 2, J=1.0, seed=0)
    report = decoupling_order_fit(build_sequence("CDD", omega, 1), noise, omega, T_GRID, code=code)
    n_sldd = len(build_sequence("CDD", omega, 1))
    n_full = len(build_sequence("CDD", full_pauli_ddgs(3), 1))
    ok = (report.leakage_slope >= 1.7 and max(report.h0_leakage) <= 1e-10
          and (n_sldd, n_full) == (16, 64))
    elapsed = time.perf_counter() - t0
    verdict(6, ok and elapsed < 600,
            f"leakage slope {report.leakage_slope:.3f} (>= 1.7), max H0 leakage "
            f"{max(report.h0_leakage):.2e} (<= 1e-10), intervals SLDD {n_sldd} vs full {n_full}", elapsed)


def _criterion_7_omegas():
    out = [full_pauli_ddgs(n) for n in (1, 2, 3)]
    out += [sldd(c) for c in (repetition(3), four_two_two(), bacon_shor(3), catalog("five_qubit"))]
    out += [custom_ddgs(["XXI", "ZZI", "IZZ", "IIX", "YIY"])]
    return out


def test_criterion_7_first_order_filter(verdict):
    t0 = time.perf_counter()
    checked = failed = 0
    for omega in _criterion_7_omegas():
        assert omega.size <= 6
        for fam in ("CDD", "NUDD"):
            for N in (1, 2, 3):
                checked += 1
                failed += not first_order_filter_check(build_sequence(fam, omega, N), omega)
    control = not first_order_filter_check(identity_sequence(1), custom_ddgs(["X"]))
    elapsed = time.perf_counter() - t0
    verdict(7, failed == 0 and control and elapsed < 60,
            f"{checked} sequences against every Pauli error, {failed} failures; "
            f"identity-sequence control rejected={control}", elapsed)


def test_criterion_8_domain_planner(verdict):
    t0 = time.perf_counter()
    rng = random.Random(8)
    codes = [(7, 1, 0), (5, 1, 0), (3, 1, 0), (9, 1, 4), (4, 2, 0), (15, 1, 0)]
    problems = 0
    for _ in range(1000):
        n, k, r = rng.choice(codes)
        fam, N = rng.choice(["CDD", "NUDD"]), rng.randint(1, 3)
        model = CostModel(fam, N)
        p = rng.randint(1, 6)
        kt = rng.randint(1, 10 ** rng.randint(1, 30))
        a = plan_domains(kt, n, k, r, model, p)
        b = plan_domains(kt + rng.randint(1, kt), n, k, r, model, p)
        problems += b.domain_size_logical < a.domain_size_logical or b.levels < a.levels
        f = model.f_of_N
        W = a.generator_budget
        problems += not (f ** W <= kt ** p < f ** (W + 1))
        if a.levels:
            problems += a.omega_size_per_domain > W
            problems += count_parameters(n, k, r, a.levels + 1).omega_size <= W
        problems += a.within_budget != (a.levels >= 1)
        if model.f_of_N == 2:
            problems += plan_domains(2 * kt, n, k, r, model, p).generator_budget != W + p
    elapsed = time.perf_counter() - t0
    verdict(8, problems == 0 and elapsed < 1,
            f"1000 random tuples, {problems} violations (monotone, exact W, doubling adds p)", elapsed)
