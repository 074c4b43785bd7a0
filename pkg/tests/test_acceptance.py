"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
report.
"""

import itertools
import time

import numpy as np
import pytest

from cnotsat import (
    Clause,
    CnfFormula,
    DegenerateMultipletError,
    Literal,
    alanine_3q,
    alanine_4q,
    append_uncompute,
    as_permutation,
    brute_force_solutions,
    compile_1sat,
    compile_formula,
    cost_model,
    extract_solutions,
    generate_random_ksat,
    marginalize,
    multiplet_lines,
    parse_dimacs,
    peephole_cancel,
    run,
    synthetic_system,
    thermal_reference,
    true_space,
)
from conftest import PAPER_1SAT, PAPER_3SAT
from test_circuit import random_circuit


def report(criterion: str, passed: bool = True) -> None:
    print(f"acceptance {criterion}: {'PASS' if passed else 'FAIL'}")


def spin_system_for(n: int):
    return alanine_4q() if n <= 3 else synthetic_system(n)


def all_clauses(n: int, max_k: int):
    """Every clause with up to max_k distinct variables over n variables."""
    out = []
    for k in range(1, max_k + 1):
        for variables in itertools.combinations(range(1, n + 1), k):
            for signs in itertools.product((False, True), repeat=k):
                out.append(
                    Clause(
                        tuple(
                            Literal(v, negated=s) for v, s in zip(variables, signs)
                        )
                    )
                )
    return out


@pytest.fixture(scope="module")
def corpus():
    """Criterion 4 corpus: 200 seeded random k-SAT plus exhaustive n<=2, k<=2."""
    formulas = []
    for i in range(200):
        n = 2 + (i % 3)
        m = 1 + (i % 5)
        k = 1 + (i % min(3, n))
        formulas.append(generate_random_ksat(n, m, k, seed=i))
    for n in (1, 2):
        clauses = all_clauses(n, max_k=2)
        for m in (1, 2):
            for combo in itertools.product(clauses, repeat=m):
                formulas.append(CnfFormula(n, combo))
    return formulas


def test_criterion_1_paper_3sat_solve():
    formula = parse_dimacs(PAPER_3SAT)
    start = time.perf_counter()
    circuit = compile_formula(formula)
    solutions = true_space(run(circuit), circuit.layout).bitstrings()
    elapsed = time.perf_counter() - start
    oracle = tuple(a.bitstring() for a in brute_force_solutions(formula))
    assert solutions == oracle == ("010", "011", "101", "110", "111")
    assert "110" in solutions
    assert elapsed < 0.010, f"solve took {elapsed * 1e3:.2f} ms"
    report("1 paper 3-SAT (5 solutions, <10 ms)")


def test_criterion_2_worked_1sat_state():
    formula = parse_dimacs(PAPER_1SAT)
    state = run(compile_1sat(formula))
    true_indices = np.flatnonzero(state.populations).tolist()
    true_work = [b for b in true_indices if b & 1]
    assert true_work == [(0b110 << 1) | 1]  # only |110> carries work bit 1
    assert state.populations[true_work[0]] == 0.125
    report("2 worked 1-SAT final state (only |110> in the TRUE space)")


@pytest.mark.parametrize("n", [1, 2])
def test_criterion_3_modified_sat_cases(n):
    system = alanine_3q()
    contradiction = CnfFormula(
        n, (Clause((Literal(1),)), Clause((Literal(1, negated=True),)))
    )
    circuit = compile_formula(contradiction)
    state = run(circuit)
    assert true_space(state, circuit.layout).count == 0
    lines = multiplet_lines(state, circuit.layout, system)
    assert all(l.amplitude > 0 for l in lines)

    tautology = CnfFormula(n, (Clause((Literal(1), Literal(1, negated=True))),))
    circuit = compile_formula(tautology)
    state = run(circuit)
    assert true_space(state, circuit.layout).count == 2**n
    lines = multiplet_lines(state, circuit.layout, system)
    assert all(l.amplitude < 0 for l in lines)
    report(f"3 modified-SAT logic cases (n={n})")


def test_criterion_4_oracle_equivalence_sweep(corpus):
    start = time.perf_counter()
    for formula in corpus:
        oracle = brute_force_solutions(formula)
        circuit = compile_formula(formula)
        state = run(circuit)
        direct = true_space(state, circuit.layout)
        assert direct.true_space == oracle, f"direct mismatch on {formula}"
        system = spin_system_for(formula.num_vars)
        lines = multiplet_lines(state, circuit.layout, system)
        decoded = extract_solutions(lines, system, formula.num_vars)
        assert decoded.true_space == oracle, f"spectral mismatch on {formula}"
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    report(f"4 oracle equivalence sweep ({len(corpus)} formulas, {elapsed:.1f} s)")


def test_criterion_5_cost_model_closed_forms():
    for m in range(1, 7):
        formula = generate_random_ksat(4, m, 3, seed=1000 + m)
        counts = cost_model(formula)
        assert counts.elementary_cnot == 3 * (3 * m - 2), f"C-NOT count, m={m}"
        assert counts.elementary_single == 4 * (3 * m - 1), f"single count, m={m}"
        assert counts.conjugation_nots <= 3 * m, f"NOT bound, m={m}"
    report("5 cost-model closed forms (m=1..6)")


def test_criterion_6_multiplet_geometry():
    freqs_3q = sorted(l.frequency for l in thermal_reference(alanine_3q(), 2))
    expected_3q = sorted([-44.375, -9.435, 9.435, 44.375])
    assert freqs_3q == pytest.approx(expected_3q, abs=1e-9)

    freqs_4q = sorted(l.frequency for l in thermal_reference(alanine_4q(), 3))
    expected_4q = sorted(
        s1 * 17.47 + s2 * 26.905 + s3 * 71.605
        for s1 in (-1, 1)
        for s2 in (-1, 1)
        for s3 in (-1, 1)
    )
    assert freqs_4q == pytest.approx(expected_4q, abs=1e-9)
    report("6 multiplet geometry (alanine 3q/4q line positions)")


def test_criterion_7_peephole_soundness():
    for seed in range(1000):
        circuit = random_circuit(seed, width=8, max_gates=50)
        assert as_permutation(peephole_cancel(circuit)) == as_permutation(circuit)
    report("7 peephole soundness (1000 random circuits)")


def test_criterion_8_uncompute_property(corpus):
    for formula in corpus:
        circuit = append_uncompute(compile_formula(formula), formula)
        state = run(circuit)
        scratch = marginalize(state, circuit.layout.scratch_wires)
        assert abs(float(scratch.populations[0]) - 1.0) <= 1e-12, formula
    report(f"8 uncompute clears scratch ({len(corpus)} formulas)")


def test_criterion_9_resolvability_gate():
    from cnotsat import SpinSystem

    degenerate = SpinSystem(
        names=("W", "A", "B"),
        shifts=(0.0, 0.0, 0.0),
        observed=0,
        couplings=((0.0, 25.0, 25.0), (25.0, 0.0, 0.0), (25.0, 0.0, 0.0)),
        qubit_spins=(1, 2),
    )
    lines = thermal_reference(degenerate, 2)
    with pytest.raises(DegenerateMultipletError):
        extract_solutions(lines, degenerate, 2)

    for system, n in ((alanine_3q(), 2), (alanine_4q(), 3)):
        decoded = extract_solutions(thermal_reference(system, n), system, n)
        assert decoded.count == 0
    report("9 resolvability gate (degenerate rejected, alanine accepted)")
