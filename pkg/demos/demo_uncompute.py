"""Scratchpad cleanup: appending the clause blocks in reverse restores every
scratch qubit to 0 while the copied result survives on the work bit."""

from cnotsat import (
    append_uncompute,
    compile_formula,
    marginalize,
    parse_dimacs,
    run,
    true_space,
)
from cnotsat.sim import state_table

formula = parse_dimacs("p cnf 3 3\n1 2 3 0\n1 2 -3 0\n-1 2 3 0")
circuit = compile_formula(formula)

state = run(circuit)
print("scratch marginal before uncompute (bits s3 s2 s1):")
print(state_table(marginalize(state, circuit.layout.scratch_wires)))

cleaned = append_uncompute(circuit, formula)
state = run(cleaned)
print("scratch marginal after uncompute:")
print(state_table(marginalize(state, cleaned.layout.scratch_wires)))

report = true_space(state, cleaned.layout)
print("solutions still read off the work bit:", " ".join(report.bitstrings()))
