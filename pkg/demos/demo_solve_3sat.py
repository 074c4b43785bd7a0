"""End-to-end walkthrough: a 3-variable, 3-clause 3-SAT instance.

We compile the formula to a reversible NOT/MCX circuit, push the uniform
mixture over all assignments through it, and read the satisfying set both
directly from the work bit and by decoding the signed multiplet spectrum.
"""

from cnotsat import (
    alanine_4q,
    brute_force_solutions,
    compile_formula,
    cost_model,
    extract_solutions,
    multiplet_lines,
    parse_dimacs,
    peephole_cancel,
    run,
    true_space,
)
from cnotsat.circuit import circuit_census, circuit_to_text

FORMULA = """\
c (x1 or x2 or x3) and (x1 or x2 or not-x3) and (not-x1 or x2 or x3)
p cnf 3 3
1 2 3 0
1 2 -3 0
-1 2 3 0
"""

formula = parse_dimacs(FORMULA)
print(f"formula: n={formula.num_vars}, m={formula.num_clauses}")

# classical oracle first
oracle = brute_force_solutions(formula)
print("oracle solutions:", " ".join(a.bitstring() for a in oracle))

# compile and optimize
circuit = compile_formula(formula)
optimized = peephole_cancel(circuit)
_, raw_nots = circuit_census(circuit)
_, opt_nots = circuit_census(optimized)
print(f"\ncompiled circuit ({len(circuit.gates)} gates, "
      f"{raw_nots} NOTs; {opt_nots} NOTs after peephole):")
print(circuit_to_text(optimized))
print(cost_model(formula).report())

# simulate the mixed-state pipeline
state = run(optimized)
report = true_space(state, optimized.layout)
print("\ndirect readout:", " ".join(report.bitstrings()), f"({report.count} solutions)")

# spectral route: synthesize the work-spin multiplet and decode it
system = alanine_4q()
lines = multiplet_lines(state, optimized.layout, system)
print("\nsigned multiplet (negative lines are solutions):")
for line in lines:
    marker = "TRUE " if line.amplitude < 0 else "FALSE"
    print(f"  {line.frequency:9.3f} Hz  {line.amplitude:+.4f}  {marker}")

decoded = extract_solutions(lines, system, formula.num_vars)
print("\nspectral decode:", " ".join(decoded.bitstrings()))
assert decoded.true_space == report.true_space == oracle
print("all three routes agree")
