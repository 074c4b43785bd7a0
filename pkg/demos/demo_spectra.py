"""Render reference and result spectra as CSV traces for external plotting.

Produces three traces in the current directory:
  thermal_4q.csv   - equilibrium reference multiplet (all lines positive)
  onesat_110.csv   - result for not-x1 and x2 and x3 (one inverted line)
  tautology.csv    - result for x1 or not-x1 (everything in the TRUE space)
"""

from cnotsat import (
    alanine_3q,
    alanine_4q,
    compile_1sat,
    compile_formula,
    multiplet_lines,
    parse_dimacs,
    render,
    run,
    thermal_reference,
)
from cnotsat.spectrum import trace_csv

LINEWIDTH = 1.0


def write(name, lines, f_min, f_max):
    freqs, values = render(lines, f_min, f_max, points=4001, linewidth=LINEWIDTH)
    with open(name, "w") as handle:
        handle.write(trace_csv(freqs, values))
    print(f"wrote {name} ({len(lines)} lines)")


# thermal reference on the four-spin system: 8 positive lines
write("thermal_4q.csv", thermal_reference(alanine_4q(), 3), -130, 130)

# 1-SAT whose single solution is 110: its line flips sign
formula = parse_dimacs("p cnf 3 3\n-1 0\n2 0\n3 0")
circuit = compile_1sat(formula)
write(
    "onesat_110.csv",
    multiplet_lines(run(circuit), circuit.layout, alanine_4q()),
    -130,
    130,
)

# tautology x1 or not-x1: both lines negative
formula = parse_dimacs("p cnf 1 1\n1 -1 0")
circuit = compile_formula(formula)
write(
    "tautology.csv",
    multiplet_lines(run(circuit), circuit.layout, alanine_3q()),
    -30,
    30,
)
