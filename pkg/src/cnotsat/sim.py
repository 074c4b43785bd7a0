"""Exact simulation of diagonal mixed states under permutation circuits.

A state is a probability vector over basis indices.  NOT and MCX gates only
permute the computational basis, so the diagonal is a complete description;
no coherences ever appear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, QubitLayout, gate_permutation_indices
from .cnf import Assignment

WIDTH_CAP = 24
WEIGHT_TOL = 1e-12


class PipelineFormError(ValueError):
    """State is not of the uniform single-survivor form the pipeline produces."""


@dataclass(frozen=True, eq=False)
class PopulationState:
    """Normalized diagonal density operator: 2^width non-negative weights."""

    width: int
    populations: np.ndarray

    def __post_init__(self) -> None:
        if self.populations.shape != (1 << self.width,):
            raise ValueError("population vector length mismatch")
        if np.any(self.populations < 0):
            raise ValueError("negative population weight")
        if abs(float(self.populations.sum()) - 1.0) > WEIGHT_TOL:
            raise ValueError("populations do not sum to 1")


@dataclass(frozen=True)
class SolutionReport:
    """Assignments split by the work bit: x0=1 satisfies, x0=0 does not."""

    true_space: tuple[Assignment, ...]
    false_space: tuple[Assignment, ...]

    @property
    def count(self) -> int:
        return len(self.true_space)

    def bitstrings(self) -> tuple[str, ...]:
        return tuple(a.bitstring() for a in self.true_space)

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "true_space": list(self.bitstrings()),
            "false_space": [a.bitstring() for a in self.false_space],
        }


def initial_mixed_state(
    layout: QubitLayout, width_cap: int = WIDTH_CAP
) -> PopulationState:
    """Uniform mixture over all variable assignments; work and scratch bits 0."""
    width = layout.width
    if width > width_cap:
        raise ValueError(f"width {width} exceeds cap {width_cap}")
    n = layout.num_vars
    populations = np.zeros(1 << width)
    populations[np.arange(1 << n) << 1] = 2.0**-n
    return PopulationState(width, populations)


def apply_gate(state: PopulationState, gate: Gate) -> PopulationState:
    """Move weight along the gate's basis permutation."""
    indices = np.arange(1 << state.width, dtype=np.int64)
    target = gate_permutation_indices(indices, gate)
    if int(target.max()) >= (1 << state.width):
        raise ValueError(f"gate {gate} exceeds state width {state.width}")
    populations = np.empty_like(state.populations)
    populations[target] = state.populations
    return PopulationState(state.width, populations)


def run(circuit: Circuit, width_cap: int = WIDTH_CAP) -> PopulationState:
    state = initial_mixed_state(circuit.layout, width_cap)
    for gate in circuit.gates:
        state = apply_gate(state, gate)
    return state


def true_space(
    state: PopulationState, layout: QubitLayout, tol: float = 1e-9
) -> SolutionReport:
    """Partition assignments by the work bit of their surviving basis state.

    Requires pipeline form: for every assignment exactly one work/scratch
    pattern carries weight, equal to 2^-n.
    """
    n = layout.num_vars
    aux_bits = 1 + layout.num_scratch
    expected = 2.0**-n
    true_list: list[Assignment] = []
    false_list: list[Assignment] = []
    aux = np.arange(1 << aux_bits)
    for a in range(1 << n):
        indices = ((aux >> 1) << (n + 1)) | (a << 1) | (aux & 1)
        weights = state.populations[indices]
        nonzero = np.flatnonzero(weights > tol)
        if len(nonzero) != 1 or abs(float(weights[nonzero[0]]) - expected) > tol:
            raise PipelineFormError(
                f"assignment {a:0{n}b} has weight split across patterns"
            )
        assignment = Assignment.from_index(a, n)
        if int(aux[nonzero[0]]) & 1:
            true_list.append(assignment)
        else:
            false_list.append(assignment)
    return SolutionReport(tuple(true_list), tuple(false_list))


def marginalize(state: PopulationState, keep: tuple[int, ...]) -> PopulationState:
    """Trace out all wires not in `keep`; kept wires are renumbered in
    ascending order of their original index."""
    keep = tuple(sorted(set(keep)))
    if not keep:
        raise ValueError("must keep at least one wire")
    if max(keep) >= state.width:
        raise ValueError("kept wire out of range")
    indices = np.arange(1 << state.width, dtype=np.int64)
    new_indices = np.zeros_like(indices)
    for j, wire in enumerate(keep):
        new_indices |= ((indices >> wire) & 1) << j
    populations = np.bincount(
        new_indices, weights=state.populations, minlength=1 << len(keep)
    )
    return PopulationState(len(keep), populations)


def state_table(state: PopulationState, include_zero: bool = False) -> str:
    """Two-column table: basis bitstring (highest wire first) and weight."""
    lines = []
    for index, weight in enumerate(state.populations):
        if weight > 0 or include_zero:
            bits = format(index, f"0{state.width}b")
            lines.append(f"{bits} {weight:.12g}")
    return "\n".join(lines) + "\n"
