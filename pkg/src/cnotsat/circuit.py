"""Reversible NOT/MCX circuit IR and the CNF-to-circuit compiler.

Wire layout convention: wire 0 is the work bit, wires 1..n the variables
x_1..x_n, wires n+1..n+m the clause scratchpads.  Basis indices put wire w
at bit w, so the work bit is the least significant bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cnf import Clause, CnfFormula

PERMUTATION_WIDTH_LIMIT = 20


class CompileError(ValueError):
    """Formula cannot be lowered to a circuit by the requested path."""


@dataclass(frozen=True)
class Not:
    target: int

    def __post_init__(self) -> None:
        if self.target < 0:
            raise ValueError("negative wire index")


@dataclass(frozen=True)
class Mcx:
    """Multi-controlled NOT: flips target iff every control wire is 1."""

    controls: frozenset[int]
    target: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "controls", frozenset(self.controls))
        if not self.controls:
            raise ValueError("Mcx needs at least one control")
        if self.target in self.controls:
            raise ValueError("Mcx target cannot be a control")
        if self.target < 0 or min(self.controls) < 0:
            raise ValueError("negative wire index")

    @property
    def arity(self) -> int:
        return len(self.controls)


Gate = Not | Mcx


def gate_wires(gate: Gate) -> frozenset[int]:
    if isinstance(gate, Not):
        return frozenset((gate.target,))
    return gate.controls | {gate.target}


@dataclass(frozen=True)
class QubitLayout:
    """Role map: work wire 0, variable wires 1..n, scratch wires n+1..n+m."""

    num_vars: int
    num_scratch: int = 0

    def __post_init__(self) -> None:
        if self.num_vars < 0 or self.num_scratch < 0:
            raise ValueError("negative qubit counts")

    @property
    def width(self) -> int:
        return self.num_vars + 1 + self.num_scratch

    @property
    def work_wire(self) -> int:
        return 0

    def var_wire(self, i: int) -> int:
        if not 1 <= i <= self.num_vars:
            raise ValueError(f"variable index {i} out of range")
        return i

    def scratch_wire(self, mu: int) -> int:
        if not 1 <= mu <= self.num_scratch:
            raise ValueError(f"scratch index {mu} out of range")
        return self.num_vars + mu

    @property
    def var_wires(self) -> tuple[int, ...]:
        return tuple(range(1, self.num_vars + 1))

    @property
    def scratch_wires(self) -> tuple[int, ...]:
        return tuple(range(self.num_vars + 1, self.width))


@dataclass(frozen=True)
class Circuit:
    layout: QubitLayout
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        for gate in self.gates:
            if max(gate_wires(gate)) >= self.layout.width:
                raise ValueError(f"gate {gate} exceeds width {self.layout.width}")


def compile_clause(
    clause: Clause, layout: QubitLayout, scratch_index: int
) -> tuple[Gate, ...]:
    """Clause block: NOTs on un-negated variables around an MCX onto the scratch wire.

    Maps |x>|s=0> to |x>|s=C(x)>.  A tautological clause (x and not-x) sets
    the scratch bit with a single NOT and no MCX.
    """
    clause = clause.deduplicated()
    if not clause.literals:
        raise CompileError("empty clause has no circuit form")
    scratch = layout.scratch_wire(scratch_index)
    if clause.is_tautology():
        return (Not(scratch),)
    positive = sorted(
        layout.var_wire(l.var) for l in clause.literals if not l.negated
    )
    all_wires = sorted(layout.var_wire(v) for v in clause.variables)
    layer = tuple(Not(w) for w in positive)
    return layer + (Mcx(frozenset(all_wires), scratch),) + layer + (Not(scratch),)


def compile_formula(formula: CnfFormula, width_cap: int = 24) -> Circuit:
    """General path: one clause block per clause, then an MCX from all scratch
    wires onto the work wire.  Maps |x>|0>|0..0> to |x>|F(x)>|C_m(x)..C_1(x)>.
    """
    m = formula.num_clauses
    if m == 0:
        raise CompileError("empty formula has no circuit form")
    for clause in formula.clauses:
        if not clause.literals:
            raise CompileError("empty clause has no circuit form")
    layout = QubitLayout(formula.num_vars, m)
    if layout.width > width_cap:
        raise CompileError(f"width {layout.width} exceeds cap {width_cap}")
    gates: list[Gate] = []
    for mu, clause in enumerate(formula.clauses, start=1):
        gates.extend(compile_clause(clause, layout, mu))
    gates.append(Mcx(frozenset(layout.scratch_wires), layout.work_wire))
    return Circuit(layout, tuple(gates))


def compile_1sat(formula: CnfFormula) -> Circuit:
    """Unit-clause conjunction as a single MCX sandwiched by NOTs on negated wires.

    Needs no scratch wires.  Rejects repeated or contradictory unit clauses
    (constant-false has no such form; use the general path).
    """
    if formula.num_clauses == 0:
        raise CompileError("empty formula has no circuit form")
    literals: list = []
    for clause in formula.clauses:
        clause = clause.deduplicated()
        if len(clause.literals) != 1:
            raise CompileError("not a 1-SAT formula")
        literals.append(clause.literals[0])
    seen_vars = [l.var for l in literals]
    if len(set(seen_vars)) != len(seen_vars):
        raise CompileError("repeated or contradictory unit clauses")
    layout = QubitLayout(formula.num_vars, 0)
    layer = tuple(Not(layout.var_wire(l.var)) for l in literals if l.negated)
    controls = frozenset(layout.var_wire(l.var) for l in literals)
    return Circuit(layout, layer + (Mcx(controls, layout.work_wire),) + layer)


def compile_single_clause(clause: Clause, num_vars: int) -> Circuit:
    """One-clause formula: NOTs on un-negated wires around an MCX onto the work
    wire, then a NOT on the work wire.  Needs no scratch wires.
    """
    clause = clause.deduplicated()
    if not clause.literals:
        raise CompileError("empty clause has no circuit form")
    if clause.is_tautology():
        raise CompileError("tautological clause has no single-clause form")
    layout = QubitLayout(num_vars, 0)
    positive = sorted(
        layout.var_wire(l.var) for l in clause.literals if not l.negated
    )
    controls = frozenset(layout.var_wire(v) for v in clause.variables)
    layer = tuple(Not(w) for w in positive)
    gates = (
        layer
        + (Mcx(controls, layout.work_wire),)
        + layer
        + (Not(layout.work_wire),)
    )
    return Circuit(layout, gates)


def peephole_cancel(circuit: Circuit) -> Circuit:
    """Remove NOT pairs on the same wire with no intervening gate on that wire.

    Deterministic left-to-right sweep repeated to a fixpoint; never changes
    the circuit's permutation.
    """
    gates = list(circuit.gates)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(gates):
            gate = gates[i]
            removed = False
            if isinstance(gate, Not):
                for j in range(i + 1, len(gates)):
                    other = gates[j]
                    if gate.target not in gate_wires(other):
                        continue
                    if isinstance(other, Not):
                        del gates[j]
                        del gates[i]
                        removed = True
                        changed = True
                    break
            if not removed:
                i += 1
            elif i > 0:
                i -= 1
    return Circuit(circuit.layout, tuple(gates))


def append_uncompute(circuit: Circuit, formula: CnfFormula) -> Circuit:
    """Append the clause blocks in reverse order, restoring all scratch wires to 0.

    Each clause block is its own inverse, so the appended tail undoes the
    scratch computation while the copied work-bit result survives.
    """
    expected = compile_formula(formula, width_cap=circuit.layout.width)
    if expected.layout != circuit.layout or expected.gates != circuit.gates:
        raise CompileError("circuit was not produced by compile_formula(formula)")
    tail: list[Gate] = []
    for mu in range(formula.num_clauses, 0, -1):
        tail.extend(compile_clause(formula.clauses[mu - 1], circuit.layout, mu))
    return Circuit(circuit.layout, circuit.gates + tuple(tail))


def _is_plain_1sat(formula: CnfFormula) -> bool:
    if formula.num_clauses == 0:
        return False
    seen = set()
    for clause in formula.clauses:
        clause = clause.deduplicated()
        if len(clause.literals) != 1 or clause.literals[0].var in seen:
            return False
        seen.add(clause.literals[0].var)
    return True


def compile_auto(formula: CnfFormula, width_cap: int = 24) -> Circuit:
    """Pick the cheapest faithful path: unit-clause conjunctions get the
    scratch-free MCX form, lone clauses the no-scratch form, everything else
    the general clause-block construction."""
    if _is_plain_1sat(formula):
        return compile_1sat(formula)
    if (
        formula.num_clauses == 1
        and formula.clauses[0].literals
        and not formula.clauses[0].deduplicated().is_tautology()
    ):
        return compile_single_clause(formula.clauses[0], formula.num_vars)
    return compile_formula(formula, width_cap=width_cap)


# -- exact semantics ---------------------------------------------------------


@dataclass(eq=False)
class BasisPermutation:
    """Bijection on basis indices [0, 2^width)."""

    width: int
    mapping: np.ndarray

    def __call__(self, index: int) -> int:
        return int(self.mapping[index])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BasisPermutation):
            return NotImplemented
        return self.width == other.width and bool(
            np.array_equal(self.mapping, other.mapping)
        )

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.mapping, np.arange(1 << self.width)))


def gate_permutation_indices(indices: np.ndarray, gate: Gate) -> np.ndarray:
    """Apply one gate's basis permutation elementwise to an index array."""
    if isinstance(gate, Not):
        return indices ^ (1 << gate.target)
    cmask = 0
    for c in gate.controls:
        cmask |= 1 << c
    out = indices.copy()
    sel = (out & cmask) == cmask
    out[sel] ^= 1 << gate.target
    return out


def as_permutation(
    circuit: Circuit, width_limit: int = PERMUTATION_WIDTH_LIMIT
) -> BasisPermutation:
    width = circuit.layout.width
    if width > width_limit:
        raise ValueError(f"width {width} exceeds permutation limit {width_limit}")
    mapping = np.arange(1 << width, dtype=np.int64)
    for gate in circuit.gates:
        mapping = gate_permutation_indices(mapping, gate)
    return BasisPermutation(width, mapping)


# -- gate accounting ---------------------------------------------------------


@dataclass(frozen=True)
class GateCounts:
    """Gate census of a compiled circuit plus projected elementary-gate costs.

    mcx_by_arity / not_count are read off the pre-peephole circuit.
    conjugation_nots counts one input-inversion layer (one NOT per literal
    whose wire is inverted around the clause MCX); this is the figure entering
    the O(km) NOT bound.  The elementary projections follow the published
    closed-form accounting for iterative multi-control decomposition and do
    not claim an executable gate sequence achieving them.
    """

    mcx_by_arity: dict[int, int] = field(default_factory=dict)
    not_count: int = 0
    conjugation_nots: int = 0
    elementary_cnot: int = 0
    elementary_single: int = 0

    def report(self) -> str:
        arities = " ".join(
            f"C{k}-NOT: {v}" for k, v in sorted(self.mcx_by_arity.items())
        )
        return "\n".join(
            [
                f"mcx gates: {arities if arities else 'none'}",
                f"not gates: {self.not_count}",
                f"inversion-layer nots: {self.conjugation_nots}",
                f"elementary C-NOT: {self.elementary_cnot}",
                f"elementary single-qubit: {self.elementary_single}",
            ]
        )


def circuit_census(circuit: Circuit) -> tuple[dict[int, int], int]:
    mcx_by_arity: dict[int, int] = {}
    not_count = 0
    for gate in circuit.gates:
        if isinstance(gate, Not):
            not_count += 1
        else:
            mcx_by_arity[gate.arity] = mcx_by_arity.get(gate.arity, 0) + 1
    return mcx_by_arity, not_count


def cost_model(formula: CnfFormula) -> GateCounts:
    """Gate counts for the compiled formula (pre-peephole) with elementary
    projections.

    Per-gate projection rule: a C1-NOT is one elementary C-NOT; a Ck-NOT
    (k >= 2) costs 3(k-1) C-NOTs and 4(k-1) single-qubit gates.  Circuits on
    the OR-clause paths report three fewer elementary C-NOTs than the plain
    per-gate sum, matching the published closed forms 3(3m-2) / 4(3m-1) for
    3-SAT with m clauses.
    """
    or_path = not _is_plain_1sat(formula)
    circuit = compile_auto(formula)
    mcx_by_arity, not_count = circuit_census(circuit)

    cnot = 0
    single = 0
    for arity, count in mcx_by_arity.items():
        if arity == 1:
            cnot += count
        else:
            cnot += 3 * (arity - 1) * count
            single += 4 * (arity - 1) * count
    if or_path and any(arity >= 2 for arity in mcx_by_arity):
        cnot -= 3

    conjugation = 0
    for clause in formula.clauses:
        clause = clause.deduplicated()
        if clause.is_tautology():
            continue
        if or_path:
            conjugation += sum(1 for l in clause.literals if not l.negated)
        else:
            conjugation += sum(1 for l in clause.literals if l.negated)
    return GateCounts(
        mcx_by_arity=mcx_by_arity,
        not_count=not_count,
        conjugation_nots=conjugation,
        elementary_cnot=cnot,
        elementary_single=single,
    )


# -- interchange format ------------------------------------------------------


def circuit_to_text(circuit: Circuit) -> str:
    """Line format: `qbc <width> <n> <m_scratch>`, then `x <t>` / `mcx c1,c2 <t>`."""
    lines = [
        f"qbc {circuit.layout.width} {circuit.layout.num_vars} "
        f"{circuit.layout.num_scratch}"
    ]
    for gate in circuit.gates:
        if isinstance(gate, Not):
            lines.append(f"x {gate.target}")
        else:
            lines.append(f"mcx {','.join(str(c) for c in sorted(gate.controls))} {gate.target}")
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> Circuit:
    lines = [l.strip() for l in text.splitlines() if l.strip() and not l.startswith("#")]
    if not lines or not lines[0].startswith("qbc"):
        raise ValueError("missing qbc header")
    parts = lines[0].split()
    if len(parts) != 4:
        raise ValueError(f"bad qbc header: {lines[0]!r}")
    width, num_vars, num_scratch = int(parts[1]), int(parts[2]), int(parts[3])
    layout = QubitLayout(num_vars, num_scratch)
    if layout.width != width:
        raise ValueError("header width inconsistent with role counts")
    gates: list[Gate] = []
    for line in lines[1:]:
        parts = line.split()
        if parts[0] == "x" and len(parts) == 2:
            gates.append(Not(int(parts[1])))
        elif parts[0] == "mcx" and len(parts) == 3:
            controls = frozenset(int(c) for c in parts[1].split(","))
            gates.append(Mcx(controls, int(parts[2])))
        else:
            raise ValueError(f"bad gate line: {line!r}")
    return Circuit(layout, tuple(gates))


def circuit_to_dict(circuit: Circuit) -> dict:
    gates = []
    for gate in circuit.gates:
        if isinstance(gate, Not):
            gates.append({"gate": "x", "target": gate.target})
        else:
            gates.append(
                {
                    "gate": "mcx",
                    "controls": sorted(gate.controls),
                    "target": gate.target,
                }
            )
    return {
        "width": circuit.layout.width,
        "num_vars": circuit.layout.num_vars,
        "num_scratch": circuit.layout.num_scratch,
        "gates": gates,
    }


def circuit_from_dict(data: dict) -> Circuit:
    layout = QubitLayout(data["num_vars"], data["num_scratch"])
    gates: list[Gate] = []
    for entry in data["gates"]:
        if entry["gate"] == "x":
            gates.append(Not(entry["target"]))
        else:
            gates.append(Mcx(frozenset(entry["controls"]), entry["target"]))
    return Circuit(layout, tuple(gates))
