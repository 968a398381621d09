"""Color-code stabilizer data built from a colex.

X-type stabilizers sit on plaquettes (2D) or volumes (3D); Z-type
stabilizers sit on plaquettes in both dimensions.  The ground state of a
k = 0 code is represented exactly as the uniform superposition over the
X-check row space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .colex import CellSupport, Colex, cell_support
from .errors import ConstructionError
from .f2 import BinMat, BinVec, Pauli, f2_rank_solve, independent_rows, parity


@dataclass(frozen=True)
class ColorCode:
    colex: Colex
    x_rows: tuple[int, ...]
    x_colors: tuple[str, ...]
    x_cells: tuple[int, ...]
    z_rows: tuple[int, ...]
    z_colors: tuple[str, ...]
    z_cells: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.colex.n_qubits

    def x_matrix(self) -> BinMat:
        return BinMat(self.n, self.x_rows)

    def z_matrix(self) -> BinMat:
        return BinMat(self.n, self.z_rows)

    def x_stabilizer(self, i: int) -> Pauli:
        return Pauli(self.n, x=self.x_rows[i])

    def z_stabilizer(self, i: int) -> Pauli:
        return Pauli(self.n, z=self.z_rows[i])


def build_color_code(colex: Colex) -> ColorCode:
    x_cells = colex.top_cells
    z_cells = colex.plaquettes
    x_rows = tuple(c.support for c in x_cells)
    z_rows = tuple(c.support for c in z_cells)
    for xi, xr in enumerate(x_rows):
        for zi, zr in enumerate(z_rows):
            if (xr & zr).bit_count() % 2:
                raise ConstructionError(
                    f"X stabilizer {xi} anticommutes with Z stabilizer {zi}"
                )
    return ColorCode(
        colex=colex,
        x_rows=x_rows,
        x_colors=tuple(c.colors for c in x_cells),
        x_cells=tuple(c.index for c in x_cells),
        z_rows=z_rows,
        z_colors=tuple(c.colors for c in z_cells),
        z_cells=tuple(c.index for c in z_cells),
    )


def code_parameters(code: ColorCode) -> tuple[int, int]:
    rx, _ = f2_rank_solve(code.x_matrix())
    rz, _ = f2_rank_solve(code.z_matrix())
    return code.n, code.n - rx - rz


@dataclass(frozen=True)
class GroundState:
    """|gs> = 2^(-r/2) * sum over u of |u . G>, for a k = 0 code."""

    n: int
    gen_rows: tuple[int, ...]
    gen_indices: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.gen_rows)


def ground_state(code: ColorCode) -> GroundState:
    n, k = code_parameters(code)
    if k != 0:
        raise ValueError(f"code is degenerate (k = {k}); ground state not unique")
    idx = independent_rows(code.x_rows, n)
    return GroundState(
        n=n,
        gen_rows=tuple(code.x_rows[i] for i in idx),
        gen_indices=tuple(idx),
    )


@dataclass(frozen=True)
class Syndrome:
    """Violated-stabilizer indicators, X side and Z side separately."""

    x_bits: int
    z_bits: int
    x_colors: tuple[str, ...]
    z_colors: tuple[str, ...]

    def x_violations(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.x_colors) if (self.x_bits >> i) & 1)

    def z_violations(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.z_colors) if (self.z_bits >> i) & 1)

    def x_count_by_color(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for i in self.x_violations():
            out[self.x_colors[i]] = out.get(self.x_colors[i], 0) + 1
        return out

    def is_trivial(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0


def syndrome_of(code: ColorCode, p: Pauli) -> Syndrome:
    if p.n != code.n:
        raise ValueError("Pauli length does not match code")
    xb = 0
    for i, row in enumerate(code.x_rows):
        if parity(row & p.z):
            xb |= 1 << i
    zb = 0
    for i, row in enumerate(code.z_rows):
        if parity(row & p.x):
            zb |= 1 << i
    return Syndrome(xb, zb, code.x_colors, code.z_colors)


def string_or_membrane_operator(
    code: ColorCode, colors: str, spec, pauli_kind: str
) -> tuple[Pauli, CellSupport]:
    """Pauli string/membrane on the qubits selected by `spec`.

    Z on an open string excites the two complementary-color top cells at its
    endpoints; X on an open membrane excites the complementary-color-pair
    plaquettes along its boundary loop.
    """
    sup = cell_support(code.colex, colors, spec)
    if pauli_kind == "X":
        op = Pauli(code.n, x=sup.support)
    elif pauli_kind == "Z":
        op = Pauli(code.n, z=sup.support)
    else:
        raise ValueError(f"pauli_kind must be X or Z, not {pauli_kind!r}")
    return op, sup


def stabilizer_group_member(code: ColorCode, p: Pauli) -> bool:
    """True iff p is exactly an element of the stabilizer group (phase 0).

    CSS orthogonality makes every group element i^0 X^a Z^b with a in the
    X row space and b in the Z row space.
    """
    if p.phase != 0:
        return False
    _, solx = f2_rank_solve(code.x_matrix(), BinVec(code.n, p.x))
    if solx is None:
        return False
    _, solz = f2_rank_solve(code.z_matrix(), BinVec(code.n, p.z))
    return solz is not None


def export_css(code: ColorCode) -> str:
    """Plain-text CSS check matrices: one stabilizer per line, qubit indices."""
    lines = [f"n {code.n}"]
    for row, color in zip(code.x_rows, code.x_colors):
        idx = " ".join(str(i) for i in BinVec(code.n, row).indices())
        lines.append(f"X {color} {idx}")
    for row, color in zip(code.z_rows, code.z_colors):
        idx = " ".join(str(i) for i in BinVec(code.n, row).indices())
        lines.append(f"Z {color} {idx}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# transversal Clifford conjugation (for domain-wall automorphisms)
# ---------------------------------------------------------------------------


def conjugate_by_transversal(
    code: ColorCode, gate: str, region: int, p: Pauli
) -> Pauli:
    """Conjugate p by a transversal Clifford applied on `region` qubits.

    Gates: "H" (plain Hadamard), "R2" (phase gate, inverted on the T^c
    sublattice so the full operator preserves the code), and "T" (the
    X -> Y -> Z -> X color-code symmetry, realized as R2 followed by H).
    """
    if gate == "T":
        return conjugate_by_transversal(
            code, "H", region, conjugate_by_transversal(code, "R2", region, p)
        )
    x, z, phase = p.x, p.z, p.phase
    if gate == "H":
        phase = (phase + 2 * (x & z & region).bit_count()) % 4
        nx = (x & ~region) | (z & region)
        nz = (z & ~region) | (x & region)
        return Pauli(p.n, nx, nz, phase)
    if gate == "R2":
        t_in = region & code.colex.t_set
        t_out = region & ~code.colex.t_set
        phase = (phase + (x & t_in).bit_count() + 3 * (x & t_out).bit_count()) % 4
        return Pauli(p.n, x, z ^ (x & region), phase)
    raise ValueError(f"unknown transversal gate {gate!r}")


def transversal_preserves_code(code: ColorCode, gate: str, region: Optional[int] = None) -> bool:
    """Check that conjugation maps every stabilizer to a +1 group element."""
    if region is None:
        region = (1 << code.n) - 1
    for i in range(len(code.x_rows)):
        img = conjugate_by_transversal(code, gate, region, code.x_stabilizer(i))
        if not stabilizer_group_member(code, img):
            return False
    for i in range(len(code.z_rows)):
        img = conjugate_by_transversal(code, gate, region, code.z_stabilizer(i))
        if not stabilizer_group_member(code, img):
            return False
    return True
