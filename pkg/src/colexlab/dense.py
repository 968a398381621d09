"""Dense statevector oracle: an independent numeric verification channel.

Everything here is float-based numpy; symbolic results from the rest of the
package are compared against these amplitudes at 1e-10.  Limited to n <= 20
qubits by design.
"""

from __future__ import annotations

import numpy as np

from .code import ColorCode, ground_state
from .errors import ResourceError
from .f2 import BinVec, Pauli
from .phasepoly import MixedOperator, PhasePolynomial

DENSE_QUBIT_LIMIT = 20


def _check_size(n: int) -> None:
    if n > DENSE_QUBIT_LIMIT:
        raise ResourceError(f"dense oracle limited to {DENSE_QUBIT_LIMIT} qubits, got {n}")


def ground_state_vector(code: ColorCode) -> np.ndarray:
    """Uniform superposition over the X-check row space (k = 0 codes)."""
    _check_size(code.n)
    gs = ground_state(code)
    vec = np.zeros(1 << code.n, dtype=complex)
    amp = 2.0 ** (-gs.r / 2)
    for u in range(1 << gs.r):
        idx = 0
        for i in range(gs.r):
            if (u >> i) & 1:
                idx ^= gs.gen_rows[i]
        vec[idx] += amp
    return vec


def apply_diagonal(vec: np.ndarray, poly: PhasePolynomial) -> np.ndarray:
    n = poly.n
    _check_size(n)
    idx = np.arange(1 << n, dtype=np.int64)
    theta = np.zeros(1 << n, dtype=np.int64)
    for mask, c in poly.coeffs.items():
        theta += c * ((idx & mask) == mask)
    unit = np.pi / (1 << (poly.level - 1))
    return vec * np.exp(1j * unit * theta)


def apply_mixed(vec: np.ndarray, op: MixedOperator) -> np.ndarray:
    """Apply X^x * diag(omega^theta) to a dense state."""
    out = apply_diagonal(vec, op.poly)
    if op.x:
        idx = np.arange(len(out), dtype=np.int64)
        out = out[idx ^ op.x]
    return out


def apply_pauli(vec: np.ndarray, p: Pauli) -> np.ndarray:
    return apply_mixed(vec, MixedOperator.from_pauli(p))


def apply_sequence(vec: np.ndarray, ops: list[MixedOperator]) -> np.ndarray:
    for op in ops:
        vec = apply_mixed(vec, op)
    return vec


def dense_statevector_oracle(code: ColorCode, ops: list[MixedOperator]) -> np.ndarray:
    """Ground state with the given operators applied, as a dense vector."""
    return apply_sequence(ground_state_vector(code), ops)


def inner(a: np.ndarray, b: np.ndarray) -> complex:
    return complex(np.vdot(a, b))


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    return abs(inner(a, b))


def expectation(vec: np.ndarray, op: MixedOperator) -> complex:
    return inner(vec, apply_mixed(vec, op))


def excitation_basis_vector(
    code: ColorCode, pattern: int, c_signed: bool = True
) -> np.ndarray:
    """Dense |p~> for a full syndrome pattern over the X rows.

    Built from the independent generator subset; the dependent rows must
    carry the parity the pattern implies, otherwise the vector vanishes.
    With `c_signed`, the basis vector carries the package's convention of a
    (-1) per excited C-colored cell.
    """
    _check_size(code.n)
    gs = ground_state(code)
    vec = np.zeros(1 << code.n, dtype=complex)
    amp = 2.0 ** (-gs.r / 2)
    signs = BinVec(len(code.x_rows), pattern)
    sel = 0
    for pos, row_idx in enumerate(gs.gen_indices):
        if signs[row_idx]:
            sel |= 1 << pos
    for u in range(1 << gs.r):
        idx = 0
        for i in range(gs.r):
            if (u >> i) & 1:
                idx ^= gs.gen_rows[i]
        chi = -1.0 if ((u & sel).bit_count() % 2) else 1.0
        vec[idx] += chi * amp
    # reject patterns inconsistent with the dependent rows
    for i, row in enumerate(code.x_rows):
        want = -1.0 if signs[i] else 1.0
        got = inner(vec, apply_pauli(vec, Pauli(code.n, x=row)))
        if abs(got - want) > 1e-9:
            vec[:] = 0.0
            return vec
    if c_signed:
        n_c = sum(1 for i in range(len(code.x_rows)) if signs[i] and code.x_colors[i] == "C")
        if n_c % 2:
            vec = -vec
    return vec
