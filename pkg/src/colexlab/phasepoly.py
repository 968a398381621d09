"""Diagonal gates as phase polynomials over Z_{2^k}, and their commutators.

A level-k diagonal unitary is sum_v omega^theta(v) |v><v| with
omega = e^{i pi / 2^(k-1)} and theta a multilinear polynomial in the qubit
bits with coefficients mod 2^k.  Group commutators with Paulis shift the
argument, K(D, P) = diag(theta(v) - theta(v XOR x_P)), which lowers the
Clifford-hierarchy level by one; iterating k-1 times on a transversal
level-k operator lands on a Pauli diagonal.

MixedOperator keeps everything in the normal form X^x * diagonal, so
arbitrary products, inverses and nested commutators of membrane operators
stay exact.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional, Union

from .code import ColorCode, GroundState, code_parameters, ground_state
from .cyclo import Cyc
from .errors import ResourceError
from .f2 import BinVec, Pauli, f2_rank_solve

ENUMERATION_LIMIT = 20  # largest r for brute-force row-space sums


def _subsets(mask: int) -> Iterable[int]:
    """All submasks of mask, including 0 and mask."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class PhasePolynomial:
    """theta: F_2^n -> Z_{2^k}, stored sparsely as {monomial mask: coeff}."""

    __slots__ = ("n", "level", "coeffs")

    def __init__(self, n: int, level: int, coeffs: Optional[Mapping[int, int]] = None):
        if not 1 <= level <= 3:
            raise ValueError("level outside modeled range 1..3")
        self.n = n
        self.level = level
        mod = 1 << level
        clean: dict[int, int] = {}
        if coeffs:
            for mask, c in coeffs.items():
                c %= mod
                if c:
                    clean[mask] = c
        self.coeffs = clean

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(n: int, level: int = 1) -> "PhasePolynomial":
        return PhasePolynomial(n, level)

    @staticmethod
    def constant(n: int, level: int, c: int) -> "PhasePolynomial":
        return PhasePolynomial(n, level, {0: c})

    @staticmethod
    def linear(n: int, level: int, qubit_coeffs: Mapping[int, int], const: int = 0) -> "PhasePolynomial":
        coeffs = {1 << q: c for q, c in qubit_coeffs.items()}
        coeffs[0] = const
        return PhasePolynomial(n, level, coeffs)

    # -- basic queries --------------------------------------------------------

    @property
    def modulus(self) -> int:
        return 1 << self.level

    def degree(self) -> int:
        deg = 0
        for mask in self.coeffs:
            if mask:
                deg = max(deg, mask.bit_count())
        return deg

    def is_constant(self) -> bool:
        return all(mask == 0 for mask in self.coeffs)

    def constant_term(self) -> int:
        return self.coeffs.get(0, 0)

    def min_level(self, include_constant: bool = False) -> int:
        """Smallest level at which the non-constant part is representable."""
        need = 1
        for mask, c in self.coeffs.items():
            if mask == 0 and not include_constant:
                continue
            # c * omega_k ~ c * 2^(l-k) at level l: need 2^(k-l) | c
            k = self.level
            while k > need and c % (1 << (k - need)):
                need += 1
        return need

    def evaluate(self, v: int) -> int:
        total = 0
        for mask, c in self.coeffs.items():
            if v & mask == mask:
                total += c
        return total % self.modulus

    def phase_at(self, v: int) -> Cyc:
        return Cyc.level_phase(self.evaluate(v), self.level)

    def support(self) -> int:
        out = 0
        for mask in self.coeffs:
            out |= mask
        return out

    def linear_coeffs(self) -> dict[int, int]:
        """Qubit -> coefficient, for polynomials of degree <= 1."""
        out = {}
        for mask, c in self.coeffs.items():
            if mask == 0:
                continue
            if mask.bit_count() != 1:
                raise ValueError("polynomial is not linear")
            out[mask.bit_length() - 1] = c
        return out

    def as_pauli_z(self) -> Optional[tuple[int, int]]:
        """(z mask, constant) if the operator is a Pauli diagonal, else None."""
        half = 1 << (self.level - 1)
        z = 0
        for mask, c in self.coeffs.items():
            if mask == 0:
                continue
            if mask.bit_count() != 1 or c != half:
                return None
            z |= mask
        return z, self.constant_term()

    # -- algebra ---------------------------------------------------------------

    def lifted(self, level: int) -> "PhasePolynomial":
        if level < self.level:
            raise ValueError("cannot lower level by lifting")
        if level == self.level:
            return self
        factor = 1 << (level - self.level)
        return PhasePolynomial(self.n, level, {m: c * factor for m, c in self.coeffs.items()})

    def reduced(self) -> "PhasePolynomial":
        """Same operator at its minimal level (constant may force level up)."""
        lv = max(self.min_level(), self.min_level(include_constant=True))
        if lv == self.level:
            return self
        drop = self.level - lv
        return PhasePolynomial(self.n, lv, {m: c >> drop for m, c in self.coeffs.items()})

    def _common(self, other: "PhasePolynomial") -> tuple["PhasePolynomial", "PhasePolynomial"]:
        lv = max(self.level, other.level)
        return self.lifted(lv), other.lifted(lv)

    def __add__(self, other: "PhasePolynomial") -> "PhasePolynomial":
        a, b = self._common(other)
        out = dict(a.coeffs)
        for m, c in b.coeffs.items():
            out[m] = out.get(m, 0) + c
        return PhasePolynomial(self.n, a.level, out)

    def __neg__(self) -> "PhasePolynomial":
        return PhasePolynomial(self.n, self.level, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "PhasePolynomial") -> "PhasePolynomial":
        return self + (-other)

    def shifted(self, b: int) -> "PhasePolynomial":
        """theta(v XOR b)."""
        if b == 0:
            return self
        out: dict[int, int] = {}
        for mask, c in self.coeffs.items():
            flip = mask & b
            keep = mask & ~b
            for t in _subsets(flip):
                sign = -1 if t.bit_count() % 2 else 1
                key = keep | t
                out[key] = out.get(key, 0) + sign * c
        return PhasePolynomial(self.n, self.level, out)

    def plus_constant(self, c: int) -> "PhasePolynomial":
        out = dict(self.coeffs)
        out[0] = out.get(0, 0) + c
        return PhasePolynomial(self.n, self.level, out)

    def without_constant(self) -> "PhasePolynomial":
        out = {m: c for m, c in self.coeffs.items() if m != 0}
        return PhasePolynomial(self.n, self.level, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        red = self.reduced()
        return hash((red.n, red.level, tuple(sorted(red.coeffs.items()))))

    def equals_up_to_constant(self, other: "PhasePolynomial") -> bool:
        a, b = self._common(other)
        return a.without_constant().coeffs == b.without_constant().coeffs

    def __repr__(self) -> str:
        terms = []
        for mask, c in sorted(self.coeffs.items()):
            if mask == 0:
                terms.append(str(c))
            else:
                name = "*".join(f"v{i}" for i in BinVec(self.n, mask).indices())
                terms.append(f"{c}*{name}")
        body = " + ".join(terms) if terms else "0"
        return f"PhasePoly[level={self.level}]({body})"

    def export(self) -> dict:
        return {
            "n": self.n,
            "level": self.level,
            "terms": [[list(BinVec(self.n, m).indices()), c] for m, c in sorted(self.coeffs.items())],
        }

    @staticmethod
    def from_export(doc: dict) -> "PhasePolynomial":
        coeffs = {}
        for idxs, c in doc["terms"]:
            mask = 0
            for i in idxs:
                mask |= 1 << i
            coeffs[mask] = c
        return PhasePolynomial(doc["n"], doc["level"], coeffs)


def transversal_phase_poly(source, level: int, region: Optional[int] = None) -> PhasePolynomial:
    """Restriction of the transversal R_level operator to a qubit region.

    Coefficient +1 on T qubits and -1 on T^c qubits (the paperized
    bipartition signs); region defaults to every qubit.
    """
    colex = source.colex if isinstance(source, ColorCode) else source
    if not 2 <= level <= 3:
        raise ValueError("transversal phase level must be 2 or 3")
    n = colex.n_qubits
    mask = region if region is not None else (1 << n) - 1
    coeffs: dict[int, int] = {}
    for q in BinVec(n, mask).indices():
        coeffs[1 << q] = 1 if (colex.t_set >> q) & 1 else (1 << level) - 1
    return PhasePolynomial(n, level, coeffs)


def single_qubit_phase_poly(n: int, qubit: int, eighths: int) -> PhasePolynomial:
    """R(theta) = diag(1, e^{i theta}) on one qubit, theta = eighths * pi/4."""
    return PhasePolynomial(n, 3, {1 << qubit: eighths})


def cz_poly(n: int, q1: int, q2: int) -> PhasePolynomial:
    """Controlled-Z between two qubits: theta = 2 v_q1 v_q2 at level 2."""
    if q1 == q2:
        raise ValueError("CZ needs two distinct qubits")
    return PhasePolynomial(n, 2, {(1 << q1) | (1 << q2): 2})


class MixedOperator:
    """Normal form X^x * diag(omega^theta), closed under products and K."""

    __slots__ = ("n", "x", "poly")

    def __init__(self, n: int, x: int = 0, poly: Optional[PhasePolynomial] = None):
        self.n = n
        self.x = x
        self.poly = poly if poly is not None else PhasePolynomial.zero(n)

    @staticmethod
    def identity(n: int) -> "MixedOperator":
        return MixedOperator(n)

    @staticmethod
    def from_diagonal(poly: PhasePolynomial) -> "MixedOperator":
        return MixedOperator(poly.n, 0, poly)

    @staticmethod
    def from_pauli(p: Pauli) -> "MixedOperator":
        coeffs = {1 << q: 2 for q in BinVec(p.n, p.z).indices()}
        coeffs[0] = p.phase
        return MixedOperator(p.n, p.x, PhasePolynomial(p.n, 2, coeffs))

    def is_diagonal(self) -> bool:
        return self.x == 0

    def as_pauli(self) -> Optional[Pauli]:
        res = self.poly.as_pauli_z()
        if res is None:
            return None
        z, const = res
        m = Cyc.level_phase(const, self.poly.level).as_omega_power()
        if m is None or m % 2:
            return None
        return Pauli(self.n, self.x, z, m // 2)

    def __mul__(self, other: "MixedOperator") -> "MixedOperator":
        if self.n != other.n:
            raise ValueError("length mismatch")
        poly = self.poly.shifted(other.x) + other.poly
        return MixedOperator(self.n, self.x ^ other.x, poly)

    def inverse(self) -> "MixedOperator":
        return MixedOperator(self.n, self.x, -(self.poly.shifted(self.x)))

    dagger = inverse

    def commutator(self, other: "MixedOperator") -> "MixedOperator":
        """K(self, other) = self * other * self^-1 * other^-1."""
        return self * other * self.inverse() * other.inverse()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MixedOperator):
            return NotImplemented
        return self.n == other.n and self.x == other.x and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.n, self.x, self.poly))

    def equals_up_to_constant(self, other: "MixedOperator") -> bool:
        return self.x == other.x and self.poly.equals_up_to_constant(other.poly)

    def is_identity(self, up_to_constant: bool = False) -> bool:
        if self.x:
            return False
        body = self.poly.without_constant()
        if body.coeffs:
            return False
        return up_to_constant or self.poly.constant_term() == 0

    def __repr__(self) -> str:
        xs = "".join(f"X{i}" for i in BinVec(self.n, self.x).indices()) or "I"
        return f"Mixed({xs} * {self.poly!r})"


def pauli_commutator(d: PhasePolynomial, p: Pauli) -> MixedOperator:
    """K(D, P) = D (P D P^dag)^dag = diag(theta(v) - theta(v XOR x_P)).

    P's Z part and phase cancel; a pure-Z P gives the scalar 1.  For
    hierarchy polynomials the result sits one Clifford level lower.
    """
    if d.n != p.n:
        raise ValueError("length mismatch")
    return MixedOperator.from_diagonal(d - d.shifted(p.x))


def sequential_commutator(
    ops: list[MixedOperator], code: Optional[ColorCode] = None
) -> Union[Cyc, MixedOperator]:
    """Left-nested group commutator K(...K(K(U1, U2), U3)..., Um).

    Returns the exact scalar when the result is a phase times a stabilizer
    group element (always, when no code is supplied but the normal form is
    literally a constant); otherwise the MixedOperator normal form.
    """
    if len(ops) < 2:
        raise ValueError("need at least two operators")
    acc = ops[0]
    for op in ops[1:]:
        acc = acc.commutator(op)
    if code is not None:
        scal = scalar_on_codespace(code, acc)
        if scal is not None:
            return scal
        return acc
    if acc.x == 0 and acc.poly.is_constant():
        return Cyc.level_phase(acc.poly.constant_term(), acc.poly.level)
    return acc


# ---------------------------------------------------------------------------
# row-space reduction and ground-state expectations
# ---------------------------------------------------------------------------


def poly_on_rowspace(poly: PhasePolynomial, gens: tuple[int, ...]) -> PhasePolynomial:
    """theta(u . G) as a polynomial in the r coefficient bits u.

    Each qubit bit is the XOR of its generator column; XOR expands to
    sum_{S nonempty} (-1)^(|S|+1) 2^(|S|-1) prod(u_i), and subsets with
    2^(|S|-1) = 0 mod 2^k are dropped, so expansion stays small.
    """
    r = len(gens)
    level = poly.level
    mod = 1 << level
    cols: dict[int, int] = {}
    out: dict[int, int] = {}

    def column(q: int) -> int:
        if q not in cols:
            mask = 0
            for i, row in enumerate(gens):
                if (row >> q) & 1:
                    mask |= 1 << i
            cols[q] = mask
        return cols[q]

    def xor_poly(q: int) -> dict[int, int]:
        col = column(q)
        terms: dict[int, int] = {}
        _accumulate_subsets(col, level, terms)
        return terms

    for mask, c in poly.coeffs.items():
        prod: dict[int, int] = {0: 1}
        for q in BinVec(poly.n, mask).indices():
            factor = xor_poly(q)
            nxt: dict[int, int] = {}
            for m1, c1 in prod.items():
                for m2, c2 in factor.items():
                    cc = (c1 * c2) % mod
                    if cc:
                        key = m1 | m2
                        nxt[key] = (nxt.get(key, 0) + cc) % mod
            prod = nxt
            if not prod:
                break
        for m, cc in prod.items():
            out[m] = (out.get(m, 0) + c * cc) % mod
    return PhasePolynomial(r, level, out)


def _accumulate_subsets(col: int, level: int, terms: dict[int, int]) -> None:
    """XOR of the bits in col, expanded multilinearly mod 2^level."""
    idx = [i for i in range(col.bit_length()) if (col >> i) & 1]
    mod = 1 << level
    # subsets of size s contribute (-1)^(s+1) 2^(s-1); s > level vanishes
    import itertools

    for s in range(1, min(level, len(idx)) + 1):
        coeff = ((-1) ** (s + 1)) * (1 << (s - 1)) % mod
        for combo in itertools.combinations(idx, s):
            m = 0
            for i in combo:
                m |= 1 << i
            terms[m] = (terms.get(m, 0) + coeff) % mod


def preserves_codespace(code: ColorCode, d: PhasePolynomial) -> bool:
    """True iff the diagonal operator acts as a global phase on the ground state.

    Decided symbolically: theta(u . G) must be constant in u.  Falls back to
    enumeration for small r as a cross-check path.
    """
    gs = ground_state(code)
    reduced = poly_on_rowspace(d, gs.gen_rows)
    if reduced.is_constant():
        return True
    if gs.r <= ENUMERATION_LIMIT:
        base = reduced.evaluate(0)
        return all(reduced.evaluate(u) == base for u in range(1 << gs.r))
    return False


def scalar_on_codespace(code: ColorCode, m: MixedOperator) -> Optional[Cyc]:
    """The exact scalar m acts as on the code space, or None.

    The Pauli-diagonal route (X part in the X row space, Z part in the Z row
    space) certifies scalars on degenerate codes too; the row-space constancy
    route needs a unique ground state.
    """
    _, solx = f2_rank_solve(code.x_matrix(), BinVec(code.n, m.x))
    if solx is None:
        return None
    pz = m.poly.as_pauli_z()
    if pz is not None:
        z, const = pz
        _, solz = f2_rank_solve(code.z_matrix(), BinVec(code.n, z))
        if solz is not None:
            return Cyc.level_phase(const, m.poly.level)
    _, k = code_parameters(code)
    if k != 0:
        return None
    gs = ground_state(code)
    reduced = poly_on_rowspace(m.poly, gs.gen_rows)
    if reduced.is_constant():
        return Cyc.level_phase(reduced.constant_term(), reduced.level)
    return None


def ground_expectation(code: ColorCode, m: MixedOperator) -> Cyc:
    """<gs| m |gs> exactly, for a k = 0 code.

    Equals the average of omega^theta over the X row space when the X part
    lies in the row space, and 0 otherwise.
    """
    gs = ground_state(code)
    _, solx = f2_rank_solve(code.x_matrix(), BinVec(code.n, m.x))
    if solx is None:
        return Cyc.zero()
    reduced = poly_on_rowspace(m.poly, gs.gen_rows)
    if reduced.is_constant():
        return Cyc.level_phase(reduced.constant_term(), reduced.level)
    if gs.r > ENUMERATION_LIMIT:
        raise ResourceError(
            f"row-space rank {gs.r} too large for enumeration and the "
            "polynomial does not reduce to a constant"
        )
    total = Cyc.zero()
    for u in range(1 << gs.r):
        total = total + reduced.phase_at(u)
    return Cyc(total.c0, total.c1, total.c2, total.c3, total.t + 2 * gs.r)
