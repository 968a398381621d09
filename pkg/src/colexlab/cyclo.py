"""Exact arithmetic in Z[omega] with dyadic normalization, omega = e^{i pi/4}.

Every phase that appears in the color-code calculus is an eighth root of
unity, and every amplitude is a Z[omega]-combination divided by a power of
sqrt(2).  An element is stored as (c0 + c1*w + c2*w^2 + c3*w^3) * 2^(-t/2)
with integer coefficients, so all comparisons are exact; floats appear only
at reporting and oracle boundaries.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass


_OMEGA_COMPLEX = cmath.exp(1j * cmath.pi / 4)


@dataclass(frozen=True)
class Cyc:
    """(c0 + c1 w + c2 w^2 + c3 w^3) * 2^(-t/2), with w^4 = -1."""

    c0: int = 0
    c1: int = 0
    c2: int = 0
    c3: int = 0
    t: int = 0

    def __post_init__(self) -> None:
        if self.t < 0:
            raise ValueError("negative dyadic scale")
        # canonical form: pull out factors of 2 while the scale allows
        c0, c1, c2, c3, t = self.c0, self.c1, self.c2, self.c3, self.t
        if c0 == 0 and c1 == 0 and c2 == 0 and c3 == 0:
            t = 0
        else:
            while t >= 2 and not ((c0 | c1 | c2 | c3) & 1):
                c0 //= 2
                c1 //= 2
                c2 //= 2
                c3 //= 2
                t -= 2
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)
        object.__setattr__(self, "c3", c3)
        object.__setattr__(self, "t", t)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Cyc":
        return Cyc()

    @staticmethod
    def one() -> "Cyc":
        return Cyc(1)

    @staticmethod
    def from_int(k: int) -> "Cyc":
        return Cyc(k)

    @staticmethod
    def omega_power(m: int) -> "Cyc":
        """w^m for any integer m (w^8 = 1, w^4 = -1)."""
        m %= 8
        sign = 1
        if m >= 4:
            sign = -1
            m -= 4
        coeffs = [0, 0, 0, 0]
        coeffs[m] = sign
        return Cyc(*coeffs)

    @staticmethod
    def level_phase(exponent: int, level: int) -> "Cyc":
        """omega_level^exponent where omega_level = e^{i pi / 2^(level-1)}.

        Level 1 is (-1)^e, level 2 is i^e, level 3 is w^e.
        """
        if not 1 <= level <= 3:
            raise ValueError("level outside modeled range 1..3")
        return Cyc.omega_power(exponent * (1 << (3 - level)))

    # -- ring operations ---------------------------------------------------

    def _coeffs(self) -> tuple[int, int, int, int]:
        return (self.c0, self.c1, self.c2, self.c3)

    def _raised(self, dt: int) -> tuple[int, int, int, int]:
        """Coefficients after multiplying by 2^(dt/2) (dt >= 0)."""
        c0, c1, c2, c3 = self._coeffs()
        c0 <<= dt // 2
        c1 <<= dt // 2
        c2 <<= dt // 2
        c3 <<= dt // 2
        if dt & 1:
            # multiply by sqrt(2) = w - w^3
            c0, c1, c2, c3 = (c1 - c3, c0 + c2, c1 + c3, c2 - c0)
        return (c0, c1, c2, c3)

    def __add__(self, other: "Cyc") -> "Cyc":
        t = max(self.t, other.t)
        a = self._raised(t - self.t)
        b = other._raised(t - other.t)
        return Cyc(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], t)

    def __neg__(self) -> "Cyc":
        return Cyc(-self.c0, -self.c1, -self.c2, -self.c3, self.t)

    def __sub__(self, other: "Cyc") -> "Cyc":
        return self + (-other)

    def __mul__(self, other: "Cyc") -> "Cyc":
        a = self._coeffs()
        b = other._coeffs()
        out = [0, 0, 0, 0]
        for i in range(4):
            if a[i] == 0:
                continue
            for j in range(4):
                if b[j] == 0:
                    continue
                k = i + j
                if k >= 4:
                    out[k - 4] -= a[i] * b[j]
                else:
                    out[k] += a[i] * b[j]
        return Cyc(out[0], out[1], out[2], out[3], self.t + other.t)

    def conj(self) -> "Cyc":
        return Cyc(self.c0, -self.c3, -self.c2, -self.c1, self.t)

    def times_half(self) -> "Cyc":
        return Cyc(self.c0, self.c1, self.c2, self.c3, self.t + 2)

    def times_inv_sqrt2(self) -> "Cyc":
        return Cyc(self.c0, self.c1, self.c2, self.c3, self.t + 1)

    def abs_sq(self) -> "Cyc":
        return self * self.conj()

    # -- predicates and conversions ----------------------------------------

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0 and self.c2 == 0 and self.c3 == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cyc):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        # canonical form is unique up to an odd-t ambiguity; resolve by
        # raising to even scale before hashing
        if self.t & 1:
            return hash(self._raised(1) + (self.t + 1,))
        return hash(self._coeffs() + (self.t,))

    def as_omega_power(self) -> int | None:
        """m with self == w^m, or None if self is not a unit phase."""
        for m in range(8):
            if self == Cyc.omega_power(m):
                return m
        return None

    def to_complex(self) -> complex:
        val = complex(self.c0)
        w = _OMEGA_COMPLEX
        val += self.c1 * w + self.c2 * w * w + self.c3 * w * w * w
        return val / (2 ** (self.t / 2))

    def __repr__(self) -> str:
        if self.is_zero():
            return "Cyc(0)"
        body = f"({self.c0}+{self.c1}w+{self.c2}w2+{self.c3}w3)"
        if self.t:
            return f"Cyc{body}/2^({self.t}/2)"
        return f"Cyc{body}"

    def export(self) -> list[int]:
        """Bit-exact serialization: [c0, c1, c2, c3, t]."""
        return [self.c0, self.c1, self.c2, self.c3, self.t]

    @staticmethod
    def from_export(data: list[int]) -> "Cyc":
        c0, c1, c2, c3, t = data
        return Cyc(c0, c1, c2, c3, t)


def phase_as_pi_fraction(value: Cyc) -> tuple[int, int]:
    """Express a unit phase as exp(i pi * num / 2^pow2): returns (num, pow2).

    Raises ValueError when the value is not an eighth root of unity; reports
    the reduced form (e.g. -1 -> (1, 0), i -> (1, 1), w -> (1, 2)).
    """
    m = value.as_omega_power()
    if m is None:
        raise ValueError(f"not an exact eighth root of unity: {value!r}")
    num, pow2 = m, 2  # exp(i pi m / 4)
    while num % 2 == 0 and pow2 > 0:
        num //= 2
        pow2 -= 1
    return num, pow2
