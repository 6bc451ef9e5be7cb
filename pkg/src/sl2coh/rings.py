"""Exact scalar arithmetic over the integers and over Z/m.

A ring is either the integers (modulus None) or Z/m with m >= 2.  Residues
are always stored reduced into [0, m).  Mixed-ring arithmetic is a hard
error, never a coercion.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import ExactDivisionError, RingMismatchError


@dataclass(frozen=True)
class Ring:
    """The integers (modulus None) or the residue ring Z/modulus."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")

    @property
    def is_integers(self) -> bool:
        return self.modulus is None

    def normalize(self, value: int) -> int:
        if self.modulus is None:
            return value
        return value % self.modulus

    def invert(self, value: int) -> int:
        """Multiplicative inverse of a unit; ExactDivisionError otherwise."""
        if self.modulus is None:
            if value in (1, -1):
                return value
            raise ExactDivisionError(f"{value} is not a unit in ZZ")
        value %= self.modulus
        if gcd(value, self.modulus) != 1:
            raise ExactDivisionError(f"{value} is not a unit mod {self.modulus}")
        return pow(value, -1, self.modulus)

    def __str__(self):
        return "ZZ" if self.modulus is None else f"Z/{self.modulus}"


ZZ = Ring(None)


def Zmod(m: int) -> Ring:
    return Ring(m)


def _check_same_ring(a: "Scalar", b: "Scalar") -> None:
    if a.ring != b.ring:
        raise RingMismatchError(f"cannot combine scalars over {a.ring} and {b.ring}")


@dataclass(frozen=True)
class Scalar:
    """A ring element: an integer, or a canonical residue in [0, m)."""

    ring: Ring
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.ring.normalize(self.value))

    def __add__(self, other: "Scalar") -> "Scalar":
        _check_same_ring(self, other)
        return Scalar(self.ring, self.value + other.value)

    def __sub__(self, other: "Scalar") -> "Scalar":
        _check_same_ring(self, other)
        return Scalar(self.ring, self.value - other.value)

    def __mul__(self, other: "Scalar") -> "Scalar":
        _check_same_ring(self, other)
        return Scalar(self.ring, self.value * other.value)

    def __neg__(self) -> "Scalar":
        return Scalar(self.ring, -self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def exact_div(self, n: int) -> "Scalar":
        """Divide by the integer n; the division must be exact in the ring."""
        if n == 0:
            raise ExactDivisionError("division by zero")
        if self.ring.is_integers:
            if self.value % n != 0:
                raise ExactDivisionError(f"{self.value} is not divisible by {n}")
            return Scalar(self.ring, self.value // n)
        return Scalar(self.ring, self.value * self.ring.invert(n))

    def __str__(self):
        return str(self.value)
