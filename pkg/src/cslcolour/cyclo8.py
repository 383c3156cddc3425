"""The 8th cyclotomic ring Z[xi] (xi = exp(i.pi/4)) as a rank-4 module.

Elements are exact rational combinations a0 + a1.xi + a2.xi^2 + a3.xi^3,
reduced by xi^4 = -1.  Multiplication by a fixed element is a linear map
of the coefficient row vectors, which is how ring rotations enter the
lattice machinery: the plane rotation by an angle whose cosine and sine
live in Q(sqrt 2) becomes multiplication by a unit-modulus element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from cslcolour.coincidence import CommensurableMap, commensurable_map
from cslcolour.errors import InternalInvariantViolation, ZeroElement
from cslcolour.lattice import Lattice, lattice_new
from cslcolour.ratmat import RatMatrix, parse_rational, transpose


@dataclass(frozen=True)
class Cyc8:
    """One element of Q(xi) on the basis 1, xi, xi^2, xi^3."""

    coeffs: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        if len(self.coeffs) != 4:
            raise ValueError("Cyc8 needs exactly 4 coefficients")

    def __add__(self, other: "Cyc8") -> "Cyc8":
        return Cyc8(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Cyc8") -> "Cyc8":
        return Cyc8(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Cyc8":
        return Cyc8(tuple(-a for a in self.coeffs))

    def __mul__(self, other: "Cyc8") -> "Cyc8":
        a = self.coeffs
        b = other.coeffs
        c = [Fraction(0)] * 4
        for i in range(4):
            if not a[i]:
                continue
            for j in range(4):
                k = i + j
                if k < 4:
                    c[k] += a[i] * b[j]
                else:
                    c[k - 4] -= a[i] * b[j]
        return Cyc8(tuple(c))

    def galois(self, k: int) -> "Cyc8":
        """The field automorphism xi -> xi^k for odd k."""
        if k not in (1, 3, 5, 7):
            raise ValueError("k must be coprime to 8 and in 1..7")
        c = [Fraction(0)] * 4
        for i, a in enumerate(self.coeffs):
            e = (i * k) % 8
            if e < 4:
                c[e] += a
            else:
                c[e - 4] -= a
        return Cyc8(tuple(c))

    def conjugate(self) -> "Cyc8":
        """Complex conjugation: xi -> xi^-1 = -xi^3."""
        return self.galois(7)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)


def cyc8(*coeffs) -> Cyc8:
    """Build an element from 4 int/Fraction/"p/q" coefficients."""
    if len(coeffs) == 1 and isinstance(coeffs[0], (list, tuple)):
        coeffs = tuple(coeffs[0])
    if len(coeffs) != 4:
        raise ValueError("expected 4 coefficients")
    return Cyc8(
        tuple(
            parse_rational(x) if isinstance(x, str) else Fraction(x) for x in coeffs
        )
    )


CYC8_ONE = cyc8(1, 0, 0, 0)
CYC8_XI = cyc8(0, 1, 0, 0)

# Rotation by the angle with cosine -1/3 and sine 2.sqrt(2)/3 (about
# 109.47 degrees), written in the ring via sqrt(2) = xi - xi^3 and
# i.sqrt(2) = xi + xi^3:
#   z = cos + i.sin = -1/3 + (2/3).(xi + xi^3)
# Unit modulus and coincidence index 9 are verified in the tests, not
# assumed.
AMMANN_BEENKER_ROTATION = cyc8("-1/3", "2/3", "0", "2/3")


def cyc8_mul_matrix(z: Cyc8) -> RatMatrix:
    """Matrix of multiplication by z on row vectors: row k is xi^k . z."""
    if z.is_zero():
        raise ZeroElement("multiplication matrix of zero is singular")
    rows = []
    power = CYC8_ONE
    for _ in range(4):
        rows.append((power * z).coeffs)
        power = power * CYC8_XI
    return tuple(rows)


def cyc8_norm(z: Cyc8) -> Fraction:
    """Field norm: the product of all four Galois conjugates."""
    n = z
    for k in (3, 5, 7):
        n = n * z.galois(k)
    if any(n.coeffs[i] != 0 for i in (1, 2, 3)):
        raise InternalInvariantViolation("norm must be rational")
    return n.coeffs[0]


def is_unit_modulus(z: Cyc8) -> bool:
    """True iff z . conj(z) = 1, i.e. z encodes a plane rotation."""
    return (z * z.conjugate()).coeffs == CYC8_ONE.coeffs


def principal_submodule(z: Cyc8) -> Lattice:
    """The Z-span of z, z.xi, z.xi^2, z.xi^3 as a rank-4 lattice."""
    if z.is_zero():
        raise ZeroElement("zero spans no full-rank submodule")
    return lattice_new(cyc8_mul_matrix(z))


def multiplication_map(z: Cyc8) -> CommensurableMap:
    """Multiplication by z as a map on coefficient row vectors.

    CommensurableMap acts as v -> v . A^T, so A is the transpose of the
    row-convention multiplication matrix.
    """
    return commensurable_map(transpose(cyc8_mul_matrix(z)))


def star_coords(
    coeffs: Sequence,
) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """Exact planar coordinates of an element, split over 1 and sqrt(2).

    Returns ((xr, xs), (yr, ys)) meaning the complex value has real
    part xr + xs.sqrt(2) and imaginary part yr + ys.sqrt(2); callers
    evaluate sqrt(2) at display precision only.
    """
    a0, a1, a2, a3 = (Fraction(x) for x in coeffs)
    return (
        (a0, (a1 - a3) / 2),
        (a2, (a1 + a3) / 2),
    )
