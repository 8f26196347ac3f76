"""The unit circle mu_{2^m+1} of GF(2^{2m}): elements with x^(2^m+1) = 1."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from . import gf2x
from .errors import DegreeMismatch
from .field import BinaryField, FieldElement, default_field


def cyclic_powers(field: BinaryField, g: int, n: int) -> np.ndarray:
    """g^0, g^1, ..., g^(n-1) as a uint64 array, built by doubling."""
    out = np.empty(n, dtype=np.uint64)
    out[0] = 1
    filled = 1
    while filled < n:
        step = min(filled, n - filled)
        out[filled:filled + step] = field.scalar_mul(field.pow(g, filled), out[:step])
        filled += step
    return out


class UnitCircle:
    """Cyclic subgroup of order 2^m + 1 in GF(2^{2m})^*, generated by gamma^(2^m - 1)."""

    def __init__(self, field: BinaryField, m: int):
        if m < 1 or field.degree != 2 * m:
            raise DegreeMismatch(f"unit circle for m={m} needs a field of degree {2 * m}, got {field.degree}")
        self.field = field
        self.m = m
        self.size = (1 << m) + 1
        self.generator = field.pow(field.primitive_element, (1 << m) - 1)
        self._check_generator()

    def _check_generator(self):
        f, g = self.field, self.generator
        if f.pow(g, self.size) != 1:
            raise AssertionError("generator does not lie on the unit circle")
        for p in gf2x.prime_factors(self.size):
            if f.pow(g, self.size // p) == 1:
                raise AssertionError("generator order is a proper divisor of 2^m + 1")

    def __repr__(self):
        return f"UnitCircle(m={self.m}, field={self.field.spec})"

    def contains_int(self, x: int) -> bool:
        return x != 0 and self.field.norm(x, self.m) == 1

    def contains(self, x: FieldElement) -> bool:
        if x.field.spec != self.field.spec:
            return False
        return self.contains_int(x.value)

    def contains_array(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.uint64)
        return self.field.vmul(self.field.vfrobenius(xs, self.m), xs) == 1

    @cached_property
    def elements(self) -> np.ndarray:
        """generator^0, generator^1, ..., generator^(2^m) as a uint64 array (read-only)."""
        out = cyclic_powers(self.field, self.generator, self.size)
        out.flags.writeable = False
        return out

    def enumerate(self) -> list[FieldElement]:
        return [FieldElement(self.field, int(v)) for v in self.elements]

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(self.enumerate())


def make_circle(field: BinaryField | None, m: int) -> UnitCircle:
    """Unit circle for m; ``field=None`` picks the default field of degree 2m."""
    if field is None:
        field = default_field(2 * m)
    return UnitCircle(field, m)


def contains(c: UnitCircle, x: FieldElement) -> bool:
    return c.contains(x)


def enumerate_circle(c: UnitCircle) -> list[FieldElement]:
    return c.enumerate()
