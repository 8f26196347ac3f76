"""The trinomial family x + x^(s(2^m-1)+1) + x^(t(2^m-1)+1) over GF(2^{2m}).

With (s, t) = (4/11, 10/11) modulo 2^m + 1, the trinomial permutes GF(2^{2m})
exactly when the rational map

    x -> (x^11 + x^7 + x) / (x^10 + x^4 + 1)

permutes the unit circle, i.e. when

    F_t(x) = x^11 + t x^10 + x^7 + t x^4 + x + t

has at most one root on the circle for every t on the circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._parallel import chunk_ranges, run_chunks
from .circle import UnitCircle
from .errors import DenominatorVanished, NotInvertible, NotOnCircle
from .field import BinaryField, FieldElement, default_field, make_field
from .poly import UniPoly, roots_in_set

PROVED = "proved"
NOT_INVERTIBLE = "not-invertible"
OUT_OF_THEOREM = "out-of-theorem"


def regime(m: int) -> str:
    """Which part of the m-axis the theorem covers."""
    if math.gcd(11, (1 << m) + 1) != 1:
        return NOT_INVERTIBLE
    if math.gcd(m, 5) == 1:
        return PROVED
    return OUT_OF_THEOREM


def conjecture_exponents(m: int) -> tuple[int, int]:
    """(4/11, 10/11) as residues modulo 2^m + 1."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    n = (1 << m) + 1
    if math.gcd(11, n) != 1:
        raise NotInvertible(f"11 divides 2^{m} + 1 = {n}")
    inv11 = pow(11, -1, n)
    return 4 * inv11 % n, 10 * inv11 % n


@dataclass(frozen=True)
class NihoTrinomial:
    m: int
    s: int
    t: int

    @classmethod
    def conjecture(cls, m: int) -> "NihoTrinomial":
        return cls(m, *conjecture_exponents(m))

    @property
    def circle_order(self) -> int:
        return (1 << self.m) + 1

    @property
    def group_order(self) -> int:
        return (1 << (2 * self.m)) - 1

    def _exponent(self, k: int) -> int:
        return (k * ((1 << self.m) - 1) + 1) % self.group_order

    @property
    def e_s(self) -> int:
        return self._exponent(self.s)

    @property
    def e_t(self) -> int:
        return self._exponent(self.t)

    def _eval_exponent(self, e: int) -> int:
        # the true exponent is positive, so a residue of 0 stands for 2^{2m} - 1 (0 -> 0)
        return e if e else self.group_order

    def field(self) -> BinaryField:
        return default_field(2 * self.m)

    def eval_int(self, field: BinaryField, x: int) -> int:
        return x ^ field.pow(x, self._eval_exponent(self.e_s)) ^ field.pow(x, self._eval_exponent(self.e_t))

    def eval_array(self, field: BinaryField, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.uint64)
        return (
            xs
            ^ field.vpow(xs, self._eval_exponent(self.e_s))
            ^ field.vpow(xs, self._eval_exponent(self.e_t))
        )

    def lemma1_form(self, field: BinaryField) -> tuple[int, UniPoly, int, int]:
        """(r, h, d, s) with f(x) = x^r h(x^s) and q - 1 = d s."""
        h = UniPoly.from_terms(
            field, _xor_terms({0: 1}, {self.s % self.circle_order: 1}, {self.t % self.circle_order: 1})
        )
        return 1, h, self.circle_order, (1 << self.m) - 1


def _xor_terms(*parts: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for part in parts:
        for d, c in part.items():
            out[d] = out.get(d, 0) ^ c
    return out


def trinomial_eval(f: NihoTrinomial, x: FieldElement) -> FieldElement:
    return FieldElement(x.field, f.eval_int(x.field, x.value))


@dataclass(frozen=True)
class CircleMapSpec:
    numerator: UniPoly
    denominator: UniPoly

    @classmethod
    def for_field(cls, field: BinaryField) -> "CircleMapSpec":
        return cls(
            UniPoly.from_terms(field, {11: 1, 7: 1, 1: 1}),
            UniPoly.from_terms(field, {10: 1, 4: 1, 0: 1}),
        )


def _require_on_circle(c: UnitCircle, x: FieldElement, what: str):
    if not c.contains(x):
        raise NotOnCircle(f"{what} = {x!r} is not on the unit circle of m={c.m}")


def circle_map_eval(c: UnitCircle, x: FieldElement) -> FieldElement:
    """(x^11 + x^7 + x) / (x^10 + x^4 + 1) for x on the circle."""
    _require_on_circle(c, x, "x")
    spec = CircleMapSpec.for_field(c.field)
    den = spec.denominator.eval_int(x.value)
    if den == 0:
        raise DenominatorVanished(f"x^10 + x^4 + 1 vanishes at {x!r} (m={c.m})")
    num = spec.numerator.eval_int(x.value)
    return FieldElement(c.field, c.field.mul(num, c.field.inv(den)))


def circle_map_power_form(c: UnitCircle, x: FieldElement) -> FieldElement:
    """x^11 (1 + x^4 + x^10)^(2^m - 1); agrees with the ratio form on the circle."""
    _require_on_circle(c, x, "x")
    f, v = c.field, x.value
    inner = 1 ^ f.pow(v, 4) ^ f.pow(v, 10)
    return FieldElement(f, f.mul(f.pow(v, 11), f.pow(inner, (1 << c.m) - 1)))


def circle_map_array(c: UnitCircle, xs=None) -> np.ndarray:
    """The ratio map at every circle element (default: in enumeration order)."""
    xs = c.elements if xs is None else np.asarray(xs, dtype=np.uint64)
    spec = CircleMapSpec.for_field(c.field)
    den = spec.denominator.eval_array(xs)
    if np.any(den == 0):
        raise DenominatorVanished(f"x^10 + x^4 + 1 vanishes on the unit circle (m={c.m})")
    return c.field.vmul(spec.numerator.eval_array(xs), c.field.vinv(den))


def eq4_poly(field: BinaryField, t: FieldElement | int) -> UniPoly:
    """F_t(x) = x^11 + t x^10 + x^7 + t x^4 + x + t."""
    return UniPoly.from_terms(field, {11: 1, 10: t, 7: 1, 4: t, 1: 1, 0: t})


def eq4_root_count(c: UnitCircle, t: FieldElement) -> int:
    """Number of x on the circle with F_t(x) = 0."""
    _require_on_circle(c, t, "t")
    return len(roots_in_set(eq4_poly(c.field, t), c.elements))


def _eq4_counts_chunk(spec, strategy, m, lo, hi) -> np.ndarray:
    field = make_field(spec, strategy)
    c = UnitCircle(field, m)
    xs = c.elements
    # F_t = N + t*D with N = x^11 + x^7 + x and D = x^10 + x^4 + 1
    maps = CircleMapSpec.for_field(field)
    num = maps.numerator.eval_array(xs)
    den = maps.denominator.eval_array(xs)
    counts = np.empty(hi - lo, dtype=np.int64)
    for i, t in enumerate(xs[lo:hi]):
        counts[i] = np.count_nonzero(field.scalar_mul(int(t), den) == num)
    return counts


def eq4_root_counts(c: UnitCircle, workers: int = 1) -> np.ndarray:
    """Root count of F_t on the circle for every t, in enumeration order of t.

    Each F_t is evaluated at every circle point; the t-range is split across
    ``workers`` processes.
    """
    jobs = [
        (c.field.spec, c.field.strategy, c.m, lo, hi)
        for lo, hi in chunk_ranges(c.size, max(workers, 1) * 4 if workers > 1 else 1)
    ]
    return np.concatenate(run_chunks(_eq4_counts_chunk, jobs, workers))


def circle_map_histogram(c: UnitCircle) -> np.ndarray:
    """How many circle points the ratio map sends to each t (enumeration order of t)."""
    images = circle_map_array(c)
    order = np.argsort(c.elements)
    idx = np.searchsorted(c.elements, images, sorter=order)
    pos = order[np.minimum(idx, c.size - 1)]
    if not np.array_equal(c.elements[pos], images):
        raise AssertionError("circle map left the unit circle")
    return np.bincount(pos, minlength=c.size)
