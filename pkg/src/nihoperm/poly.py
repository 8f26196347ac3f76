"""Dense univariate and bivariate polynomials over a :class:`BinaryField`.

Coefficients are stored as ints, constant term first.  Every polynomial that
the verification pipeline touches has degree at most 11 in x and 10 in y, so
dense storage is all that is needed.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ContextMismatch, DivisionByZero
from .field import BinaryField, FieldElement


def _coerce(field: BinaryField, c) -> int:
    if isinstance(c, FieldElement):
        if c.field.spec != field.spec:
            raise ContextMismatch(f"{c.field.spec} vs {field.spec}")
        return c.value
    c = int(c)
    if not 0 <= c <= field.mask:
        raise ValueError(f"{c:#x} is not an element of GF(2^{field.degree})")
    return c


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class UniPoly:
    """Univariate polynomial; ``coeffs[i]`` is the coefficient of x^i."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: BinaryField, coeffs: Iterable = ()):
        self.field = field
        self.coeffs = _trim([_coerce(field, c) for c in coeffs])

    @classmethod
    def from_terms(cls, field: BinaryField, terms: Mapping[int, object]) -> "UniPoly":
        deg = max(terms, default=-1)
        coeffs = [0] * (deg + 1)
        for d, c in terms.items():
            coeffs[d] ^= _coerce(field, c)
        return cls(field, coeffs)

    @classmethod
    def parse(cls, field: BinaryField, text: str) -> "UniPoly":
        """Parse ``deg:coeff_hex`` terms separated by commas, e.g. ``2:1,0:1f``."""
        terms: dict[int, int] = {}
        for item in text.replace(" ", "").split(","):
            if not item:
                continue
            deg, sep, coeff = item.partition(":")
            if not sep:
                raise ValueError(f"malformed polynomial term {item!r}")
            d, c = int(deg), int(coeff, 16)
            if d < 0:
                raise ValueError(f"negative degree in {item!r}")
            terms[d] = terms.get(d, 0) ^ c
        return cls.from_terms(field, terms)

    def format(self) -> str:
        terms = [f"{d}:{c:x}" for d, c in reversed(list(enumerate(self.coeffs))) if c]
        return ",".join(terms) if terms else "0:0"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> FieldElement:
        return FieldElement(self.field, self.coeffs[i] if i < len(self.coeffs) else 0)

    def _check(self, other: "UniPoly"):
        if self.field.spec != other.field.spec:
            raise ContextMismatch(f"{self.field.spec} vs {other.field.spec}")

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field.spec == other.field.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.spec, self.coeffs))

    def __repr__(self):
        return f"UniPoly({self.field.spec}, {self.format()!r})"

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UniPoly(self.field, [x ^ y for x, y in zip(a, b)])

    __sub__ = __add__

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UniPoly(self.field)
        mul = self.field.mul
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] ^= mul(a, b)
        return UniPoly(self.field, out)

    def __call__(self, x):
        return poly_eval(self, x)

    def eval_int(self, x: int) -> int:
        mul = self.field.mul
        r = 0
        for c in reversed(self.coeffs):
            r = mul(r, x) ^ c
        return r

    def eval_array(self, xs) -> np.ndarray:
        """Horner evaluation at every point of a uint64 array."""
        xs = np.asarray(xs, dtype=np.uint64)
        r = np.zeros_like(xs)
        for c in reversed(self.coeffs):
            r = self.field.vmul(r, xs) ^ np.uint64(c)
        return r


def poly_eval(p: UniPoly, x: FieldElement) -> FieldElement:
    return FieldElement(p.field, p.eval_int(_coerce(p.field, x)))


def _divmod_ints(field: BinaryField, num: Sequence[int], den: Sequence[int]):
    mul = field.mul
    lead_inv = field.inv(den[-1])
    r = list(num)
    dd = len(den) - 1
    q = [0] * max(len(r) - dd, 0)
    for i in range(len(r) - 1, dd - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = mul(c, lead_inv)
        q[i - dd] = c
        for j, d in enumerate(den):
            r[i - dd + j] ^= mul(c, d)
    return q, r[:dd]


def poly_divmod(num: UniPoly, den: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Quotient and remainder with num = den*q + r, deg r < deg den."""
    num._check(den)
    if den.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    q, r = _divmod_ints(num.field, num.coeffs, den.coeffs)
    return UniPoly(num.field, q), UniPoly(num.field, r)


def quadratic_remainder(field: BinaryField, a: int, b: int, coeffs: Sequence[int]) -> tuple[int, int]:
    """Remainder (r0, r1) of sum coeffs[i] x^i modulo x^2 + a x + b, on raw ints."""
    mul = field.mul
    r1 = r0 = 0
    # Horner in the quotient ring: (r1 x + r0) * x + c = r1 x^2 + r0 x + c
    for c in reversed(coeffs):
        r1, r0 = r0 ^ mul(r1, a), c ^ mul(r1, b)
    return r0, r1


def divides_quadratic(a: FieldElement, b: FieldElement, p: UniPoly) -> bool:
    """True iff x^2 + a x + b divides p."""
    if p.is_zero():
        raise ValueError("divisibility test needs a nonzero polynomial")
    r0, r1 = quadratic_remainder(p.field, _coerce(p.field, a), _coerce(p.field, b), p.coeffs)
    return r0 == 0 and r1 == 0


def roots_in_set(p: UniPoly, S) -> set[FieldElement]:
    """The members of S at which p vanishes.

    S may be any iterable of field elements or ints; a numpy array is scanned
    in one vectorised pass.
    """
    if p.is_zero():
        raise ValueError("root search needs a nonzero polynomial")
    if isinstance(S, np.ndarray):
        xs = S.astype(np.uint64, copy=False)
        hits = xs[p.eval_array(xs) == 0]
        return {FieldElement(p.field, int(v)) for v in hits}
    out = set()
    for x in S:
        v = _coerce(p.field, x)
        if p.eval_int(v) == 0:
            out.add(FieldElement(p.field, v))
    return out


class BiPoly:
    """Bivariate polynomial; ``coeffs[i][j]`` is the coefficient of x^i y^j."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: BinaryField, coeffs: Iterable[Iterable] = ()):
        rows = [[_coerce(field, c) for c in row] for row in coeffs]
        width = max((len(r) for r in rows), default=0)
        rows = [r + [0] * (width - len(r)) for r in rows]
        while rows and not any(rows[-1]):
            rows.pop()
        while width and not any(r[width - 1] for r in rows):
            width -= 1
        self.field = field
        self.coeffs = tuple(tuple(r[:width]) for r in rows)

    @classmethod
    def from_terms(cls, field: BinaryField, terms: Mapping[tuple[int, int], object]) -> "BiPoly":
        dx = max((i for i, _ in terms), default=-1)
        dy = max((j for _, j in terms), default=-1)
        grid = [[0] * (dy + 1) for _ in range(dx + 1)]
        for (i, j), c in terms.items():
            grid[i][j] ^= _coerce(field, c)
        return cls(field, grid)

    def terms(self) -> dict[tuple[int, int], int]:
        return {(i, j): c for i, row in enumerate(self.coeffs) for j, c in enumerate(row) if c}

    @property
    def shape(self) -> tuple[int, int]:
        """(1 + degree in x, 1 + degree in y)."""
        return len(self.coeffs), len(self.coeffs[0]) if self.coeffs else 0

    def coeff(self, i: int, j: int) -> int:
        if i < len(self.coeffs) and j < len(self.coeffs[i]):
            return self.coeffs[i][j]
        return 0

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.field.spec == other.field.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.spec, self.coeffs))

    def __repr__(self):
        return f"BiPoly({self.field.spec}, {self.terms()})"

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        if self.field.spec != other.field.spec:
            raise ContextMismatch(f"{self.field.spec} vs {other.field.spec}")
        out: dict[tuple[int, int], int] = {}
        mul = self.field.mul
        for (i1, j1), c1 in self.terms().items():
            for (i2, j2), c2 in other.terms().items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) ^ mul(c1, c2)
        return BiPoly.from_terms(self.field, out)

    def subs_y_power(self, e: int) -> "BiPoly":
        """The polynomial G(x, y^e)."""
        return BiPoly.from_terms(self.field, {(i, j * e): c for (i, j), c in self.terms().items()})

    def eval_int(self, x: int, y: int) -> int:
        mul = self.field.mul
        r = 0
        for row in reversed(self.coeffs):
            inner = 0
            for c in reversed(row):
                inner = mul(inner, y) ^ c
            r = mul(r, x) ^ inner
        return r

    def y_columns(self, ys) -> list[np.ndarray]:
        """For each power x^i, the coefficient polynomial in y evaluated at every ys."""
        ys = np.asarray(ys, dtype=np.uint64)
        cols = []
        for row in self.coeffs:
            acc = np.zeros_like(ys)
            for c in reversed(row):
                acc = self.field.vmul(acc, ys) ^ np.uint64(c)
            cols.append(acc)
        return cols

    def eval_row(self, x: int, cols: Sequence[np.ndarray]) -> np.ndarray:
        """G(x, y) for one scalar x against precomputed :meth:`y_columns`."""
        r = np.zeros_like(cols[0])
        for col in reversed(cols):
            r = self.field.scalar_mul(x, r) ^ col
        return r


def bipoly_eval(G: BiPoly, x: FieldElement, y: FieldElement) -> FieldElement:
    return FieldElement(G.field, G.eval_int(_coerce(G.field, x), _coerce(G.field, y)))


def bipoly_mul_linear_forms(field: BinaryField, forms: Sequence[tuple]) -> BiPoly:
    """Expand the product of (x + alpha*y + beta) over the given (alpha, beta) pairs."""
    if not forms:
        raise ValueError("need at least one linear form")
    acc = BiPoly(field, [[1]])
    for alpha, beta in forms:
        acc = acc * BiPoly.from_terms(field, {(1, 0): 1, (0, 1): alpha, (0, 0): beta})
    return acc


def grid_equal(G: BiPoly, H: BiPoly, shape: tuple[int, int]) -> bool:
    """Compare every coefficient slot in a shape[0] x shape[1] grid."""
    return all(G.coeff(i, j) == H.coeff(i, j) for i, j in product(range(shape[0]), range(shape[1])))
