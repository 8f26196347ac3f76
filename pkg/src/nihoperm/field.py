"""Binary extension fields GF(2^k) in polynomial basis.

Elements are stored as ints (bit i = coefficient of x^i).  A :class:`BinaryField`
holds the reduction polynomial and does all arithmetic on raw ints; the
:class:`FieldElement` wrapper binds an int to its field and overloads the usual
operators.  Bulk work (whole-field sweeps, unit-circle scans) goes through the
``v*`` methods, which take and return ``numpy.uint64`` arrays.

Two multiplication strategies are available and must agree bit for bit:

``table``
    log/exp tables over a primitive element; only for k <= 22.
``shift_reduce``
    carry-less shift-and-add with reduction by the modulus.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterator

import numpy as np

from . import gf2x
from .errors import ContextMismatch, DivisionByZero, ReduciblePolynomial

TABLE_MAX_DEGREE = 22
VECTOR_MAX_DEGREE = 32
FIELD_TABLE_ENV = "NIHOPERM_FIELD_TABLE"

TABLE = "table"
SHIFT_REDUCE = "shift_reduce"
STRATEGIES = (TABLE, SHIFT_REDUCE)


@dataclass(frozen=True)
class FieldSpec:
    """Degree k and the reduction polynomial (bit i = coefficient of x^i)."""

    degree: int
    poly: int

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"field degree must be >= 1, got {self.degree}")
        if gf2x.degree(self.poly) != self.degree:
            raise ValueError(
                f"reduction polynomial {self.poly:#x} does not have degree {self.degree}"
            )
        if not self.poly & 1:
            raise ValueError(f"reduction polynomial {self.poly:#x} has zero constant term")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``k=<degree>,poly=0x<hex>``."""
        parts = {}
        for item in text.replace(" ", "").split(","):
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"malformed field spec {text!r}")
            parts[key] = value
        try:
            k = int(parts["k"])
            poly = int(parts["poly"], 16)
        except (KeyError, ValueError) as exc:
            raise ValueError(f"malformed field spec {text!r}") from exc
        return cls(k, poly)

    @classmethod
    def default(cls, k: int) -> "FieldSpec":
        """Smallest irreducible of degree k, unless the override table names one."""
        override = _field_table().get(k)
        if override is not None:
            return override
        return cls(k, gf2x.smallest_irreducible(k))

    def __str__(self):
        return f"k={self.degree},poly={self.poly:#x}"


def _field_table() -> dict[int, FieldSpec]:
    path = os.environ.get(FIELD_TABLE_ENV)
    if not path:
        return {}
    return _read_field_table(path, os.path.getmtime(path))


@lru_cache(maxsize=8)
def _read_field_table(path: str, mtime: float) -> dict[int, FieldSpec]:
    table = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                spec = FieldSpec.parse(line)
                table[spec.degree] = spec
    return table


class BinaryField:
    """Arithmetic context for GF(2^k); immutable once constructed."""

    def __init__(self, spec: FieldSpec, strategy: str | None = None):
        if not gf2x.is_irreducible(spec.poly):
            raise ReduciblePolynomial(f"{gf2x.to_str(spec.poly)} is reducible over GF(2)")
        if strategy is None:
            strategy = TABLE if spec.degree <= TABLE_MAX_DEGREE else SHIFT_REDUCE
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown multiplication strategy {strategy!r}")
        if strategy == TABLE and spec.degree > TABLE_MAX_DEGREE:
            raise ValueError(f"table strategy needs k <= {TABLE_MAX_DEGREE}")
        self.spec = spec
        self.strategy = strategy
        self.degree = spec.degree
        self.poly = spec.poly
        self.order = 1 << spec.degree
        self.mask = self.order - 1
        if strategy == TABLE:
            self.mul = self._mul_table
        else:
            self.mul = self._mul_sr

    def __reduce__(self):
        return (BinaryField, (self.spec, self.strategy))

    def __eq__(self, other):
        return isinstance(other, BinaryField) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"BinaryField({self.spec}, strategy={self.strategy!r})"

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def x(self) -> "FieldElement":
        """Class of x modulo the reduction polynomial."""
        return FieldElement(self, self._reduce(2))

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.order):
            yield FieldElement(self, v)

    def random_element(self, rng: random.Random | None = None, nonzero=False) -> "FieldElement":
        rng = rng or random
        lo = 1 if nonzero else 0
        return FieldElement(self, rng.randint(lo, self.mask))

    # -- scalar arithmetic on ints -------------------------------------------------

    def _reduce(self, r: int) -> int:
        k, poly = self.degree, self.poly
        while True:
            shift = r.bit_length() - 1 - k
            if shift < 0:
                return r
            r ^= poly << shift

    def _mul_sr(self, a: int, b: int) -> int:
        return self._reduce(gf2x.clmul(a, b))

    def _mul_table(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        exp, log = self._scalar_tables
        return exp[log[a] + log[b]]

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no multiplicative inverse")
        if self.strategy == TABLE:
            exp, log = self._scalar_tables
            return exp[(self.order - 1 - log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def pow(self, a: int, e: int) -> int:
        """a^e by square-and-multiply; negative e goes through the inverse."""
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        e %= self.order - 1
        if e == 0:
            return 1
        if self.strategy == TABLE:
            exp, log = self._scalar_tables
            return exp[(log[a] * e) % (self.order - 1)]
        return self._pow_sr(a, e)

    def _pow_sr(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_sr(r, a)
            e >>= 1
            if e:
                a = self._mul_sr(a, a)
        return r

    def frobenius(self, a: int, j: int = 1) -> int:
        """a^(2^j)."""
        for _ in range(j % self.degree):
            a = self.mul(a, a)
        return a

    def trace(self, a: int) -> int:
        """Absolute trace to GF(2); always 0 or 1."""
        t = 0
        for _ in range(self.degree):
            t ^= a
            a = self.mul(a, a)
        return t

    def half_trace(self, a: int) -> int:
        """Sum of a^(4^i) for i = 0..(k-1)/2; odd k only."""
        if self.degree % 2 == 0:
            raise ValueError("half-trace is only defined for odd degree")
        h = 0
        for _ in range((self.degree + 1) // 2):
            h ^= a
            a = self.frobenius(a, 2)
        return h

    def sqrt(self, a: int) -> int:
        return self.frobenius(a, self.degree - 1)

    def norm(self, a: int, m: int) -> int:
        """Relative norm a^(2^m + 1) to the subfield of degree m (k = 2m)."""
        if self.degree != 2 * m:
            raise ValueError(f"relative norm needs degree 2*{m}, field has {self.degree}")
        return self.mul(self.frobenius(a, m), a)

    def in_subfield(self, a: int, m: int) -> bool:
        return self.frobenius(a, m) == a

    @cached_property
    def _artin_schreier_basis(self) -> list[tuple[int, int, int]]:
        # Echelon basis of the image of y -> y^2 + y, each row tagged with a preimage.
        rows: list[tuple[int, int, int]] = []
        for i in range(self.degree):
            img, pre = self.sqr(1 << i) ^ (1 << i), 1 << i
            for top, r_img, r_pre in rows:
                if (img >> top) & 1:
                    img ^= r_img
                    pre ^= r_pre
            if img:
                rows.append((img.bit_length() - 1, img, pre))
                rows.sort(reverse=True)
        return rows

    def solve_artin_schreier(self, c: int) -> int | None:
        """One root y of y^2 + y = c, or None when trace(c) = 1."""
        if self.trace(c):
            return None
        if self.degree % 2:
            return self.half_trace(c)
        y = 0
        for top, img, pre in self._artin_schreier_basis:
            if (c >> top) & 1:
                c ^= img
                y ^= pre
        assert c == 0, "trace-zero element outside the image of y^2 + y"
        return y

    def solve_quadratic(self, a: int, b: int) -> list[int]:
        """Sorted distinct roots of x^2 + a x + b."""
        if a == 0:
            return [self.sqrt(b)]
        a_inv = self.inv(a)
        c = self.mul(b, self.mul(a_inv, a_inv))
        y = self.solve_artin_schreier(c)
        if y is None:
            return []
        r = self.mul(a, y)
        return sorted((r, r ^ a))

    # -- tables ------------------------------------------------------------------------

    @cached_property
    def primitive_element(self) -> int:
        """First element in coefficient order whose order is 2^k - 1."""
        n = self.order - 1
        if n == 1:
            return 1
        cofactors = [n // p for p in gf2x.prime_factors(n)]
        for g in range(2, self.order):
            if all(self._pow_sr(g, c) != 1 for c in cofactors):
                return g
        raise AssertionError("unreachable: GF(2^k)* is cyclic")

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        if self.degree > TABLE_MAX_DEGREE:
            raise ValueError(f"log/exp tables need k <= {TABLE_MAX_DEGREE}")
        n = self.order - 1
        g = self.primitive_element
        exp = np.empty(n, dtype=np.uint64)
        exp[0] = 1
        filled = 1
        while filled < n:
            step = min(filled, n - filled)
            exp[filled:filled + step] = self._vmul_sr(exp[:step], np.uint64(self._pow_sr(g, filled)))
            filled += step
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        # doubled so that log[a] + log[b] never needs a modulo
        return np.concatenate([exp, exp]), log

    @cached_property
    def _scalar_tables(self):
        exp, log = self._tables
        if self.degree <= 16:
            return exp.tolist(), log.tolist()
        return _IntView(exp), _IntView(log)

    # -- vectorised arithmetic on uint64 arrays ---------------------------------------------

    def asarray(self, values) -> np.ndarray:
        if self.degree > VECTOR_MAX_DEGREE:
            raise ValueError(f"vectorised arithmetic needs k <= {VECTOR_MAX_DEGREE}")
        arr = np.asarray(values, dtype=np.uint64)
        if arr.size and int(arr.max()) > self.mask:
            raise ValueError("array holds values outside the field")
        return arr

    def all_elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.uint64)

    def _vmul_sr_bitwise(self, a, b) -> np.ndarray:
        """Bit-serial shift-and-add followed by bit-serial reduction (reference path)."""
        a = np.asarray(a, dtype=np.uint64)
        b = np.asarray(b, dtype=np.uint64)
        k = self.degree
        r = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.uint64)
        for i in range(k):
            r ^= (a << np.uint64(i)) * ((b >> np.uint64(i)) & np.uint64(1))
        for i in range(2 * k - 2, k - 1, -1):
            r ^= ((r >> np.uint64(i)) & np.uint64(1)) * np.uint64(self.poly << (i - k))
        return r

    @cached_property
    def _reduction_tables(self) -> list[np.ndarray]:
        # h * x^k mod f is linear in h, so the high half reduces one byte at a time
        tables = []
        for j in range(0, self.degree - 1, 8):
            width = min(8, self.degree - 1 - j)
            table = np.zeros(256, dtype=np.uint64)
            for h in range(1 << width):
                table[h] = self._reduce((h << j) << self.degree)
            tables.append(table)
        return tables

    def _vreduce(self, r: np.ndarray) -> np.ndarray:
        k = np.uint64(self.degree)
        high = r >> k
        r = r & np.uint64(self.mask)
        for j, table in enumerate(self._reduction_tables):
            r ^= table[(high >> np.uint64(8 * j)) & np.uint64(0xFF)]
        return r

    def _vmul_sr(self, a, b) -> np.ndarray:
        """Carry-less product via integer multiplies on bit classes mod 4, then reduction.

        Splitting each operand into the bits at positions = c (mod 4) leaves three
        zero bits between any two set bits; at most 8 partial products meet at one
        position when k <= 32, so integer carries never reach the next bit of the
        same class and the class-c bits of the sum are exactly the XOR.
        """
        a = np.asarray(a, dtype=np.uint64)
        b = np.asarray(b, dtype=np.uint64)
        if self.degree < 16:
            return self._vmul_sr_bitwise(a, b)
        aa = [a & m for m in _CLASS_MASKS]
        bb = [b & m for m in _CLASS_MASKS]
        r = None
        for c, m in enumerate(_CLASS_MASKS):
            z = aa[0] * bb[c]
            for i in range(1, 4):
                z ^= aa[i] * bb[(c - i) % 4]
            z &= m
            r = z if r is None else r ^ z
        return self._vreduce(r)

    def _vmul_table(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.uint64)
        b = np.asarray(b, dtype=np.uint64)
        exp, log = self._tables
        r = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), np.uint64(0), r)

    def vmul(self, a, b) -> np.ndarray:
        if self.strategy == TABLE:
            return self._vmul_table(a, b)
        return self._vmul_sr(a, b)

    def vsqr(self, a) -> np.ndarray:
        if self.strategy == TABLE:
            return self.vmul(a, a)
        return self.apply_linear(self._square_tables, a)

    @cached_property
    def _square_tables(self) -> list[np.ndarray]:
        return self.linear_tables(self.sqr)

    def linear_tables(self, fn: Callable[[int], int]) -> list[np.ndarray]:
        """Byte tables for a GF(2)-linear map fn, for use with :meth:`apply_linear`."""
        tables = []
        for j in range(0, self.degree, 8):
            width = min(8, self.degree - j)
            table = np.zeros(256, dtype=np.uint64)
            for v in range(1 << width):
                table[v] = fn(v << j)
            tables.append(table)
        return tables

    def apply_linear(self, tables: list[np.ndarray], a) -> np.ndarray:
        a = np.asarray(a, dtype=np.uint64)
        r = np.zeros_like(a)
        for j, table in enumerate(tables):
            r ^= table[(a >> np.uint64(8 * j)) & np.uint64(0xFF)]
        return r

    def vpow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.uint64)
        if e < 0:
            return self.vpow(self.vinv(a), -e)
        if e == 0:
            return np.ones_like(a)
        n = self.order - 1
        e %= n
        if e == 0:
            e = n
        if self.strategy == TABLE:
            exp, log = self._tables
            r = exp[(log[a] * e) % n]
            return np.where(a == 0, np.uint64(0), r)
        r = None
        while e:
            if e & 1:
                r = a if r is None else self._vmul_sr(r, a)
            e >>= 1
            if e:
                a = self.vsqr(a)
        return r

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.uint64)
        if np.any(a == 0):
            raise DivisionByZero("zero has no multiplicative inverse")
        if self.strategy == TABLE:
            exp, log = self._tables
            return exp[(self.order - 1 - log[a]) % (self.order - 1)]
        return self.vpow(a, self.order - 2)

    def vfrobenius(self, a, j: int = 1) -> np.ndarray:
        a = np.asarray(a, dtype=np.uint64)
        for _ in range(j % self.degree):
            a = self.vsqr(a)
        return a

    def scalar_mul(self, s: int, a) -> np.ndarray:
        """s * a for one scalar s and an array a."""
        a = np.asarray(a, dtype=np.uint64)
        if s == 0:
            return np.zeros_like(a)
        if self.strategy == TABLE:
            exp, log = self._tables
            return np.where(a == 0, np.uint64(0), exp[log[a] + log[s]])
        return self.apply_linear(self.linear_tables(lambda v: self._mul_sr(s, v)), a)


_CLASS_MASKS = [np.uint64(0x1111111111111111 << c) for c in range(4)]


class _IntView:
    """Index a numpy table and hand back Python ints."""

    __slots__ = ("arr",)

    def __init__(self, arr):
        self.arr = arr

    def __getitem__(self, i):
        return int(self.arr[i])


class FieldElement:
    """An element of a :class:`BinaryField`."""

    __slots__ = ("field", "value")

    def __init__(self, field: BinaryField, value: int):
        value = int(value)
        if not 0 <= value <= field.mask:
            raise ValueError(f"{value:#x} is not an element of GF(2^{field.degree})")
        self.field = field
        self.value = value

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field.spec != self.field.spec:
                raise ContextMismatch(f"{self.field.spec} vs {other.field.spec}")
            return other.value
        if isinstance(other, (int, np.integer)) and 0 <= other <= self.field.mask:
            return int(other)
        raise ContextMismatch(f"cannot combine {type(other).__name__} with GF(2^{self.field.degree})")

    def _new(self, value: int) -> "FieldElement":
        return FieldElement(self.field, value)

    def __add__(self, other):
        return self._new(self.value ^ self._other(other))

    __radd__ = __sub__ = __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        return self._new(self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._new(self.field.mul(self.value, self.field.inv(self._other(other))))

    def __rtruediv__(self, other):
        return self._new(self.field.mul(self._other(other), self.field.inv(self.value)))

    def __pow__(self, e: int):
        return self._new(self.field.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.spec == other.field.spec and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, self.value))

    def __lt__(self, other):
        return self.value < self._other(other)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF(2^{self.field.degree})({self.value:#x})"

    def hex(self) -> str:
        return f"{self.value:#x}"

    def inverse(self) -> "FieldElement":
        return self._new(self.field.inv(self.value))

    def frobenius(self, j: int = 1) -> "FieldElement":
        return self._new(self.field.frobenius(self.value, j))

    def trace(self) -> int:
        return self.field.trace(self.value)

    def sqrt(self) -> "FieldElement":
        return self._new(self.field.sqrt(self.value))


@lru_cache(maxsize=None)
def _cached_field(spec: FieldSpec, strategy: str | None) -> BinaryField:
    return BinaryField(spec, strategy)


def make_field(spec: FieldSpec | str, strategy: str | None = None) -> BinaryField:
    """Build (or fetch the cached) context for ``spec``.

    Raises :class:`ReduciblePolynomial` if the reduction polynomial factors.
    """
    if isinstance(spec, str):
        spec = FieldSpec.parse(spec)
    return _cached_field(spec, strategy)


def default_field(k: int, strategy: str | None = None) -> BinaryField:
    return make_field(FieldSpec.default(k), strategy)


def _pair(a: FieldElement, b: FieldElement) -> BinaryField:
    if a.field.spec != b.field.spec:
        raise ContextMismatch(f"{a.field.spec} vs {b.field.spec}")
    return a.field


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return FieldElement(_pair(a, b), a.value ^ b.value)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _pair(a, b)
    return FieldElement(f, f.mul(a.value, b.value))


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, e: int) -> FieldElement:
    return a ** e


def frobenius(a: FieldElement, j: int) -> FieldElement:
    return a.frobenius(j)


def trace(a: FieldElement) -> int:
    return a.trace()


def solve_quadratic(a: FieldElement, b: FieldElement) -> set[FieldElement]:
    """Roots in the field of x^2 + a x + b (zero, one or two of them)."""
    f = _pair(a, b)
    return {FieldElement(f, r) for r in f.solve_quadratic(a.value, b.value)}


is_irreducible = gf2x.is_irreducible


def subfield_embedding(small: BinaryField, big: BinaryField) -> Callable[[int], int]:
    """A field embedding GF(2^j) -> GF(2^k) for j | k, sending x to a root of small's modulus."""
    if big.degree % small.degree:
        raise ValueError(f"GF(2^{small.degree}) is not a subfield of GF(2^{big.degree})")
    xs = big.all_elements()
    acc = np.zeros_like(xs)
    for i in range(small.degree, -1, -1):
        acc = big.vmul(acc, xs) ^ np.uint64((small.poly >> i) & 1)
    beta = int(xs[np.flatnonzero(acc == 0)[0]])
    powers = [big.pow(beta, i) for i in range(small.degree)]

    def embed(a: int) -> int:
        r = 0
        for i, p in enumerate(powers):
            if (a >> i) & 1:
                r ^= p
        return r

    return embed
