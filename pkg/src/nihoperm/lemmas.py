"""Executable checks for the quadratic-factor argument behind the trinomial theorem.

The chain, for F_t(x) = x^11 + t x^10 + x^7 + t x^4 + x + t with t on the unit
circle of GF(2^{2m}):

1. a dividing quadratic x^2 + a x + b with ab != 0 satisfies one of three
   polynomial condition sets in (a, b)  -- :func:`lemma2_classify`;
2. if both of its roots lie on the circle then a^(2^m) b = a
   -- :func:`circle_root_relation`;
3. under that relation, u = 1/a + 1/a^(2^m) and v = 1/a^(2^m+1) lie in GF(2^m)
   and satisfy G(v, u^2) = 0 -- :func:`lemma3_uv`;
4. G(x, y) splits into five linear forms indexed by the roots of
   x^5 + x^2 + 1 -- :func:`lemma4_check`;
5. hence G has no zero in GF(2^m)^2 when gcd(m, 5) = 1 -- :func:`lemma5_search`.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, fields
from itertools import combinations
from typing import Callable, Iterator

import numpy as np

from ._parallel import chunk_ranges, run_chunks
from .circle import UnitCircle, make_circle
from .errors import FieldTooSmall, NotOnCircle, RelationViolated, ZeroCoefficient
from .field import BinaryField, FieldElement, default_field, make_field
from .niho import CircleMapSpec, eq4_poly
from .poly import BiPoly, UniPoly, bipoly_mul_linear_forms, divides_quadratic, grid_equal, poly_divmod, roots_in_set

# G(x, y) = x^5 + (y^2 + y) x^3 + x^2 + (y^3 + y^2) x + y^5 + y^2 + 1, keyed (deg x, deg y)
G_TERMS = {(5, 0): 1, (3, 2): 1, (3, 1): 1, (2, 0): 1, (1, 3): 1, (1, 2): 1, (0, 5): 1, (0, 2): 1, (0, 0): 1}

# v^5 + (u^4 + u^2) v^3 + v^2 + (u^6 + u^4) v + u^10 + u^4 + 1, keyed (deg v, deg u)
EQ11_TERMS = {(5, 0): 1, (3, 4): 1, (3, 2): 1, (2, 0): 1, (1, 6): 1, (1, 4): 1, (0, 10): 1, (0, 4): 1, (0, 0): 1}

# x^5 + x^2 + 1
H_POLY = 0b100101


def G_poly(field: BinaryField) -> BiPoly:
    return BiPoly.from_terms(field, G_TERMS)


def eq11_poly(field: BinaryField) -> BiPoly:
    return BiPoly.from_terms(field, EQ11_TERMS)


class _Vec:
    """uint64 array wrapper so the printed formulas run unchanged on whole grids."""

    __slots__ = ("field", "a")

    def __init__(self, field: BinaryField, a):
        self.field = field
        self.a = a

    def _val(self, other):
        return other.a if isinstance(other, _Vec) else np.uint64(int(other))

    def __add__(self, other):
        return _Vec(self.field, self.a ^ self._val(other))

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, _Vec):
            return _Vec(self.field, self.field.vmul(self.a, other.a))
        return _Vec(self.field, self.field.scalar_mul(int(other), self.a))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return _Vec(self.field, self.field.vpow(self.a, e))

    def is_zero(self) -> np.ndarray:
        return self.a == 0


# Condition sets for a dividing quadratic, transcribed term for term.

def cond1_eqs(a, b):
    return (
        a * b**3 + b**2 + b + a**2,
        b**6 + (a**4 + 1) * b**4 + b**3 + a**2,
    )


def cond2_eqs(a, b):
    return (
        b**2 + b**3 + a**2 * b**2 + a,
        a**2 * b**6 + b**5 + b**4 + b**2 + a**4,
    )


def cond3_eq(a, b):
    return (
        a**10
        + (b**4 + b**2 + 1) * a**6
        + (b**5 + b) * a**4
        + (b**7 + b) * a**2
        + b**10 + b**8 + b**7 + b**5 + b**3 + b**2 + 1
    )


def eq11_residual(u, v):
    """Left side of the (u, v) relation; u, v may be field elements or ``_Vec``s."""
    return v**5 + (u**4 + u**2) * v**3 + v**2 + (u**6 + u**4) * v + u**10 + u**4 + 1


def cofactor_closed_forms(a: FieldElement, b: FieldElement, t: FieldElement) -> dict[str, FieldElement]:
    """Cofactor coefficients c_i of F_t / (x^2 + a x + b) from both ends.

    Keys ``"c1"``..``"c5"`` come from matching the top coefficients, ``"c9"``..``"c4'"``
    from the bottom ones (``"c5'"``, ``"c4'"`` are the second expressions for c5, c4).
    """
    one = a.field.one
    return {
        "c1": a + t,
        "c2": b + a**2 + a * t,
        "c3": a**3 + a**2 * t + b * t,
        "c4": one + b**2 + a**2 * b + a**4 + a**3 * t,
        "c5": a + a * b**2 + a**5 + a**2 * b * t + b**2 * t + a**4 * t,
        "c9": t / b,
        "c8": (b + a * t) / b**2,
        "c7": (b * t + a * b + a**2 * t) / b**3,
        "c6": (b**2 + a**2 * b + a**3 * t) / b**4,
        "c5'": (b**4 * t + b**2 * t + a**2 * b * t + a**4 * t + a**3 * b) / b**5,
        "c4'": (b**3 + a**2 * b**2 + a * b**4 * t + a * b**2 * t + a**5 * t + a**4 * b) / b**6,
    }


@dataclass(frozen=True)
class QuadFactorReport:
    a: FieldElement
    b: FieldElement
    t: FieldElement
    divides: bool
    cond1: bool
    cond2: bool
    cond3: bool
    circle_roots: int
    relation_holds: bool

    @property
    def classified(self) -> bool:
        return self.cond1 or self.cond2 or self.cond3

    def row(self) -> list:
        out = []
        for f in fields(self):
            v = getattr(self, f.name)
            out.append(v.hex() if isinstance(v, FieldElement) else v)
        return out

    def to_json(self) -> str:
        return json.dumps(dict(zip([f.name for f in fields(self)], self.row())))


REPORT_COLUMNS = [f.name for f in fields(QuadFactorReport)]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for r in reports:
        w.writerow(["true" if v is True else "false" if v is False else v for v in r.row()])
    return buf.getvalue()


def circle_root_relation(a: FieldElement, b: FieldElement, m: int) -> tuple[int, bool]:
    """(# roots of x^2 + a x + b on the unit circle, whether a^(2^m) b = a)."""
    f = a.field
    if f.degree != 2 * m:
        raise ValueError(f"expected a field of degree {2 * m}, got {f.degree}")
    roots = f.solve_quadratic(a.value, a._other(b))
    on_circle = sum(1 for r in roots if r != 0 and f.norm(r, m) == 1)
    return on_circle, f.mul(f.frobenius(a.value, m), b.value) == a.value


def lemma2_classify(a: FieldElement, b: FieldElement, t: FieldElement, m: int) -> QuadFactorReport:
    """Divisibility of F_t by x^2 + a x + b together with the three condition sets."""
    if not a or not b:
        raise ZeroCoefficient("the classification needs ab != 0")
    c = make_circle(t.field, m)
    if not c.contains(t):
        raise NotOnCircle(f"t = {t!r} is not on the unit circle")
    quad = UniPoly(t.field, [b, a, 1])
    _, rem = poly_divmod(eq4_poly(t.field, t), quad)
    e1, e2 = cond1_eqs(a, b)
    e3, e4 = cond2_eqs(a, b)
    roots, rel = circle_root_relation(a, b, m)
    return QuadFactorReport(
        a, b, t,
        divides=rem.is_zero(),
        cond1=not e1 and not e2,
        cond2=not e3 and not e4,
        cond3=not cond3_eq(a, b),
        circle_roots=roots,
        relation_holds=rel,
    )


@dataclass(frozen=True)
class Lemma2Grid:
    """All (a, b) with ab != 0 for one t, as flat arrays in (a, b) row-major order."""

    t: int
    a: np.ndarray
    b: np.ndarray
    divides: np.ndarray
    cond1: np.ndarray
    cond2: np.ndarray
    cond3: np.ndarray

    @property
    def violations(self) -> np.ndarray:
        return self.divides & ~(self.cond1 | self.cond2 | self.cond3)


def lemma2_grid(field: BinaryField, t: int) -> Lemma2Grid:
    """Vectorised classification over every (a, b) with ab != 0."""
    nz = np.arange(1, field.order, dtype=np.uint64)
    a_arr = np.repeat(nz, nz.size)
    b_arr = np.tile(nz, nz.size)
    a, b = _Vec(field, a_arr), _Vec(field, b_arr)
    # remainder of F_t modulo x^2 + a x + b by Horner in the quotient ring
    r1 = np.zeros_like(a_arr)
    r0 = np.zeros_like(a_arr)
    for coeff in reversed(eq4_poly(field, t).coeffs):
        r1, r0 = r0 ^ field.vmul(r1, a_arr), field.vmul(r1, b_arr) ^ np.uint64(coeff)
    e1, e2 = cond1_eqs(a, b)
    e3, e4 = cond2_eqs(a, b)
    return Lemma2Grid(
        t, a_arr, b_arr,
        divides=(r0 == 0) & (r1 == 0),
        cond1=e1.is_zero() & e2.is_zero(),
        cond2=e3.is_zero() & e4.is_zero(),
        cond3=cond3_eq(a, b).is_zero(),
    )


def lemma2_exhaustive(m: int, field: BinaryField | None = None) -> Iterator[Lemma2Grid]:
    """One :class:`Lemma2Grid` per t on the circle, in enumeration order."""
    c = make_circle(field, m)
    for t in c.elements:
        yield lemma2_grid(c.field, int(t))


def lemma2_reports(m: int, field: BinaryField | None = None, only_dividing: bool = False) -> Iterator[QuadFactorReport]:
    """Every (a, b, t) row of the exhaustive classification as a report."""
    c = make_circle(field, m)
    f = c.field
    relation_cache: dict[tuple[int, int], tuple[int, bool]] = {}
    for grid in lemma2_exhaustive(m, f):
        t = FieldElement(f, grid.t)
        for i in range(grid.a.size):
            if only_dividing and not grid.divides[i]:
                continue
            key = (int(grid.a[i]), int(grid.b[i]))
            a, b = FieldElement(f, key[0]), FieldElement(f, key[1])
            if key not in relation_cache:
                relation_cache[key] = circle_root_relation(a, b, m)
            roots, rel = relation_cache[key]
            yield QuadFactorReport(
                a, b, t,
                bool(grid.divides[i]), bool(grid.cond1[i]), bool(grid.cond2[i]), bool(grid.cond3[i]),
                roots, rel,
            )


def lemma2_violations(m: int, field: BinaryField | None = None) -> list[tuple[int, int, int]]:
    """(a, b, t) triples that divide F_t but satisfy none of the three condition sets."""
    out = []
    for grid in lemma2_exhaustive(m, field):
        for i in np.flatnonzero(grid.violations):
            out.append((int(grid.a[i]), int(grid.b[i]), grid.t))
    return out


def relation_pairs(field: BinaryField, m: int) -> tuple[np.ndarray, np.ndarray]:
    """All (a, b) with a != 0 and a^(2^m) b = a, i.e. b = a^(1 - 2^m)."""
    a = np.arange(1, field.order, dtype=np.uint64)
    return a, field.vpow(a, 1 - (1 << m))


def relation_dividing_triples(m: int, field: BinaryField | None = None) -> list[tuple[int, int, int, bool, bool]]:
    """(a, b, t, cond1, cond2) for every relation pair whose quadratic divides some F_t.

    Under the relation, divisibility forces condition set 3 only; an empty
    cond1/cond2 column is the checkable content of that claim.
    """
    c = make_circle(field, m)
    f = c.field
    a_arr, b_arr = relation_pairs(f, m)
    out = []
    for t in c.elements:
        r1 = np.zeros_like(a_arr)
        r0 = np.zeros_like(a_arr)
        for coeff in reversed(eq4_poly(f, int(t)).coeffs):
            r1, r0 = r0 ^ f.vmul(r1, a_arr), f.vmul(r1, b_arr) ^ np.uint64(coeff)
        for i in np.flatnonzero((r0 == 0) & (r1 == 0)):
            a, b = FieldElement(f, int(a_arr[i])), FieldElement(f, int(b_arr[i]))
            e1, e2 = cond1_eqs(a, b)
            e3, e4 = cond2_eqs(a, b)
            out.append((a.value, b.value, int(t), not e1 and not e2, not e3 and not e4))
    return out


def circle_pair_relation_failures(c: UnitCircle) -> int:
    """How many pairs x1 != x2 on the circle give (a, b) = (x1 + x2, x1 x2) with a^(2^m) b != a."""
    f = c.field
    xs = c.elements
    i, j = np.triu_indices(xs.size, k=1)
    a = xs[i] ^ xs[j]
    b = f.vmul(xs[i], xs[j])
    return int(np.count_nonzero(f.vmul(f.vfrobenius(a, c.m), b) != a))


def circle_quadratic_factors(c: UnitCircle) -> list[tuple[int, int, int]]:
    """(t, a, b) for every quadratic with both roots on the circle dividing F_t.

    Roots of F_t on the circle are found first; each pair of them is turned into
    x^2 + (r1 + r2) x + r1 r2 and confirmed by division.
    """
    f = c.field
    maps = CircleMapSpec.for_field(f)
    num = maps.numerator.eval_array(c.elements)
    den = maps.denominator.eval_array(c.elements)
    found = []
    for t in c.elements:
        roots = c.elements[f.scalar_mul(int(t), den) == num]
        if roots.size < 2:
            continue
        F = eq4_poly(f, int(t))
        for r1, r2 in combinations(roots.tolist(), 2):
            a, b = r1 ^ r2, f.mul(r1, r2)
            if divides_quadratic(FieldElement(f, a), FieldElement(f, b), F):
                found.append((int(t), a, b))
    return found


def circle_quadratic_factors_exhaustive(c: UnitCircle) -> list[tuple[int, int, int]]:
    """Same as :func:`circle_quadratic_factors` but trying every pair of circle points
    against every t by polynomial division."""
    f = c.field
    found = []
    pairs = [(r1 ^ r2, f.mul(r1, r2)) for r1, r2 in combinations(c.elements.tolist(), 2)]
    for t in c.elements.tolist():
        F = eq4_poly(f, t)
        for a, b in pairs:
            if poly_divmod(F, UniPoly(f, [b, a, 1]))[1].is_zero():
                found.append((t, a, b))
    return found


@dataclass(frozen=True)
class UVPair:
    u: FieldElement
    v: FieldElement
    residual: FieldElement


def lemma3_uv(a: FieldElement, b: FieldElement, m: int) -> UVPair:
    """u = 1/a + 1/a^(2^m), v = 1/a^(2^m + 1) and the (u, v) relation evaluated at them."""
    if not a or a.frobenius(m) * b != a:
        raise RelationViolated("lemma3_uv needs a != 0 and a^(2^m) b = a")
    a_inv = a.inverse()
    a_inv_conj = a_inv.frobenius(m)
    u = a_inv + a_inv_conj
    v = a_inv * a_inv_conj
    if u.frobenius(m) != u or v.frobenius(m) != v:
        raise AssertionError("u, v escaped the subfield GF(2^m)")
    return UVPair(u, v, eq11_residual(u, v))


def eq11_bridge_formal(field: BinaryField | None = None) -> bool:
    """Formal identity: the (u, v) relation equals G(v, u^2) coefficient for coefficient."""
    field = field or default_field(1)
    return G_poly(field).subs_y_power(2) == eq11_poly(field)


def splitting_set(field: BinaryField) -> list[FieldElement]:
    """Roots of x^5 + x^2 + 1 in the field, sorted."""
    roots = roots_in_set(UniPoly.from_terms(field, {5: 1, 2: 1, 0: 1}), field.all_elements())
    return sorted(roots)


def lemma4_product(field: BinaryField) -> tuple[list[FieldElement], BiPoly]:
    """H and the expanded product of (x + y/theta + theta) over theta in H."""
    H = splitting_set(field)
    if len(H) < 5:
        raise FieldTooSmall(f"x^5 + x^2 + 1 has only {len(H)} roots in GF(2^{field.degree})")
    return H, bipoly_mul_linear_forms(field, [(th.inverse(), th) for th in H])


def lemma4_check(m_ext: int = 5, field: BinaryField | None = None) -> bool:
    """Whether G equals the product of its five linear forms in every coefficient slot."""
    field = field or default_field(m_ext)
    _, prod = lemma4_product(field)
    return grid_equal(prod, G_poly(field), (6, 6))


def _lemma5_chunk(spec, strategy, lo, hi) -> list[tuple[int, int]]:
    field = make_field(spec, strategy)
    G = G_poly(field)
    ys = field.all_elements()
    cols = G.y_columns(ys)
    out = []
    for x in range(lo, hi):
        for y in np.flatnonzero(G.eval_row(x, cols) == 0):
            out.append((x, int(y)))
    return out


def lemma5_search(
    m: int,
    field: BinaryField | None = None,
    workers: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> set[tuple[FieldElement, FieldElement]]:
    """Every zero (x, y) of G in GF(2^m) x GF(2^m), by exhaustive scan."""
    field = field or default_field(m)
    chunks = chunk_ranges(field.order, max(1, min(64, field.order // 64)))
    jobs = [(field.spec, field.strategy, lo, hi) for lo, hi in chunks]
    zeros: list[tuple[int, int]] = []
    if workers > 1:
        for part in run_chunks(_lemma5_chunk, jobs, workers):
            zeros.extend(part)
    else:
        for n, job in enumerate(jobs, 1):
            zeros.extend(_lemma5_chunk(*job))
            if progress:
                progress(n, len(jobs))
    return {(FieldElement(field, x), FieldElement(field, y)) for x, y in zeros}
