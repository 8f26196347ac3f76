"""Permutation checks over GF(2^k): exhaustive image marking and the d-th roots criterion.

The criterion (Park-Lee, Wang, Zieve): for q - 1 = d s and r > 0,
x^r h(x^s) permutes GF(q) iff gcd(r, s) = 1 and x^r h(x)^s permutes the
d-th roots of unity.  Zero is fixed by x^r h(x^s) whenever r >= 1, so the
criterion covers the whole field.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field as dc_field
from functools import partial
from typing import Callable

import numpy as np

from ._parallel import chunk_ranges, run_chunks
from .circle import cyclic_powers
from .errors import BadFactorization, DomainTooLarge
from .field import BinaryField
from .poly import UniPoly

BRUTEFORCE = "bruteforce"
LEMMA1 = "lemma1"

DEFAULT_DOMAIN_CAP = 1 << 28
DEFAULT_CHUNK = 1 << 20


@dataclass
class VerifyReport:
    method: str
    verdict: bool
    witness: dict | None
    domain_size: int
    elapsed: float = 0.0
    extra: dict = dc_field(default_factory=dict, compare=False)

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "method": self.method,
            "verdict": self.verdict,
            "witness": self.witness,
            "domain_size": self.domain_size,
            "elapsed_ms": round(self.elapsed * 1000, 3) if timing else None,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)


class CollisionBitset:
    """Presence bitset over a domain of size n, plus a second "seen twice" bitset.

    Two bitsets built from disjoint chunks merge associatively, so collisions
    survive a parallel split.
    """

    def __init__(self, n: int):
        self.n = n
        self.seen = np.zeros(n, dtype=bool)
        self.twice = np.zeros(n, dtype=bool)
        self.marked = 0

    def mark(self, images: np.ndarray) -> None:
        images = np.asarray(images).astype(np.int64, copy=False)
        u, counts = np.unique(images, return_counts=True)
        self.twice[u[counts > 1]] = True
        self.twice[u[self.seen[u]]] = True
        self.seen[u] = True
        self.marked += images.size

    def merge(self, other: "CollisionBitset") -> "CollisionBitset":
        out = CollisionBitset(self.n)
        out.twice = self.twice | other.twice | (self.seen & other.seen)
        out.seen = self.seen | other.seen
        out.marked = self.marked + other.marked
        return out

    @property
    def image_size(self) -> int:
        return int(np.count_nonzero(self.seen))

    @property
    def collisions(self) -> int:
        """Number of marked points whose image had already been hit."""
        return self.marked - self.image_size

    def has_collision(self) -> bool:
        return bool(self.twice.any())

    def first_missing(self) -> int | None:
        miss = np.flatnonzero(~self.seen)
        return int(miss[0]) if miss.size else None


def as_array_map(f, field: BinaryField) -> Callable[[np.ndarray], np.ndarray]:
    """Turn a UniPoly, a trinomial-like object with ``eval_array`` or a plain callable
    on uint64 arrays into a vectorised map."""
    if isinstance(f, UniPoly):
        return f.eval_array
    if hasattr(f, "eval_array"):
        return partial(f.eval_array, field)
    return f


def _mark_chunk(fmap, n, lo, hi) -> CollisionBitset:
    bits = CollisionBitset(n)
    bits.mark(fmap(np.arange(lo, hi, dtype=np.uint64)))
    return bits


def _find_collision(fmap, n: int, chunk: int) -> tuple[int, int, int]:
    # first x2 (in domain order) whose image was already produced by some x1 < x2
    seen = np.full(n, -1, dtype=np.int64)
    for lo, hi in chunk_ranges(n, -(-n // chunk)):
        xs = np.arange(lo, hi, dtype=np.int64)
        images = fmap(xs.astype(np.uint64)).astype(np.int64)
        u, first = np.unique(images, return_index=True)
        repeat = np.ones(images.size, dtype=bool)
        repeat[first] = False
        repeat |= seen[images] >= 0
        if repeat.any():
            i = int(np.flatnonzero(repeat)[0])
            y = int(images[i])
            x1 = int(seen[y]) if seen[y] >= 0 else lo + int(np.flatnonzero(images == y)[0])
            return x1, lo + i, y
        fresh = seen[u] < 0
        seen[u[fresh]] = xs[first[fresh]]
    raise AssertionError("no collision found on the second pass")


def is_permutation_bruteforce(
    f,
    ctx: BinaryField,
    cap: int = DEFAULT_DOMAIN_CAP,
    chunk: int = DEFAULT_CHUNK,
    workers: int = 1,
) -> VerifyReport:
    """Evaluate f on all of GF(2^k) and look for a repeated image.

    ``f`` must be picklable when ``workers > 1``.
    """
    n = ctx.order
    if n > cap:
        raise DomainTooLarge(f"domain 2^{ctx.degree} exceeds the cap of {cap}")
    start = time.perf_counter()
    fmap = as_array_map(f, ctx)
    jobs = [(fmap, n, lo, hi) for lo, hi in chunk_ranges(n, -(-n // chunk))]
    parts = run_chunks(_mark_chunk, jobs, workers)
    bits = parts[0]
    for part in parts[1:]:
        bits = bits.merge(part)
    witness = None
    if bits.has_collision():
        x1, x2, y = _find_collision(fmap, n, chunk)
        witness = {"x1": f"{x1:#x}", "x2": f"{x2:#x}", "image": f"{y:#x}"}
        missing = bits.first_missing()
        if missing is not None:
            witness["missing"] = f"{missing:#x}"
    return VerifyReport(
        BRUTEFORCE,
        witness is None,
        witness,
        n,
        time.perf_counter() - start,
        {"image_size": bits.image_size, "collisions": bits.collisions},
    )


def roots_of_unity(ctx: BinaryField, d: int) -> np.ndarray:
    """The d-th roots of unity, as powers of gamma^((q-1)/d)."""
    n = ctx.order - 1
    if d <= 0 or n % d:
        raise BadFactorization(f"{d} does not divide {n}")
    g = ctx.pow(ctx.primitive_element, n // d)
    return cyclic_powers(ctx, g, d)


def lemma1_reduced_map(r: int, h: UniPoly, s: int, ctx: BinaryField) -> Callable[[np.ndarray], np.ndarray]:
    """x -> x^r h(x)^s, the map the criterion restricts to the d-th roots."""
    return partial(_reduced_map, r, h, s, ctx)


def _reduced_map(r, h, s, ctx, xs):
    return ctx.vmul(ctx.vpow(xs, r), ctx.vpow(h.eval_array(xs), s))


def _full_map(r, h, s, ctx, xs):
    return ctx.vmul(ctx.vpow(xs, r), h.eval_array(ctx.vpow(xs, s)))


def lemma1_full_map(r: int, h: UniPoly, s: int, ctx: BinaryField) -> Callable[[np.ndarray], np.ndarray]:
    """x -> x^r h(x^s) on the whole field."""
    return partial(_full_map, r, h, s, ctx)


def is_permutation_lemma1(r: int, h: UniPoly, d: int, s: int, ctx: BinaryField) -> VerifyReport:
    """Decide whether x^r h(x^s) permutes GF(q) via the d-th roots criterion."""
    if r <= 0 or d <= 0 or s <= 0:
        raise ValueError("r, d and s must all be positive")
    if d * s != ctx.order - 1:
        raise BadFactorization(f"{d} * {s} != {ctx.order - 1}")
    start = time.perf_counter()
    g = math.gcd(r, s)
    witness = None
    if g != 1:
        witness = {"reason": "gcd", "gcd": g}
    else:
        xs = roots_of_unity(ctx, d)
        images = lemma1_reduced_map(r, h, s, ctx)(xs)
        on_subgroup = ctx.vpow(images, d) == 1
        on_subgroup &= images != 0
        if not on_subgroup.all():
            i = int(np.flatnonzero(~on_subgroup)[0])
            witness = {"reason": "off-subgroup", "x": f"{int(xs[i]):#x}", "image": f"{int(images[i]):#x}"}
        else:
            u, first, inverse = np.unique(images, return_index=True, return_inverse=True)
            if u.size != d:
                repeat = np.ones(d, dtype=bool)
                repeat[first] = False
                i2 = int(np.flatnonzero(repeat)[0])
                i1 = int(first[inverse[i2]])
                witness = {
                    "reason": "collision",
                    "x1": f"{int(xs[i1]):#x}",
                    "x2": f"{int(xs[i2]):#x}",
                    "image": f"{int(images[i2]):#x}",
                }
    return VerifyReport(LEMMA1, witness is None, witness, d, time.perf_counter() - start)
