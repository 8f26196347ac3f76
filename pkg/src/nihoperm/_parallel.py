from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence


def chunk_ranges(n: int, chunks: int) -> list[tuple[int, int]]:
    """Split range(n) into at most ``chunks`` contiguous (lo, hi) pieces."""
    chunks = max(1, min(chunks, n))
    step, extra = divmod(n, chunks)
    out, lo = [], 0
    for i in range(chunks):
        hi = lo + step + (i < extra)
        out.append((lo, hi))
        lo = hi
    return [r for r in out if r[0] < r[1]]


def run_chunks(fn: Callable, jobs: Sequence[tuple], workers: int = 1) -> list:
    """Apply fn(*job) to every job, in order; fan out to processes when workers > 1."""
    if workers <= 1 or len(jobs) <= 1:
        return [fn(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *job) for job in jobs]
        return [f.result() for f in futures]
