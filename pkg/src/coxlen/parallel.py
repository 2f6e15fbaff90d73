"""Order-preserving map helper for the optional thread knob.

Results are collected in submission order, so output never depends on
scheduling; the final data is identical to the single-threaded run.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor


def parallel_map(fn, items, threads=1):
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))
