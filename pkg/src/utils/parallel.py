"""Bounded data-parallel map for independent amplitude computations."""

import sys
from concurrent.futures import ThreadPoolExecutor

from tqdm import tqdm

MAX_WORKERS = 64


def parallel_map(func, items, threads=1, progress=False, desc=None):
    """
    Apply func to every item, preserving input order.

    Args:
        func (callable): Pure function of one item
        items (iterable): Work items
        threads (int): Worker count; 1 runs inline
        progress (bool): Show a tqdm bar on stderr
        desc (str): Progress bar label

    Returns:
        list: func(item) for each item, in input order
    """
    items = list(items)
    threads = max(1, min(int(threads), MAX_WORKERS))

    bar = tqdm(total=len(items), desc=desc, file=sys.stderr, disable=not progress, leave=False)
    try:
        if threads == 1 or len(items) < 2:
            results = []
            for item in items:
                results.append(func(item))
                bar.update(1)
            return results

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = []
            # map() yields in submission order, so the merge is deterministic
            for result in pool.map(func, items):
                results.append(result)
                bar.update(1)
            return results
    finally:
        bar.close()


def chunked(items, size):
    """Split a sequence into consecutive chunks of at most size elements."""
    size = max(1, int(size))
    return [items[i:i + size] for i in range(0, len(items), size)]
