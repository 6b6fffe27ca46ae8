import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "MECHFORGE_THREADS"


def max_workers() -> int:
    raw = os.environ.get(ENV_THREADS, "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def pmap(fn, items):
    """Ordered map, fanned out over at most ``MECHFORGE_THREADS`` workers."""
    items = list(items)
    workers = min(max_workers(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))
