import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

from dsc.core.settings import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Iterable[T], jobs: int | None = None) -> list[R]:
    """
    Apply ``fn`` to every item, preserving input order.

    ``fn`` and the items must be picklable when more than one job is used; module-level
    functions and ``functools.partial`` objects over them are.
    """
    work = list(items)
    jobs = settings.DSC_JOBS if jobs is None else jobs
    if jobs <= 1 or len(work) <= 1:
        return [fn(item) for item in work]
    logger.debug(f"Dispatching {len(work)} items to {jobs} workers")
    with ProcessPoolExecutor(max_workers=min(jobs, len(work))) as executor:
        return list(executor.map(fn, work, chunksize=max(1, len(work) // (4 * jobs))))
