"""Various helpers not related to the statistics themselves"""
import asyncio
import logging
import math
import os
import warnings


_log = logging.getLogger(__name__)


# region Multiple utilities


def ensure_parent_dir_exists(file_path):
    """Ensures that the parent directory exists"""
    parent = os.path.dirname(file_path)
    if parent:
        os.makedirs(parent, exist_ok=True)


def falling_factorial(n, k):
    """Returns n (n - 1) ... (n - k + 1), which is zero when k > n."""
    if k > n:
        return 0
    return math.perm(n, k)


def set_partitions(items):
    """
    Yields every partition of ``items`` into non-empty blocks, each
    partition as a list of tuples. There are Bell(len(items)) of them.
    """
    items = tuple(items)
    if not items:
        yield []
        return

    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        # Either the first item starts its own block...
        yield [(first,)] + partition
        # ...or it joins one of the existing blocks.
        for i, block in enumerate(partition):
            yield partition[:i] + [(first,) + block] + partition[i + 1:]


# endregion

# region Async utilities


def get_running_loop():
    try:
        return asyncio.get_running_loop()
    except RuntimeError:
        pass

    with warnings.catch_warnings():
        warnings.simplefilter('ignore', DeprecationWarning)
        try:
            loop = asyncio.get_event_loop_policy().get_event_loop()
        except RuntimeError:
            # Newer interpreters no longer create a loop on demand.
            loop = None

    if loop is None or loop.is_closed():
        loop = asyncio.new_event_loop()
        asyncio.set_event_loop(loop)
    return loop


# endregion
