"""
Splittable random streams.

The stream of a task is derived from the study seed and the task's
path, for instance ``(theta_index, replication)``:

    Generator(PCG64(SeedSequence(seed, spawn_key=path)))

so it does not depend on how many workers run the study nor on the
order in which tasks finish. Streams are reproducible for a given numpy
version; numpy does not promise that the values produced by its
distribution methods stay identical across releases.
"""
import numpy as np

from ..errors import InvalidParameterError

MAX_SEED = 2 ** 64 - 1


def check_seed(seed):
    if int(seed) != seed or not 0 <= seed <= MAX_SEED:
        raise InvalidParameterError(
            'seed', seed, 'must be an integer in [0, 2**64)')
    return int(seed)


def stream_for(seed, *path):
    """Returns the random stream of the task at ``path`` under ``seed``."""
    sequence = np.random.SeedSequence(
        check_seed(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.PCG64(sequence))
