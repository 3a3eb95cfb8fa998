"""
This module rewrites the coroutine methods of the public classes so they
can run the loop on their own if it's not already running. Scripts and
the command line can then call ``PowerStudy(...).run()`` directly, while
code inside a running loop keeps awaiting it as usual.
"""
import functools
import inspect

from . import helpers
from .simulation.power import PowerStudy


def _syncify_wrap(t, method_name):
    method = getattr(t, method_name)

    @functools.wraps(method)
    def syncified(*args, **kwargs):
        coro = method(*args, **kwargs)
        loop = helpers.get_running_loop()
        if loop.is_running():
            return coro
        else:
            return loop.run_until_complete(coro)

    # Save an accessible reference to the original method
    setattr(syncified, '__signrank.sync', method)
    setattr(t, method_name, syncified)


def syncify(*types):
    """
    Converts all the public coroutine methods in the given types into
    synchronous ones, which return either the coroutine or the result
    based on whether ``asyncio's`` event loop is running.
    """
    for t in types:
        for name in dir(t):
            if not name.startswith('_'):
                if inspect.iscoroutinefunction(getattr(t, name)):
                    _syncify_wrap(t, name)


syncify(PowerStudy)

__all__ = ['PowerStudy']
