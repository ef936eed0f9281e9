try:
    from ._core import *  # noqa: F401,F403
except ImportError:  # in-tree test runs load the module off PYTHONPATH
    from _core import *  # noqa: F401,F403
