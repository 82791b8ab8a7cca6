"""Python surface of the quantum k-NN / cosine-classifier pipeline engine."""

try:
    from ._qpipe import *  # noqa: F401,F403  (installed layout)
    from ._qpipe import __version__  # noqa: F401
except ImportError:
    from _qpipe import *  # noqa: F401,F403  (build-tree layout)
    from _qpipe import __version__  # noqa: F401
