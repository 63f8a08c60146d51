"""Portfolio optimization over matroids with independent random element values."""

try:
    from ._portopt import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:  # build-tree layout: the extension sits next to this package
    from _portopt import *  # noqa: F401,F403
