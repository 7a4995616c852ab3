"""Spectral expansions of the polyharmonic operator.

Partial Fourier integrals over polyharmonic level sets, imaginary-order
Riesz means, the associated maximal operator, dyadic radial cutoffs, and
localized multiplier audits.  The heavy lifting lives in the C++ extension
``specloc._core``.
"""

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
    from ._core import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension sits next to the build dir
    import os
    import sys

    _ext_dir = os.environ.get("SPECLOC_EXT_DIR")
    if not _ext_dir:
        raise
    sys.path.insert(0, _ext_dir)
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
