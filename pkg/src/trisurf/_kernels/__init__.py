"""Kernel selection: compiled extension when available, pure Python otherwise.

The compiled lane only handles graphs with at most 62 vertices; the
wrappers route larger inputs to the pure lane transparently.
"""

from . import _pure

try:
    from . import _core

    _HAVE_COMPILED = True
except ImportError:  # extension not built
    _core = None
    _HAVE_COMPILED = False

BACKEND = "compiled" if _HAVE_COMPILED else "pure"


def menger_count(adj, x, y, cap, active=-1):
    if _HAVE_COMPILED and len(adj) <= _core.MAX_N:
        return _core.menger_count(adj, x, y, cap, active)
    return _pure.menger_count(adj, x, y, cap, active)


def admissible_profile(adj, x, y, kmax):
    if _HAVE_COMPILED and len(adj) <= _core.MAX_N:
        return _core.admissible_profile(adj, x, y, kmax)
    return _pure.admissible_profile(adj, x, y, kmax)


# cut extraction is only needed on the cold path (connectivity splitting),
# so it has no compiled twin
menger_cut = _pure.menger_cut
