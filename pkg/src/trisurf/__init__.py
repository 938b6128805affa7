"""trisurf: triangulated-surface machinery for 3-uniform hypergraphs.

Recognition and classification of closed surfaces and topological cycles,
admissible-edge probability machinery, rainbow-cycle search on the
edge-link graph, the torus-building pipeline, and the probabilistic
deletion lower-bound generator.
"""

from ._kernels import BACKEND as kernel_backend
from .hypercore import Hypergraph3, SimpleGraph, parse_hypergraph, serialize_hypergraph

__version__ = "0.1.0"

__all__ = [
    "Hypergraph3",
    "SimpleGraph",
    "parse_hypergraph",
    "serialize_hypergraph",
    "kernel_backend",
]
