"""Deterministic keyed random streams.

Every randomized operation derives its stream from an explicit seed plus
a context tuple (edge, trial index, retry index, ...) through a
counter-based Philox generator, so results are reproducible and
independent of evaluation order.
"""

import hashlib

import numpy as np


def keyed_rng(seed: int, *context) -> np.random.Generator:
    material = repr((int(seed),) + context).encode()
    digest = hashlib.blake2b(material, digest_size=16).digest()
    key = int.from_bytes(digest, "little")
    return np.random.Generator(np.random.Philox(key=key))
