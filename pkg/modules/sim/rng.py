"""
Counter-Based Random Streams
============================
One independent Philox stream per (seed, stream, point, frame).

A frame's message and noise depend only on these four numbers, never on
which worker drew them or how many frames came before.
"""

import numpy as np

# Stream identifiers keep construction and FER draws apart
FER_STREAM = 0
CONSTRUCTION_STREAM = 1
KERNEL_SEARCH_STREAM = 2


def frame_rng(seed: int, point: int, frame: int, stream: int = FER_STREAM) -> np.random.Generator:
    """Generator for one frame; counter words are (0, stream, point, frame)."""
    counter = np.array([0, stream, point, frame], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=int(seed), counter=counter))
