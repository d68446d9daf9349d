"""Seeded generation of smooth weight vectors, one per chamber."""

from __future__ import annotations

import random
from typing import Iterable

from .errors import InvalidWeights
from .weights import ChamberSignature, WeightVector, chamber_signature, is_smooth


def random_smooth_weights(n: int, rng: random.Random, max_weight: int = 30,
                          attempts: int = 1000) -> WeightVector:
    """Integer weights in ``1..max_weight`` that are valid and off every wall."""
    for _ in range(attempts):
        entries = [rng.randint(1, max_weight) for _ in range(n)]
        try:
            m = WeightVector(entries)
        except InvalidWeights:
            continue
        if is_smooth(m):
            return m
    raise RuntimeError(f"no smooth weight vector found for n = {n}")


def chamber_sample(sizes: Iterable[int], per_size: int, seed: int = 0,
                   max_weight: int = 30, attempts: int = 200) -> list[WeightVector]:
    """Up to ``per_size`` weight vectors per n, pairwise in distinct chambers."""
    rng = random.Random(seed)
    out = []
    for n in sizes:
        seen: set[ChamberSignature] = set()
        for _ in range(attempts):
            if len(seen) >= per_size:
                break
            m = random_smooth_weights(n, rng, max_weight)
            sig = chamber_signature(m)
            if sig not in seen:
                seen.add(sig)
                out.append(m)
    return out
