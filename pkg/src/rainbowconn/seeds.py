"""Deterministic, splittable randomness.

Every randomized operation takes a 64-bit unsigned integer seed and derives
its own PCG64 stream from (seed, scope tags), so adding a generator call in
one operation never perturbs the stream of another.  Scope tags are hashed
with SHA-256, making derivation independent of PYTHONHASHSEED.
"""

from __future__ import annotations

import hashlib

import numpy as np

MAX_SEED = 2**64 - 1


def _check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def _scope_digest(scope: tuple) -> bytes:
    tag = "/".join(str(part) for part in scope)
    return hashlib.sha256(tag.encode("utf-8")).digest()


def seed_sequence(seed: int, *scope) -> np.random.SeedSequence:
    """SeedSequence for (seed, scope); distinct scopes give independent streams."""
    seed = _check_seed(seed)
    digest = _scope_digest(scope)
    words = [int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4)]
    return np.random.SeedSequence([seed & 0xFFFFFFFF, seed >> 32, *words])


def generator(seed: int, *scope) -> np.random.Generator:
    """PCG64 generator on the (seed, scope) stream."""
    return np.random.Generator(np.random.PCG64(seed_sequence(seed, *scope)))


def derive_seed(seed: int, *scope) -> int:
    """Derive a child 64-bit seed from (seed, scope), e.g. one per grid cell."""
    seed = _check_seed(seed)
    digest = hashlib.sha256(
        str(seed).encode("utf-8") + b"|" + _scope_digest(scope)
    ).digest()
    return int.from_bytes(digest[:8], "little")
