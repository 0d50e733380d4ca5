"""Deterministic seed fan-out: one master seed, independent child streams."""

from __future__ import annotations

import hashlib
import struct

_MASK64 = (1 << 64) - 1


def subseed(master: int, *labels) -> int:
    """Derive a child seed from ``master`` and a sequence of hashable labels.

    Stable across processes and platforms: labels are folded through their
    repr into a keyed blake2b digest, so distinct label tuples give
    independent streams and reruns are reproducible.
    """
    h = hashlib.blake2b(digest_size=8)
    h.update(struct.pack("<Q", master & _MASK64))
    for label in labels:
        h.update(repr(label).encode("utf-8"))
        h.update(b"\x1f")
    return int.from_bytes(h.digest(), "little")
