"""Deterministic random streams for Monte-Carlo estimation.

Every stream is a numpy ``Generator`` over the PCG64 bit generator, seeded
through a ``SeedSequence`` so that substreams can be split off without
overlap. Reports record the algorithm name and seed, which is all that is
needed to replay a run bit for bit.
"""

from __future__ import annotations

import hashlib
import logging
import secrets
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .const import RNG_ALGORITHM
from .exceptions import QFidelityDomainException

_LOGGER = logging.getLogger(__name__)

# Seeds are kept within 63 bits so they survive a JSON round trip everywhere
_SEED_BITS = 63


def _name_to_entropy(name: str) -> int:
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big", signed=False)


def draw_seed() -> int:
    """Draw a fresh seed from the operating system's entropy source."""
    return secrets.randbits(_SEED_BITS)


@dataclass
class RandomStream:
    """A named, seedable, splittable pseudo-random stream.

    Attributes:
        seed: The master seed the stream was built from
        name: Stream name; substreams extend it with their own suffix
        spawn_key: Position of the stream in the SeedSequence tree
    """

    seed: int
    name: str = "root"
    spawn_key: tuple = ()
    _generator: Optional[np.random.Generator] = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.seed, (int, np.integer)) or isinstance(self.seed, bool):
            raise QFidelityDomainException("seed", "must be an integer")
        if self.seed < 0:
            raise QFidelityDomainException("seed", "must be non-negative")
        self.seed = int(self.seed)

    @property
    def algorithm(self) -> str:
        """Name of the underlying bit generator."""
        return RNG_ALGORITHM

    @property
    def generator(self) -> np.random.Generator:
        """The numpy Generator backing this stream (created on first use)."""
        if self._generator is None:
            sequence = np.random.SeedSequence(self.seed, spawn_key=self.spawn_key)
            self._generator = np.random.Generator(np.random.PCG64(sequence))
        return self._generator

    def spawn(self, count: int) -> List["RandomStream"]:
        """Split off ``count`` independent substreams.

        Substream ``k`` depends only on the master seed, this stream's spawn key
        and ``k``, never on how much of the parent stream was consumed.

        Args:
            count: Number of substreams

        Returns:
            List of RandomStream instances, one per chunk

        Raises:
            QFidelityDomainException: If count is not positive
        """
        if count < 1:
            raise QFidelityDomainException("count", "must be at least 1")
        _LOGGER.debug("Spawning %d substreams from %s (seed %d)", count, self.name, self.seed)
        return [
            RandomStream(self.seed, name=f"{self.name}/{k}", spawn_key=self.spawn_key + (k,))
            for k in range(count)
        ]

    def child(self, name: str) -> "RandomStream":
        """Return a named substream; the same name always replays identically.

        Args:
            name: Non-empty substream name

        Raises:
            QFidelityDomainException: If the name is empty
        """
        if not name:
            raise QFidelityDomainException("name", "stream name must be non-empty")
        key = self.spawn_key + (_name_to_entropy(name),)
        return RandomStream(self.seed, name=f"{self.name}/{name}", spawn_key=key)
