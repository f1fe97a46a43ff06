"""Permutations of {1, ..., n} in one-line notation.

``p * q`` is composition of functions: ``(p * q)(i) == p(q(i))``.  With this
product every right action in the package satisfies ``(p*q)^* = q^* o p^*``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> Permutation:
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = images[j - 1], images[i - 1]
        return cls(tuple(images))

    @classmethod
    def all(cls, n: int) -> Iterator[Permutation]:
        """All of Sigma_n in lexicographic order of images."""
        for images in itertools.permutations(range(1, n + 1)):
            yield cls(images)

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.size != other.size:
            raise ValueError("cannot compose permutations of different sizes")
        return Permutation(tuple(self(other(i)) for i in range(1, self.size + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for i, image in enumerate(self.images, start=1):
            inv[image - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.size + 1))

    def permute(self, items: Sequence) -> tuple:
        """Return ``(items[p(1)], ..., items[p(n)])``, the reindexing used by
        the right action on profiles."""
        if len(items) != self.size:
            raise ValueError(f"expected {self.size} items, got {len(items)}")
        return tuple(items[i - 1] for i in self.images)

    def __str__(self):
        return "[" + " ".join(map(str, self.images)) + "]"


def block_permutation(labels_left: Sequence, labels_right: Sequence) -> Permutation:
    """The permutation ``p`` with ``labels_left[k] == labels_right[p(k) - 1]``.

    Both sequences must list the same distinct labels.  Used to express that
    two ways of building an operation differ only by a reordering of inputs.
    """
    position = {label: k for k, label in enumerate(labels_right, start=1)}
    if len(position) != len(labels_right) or set(position) != set(labels_left):
        raise ValueError("label lists are not reorderings of each other")
    return Permutation(tuple(position[label] for label in labels_left))
