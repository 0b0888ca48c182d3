"""Finite Boolean algebra kernel.

An algebra is the full powerset of a finite atom list.  Elements are plain
int bit masks over the atoms, so they are hashable values that can be shared
freely; every operation takes the owning algebra explicitly and validates the
mask width, which makes accidental mixing of algebras detectable.

The default atom cap of 24 keeps exhaustive element enumeration feasible in
tests; the CONTACT_DUALITY_MAX_ATOMS environment variable raises it at the
caller's risk.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import StructureError

DEFAULT_MAX_ATOMS = 24
MAX_ATOMS_ENV = "CONTACT_DUALITY_MAX_ATOMS"


def atom_cap() -> int:
    raw = os.environ.get(MAX_ATOMS_ENV)
    if raw is None:
        return DEFAULT_MAX_ATOMS
    try:
        return int(raw)
    except ValueError as exc:
        raise StructureError(f"{MAX_ATOMS_ENV} must be an integer, got {raw!r}") from exc


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    """Powerset algebra over a tuple of distinct atom names."""

    atom_names: tuple[str, ...]

    def __post_init__(self):
        if not self.atom_names:
            raise StructureError("an algebra needs at least one atom")
        if len(set(self.atom_names)) != len(self.atom_names):
            raise StructureError("atom names must be distinct")
        if len(self.atom_names) > atom_cap():
            raise StructureError(
                f"{len(self.atom_names)} atoms exceeds the cap of {atom_cap()}; "
                f"set {MAX_ATOMS_ENV} to override"
            )

    @staticmethod
    def of(*names: str) -> "FiniteBooleanAlgebra":
        return FiniteBooleanAlgebra(tuple(names))

    @property
    def atom_count(self) -> int:
        return len(self.atom_names)

    @property
    def size(self) -> int:
        return 1 << self.atom_count

    @property
    def top(self) -> int:
        return self.size - 1

    bottom = 0

    def check_element(self, a: int) -> int:
        if not isinstance(a, int) or a < 0 or a > self.top:
            raise StructureError(f"{a!r} is not an element of a {self.atom_count}-atom algebra")
        return a

    def elements(self) -> Iterator[int]:
        return iter(range(self.size))

    def atoms(self) -> Iterator[int]:
        return (1 << i for i in range(self.atom_count))

    def join(self, a: int, b: int) -> int:
        return self.check_element(a) | self.check_element(b)

    def meet(self, a: int, b: int) -> int:
        return self.check_element(a) & self.check_element(b)

    def complement(self, a: int) -> int:
        return self.top ^ self.check_element(a)

    def le(self, a: int, b: int) -> bool:
        return self.check_element(a) | self.check_element(b) == b

    def big_join(self, items: Iterable[int]) -> int:
        out = 0
        for a in items:
            out |= self.check_element(a)
        return out

    def big_meet(self, items: Iterable[int]) -> int:
        out = self.top
        for a in items:
            out &= self.check_element(a)
        return out

    def atoms_of(self, a: int) -> list[int]:
        """Ascending bit positions of the atoms below a; empty only for 0."""
        self.check_element(a)
        return [i for i in range(self.atom_count) if a >> i & 1]

    def atom_index(self, name: str) -> int:
        try:
            return self.atom_names.index(name)
        except ValueError as exc:
            raise StructureError(f"unknown atom {name!r}") from exc

    def atom_mask(self, index: int) -> int:
        if not 0 <= index < self.atom_count:
            raise StructureError(f"atom index {index} out of range")
        return 1 << index

    def element_of_names(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self.atom_index(name)
        return mask

    def names_of(self, a: int) -> tuple[str, ...]:
        return tuple(self.atom_names[i] for i in self.atoms_of(a))
