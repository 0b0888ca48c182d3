"""Contact relations on finite Boolean algebras and their axiom checkers.

A contact relation is stored only on atoms: full additivity forces a contact
relation on a finite powerset algebra to be determined by its restriction to
atoms, which collapses storage from square-of-element-count to square-of-atom
-count and turns cluster theory into clique theory on the atom graph.

Some derived relations (notably the Alexandroff extension of a local contact
structure) are more convenient to query at element level, so the package also
ships ElementContact: an element-pair relation with the same query surface.
Cluster and duality code works against that shared surface and never cares
which representation it is handed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .boolalg import FiniteBooleanAlgebra
from .errors import CapExceeded, StructureError
from .report import Report, Violation

ISO_ATOM_CAP = 10
_REACH_TABLE_LIMIT = 16  # memoized per-element reach masks only below this width


class ContactQuery:
    """Query surface shared by atom-backed and element-backed relations."""

    algebra: FiniteBooleanAlgebra

    def contact(self, a: int, b: int) -> bool:
        raise NotImplementedError

    def way_below(self, a: int, b: int) -> bool:
        """a is well inside b: a avoids the complement of b entirely."""
        return not self.contact(a, self.algebra.complement(b))


@dataclass(frozen=True)
class ContactRelation(ContactQuery):
    """Reflexive symmetric atom relation, lifted to elements on demand.

    rows[i] is the bit mask of atoms in contact with atom i.  Reflexivity is
    required at construction: a relation whose atom restriction misses the
    diagonal cannot satisfy the axiom that nonzero elements touch themselves,
    so such inputs are rejected outright.
    """

    algebra: FiniteBooleanAlgebra
    rows: tuple[int, ...]

    def __post_init__(self):
        n = self.algebra.atom_count
        if len(self.rows) != n:
            raise StructureError("atom relation must have one row per atom")
        for i, row in enumerate(self.rows):
            self.algebra.check_element(row)
            if not row >> i & 1:
                raise StructureError(f"atom relation must be reflexive; atom {i} misses itself")
        for i in range(n):
            for j in range(i + 1, n):
                if (self.rows[i] >> j & 1) != (self.rows[j] >> i & 1):
                    raise StructureError(f"atom relation must be symmetric; see atoms {i},{j}")

    @cached_property
    def _reach(self) -> tuple[int, ...] | None:
        if self.algebra.atom_count > _REACH_TABLE_LIMIT:
            return None
        reach = [0] * self.algebra.size
        for i, row in enumerate(self.rows):
            bit = 1 << i
            for a in range(self.algebra.size):
                if a & bit:
                    reach[a] |= row
        return tuple(reach)

    def contact(self, a: int, b: int) -> bool:
        self.algebra.check_element(a)
        self.algebra.check_element(b)
        reach = self._reach
        if reach is not None:
            return reach[a] & b != 0
        acc = 0
        for i in self.algebra.atoms_of(a):
            acc |= self.rows[i]
        return acc & b != 0

    def atom_pairs(self) -> list[tuple[int, int]]:
        """Strictly-above-diagonal atom pairs in contact, ascending."""
        n = self.algebra.atom_count
        return [(i, j) for i in range(n) for j in range(i + 1, n) if self.rows[i] >> j & 1]


class ElementContact(ContactQuery):
    """Element-level contact relation answered by a predicate.

    Only relations satisfying the basic contact axioms are sound inputs for
    the grill-based cluster machinery; constructions inside this package set
    assume_ca=True, arbitrary callers are re-checked before enumeration.
    """

    def __init__(self, algebra: FiniteBooleanAlgebra, predicate, *, assume_ca: bool = False,
                 label: str = "element contact"):
        self.algebra = algebra
        self._predicate = predicate
        self.assume_ca = assume_ca
        self.label = label

    def contact(self, a: int, b: int) -> bool:
        self.algebra.check_element(a)
        self.algebra.check_element(b)
        return bool(self._predicate(a, b))

    def __repr__(self):
        return f"ElementContact({self.label!r}, atoms={self.algebra.atom_count})"


def overlap_contact(algebra: FiniteBooleanAlgebra) -> ContactRelation:
    """Smallest contact relation: elements touch exactly when they overlap."""
    return ContactRelation(algebra, tuple(1 << i for i in range(algebra.atom_count)))


def universal_contact(algebra: FiniteBooleanAlgebra) -> ContactRelation:
    """Largest contact relation: any two nonzero elements touch."""
    return ContactRelation(algebra, tuple(algebra.top for _ in range(algebra.atom_count)))


def extremal_contacts(algebra: FiniteBooleanAlgebra) -> tuple[ContactRelation, ContactRelation]:
    return overlap_contact(algebra), universal_contact(algebra)


def atom_restriction(relation: ContactQuery) -> ContactRelation:
    """Atom-backed relation agreeing with `relation` on atom pairs."""
    algebra = relation.algebra
    n = algebra.atom_count
    rows = []
    for i in range(n):
        row = 0
        for j in range(n):
            if relation.contact(1 << i, 1 << j):
                row |= 1 << j
        rows.append(row)
    return ContactRelation(algebra, tuple(rows))


AXIOM_KINDS = ("CA", "NCA", "CON", "LL")


def check_axioms(relation: ContactQuery, kind: str) -> Report:
    """Exhaustively check one axiom family; report the least witness per axiom.

    CA checks the four contact axioms, NCA adds interpolation and co-density,
    CON checks connectedness, LL checks the seven laws of the derived
    well-inside relation.  Every axiom is checked independently even when one
    is derivable from others.
    """
    if kind not in AXIOM_KINDS:
        raise StructureError(f"unknown axiom kind {kind!r}; expected one of {AXIOM_KINDS}")
    algebra = relation.algebra
    if kind == "CA":
        checks = [_check_c1, _check_c2, _check_c3, _check_c4]
    elif kind == "NCA":
        checks = [_check_c1, _check_c2, _check_c3, _check_c4, _check_c5, _check_c6]
    elif kind == "CON":
        checks = [_check_con]
    else:
        checks = [_check_ll1, _check_ll2, _check_ll3, _check_ll4,
                  _check_ll5, _check_ll6, _check_ll7]
    violations = []
    for check in checks:
        found = check(relation, algebra)
        if found is not None:
            violations.append(found)
    return Report(f"{kind} axioms", tuple(violations))


def _witness(algebra, axiom, *masks) -> Violation:
    return Violation(axiom, tuple(algebra.names_of(m) for m in masks))


def _check_c1(r, alg):
    for a in alg.elements():
        if a != 0 and not r.contact(a, a):
            return _witness(alg, "C1", a)
    return None


def _check_c2(r, alg):
    for a in alg.elements():
        for b in alg.elements():
            if r.contact(a, b) and (a == 0 or b == 0):
                return _witness(alg, "C2", a, b)
    return None


def _check_c3(r, alg):
    for a in alg.elements():
        for b in alg.elements():
            if r.contact(a, b) and not r.contact(b, a):
                return _witness(alg, "C3", a, b)
    return None


def _check_c4(r, alg):
    for a in alg.elements():
        for b in alg.elements():
            for c in alg.elements():
                if r.contact(a, b | c) != (r.contact(a, b) or r.contact(a, c)):
                    return _witness(alg, "C4", a, b, c)
    return None


def _check_c5(r, alg):
    for a in alg.elements():
        for b in alg.elements():
            if r.contact(a, b):
                continue
            if not any(not r.contact(a, c) and not r.contact(b, alg.complement(c))
                       for c in alg.elements()):
                return _witness(alg, "C5", a, b)
    return None


def _check_c6(r, alg):
    for a in alg.elements():
        if a == alg.top:
            continue
        if not any(b != 0 and not r.contact(b, a) for b in alg.elements()):
            return _witness(alg, "C6", a)
    return None


def _check_con(r, alg):
    for a in alg.elements():
        if a in (0, alg.top):
            continue
        if not r.contact(a, alg.complement(a)):
            return _witness(alg, "CON", a)
    return None


def _check_ll1(r, alg):
    for a in alg.elements():
        for b in alg.elements():
            if r.way_below(a, b) and not alg.le(a, b):
                return _witness(alg, "LL1", a, b)
    return None


def _check_ll2(r, alg):
    if not r.way_below(0, 0):
        return Violation("LL2")
    return None


def _check_ll3(r, alg):
    for b in alg.elements():
        for c in alg.elements():
            if not r.way_below(b, c):
                continue
            for a in alg.elements():
                if not alg.le(a, b):
                    continue
                for t in alg.elements():
                    if alg.le(c, t) and not r.way_below(a, t):
                        return _witness(alg, "LL3", a, b, c, t)
    return None


def _check_ll4(r, alg):
    for a in alg.elements():
        for b in alg.elements():
            for c in alg.elements():
                if r.way_below(a, c) and r.way_below(b, c) and not r.way_below(a | b, c):
                    return _witness(alg, "LL4", a, b, c)
    return None


def _check_ll5(r, alg):
    for a in alg.elements():
        for c in alg.elements():
            if not r.way_below(a, c):
                continue
            if not any(r.way_below(a, b) and r.way_below(b, c) for b in alg.elements()):
                return _witness(alg, "LL5", a, c)
    return None


def _check_ll6(r, alg):
    for a in alg.elements():
        if a == 0:
            continue
        if not any(b != 0 and r.way_below(b, a) for b in alg.elements()):
            return _witness(alg, "LL6", a)
    return None


def _check_ll7(r, alg):
    for a in alg.elements():
        for b in alg.elements():
            if r.way_below(a, b) and not r.way_below(alg.complement(b), alg.complement(a)):
                return _witness(alg, "LL7", a, b)
    return None


def ca_isomorphic(first: ContactRelation, second: ContactRelation) -> tuple[int, ...] | None:
    """Atom permutation carrying one relation onto the other, if any.

    A Boolean isomorphism of powerset algebras is exactly an atom bijection,
    and it preserves lifted contact iff it preserves the atom relation, so
    this is graph isomorphism on atom graphs.  Backtracking with degree
    pruning; refuses above ISO_ATOM_CAP atoms.
    """
    n = first.algebra.atom_count
    if n != second.algebra.atom_count:
        return None
    if n > ISO_ATOM_CAP or second.algebra.atom_count > ISO_ATOM_CAP:
        raise CapExceeded(f"isomorphism search capped at {ISO_ATOM_CAP} atoms")

    deg1 = [bin(row).count("1") for row in first.rows]
    deg2 = [bin(row).count("1") for row in second.rows]
    if sorted(deg1) != sorted(deg2):
        return None

    assignment: list[int] = []
    used = [False] * n

    def consistent(i: int, j: int) -> bool:
        if deg1[i] != deg2[j]:
            return False
        for k, jk in enumerate(assignment):
            if (first.rows[i] >> k & 1) != (second.rows[j] >> jk & 1):
                return False
        return True

    def extend() -> bool:
        i = len(assignment)
        if i == n:
            return True
        for j in range(n):
            if not used[j] and consistent(i, j):
                assignment.append(j)
                used[j] = True
                if extend():
                    return True
                used[j] = False
                assignment.pop()
        return False

    if extend():
        return tuple(assignment)
    return None


def apply_atom_permutation(relation: ContactRelation, perm: tuple[int, ...]) -> ContactRelation:
    """Relation on the same algebra with atom i renamed to perm[i]."""
    n = relation.algebra.atom_count
    rows = [0] * n
    for i in range(n):
        for j in range(n):
            if relation.rows[i] >> j & 1:
                rows[perm[i]] |= 1 << perm[j]
    return ContactRelation(relation.algebra, tuple(rows))
