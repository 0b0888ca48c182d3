"""Finite topological spaces in minimal-neighbourhood form, and maps.

A finite space is determined by the minimal open set around each point, so a
space is a point list plus one mask per point.  Closure and interior are then
quadratic scans.  Point sets are int masks over the point list, mirroring the
element encoding of the Boolean algebra kernel.

The regular closed sets of a finite space form a Boolean algebra carrying the
standard contact relation (nonempty intersection); rc_algebra materializes it
over its atoms and exports the contact relation in atom-backed form, which is
what the duality machinery consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .boolalg import FiniteBooleanAlgebra
from .contact import ContactRelation
from .errors import CapExceeded, Refusal, StructureError
from .localcontact import BoundedIdeal, LocalContactAlgebra
from .report import Report, Violation

RC_POINT_CAP = 16
_FULL_TABLE_VERIFY_LIMIT = 256


@dataclass(frozen=True)
class FiniteSpace:
    points: tuple[str, ...]
    min_nbhd: tuple[int, ...]

    def __post_init__(self):
        n = len(self.points)
        if n == 0:
            raise StructureError("a space needs at least one point")
        if len(set(self.points)) != n:
            raise StructureError("point names must be distinct")
        if len(self.min_nbhd) != n:
            raise StructureError("one minimal neighbourhood per point is required")
        for x, u in enumerate(self.min_nbhd):
            if u < 0 or u >> n:
                raise StructureError("neighbourhood mask out of range")
            if not u >> x & 1:
                raise StructureError(f"point {self.points[x]!r} misses its own neighbourhood")
        for x in range(n):
            for y in range(n):
                if self.min_nbhd[x] >> y & 1 and self.min_nbhd[y] | self.min_nbhd[x] != self.min_nbhd[x]:
                    raise StructureError(
                        f"neighbourhoods of {self.points[x]!r} and {self.points[y]!r} "
                        "do not generate a topology")

    @property
    def point_count(self) -> int:
        return len(self.points)

    @property
    def everything(self) -> int:
        return (1 << self.point_count) - 1

    def check_set(self, m: int) -> int:
        if not isinstance(m, int) or m < 0 or m > self.everything:
            raise StructureError(f"{m!r} is not a point set of this space")
        return m

    def point_index(self, name: str) -> int:
        try:
            return self.points.index(name)
        except ValueError as exc:
            raise StructureError(f"unknown point {name!r}") from exc

    def set_of_names(self, names) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self.point_index(name)
        return mask

    def names_of(self, m: int) -> tuple[str, ...]:
        self.check_set(m)
        return tuple(self.points[i] for i in range(self.point_count) if m >> i & 1)

    def closure(self, m: int) -> int:
        self.check_set(m)
        out = 0
        for x, u in enumerate(self.min_nbhd):
            if u & m:
                out |= 1 << x
        return out

    def interior(self, m: int) -> int:
        self.check_set(m)
        out = 0
        for x, u in enumerate(self.min_nbhd):
            if u & m == u:
                out |= 1 << x
        return out

    def is_open(self, m: int) -> bool:
        return self.interior(m) == m

    def is_closed(self, m: int) -> bool:
        return self.closure(m) == m

    @cached_property
    def closed_sets(self) -> tuple[int, ...]:
        return tuple(m for m in range(self.everything + 1) if self.is_closed(m))

    def subspace(self, subset: int) -> "FiniteSpace":
        """Induced space on a nonempty point subset."""
        self.check_set(subset)
        if subset == 0:
            raise StructureError("a subspace needs at least one point")
        kept = [i for i in range(self.point_count) if subset >> i & 1]
        position = {i: k for k, i in enumerate(kept)}
        names = tuple(self.points[i] for i in kept)
        nbhd = []
        for i in kept:
            mask = 0
            for j in kept:
                if self.min_nbhd[i] >> j & 1:
                    mask |= 1 << position[j]
            nbhd.append(mask)
        return FiniteSpace(names, tuple(nbhd))

    def restrict_set(self, subset: int, m: int) -> int:
        """Rewrite a point set of this space as a set of the subspace."""
        kept = [i for i in range(self.point_count) if subset >> i & 1]
        out = 0
        for k, i in enumerate(kept):
            if m >> i & 1:
                out |= 1 << k
        return out

    def embed_set(self, subset: int, m: int) -> int:
        """Rewrite a subspace point set as a set of this space."""
        kept = [i for i in range(self.point_count) if subset >> i & 1]
        out = 0
        for k, i in enumerate(kept):
            if m >> k & 1:
                out |= 1 << i
        return out


def closure_interior(space: FiniteSpace, m: int) -> tuple[int, int]:
    return space.closure(m), space.interior(m)


def discrete_space(names) -> FiniteSpace:
    names = tuple(names)
    return FiniteSpace(names, tuple(1 << i for i in range(len(names))))


@dataclass(frozen=True)
class SpaceMap:
    source: FiniteSpace
    target: FiniteSpace
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.source.point_count:
            raise StructureError("map must assign every source point")
        for v in self.assignment:
            if not 0 <= v < self.target.point_count:
                raise StructureError("map value out of range")

    def __call__(self, index: int) -> int:
        return self.assignment[index]

    def image(self, m: int) -> int:
        out = 0
        for i, v in enumerate(self.assignment):
            if m >> i & 1:
                out |= 1 << v
        return out

    def preimage(self, m: int) -> int:
        out = 0
        for i, v in enumerate(self.assignment):
            if m >> v & 1:
                out |= 1 << i
        return out

    @staticmethod
    def identity(space: FiniteSpace) -> "SpaceMap":
        return SpaceMap(space, space, tuple(range(space.point_count)))

    def after(self, other: "SpaceMap") -> "SpaceMap":
        """Composite self(other(x)); other is applied first."""
        if other.target != self.source:
            raise StructureError("maps do not compose: middle spaces differ")
        return SpaceMap(other.source, self.target,
                        tuple(self.assignment[v] for v in other.assignment))


@dataclass(frozen=True)
class SpacePredicates:
    connected: bool
    hausdorff: bool
    extremally_disconnected: bool
    compact: bool = True


def space_predicates(space: FiniteSpace) -> SpacePredicates:
    """Connectedness, separation and extremal disconnectedness of a finite space.

    A finite Hausdorff space is discrete; a finite space is extremally
    disconnected exactly when closures of the basic opens are open; finite
    spaces are always compact.
    """
    connected = True
    for m in range(1, space.everything):
        if space.is_open(m) and space.is_closed(m):
            connected = False
            break
    hausdorff = all(u == 1 << i for i, u in enumerate(space.min_nbhd))
    extremal = all(space.is_open(space.closure(u)) for u in space.min_nbhd)
    return SpacePredicates(connected, hausdorff, extremal)


@dataclass(frozen=True)
class MapPredicates:
    continuous: bool
    closed: bool
    perfect: bool
    injective: bool
    surjective: bool
    dense_image: bool


def map_predicates(f: SpaceMap) -> MapPredicates:
    """Pointwise map properties; perfect means continuous with closed images.

    Point inverses in a finite space are automatically compact, so perfection
    reduces to continuity plus closedness.  Closedness alone is the image
    condition and does not imply continuity here.
    """
    continuous = all(
        f.image(f.source.min_nbhd[x]) | f.target.min_nbhd[f(x)] == f.target.min_nbhd[f(x)]
        for x in range(f.source.point_count)
    )
    closed = all(f.target.is_closed(f.image(s)) for s in f.source.closed_sets)
    injective = len(set(f.assignment)) == f.source.point_count
    surjective = len(set(f.assignment)) == f.target.point_count
    dense = f.target.closure(f.image(f.source.everything)) == f.target.everything
    return MapPredicates(continuous, closed, continuous and closed, injective, surjective, dense)


@dataclass(frozen=True)
class RegularClosedAlgebra:
    """The regular closed sets of a space as an atom-backed contact structure.

    carrier holds the regular closed point sets ascending; atoms are its
    minimal nonzero members.  algebra is the powerset over those atoms, with
    one named atom per minimal set, and contact is nonempty intersection of
    the underlying point sets.  Finite spaces are compact, so every regular
    closed set is bounded and the exported local structure has the improper
    ideal.
    """

    space: FiniteSpace
    carrier: tuple[int, ...]
    atoms: tuple[int, ...]
    algebra: FiniteBooleanAlgebra
    contact: ContactRelation

    def to_element(self, pointset: int) -> int:
        mask = 0
        for k, atom in enumerate(self.atoms):
            if atom & pointset == atom:
                mask |= 1 << k
        if self.to_pointset(mask) != pointset:
            raise StructureError("point set is not regular closed in this space")
        return mask

    def to_pointset(self, element: int) -> int:
        self.algebra.check_element(element)
        out = 0
        for k, atom in enumerate(self.atoms):
            if element >> k & 1:
                out |= atom
        return out

    def lca(self) -> LocalContactAlgebra:
        return LocalContactAlgebra(self.contact, BoundedIdeal(self.algebra, self.algebra.top))

    # point-set operations of the regular closed algebra
    def meet_sets(self, f: int, g: int) -> int:
        return self.space.closure(self.space.interior(f & g))

    def complement_set(self, f: int) -> int:
        return self.space.closure(self.space.everything ^ f)


def regular_closed_sets(space: FiniteSpace) -> tuple[int, ...]:
    cl, iv = space.closure, space.interior
    return tuple(m for m in range(space.everything + 1) if cl(iv(m)) == m)


def rc_algebra(space: FiniteSpace) -> RegularClosedAlgebra:
    """Build the regular closed algebra with its standard contact relation.

    Enumerates the fixpoints of closure-of-interior, takes the minimal
    nonzero ones as atoms, and checks the carrier really is the powerset of
    those atoms (count, unique decomposition, and on small carriers the full
    operation tables).  Contact between atoms is plain intersection, and the
    lift of that atom relation is verified to agree with intersection on the
    whole carrier.
    """
    if space.point_count > RC_POINT_CAP:
        raise CapExceeded(f"regular closed enumeration capped at {RC_POINT_CAP} points")
    carrier = regular_closed_sets(space)
    nonzero = [f for f in carrier if f]
    atoms = tuple(f for f in nonzero if not any(g and g != f and g | f == f for g in nonzero))

    if len(carrier) != 1 << len(atoms):
        raise StructureError("regular closed carrier is not a powerset of its atoms")
    union_of = {}
    for mask in range(1 << len(atoms)):
        u = 0
        for k, atom in enumerate(atoms):
            if mask >> k & 1:
                u |= atom
        union_of[mask] = u
    if sorted(union_of.values()) != sorted(carrier):
        raise StructureError("regular closed sets do not decompose over the atoms")

    names = tuple("+".join(space.names_of(atom)) for atom in atoms)
    algebra = FiniteBooleanAlgebra(names if names else ("empty",))
    if not atoms:
        raise StructureError("a nonempty space has at least one regular closed atom")
    rows = []
    for i, a in enumerate(atoms):
        row = 0
        for j, b in enumerate(atoms):
            if a & b:
                row |= 1 << j
        rows.append(row)
    contact = ContactRelation(algebra, tuple(rows))

    rc = RegularClosedAlgebra(space, carrier, atoms, algebra, contact)
    if len(carrier) <= _FULL_TABLE_VERIFY_LIMIT:
        _verify_rc_tables(rc)
    return rc


def _verify_rc_tables(rc: RegularClosedAlgebra) -> None:
    """Cross-check algebra operations against the point-set definitions."""
    for e in rc.algebra.elements():
        f = rc.to_pointset(e)
        if rc.space.closure(rc.space.interior(f)) != f:
            raise StructureError("atom union escaped the regular closed carrier")
    for e1 in rc.algebra.elements():
        f1 = rc.to_pointset(e1)
        for e2 in rc.algebra.elements():
            f2 = rc.to_pointset(e2)
            if rc.to_pointset(e1 | e2) != f1 | f2:
                raise StructureError("join disagrees with union")
            if rc.to_pointset(rc.algebra.meet(e1, e2)) != rc.meet_sets(f1, f2):
                raise StructureError("meet disagrees with closure of interior of intersection")
            if rc.contact.contact(e1, e2) != bool(f1 & f2):
                raise StructureError("lifted contact disagrees with intersection")
        if rc.to_pointset(rc.algebra.complement(e1)) != rc.complement_set(f1):
            raise StructureError("complement disagrees with closure of the set complement")


@dataclass(frozen=True)
class RegularOpenAlgebra:
    """Regular open sets with the closure map onto the regular closed algebra."""

    space: FiniteSpace
    carrier: tuple[int, ...]
    to_closed: dict[int, int]
    certificate: Report

    def join_sets(self, u: int, v: int) -> int:
        return self.space.interior(self.space.closure(u | v))

    def complement_set(self, u: int) -> int:
        return self.space.interior(self.space.everything ^ u)

    def in_contact(self, u: int, v: int) -> bool:
        return bool(self.space.closure(u) & self.space.closure(v))


def ro_algebra(space: FiniteSpace) -> RegularOpenAlgebra:
    """Regular open algebra and its canonical isomorphism onto regular closed.

    The map sends a regular open set to its closure.  The certificate records
    bijectivity, preservation of the Boolean operations, and agreement of the
    two contact relations; it is empty for every finite space.
    """
    if space.point_count > RC_POINT_CAP:
        raise CapExceeded(f"regular open enumeration capped at {RC_POINT_CAP} points")
    cl, iv = space.closure, space.interior
    carrier = tuple(m for m in range(space.everything + 1) if iv(cl(m)) == m)
    to_closed = {u: cl(u) for u in carrier}

    violations = []
    closed_side = regular_closed_sets(space)
    if sorted(to_closed.values()) != sorted(closed_side):
        violations.append(Violation("bijection"))
    for u in carrier:
        for v in carrier:
            join = iv(cl(u | v))
            if to_closed[join] != to_closed[u] | to_closed[v]:
                violations.append(
                    Violation("join", (space.names_of(u), space.names_of(v))))
            meet = u & v
            if to_closed[meet] != cl(iv(to_closed[u] & to_closed[v])):
                violations.append(
                    Violation("meet", (space.names_of(u), space.names_of(v))))
            if bool(cl(u) & cl(v)) != bool(to_closed[u] & to_closed[v]):
                violations.append(
                    Violation("contact", (space.names_of(u), space.names_of(v))))
            if violations:
                break
        if violations:
            break
        if to_closed[iv(space.everything ^ u)] != cl(space.everything ^ to_closed[u]):
            violations.append(Violation("complement", (space.names_of(u),)))
            break
    report = Report("regular open to regular closed isomorphism", tuple(violations))
    return RegularOpenAlgebra(space, carrier, to_closed, report)


@dataclass(frozen=True)
class DenseSubspaceIso:
    """Mutually inverse Boolean isomorphisms between the regular closed
    algebras of a space and a dense subspace.

    restrict sends a regular closed set of the big space to its trace on the
    subspace; extend sends a regular closed set of the subspace to its
    closure in the big space.  Keys and values are point sets of the
    respective spaces.
    """

    space: FiniteSpace
    subspace: FiniteSpace
    subset: int
    restrict: dict[int, int]
    extend: dict[int, int]
    certificate: Report


def dense_subspace_isomorphism(space: FiniteSpace, subset: int) -> DenseSubspaceIso:
    """Build the trace/closure isomorphism pair for a dense point subset.

    Refuses when the subset is not dense.  The certificate checks that the
    two maps are mutually inverse bijections preserving join, meet and
    complement.
    """
    space.check_set(subset)
    if space.closure(subset) != space.everything:
        raise Refusal("subset is not dense, so the trace maps need not be isomorphisms")
    sub = space.subspace(subset)
    big_rc = regular_closed_sets(space)
    small_rc = regular_closed_sets(sub)

    kept = [i for i in range(space.point_count) if subset >> i & 1]

    def to_sub(m: int) -> int:
        out = 0
        for k, i in enumerate(kept):
            if m >> i & 1:
                out |= 1 << k
        return out

    def to_big(m: int) -> int:
        out = 0
        for k, i in enumerate(kept):
            if m >> k & 1:
                out |= 1 << i
        return out

    restrict = {f: to_sub(f & subset) for f in big_rc}
    extend = {g: space.closure(to_big(g)) for g in small_rc}

    violations = []
    if sorted(restrict.values()) != sorted(small_rc):
        violations.append(Violation("restrict-range"))
    if sorted(extend.values()) != sorted(big_rc):
        violations.append(Violation("extend-range"))
    if not violations:
        for f in big_rc:
            if extend[restrict[f]] != f:
                violations.append(Violation("extend-restrict", (space.names_of(f),)))
                break
        for g in small_rc:
            if restrict[extend[g]] != g:
                violations.append(Violation("restrict-extend", (sub.names_of(g),)))
                break
    if not violations:
        for f in big_rc:
            for g in big_rc:
                if restrict[f | g] != restrict[f] | restrict[g]:
                    violations.append(Violation("join", (space.names_of(f), space.names_of(g))))
                    break
                meet_big = space.closure(space.interior(f & g))
                meet_small = sub.closure(sub.interior(restrict[f] & restrict[g]))
                if restrict[meet_big] != meet_small:
                    violations.append(Violation("meet", (space.names_of(f), space.names_of(g))))
                    break
            else:
                comp_big = space.closure(space.everything ^ f)
                comp_small = sub.closure(sub.everything ^ restrict[f])
                if restrict[comp_big] != comp_small:
                    violations.append(Violation("complement", (space.names_of(f),)))
                    break
                continue
            break
    report = Report("dense subspace isomorphism", tuple(violations))
    return DenseSubspaceIso(space, sub, subset, restrict, extend, report)
