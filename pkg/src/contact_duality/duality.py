"""The two contravariant functors and the morphism calculus.

Morphisms between local contact structures are total element tables checked
against the six morphism axioms.  Composition is table composition followed
by regularization (each value replaced by the join of the map over the lower
well-inside set), which keeps the sixth axiom stable.

Direction bookkeeping is fixed once: the dual of a space map f from X to Y is
a morphism from the regular closed structure of Y to that of X, and the dual
of a morphism from A to B is a space map from the dual space of B to the dual
space of A.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clusters import Cluster, check_cluster, grill_clusters
from .errors import IntegrityError, Refusal, StructureError
from .localcontact import (
    BoundedIdeal,
    LocalContactAlgebra,
    alexandroff_extension,
    check_lca_axioms,
)
from .report import Report, Violation
from .spaces import (
    FiniteSpace,
    RegularClosedAlgebra,
    SpaceMap,
    map_predicates,
    rc_algebra,
    space_predicates,
)

MORPHISM_KINDS = ("PAL", "DVAL")


@dataclass(frozen=True)
class AlgebraMorphism:
    """Total function between local contact structures, one value per element."""

    source: LocalContactAlgebra
    target: LocalContactAlgebra
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.source.algebra.size:
            raise StructureError("morphism table must cover every source element")
        for v in self.table:
            self.target.algebra.check_element(v)

    def __call__(self, a: int) -> int:
        self.source.algebra.check_element(a)
        return self.table[a]


def identity_morphism(structure: LocalContactAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(structure, structure, tuple(structure.algebra.elements()))


def check_morphism(phi: AlgebraMorphism, kind: str = "PAL") -> Report:
    """Exhaustive check of the six morphism axioms.

    PAL reads the declared ideals.  DVAL is the improper-ideal reading of the
    same axioms: with every element bounded the two ideal axioms trivialize
    and the extension used in the supremum axiom collapses to the plain
    contact, which is the classical compact-side morphism notion.
    """
    if kind not in MORPHISM_KINDS:
        raise StructureError(f"unknown morphism kind {kind!r}; expected one of {MORPHISM_KINDS}")
    src, tgt = phi.source, phi.target
    if kind == "DVAL":
        src = LocalContactAlgebra(src.contact, BoundedIdeal(src.algebra, src.algebra.top))
        tgt = LocalContactAlgebra(tgt.contact, BoundedIdeal(tgt.algebra, tgt.algebra.top))
    A, B = src.algebra, tgt.algebra
    rho, eta = src.contact, tgt.contact
    ext_src = alexandroff_extension(src)
    ext_tgt = alexandroff_extension(tgt)
    table = phi.table
    src_bounded = [a for a in A.elements() if src.bounded(a)]
    tgt_bounded = [b for b in B.elements() if tgt.bounded(b)]
    violations = []

    if table[0] != 0:
        violations.append(Violation("PAL1", (B.names_of(table[0]),)))

    done = False
    for a in A.elements():
        if done:
            break
        for b in A.elements():
            if table[a & b] != table[a] & table[b]:
                violations.append(Violation("PAL2", (A.names_of(a), A.names_of(b))))
                done = True
                break

    done = False
    for a in src_bounded:
        if done:
            break
        for b in A.elements():
            if rho.way_below(a, b):
                value = B.complement(table[A.complement(a)])
                if not eta.way_below(value, table[b]):
                    violations.append(Violation("PAL3", (A.names_of(a), A.names_of(b))))
                    done = True
                    break

    for b in tgt_bounded:
        if not any(B.le(b, table[a]) for a in src_bounded):
            violations.append(Violation("PAL4", (B.names_of(b),)))
            break

    for a in src_bounded:
        if not tgt.bounded(table[a]):
            violations.append(Violation("PAL5", (A.names_of(a),)))
            break

    for a in A.elements():
        sup = 0
        for b in A.elements():
            if ext_src.way_below(b, a):
                sup |= table[b]
        if sup != table[a]:
            violations.append(Violation("PAL6", (A.names_of(a),)))
            break

    subject = "PAL axioms" if kind == "PAL" else "DVAL axioms (improper-ideal reading)"
    return Report(subject, tuple(violations))


def regularize(phi: AlgebraMorphism) -> AlgebraMorphism:
    """Replace each value by the join of the map over the lower well-inside set.

    The well-inside relation is taken in the Alexandroff extension of the
    source.  On meet-preserving maps this is idempotent and forces the
    supremum axiom.
    """
    A = phi.source.algebra
    ext = alexandroff_extension(phi.source)
    table = []
    for a in A.elements():
        sup = 0
        for b in A.elements():
            if ext.way_below(b, a):
                sup |= phi.table[b]
        table.append(sup)
    return AlgebraMorphism(phi.source, phi.target, tuple(table))


def compose(second: AlgebraMorphism, first: AlgebraMorphism) -> AlgebraMorphism:
    """Diamond composition: apply first, then second, then regularize."""
    if first.target != second.source:
        raise StructureError("morphisms do not compose: middle structures differ")
    raw = AlgebraMorphism(
        first.source, second.target,
        tuple(second.table[first.table[a]] for a in first.source.algebra.elements()))
    return regularize(raw)


@dataclass(frozen=True)
class DualSpace:
    """Dual space of a local contact structure, with the region table.

    Points are the bounded clusters of the Alexandroff extension in canonical
    support order (every cluster, when the ideal is improper).  regions maps
    each source element to the mask of points containing it; the topology is
    generated from those regions as a closed base.
    """

    source: LocalContactAlgebra
    space: FiniteSpace
    clusters: tuple[Cluster, ...]
    regions: tuple[int, ...]
    case: str
    infinity: Cluster | None

    def region_of(self, a: int) -> int:
        self.source.algebra.check_element(a)
        return self.regions[a]


def dual_space(structure: LocalContactAlgebra, *, validate: bool = True) -> DualSpace:
    """Build the dual space from clusters of the Alexandroff extension.

    With a proper ideal only the bounded clusters are points and the cluster
    of unbounded elements is set aside; with the improper ideal every cluster
    is a point.  validate=False skips the boundedness-axiom gate so that the
    construction can be explored on structures that fail it.
    """
    if validate:
        report = check_lca_axioms(structure)
        if not report.ok:
            raise Refusal("dual space requires the boundedness axioms", report)
    alg = structure.algebra
    extension = alexandroff_extension(structure)
    everything = grill_clusters(extension)
    if structure.improper:
        case = "compact"
        points = everything
        infinity = None
    else:
        case = "local"
        gen = structure.ideal.generator
        points = [c for c in everything if c.support & gen]
        infinity = Cluster(extension, alg.complement(gen))

    names = tuple("{" + ",".join(c.support_names()) + "}" for c in points)
    regions = []
    for a in alg.elements():
        mask = 0
        for i, c in enumerate(points):
            if c.contains(a):
                mask |= 1 << i
        regions.append(mask)

    closed = {0, (1 << len(points)) - 1 if points else 0}
    closed.update(regions)
    frontier = list(closed)
    while frontier:
        new = []
        for f in frontier:
            for g in list(closed):
                for h in (f | g, f & g):
                    if h not in closed:
                        closed.add(h)
                        new.append(h)
        frontier = new

    if not points:
        raise StructureError("dual space has no points; the structure is degenerate here")
    nbhd = []
    for i in range(len(points)):
        avoid = 0
        for f in closed:
            if not f >> i & 1:
                avoid |= f
        nbhd.append(((1 << len(points)) - 1) ^ avoid)
    space = FiniteSpace(names, tuple(nbhd))
    return DualSpace(structure, space, tuple(points), tuple(regions), case, infinity)


def verify_double_dual(structure: LocalContactAlgebra, dual: DualSpace) -> Report:
    """Certify that the region table is an isomorphism onto the double dual.

    Checks bijectivity onto the regular closed sets of the dual space, the
    Boolean homomorphism laws, agreement of contact with intersection, and
    the bounded-element correspondence.  In the compact case the bounded
    correspondence holds identically because every regular closed set of a
    finite space is compact; that is recorded as a note.
    """
    alg = structure.algebra
    space = dual.space
    violations = []
    notes = []

    if len(set(dual.regions)) != alg.size:
        violations.append(Violation("injective"))
    rc = rc_algebra(space)
    if sorted(dual.regions) != sorted(rc.carrier):
        violations.append(Violation("onto-regular-closed"))

    if not violations:
        for a in alg.elements():
            for b in alg.elements():
                if dual.regions[a | b] != dual.regions[a] | dual.regions[b]:
                    violations.append(Violation("join", (alg.names_of(a), alg.names_of(b))))
                    break
                meet = space.closure(space.interior(dual.regions[a] & dual.regions[b]))
                if dual.regions[a & b] != meet:
                    violations.append(Violation("meet", (alg.names_of(a), alg.names_of(b))))
                    break
                touch = bool(dual.regions[a] & dual.regions[b])
                if structure.contact.contact(a, b) != touch:
                    violations.append(Violation("contact", (alg.names_of(a), alg.names_of(b))))
                    break
            else:
                comp = space.closure(space.everything ^ dual.regions[a])
                if dual.regions[alg.complement(a)] != comp:
                    violations.append(Violation("complement", (alg.names_of(a),)))
                    break
                continue
            break

    if dual.case == "compact":
        notes.append("bounded correspondence holds identically: "
                     "finite dual spaces are compact, so compact regular closed "
                     "sets are all regular closed sets")
    else:
        for a in alg.elements():
            if not structure.bounded(a):
                violations.append(Violation("bounded-correspondence", (alg.names_of(a),)))
                break

    return Report("double dual isomorphism", tuple(violations), tuple(notes))


@dataclass(frozen=True)
class PointEmbedding:
    """Canonical map sending a point to the set of regular closed sets holding it."""

    space: FiniteSpace
    rc: RegularClosedAlgebra
    sigma: tuple[frozenset[int], ...]
    dual: DualSpace | None
    map: SpaceMap | None
    homeomorphism: bool
    report: Report


def point_embedding(space: FiniteSpace) -> PointEmbedding:
    """Compute the canonical point map into the dual of the regular closed side.

    For a Hausdorff (hence discrete) finite space the map is matched against
    the dual space and certified a homeomorphism.  Other spaces still get the
    per-point tables, but no claim is made: the certificate is withheld with a
    note instead of being faked.
    """
    rc = rc_algebra(space)
    sigma = tuple(
        frozenset(e for e in rc.algebra.elements() if rc.to_pointset(e) >> x & 1)
        for x in range(space.point_count)
    )
    if not space_predicates(space).hausdorff:
        return PointEmbedding(
            space, rc, sigma, None, None, False,
            Report("point embedding", notes=("map computed, homeomorphism not asserted: "
                                             "space is not Hausdorff",)))

    dual = dual_space(rc.lca())
    member_sets = [frozenset(c.members()) for c in dual.clusters]
    assignment = []
    violations = []
    for x in range(space.point_count):
        try:
            assignment.append(member_sets.index(sigma[x]))
        except ValueError:
            violations.append(Violation("point-to-cluster", (space.points[x],)))
            break
    if violations:
        return PointEmbedding(space, rc, sigma, dual, None, False,
                              Report("point embedding", tuple(violations)))

    t = SpaceMap(space, dual.space, tuple(assignment))
    if len(set(assignment)) != dual.space.point_count or len(assignment) != dual.space.point_count:
        violations.append(Violation("bijective"))
    preds = map_predicates(t)
    if not preds.continuous:
        violations.append(Violation("continuous"))
    if not violations:
        inverse = SpaceMap(dual.space, space,
                           tuple(assignment.index(i) for i in range(dual.space.point_count)))
        if not map_predicates(inverse).continuous:
            violations.append(Violation("inverse-continuous"))
    ok = not violations
    return PointEmbedding(space, rc, sigma, dual, t, ok,
                          Report("point embedding homeomorphism", tuple(violations)))


def dual_of_map(f: SpaceMap) -> AlgebraMorphism:
    """Dual morphism of a perfect map: closure of preimage of interior.

    Contravariant: the result runs from the regular closed structure of the
    map's target to that of its source.  Non-perfect maps are refused with
    the failing predicate named.
    """
    preds = map_predicates(f)
    if not preds.perfect:
        failed = "continuous" if not preds.continuous else "closed"
        raise Refusal(f"map is not perfect: fails the {failed} predicate")
    rc_src = rc_algebra(f.source)
    rc_tgt = rc_algebra(f.target)
    table = []
    for e in rc_tgt.algebra.elements():
        pointset = rc_tgt.to_pointset(e)
        pulled = f.source.closure(f.preimage(f.target.interior(pointset)))
        table.append(rc_src.to_element(pulled))
    return AlgebraMorphism(rc_tgt.lca(), rc_src.lca(), tuple(table))


def dual_of_morphism(phi: AlgebraMorphism) -> SpaceMap:
    """Dual space map of a morphism, defined cluster by cluster.

    For each point of the dual of the morphism's target the defining set is
    computed, certified to be a bounded cluster of the morphism's source side
    (anything else is an internal bug, not bad input), and matched to a point
    of the source's dual space.
    """
    report = check_morphism(phi, "PAL")
    if not report.ok:
        raise Refusal("dual of a morphism requires the morphism axioms", report)
    src_dual = dual_space(phi.source)
    tgt_dual = dual_space(phi.target)
    A = phi.source.algebra
    B = phi.target.algebra
    ext_src = alexandroff_extension(phi.source)
    src_members = [frozenset(c.members()) for c in src_dual.clusters]

    assignment = []
    for cluster in tgt_dual.clusters:
        traced = frozenset(
            a for a in A.elements()
            if all(cluster.contains(B.complement(phi.table[b]))
                   for b in A.elements() if ext_src.way_below(b, A.complement(a)))
        )
        check = check_cluster(ext_src, traced)
        if not check.ok:
            raise IntegrityError(f"traced point set is not a cluster: {check.render()}")
        if phi.source.improper:
            bounded = True
        else:
            bounded = any(phi.source.bounded(a) for a in traced)
        if not bounded:
            raise IntegrityError("traced cluster is not bounded")
        try:
            assignment.append(src_members.index(traced))
        except ValueError as exc:
            raise IntegrityError("traced cluster missing from the dual point list") from exc

    result = SpaceMap(tgt_dual.space, src_dual.space, tuple(assignment))
    preds = map_predicates(result)
    if not preds.perfect:
        raise IntegrityError("dual of a morphism failed the perfectness certificate")
    return result


@dataclass(frozen=True)
class EmbeddingResult:
    is_embedding: bool
    report: Report


def check_closed_embedding(phi: AlgebraMorphism) -> EmbeddingResult:
    """Algebraic test for the dual of a map being a closed embedding.

    Condition one: every well-inside pair on the morphism's target side
    interpolates through a value of the morphism.  Condition two: well-inside
    between values is witnessed by a well-inside pair of arguments with the
    same values.  Well-inside is taken in the respective Alexandroff
    extensions.
    """
    pal = check_morphism(phi, "PAL")
    if not pal.ok:
        raise Refusal("closed embedding test requires a morphism", pal)
    for side in (phi.source, phi.target):
        gate = check_lca_axioms(side)
        if not gate.ok:
            raise Refusal("closed embedding test requires validated structures", gate)

    A = phi.target.algebra
    B = phi.source.algebra
    ext_a = alexandroff_extension(phi.target)
    ext_b = alexandroff_extension(phi.source)
    values = set(phi.table)
    violations = []

    done = False
    for a in A.elements():
        if done:
            break
        for b in A.elements():
            if not ext_a.way_below(a, b):
                continue
            if not any(ext_a.way_below(a, v) and ext_a.way_below(v, b) for v in values):
                violations.append(Violation("EMB1", (A.names_of(a), A.names_of(b))))
                done = True
                break

    done = False
    for a in B.elements():
        if done:
            break
        for b in B.elements():
            left = ext_a.way_below(phi.table[a], phi.table[b])
            right = any(
                ext_b.way_below(a1, b1)
                for a1 in B.elements() if phi.table[a1] == phi.table[a]
                for b1 in B.elements() if phi.table[b1] == phi.table[b]
            )
            if left != right:
                violations.append(Violation("EMB2", (B.names_of(a), B.names_of(b))))
                done = True
                break

    report = Report("closed embedding conditions", tuple(violations))
    return EmbeddingResult(report.ok, report)


def roundtrip_report(item) -> Report:
    """Object and naturality round trips, dispatched on the item kind.

    Spaces are checked through the point embedding, structures through the
    double dual isomorphism, maps and morphisms additionally through their
    naturality squares, compared entry by entry.
    """
    if isinstance(item, FiniteSpace):
        emb = point_embedding(item)
        if emb.map is None:
            return Report("roundtrip", (Violation("point-embedding"),), emb.report.notes)
        return Report("roundtrip: space", emb.report.violations, emb.report.notes)

    if isinstance(item, LocalContactAlgebra):
        dual = dual_space(item)
        inner = verify_double_dual(item, dual)
        return Report("roundtrip: structure", inner.violations, inner.notes)

    if isinstance(item, SpaceMap):
        violations = list(roundtrip_report(item.source).violations)
        violations.extend(roundtrip_report(item.target).violations)
        phi = dual_of_map(item)
        back = dual_of_morphism(phi)
        t_src = point_embedding(item.source).map
        t_tgt = point_embedding(item.target).map
        if t_src is None or t_tgt is None:
            violations.append(Violation("naturality-square"))
        else:
            for x in range(item.source.point_count):
                if t_tgt.assignment[item(x)] != back.assignment[t_src.assignment[x]]:
                    violations.append(
                        Violation("naturality-square", (item.source.points[x],)))
                    break
        return Report("roundtrip: map naturality", tuple(violations))

    if isinstance(item, AlgebraMorphism):
        violations = list(roundtrip_report(item.source).violations)
        violations.extend(roundtrip_report(item.target).violations)
        src_dual = dual_space(item.source)
        tgt_dual = dual_space(item.target)
        g = dual_of_morphism(item)
        phi_back = dual_of_map(g)
        rc_src = rc_algebra(src_dual.space)
        rc_tgt = rc_algebra(tgt_dual.space)
        for a in item.source.algebra.elements():
            left = rc_tgt.to_element(_pointset(tgt_dual, item.table[a]))
            right = phi_back.table[rc_src.to_element(_pointset(src_dual, a))]
            if left != right:
                violations.append(
                    Violation("naturality-square", (item.source.algebra.names_of(a),)))
                break
        return Report("roundtrip: morphism naturality", tuple(violations))

    raise StructureError(f"cannot round-trip a {type(item).__name__}")


def _pointset(dual: DualSpace, a: int) -> int:
    return dual.regions[a]
