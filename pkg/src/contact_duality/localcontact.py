"""Local contact structures: a contact relation together with a bounded ideal.

Every ideal of a finite powerset algebra is principal, so the ideal is stored
as a single generator element; membership is one mask comparison and closure
properties need no maintenance.

Validity (the three boundedness axioms) is checked by check_lca_axioms, never
assumed by construction: several operations here are defined for arbitrary
(contact, ideal) pairs and the tests deliberately probe invalid ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boolalg import FiniteBooleanAlgebra
from .contact import ContactRelation, ElementContact, check_axioms, overlap_contact
from .errors import Refusal, StructureError
from .report import Report, Violation


@dataclass(frozen=True)
class BoundedIdeal:
    """Principal ideal of everything below a generator element."""

    algebra: FiniteBooleanAlgebra
    generator: int

    def __post_init__(self):
        self.algebra.check_element(self.generator)

    def contains(self, a: int) -> bool:
        return self.algebra.le(a, self.generator)

    @property
    def improper(self) -> bool:
        return self.generator == self.algebra.top

    def members(self):
        gen = self.generator
        return (a for a in self.algebra.elements() if a | gen == gen)


@dataclass(frozen=True)
class LocalContactAlgebra:
    contact: ContactRelation
    ideal: BoundedIdeal

    def __post_init__(self):
        if self.ideal.algebra is not self.contact.algebra and self.ideal.algebra != self.contact.algebra:
            raise StructureError("ideal and contact relation live on different algebras")

    @property
    def algebra(self) -> FiniteBooleanAlgebra:
        return self.contact.algebra

    def bounded(self, a: int) -> bool:
        return self.ideal.contains(a)

    @property
    def improper(self) -> bool:
        return self.ideal.improper


def nca_as_lca(contact: ContactRelation) -> LocalContactAlgebra:
    """View a plain contact algebra as a local one with the improper ideal."""
    return LocalContactAlgebra(contact, BoundedIdeal(contact.algebra, contact.algebra.top))


def check_lca_axioms(structure: LocalContactAlgebra) -> Report:
    """Check the three boundedness axioms exhaustively.

    BC1: bounded elements interpolate into the ideal below anything they are
    well inside of.  BC2: contact is witnessed through a bounded trace of the
    second argument.  BC3: every nonzero element has a nonzero bounded element
    well inside it.
    """
    alg = structure.algebra
    rel = structure.contact
    bounded = [a for a in alg.elements() if structure.bounded(a)]
    violations = []

    witness = None
    for a in bounded:
        if witness:
            break
        for c in alg.elements():
            if rel.way_below(a, c) and not any(
                rel.way_below(a, b) and rel.way_below(b, c) for b in bounded
            ):
                witness = Violation("BC1", (alg.names_of(a), alg.names_of(c)))
                break
    if witness:
        violations.append(witness)

    witness = None
    for a in alg.elements():
        if witness:
            break
        for b in alg.elements():
            if rel.contact(a, b) and not any(rel.contact(a, c & b) for c in bounded):
                witness = Violation("BC2", (alg.names_of(a), alg.names_of(b)))
                break
    if witness:
        violations.append(witness)

    for a in alg.elements():
        if a == 0:
            continue
        if not any(b != 0 and rel.way_below(b, a) for b in bounded):
            violations.append(Violation("BC3", (alg.names_of(a),)))
            break

    return Report("BC axioms", tuple(violations))


def alexandroff_extension(structure: LocalContactAlgebra) -> ElementContact:
    """Contact enlarged so that any two unbounded elements touch.

    This is the algebraic one-point compactification: with the improper ideal
    nothing changes, otherwise unbounded elements acquire mutual contact.
    Returned as an element-level relation sharing the standard query surface.
    """
    rel = structure.contact
    ideal = structure.ideal

    def extended(a: int, b: int) -> bool:
        if rel.contact(a, b):
            return True
        return not ideal.contains(a) and not ideal.contains(b)

    return ElementContact(
        structure.algebra,
        extended,
        assume_ca=True,
        label="alexandroff extension",
    )


def alexandroff_certificate(structure: LocalContactAlgebra) -> Report:
    """Full NCA check of the Alexandroff extension."""
    return check_axioms(alexandroff_extension(structure), "NCA")


def infinity_cluster(structure: LocalContactAlgebra, *, check: bool = True):
    """The set of unbounded elements, packaged as a cluster at infinity.

    Returns None when the ideal is improper (everything is bounded).  The
    unbounded elements are exactly those meeting the generator's complement,
    so their up-set is supported on the co-generator atoms.  With check=True
    the three cluster conditions are verified against the Alexandroff
    extension and a Refusal carries the report if any fails; structures that
    violate the boundedness axioms genuinely can fail here.
    """
    from .clusters import Cluster, check_cluster

    if structure.improper:
        return None
    support = structure.algebra.complement(structure.ideal.generator)
    cluster = Cluster(alexandroff_extension(structure), support)
    if check:
        report = check_cluster(cluster.relation, cluster.members())
        if not report.ok:
            raise Refusal("set of unbounded elements is not a cluster here", report)
    return cluster


def overlap_companion(
    structure: LocalContactAlgebra,
    *,
    improper_target: bool = False,
    validate: bool = True,
):
    """Same algebra and ideal with contact weakened to plain overlap.

    Returns the companion structure and the identity-carried morphism into
    it.  improper_target forces the companion's ideal to be everything, which
    is the classic way to break the ideal-covering morphism axiom when the
    source ideal is proper.  validate=False skips the precondition check so
    that deliberately invalid sources can be paired with the companion.
    """
    from .duality import AlgebraMorphism

    if validate:
        report = check_lca_axioms(structure)
        if not report.ok:
            raise Refusal("input fails the boundedness axioms", report)
    alg = structure.algebra
    ideal = BoundedIdeal(alg, alg.top) if improper_target else structure.ideal
    companion = LocalContactAlgebra(overlap_contact(alg), ideal)
    identity = AlgebraMorphism(structure, companion, tuple(alg.elements()))
    return companion, identity
