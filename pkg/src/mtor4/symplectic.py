"""Symplecticity decision, Kodaira dimension, and the surgery certificate.

A closed oriented mapping torus either carries a symplectic form, provably
does not, or the symbolic description decides the question only after
passing to a finite cover.  decide_symplectic sorts inputs into those
bins.  For the symplectic ones kodaira_dimension reads off the Kodaira
class of the certifying fibration, and virtual_kodaira does the same for
the best-behaved finite cover.  luttinger_plan emits the explicit list of
Lagrangian torus surgeries that rebuilds a surface-bundle mapping torus
from a product, which is the constructive half of the story.

Every "yes" produced here is backed by one mechanism: the manifold (or a
finite cover) fibers over the 2-torus with fiber a closed oriented
surface whose class is homologically essential, and such fibrations carry
symplectic forms.  Every "no" is backed by one of two mechanisms: the
second Betti number vanishes, or the fiber is a closed 3-manifold that
does not fiber over the circle while the manifold is (covered by) a
product, and products of non-fibered 3-manifolds with the circle are
never symplectic.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

from .errors import (
    GenusMismatch,
    InconsistentCharacteristicNumbers,
    NotSymplectic,
    NotVirtuallySymplectic,
    UnknownVirtualFibering,
    UnsupportedDescription,
    ValidationError,
)
from .fourfold import (
    CoverEntry,
    EulerComponent,
    IdentityMonodromy,
    MappingTorus4,
    SurfaceBundleAut,
    SymbolicPeriodic,
    ThreeTorusAut,
    TorusBundleAut,
    betti_numbers_4d,
    enumerate_covers,
    induced_h1_action,
    vb1_fourfold,
)
from .monodromy import TwistLetter, TwistWord, transvection_action
from .threefold import (
    Fiber,
    Hyperbolic,
    JsjGraph,
    S1xS2,
    Seifert,
    Spherical,
    SurfaceBundle,
    TorusBundle,
    first_homology,
    is_fibered_pair,
    orbifold_euler,
    seifert_first_betti,
)
from .zlinalg import (
    IntMatrix,
    Vector,
    integral_kernel_basis,
    rational_kernel_rank,
)

__all__ = [
    "SymplecticStatus",
    "SymplecticDecision",
    "KodairaDim",
    "LagrangianTorus",
    "SurgeryPlan",
    "decide_symplectic",
    "kodaira_dimension",
    "virtual_kodaira",
    "luttinger_plan",
    "verify_surgery_plan",
]


class SymplecticStatus(Enum):
    YES = "yes"
    NO = "no"
    VIRTUALLY = "virtually"
    UNKNOWN = "unknown"


class KodairaDim(Enum):
    """Kodaira dimension of a symplectic mapping torus.

    Two never occurs: the canonical square 3*signature + 2*euler vanishes
    for every mapping torus, which rules out the general-type class.
    """

    NEG_INFINITY = "-infinity"
    ZERO = "0"
    ONE = "1"


@dataclass(frozen=True)
class SymplecticDecision:
    """Outcome of the symplecticity decision.

    status is the four-way verdict.  virtually records whether some
    finite cover is symplectic: True and False are proved, None means the
    bounded search was inconclusive.  b1 is the first Betti number of the
    mapping torus when the description determines it.  fiber_class is an
    invariant primitive class certifying a "yes" on a torus-bundle or
    3-torus fiber.  cover is the witness for a virtual statement, either
    a CoverEntry from the enumeration or a small dict naming the cover.
    fibered_genus is the fiber genus of the certifying fibration over the
    torus: 0, 1, or the exact genus when known; any value at least 2 is
    equivalent for the Kodaira class.
    """

    status: SymplecticStatus
    virtually: bool | None
    reason: str
    b1: int | None = None
    fiber_class: Vector | None = None
    cover: object | None = None
    fibered_genus: int | None = None


# The powers of an integer matrix can only gain rational fixed vectors at
# eigenvalues that are roots of unity.  In dimension at most 3 those have
# order dividing 12, so scanning that far is exhaustive.
_POWER_SCAN_BOUND = 12


def _decide_torus_aut(
    y: TorusBundle, f: TorusBundleAut, max_cover_index: int
) -> SymplecticDecision:
    """Torus-bundle fiber with explicit bundle automorphism.

    Symplectic exactly when b1 of the mapping torus is at least 2, which
    happens exactly when the automorphism fixes a primitive class dual to
    the fiber; the mapping torus is then a torus bundle over the torus.
    """
    m1 = induced_h1_action(y, f)
    k1 = rational_kernel_rank(m1 - IntMatrix.identity(m1.rows))
    b1 = 1 + k1
    if b1 >= 2:
        report = is_fibered_pair(y, f)
        assert report.fibered
        return SymplecticDecision(
            status=SymplecticStatus.YES,
            virtually=True,
            reason=(
                "the automorphism fixes a primitive class dual to the fiber, "
                "so the mapping torus is a torus bundle over the torus and "
                "carries a symplectic form; equivalently its first Betti "
                f"number is {b1} >= 2"
            ),
            b1=b1,
            fiber_class=report.invariant_classes[0],
            fibered_genus=1,
        )
    # b1 = 1 forces base degree -1, and squaring that degree frees a
    # class: the double cover along the mapping circle already has b1 >= 2,
    # so the cheap bound almost always settles the search
    witness = None
    bounds = [min(2, max_cover_index)]
    if max_cover_index > 2:
        bounds.append(max_cover_index)
    for bound in bounds:
        for entry in enumerate_covers(y, f, bound):
            if entry.b1 >= 2:
                witness = entry
                break
        if witness is not None:
            break
    if witness is not None:
        return SymplecticDecision(
            status=SymplecticStatus.NO,
            virtually=True,
            reason=(
                "no class dual to the fiber is fixed, the first Betti number "
                "is 1, and a mapping torus of a torus bundle is symplectic "
                "only when it is at least 2; the enumerated cover of fiber "
                f"index {witness.fiber_index} and degree {witness.degree()} "
                f"raises it to {witness.b1}, so a finite cover is symplectic"
            ),
            b1=1,
            cover=witness,
        )
    return SymplecticDecision(
        status=SymplecticStatus.NO,
        virtually=None,
        reason=(
            "no class dual to the fiber is fixed, the first Betti number is "
            "1, and a mapping torus of a torus bundle is symplectic only "
            "when it is at least 2; no cover in the enumerated family up to "
            f"index {max_cover_index} raises it, so the virtual question "
            "stays open at this bound"
        ),
        b1=1,
    )


def _decide_three_torus(f: ThreeTorusAut) -> SymplecticDecision:
    """3-torus fiber with a raw H_1 automorphism.

    Every finite cover of this mapping torus is again the mapping torus
    of a power of the same matrix restricted to a finite-index lattice,
    so fixed vectors of powers settle both the direct and the virtual
    question, and the power scan is exhaustive by the root-of-unity
    bound.
    """
    m = f.matrix
    k1 = rational_kernel_rank(m - IntMatrix.identity(3))
    b1 = 1 + k1
    if b1 >= 2:
        fixed = integral_kernel_basis(m.transpose() - IntMatrix.identity(3))[0]
        return SymplecticDecision(
            status=SymplecticStatus.YES,
            virtually=True,
            reason=(
                "the automorphism fixes a cohomology class of the 3-torus, "
                "so the mapping torus re-fibers as a torus bundle over the "
                "torus, and those always carry symplectic forms; its first "
                f"Betti number is {b1} >= 2"
            ),
            b1=b1,
            fiber_class=fixed,
            fibered_genus=1,
        )
    for k in range(2, _POWER_SCAN_BOUND + 1):
        if rational_kernel_rank(m**k - IntMatrix.identity(3)) >= 1:
            return SymplecticDecision(
                status=SymplecticStatus.NO,
                virtually=True,
                reason=(
                    "no fixed vector, so the first Betti number is 1 and the "
                    "second vanishes, leaving no room for a symplectic "
                    f"class; the power {k} of the action has a fixed vector, "
                    "so the cyclic cover of that degree has first Betti "
                    "number at least 2 and is symplectic"
                ),
                b1=1,
                cover={"monodromy_power": k},
            )
    return SymplecticDecision(
        status=SymplecticStatus.NO,
        virtually=False,
        reason=(
            "no power of the homology action has a fixed vector, and every "
            "finite cover of this mapping torus is again one over a power "
            "of the same action, so every cover keeps first Betti number 1 "
            "and second Betti number 0: no cover is symplectic"
        ),
        b1=1,
    )


def _decide_surface_aut(x: MappingTorus4) -> SymplecticDecision:
    """Surface-bundle fiber with a fiber-preserving automorphism."""
    y = x.fiber
    assert isinstance(y, SurfaceBundle)
    try:
        b1 = betti_numbers_4d(x).b1
    except UnsupportedDescription:
        b1 = None
    return SymplecticDecision(
        status=SymplecticStatus.YES,
        virtually=True,
        reason=(
            "the monodromy preserves the surface-bundle structure of the "
            "fiber with degree one on the base circle, so the mapping torus "
            f"is a genus-{y.genus} surface bundle over the torus; the fiber "
            "has negative Euler characteristic, making its class essential, "
            "and the fibration carries a symplectic form"
        ),
        b1=b1,
        fibered_genus=y.genus,
    )


def _decide_seifert_product(y: Seifert) -> SymplecticDecision:
    """Product of a Seifert-fibered 3-manifold with the circle.

    Such a product is symplectic exactly when the 3-manifold fibers over
    the circle.  The description certifies a fibration in three cases: a
    horizontal surface (zero Euler number over an orientable base), a
    flat fiber with positive first Betti number (those are torus bundles),
    and the circle bundle over the torus (a torus bundle with unipotent
    monodromy).  Nonzero Euler number over a hyperbolic base obstructs
    fibering in every finite cover.
    """
    chi = orbifold_euler(y)
    e = y.euler_number
    orientable = y.base_orientable
    b1y = seifert_first_betti(y)
    b1x = b1y + 1
    if chi > 0:
        if e != 0:
            return SymplecticDecision(
                status=SymplecticStatus.NO,
                virtually=False,
                reason=(
                    "positive orbifold Euler characteristic with nonzero "
                    "Euler number means the fiber has finite fundamental "
                    "group, so the mapping torus and all of its finite "
                    "covers have vanishing second Betti number and carry no "
                    "symplectic class"
                ),
                b1=1,
            )
        if orientable:
            return SymplecticDecision(
                status=SymplecticStatus.YES,
                virtually=True,
                reason=(
                    "zero Euler number over an orientable base gives a "
                    "horizontal sphere, so the fiber is the product of a "
                    "sphere and a circle and the mapping torus is a sphere "
                    "bundle over the torus, which is symplectic"
                ),
                b1=b1x,
                fibered_genus=0,
            )
        return SymplecticDecision(
            status=SymplecticStatus.NO,
            virtually=True,
            reason=(
                "the fiber has vanishing first Betti number, so the mapping "
                "torus has second Betti number zero and is not symplectic; "
                "pulling back the orientation double cover of the base "
                "yields a sphere-times-torus cover, which is symplectic"
            ),
            b1=1,
            cover={"base_cover": "orientation double cover"},
        )
    if chi == 0:
        if e == 0 and orientable:
            return SymplecticDecision(
                status=SymplecticStatus.YES,
                virtually=True,
                reason=(
                    "zero Euler number over an orientable flat base gives a "
                    "horizontal torus, so the mapping torus is a torus "
                    "bundle over the torus and carries a symplectic form"
                ),
                b1=b1x,
                fibered_genus=1,
            )
        if e == 0 and b1y >= 1:
            return SymplecticDecision(
                status=SymplecticStatus.YES,
                virtually=True,
                reason=(
                    "the fiber is a flat 3-manifold with positive first "
                    "Betti number, hence a torus bundle over the circle, so "
                    "the mapping torus is a torus bundle over the torus and "
                    "carries a symplectic form"
                ),
                b1=b1x,
                fibered_genus=1,
            )
        if e != 0 and orientable and y.base_genus == 1 and not y.cone_orders:
            return SymplecticDecision(
                status=SymplecticStatus.YES,
                virtually=True,
                reason=(
                    "the fiber is a nontrivial circle bundle over the "
                    "torus, itself a torus bundle over the circle with "
                    "unipotent monodromy, so the mapping torus is a torus "
                    "bundle over the torus and carries a symplectic form"
                ),
                b1=b1x,
                fibered_genus=1,
            )
        if b1y == 0:
            return SymplecticDecision(
                status=SymplecticStatus.NO,
                virtually=True,
                reason=(
                    "the fiber has vanishing first Betti number, so the "
                    "mapping torus has second Betti number zero and is not "
                    "symplectic; the fiber is finitely covered by a torus "
                    "bundle with positive first Betti number, whose product "
                    "with the circle is symplectic"
                ),
                b1=1,
                cover={"base_cover": "cover trivializing the cone points"},
            )
        return SymplecticDecision(
            status=SymplecticStatus.NO,
            virtually=True,
            reason=(
                "a product of a 3-manifold and a circle is symplectic only "
                "when the 3-manifold fibers over the circle; this fiber "
                "carries a unique Seifert fibration, with nonzero Euler "
                "number over a non-orientable base, so it is not a torus "
                "bundle and does not fiber; the base orientation double "
                "cover gives a torus bundle whose product with the circle "
                "is symplectic"
            ),
            b1=b1x,
            cover={"base_cover": "orientation double cover"},
        )
    # chi < 0
    if e != 0:
        return SymplecticDecision(
            status=SymplecticStatus.NO,
            virtually=False,
            reason=(
                "nonzero Euler number over a hyperbolic base orbifold: "
                "neither the fiber nor any of its finite covers fibers over "
                "the circle, since the Euler number stays nonzero in "
                "covers; a symplectic form on any finite cover of the "
                "mapping torus would pull back to a product cover and force "
                "such a fibration"
            ),
            b1=b1x,
        )
    if orientable:
        return SymplecticDecision(
            status=SymplecticStatus.YES,
            virtually=True,
            reason=(
                "zero Euler number over an orientable hyperbolic base gives "
                "a horizontal surface of genus at least 2, so the mapping "
                "torus is a surface bundle over the torus with essential "
                "fiber and carries a symplectic form"
            ),
            b1=b1x,
            fibered_genus=2,
        )
    if b1y == 0:
        return SymplecticDecision(
            status=SymplecticStatus.NO,
            virtually=True,
            reason=(
                "the fiber has vanishing first Betti number, so the mapping "
                "torus has second Betti number zero and is not symplectic; "
                "the base orientation double cover has a horizontal surface "
                "and yields a symplectic surface-bundle cover"
            ),
            b1=1,
            cover={"base_cover": "orientation double cover"},
        )
    return SymplecticDecision(
        status=SymplecticStatus.VIRTUALLY,
        virtually=True,
        reason=(
            "zero Euler number over a non-orientable hyperbolic base: these "
            "data do not certify a horizontal surface in the fiber itself, "
            "so the mapping torus stays undecided; the base orientation "
            "double cover gives a surface bundle over the torus, which is "
            "symplectic"
        ),
        b1=b1x,
        cover={"base_cover": "orientation double cover"},
    )


def _decide_product(y: Fiber, max_cover_index: int) -> SymplecticDecision:
    """Product of the fiber with the circle (identity monodromy)."""
    if isinstance(y, Spherical):
        return SymplecticDecision(
            status=SymplecticStatus.NO,
            virtually=False,
            reason=(
                "the fiber has finite fundamental group, so the mapping "
                "torus and every finite cover of it have vanishing second "
                "Betti number and carry no symplectic class"
            ),
            b1=1,
        )
    if isinstance(y, S1xS2):
        return SymplecticDecision(
            status=SymplecticStatus.YES,
            virtually=True,
            reason=(
                "the mapping torus is the product of a 2-sphere and a "
                "2-torus, a symplectic sphere bundle over the torus"
            ),
            b1=2,
            fibered_genus=0,
        )
    if isinstance(y, TorusBundle):
        return _decide_torus_aut(
            y, TorusBundleAut(IntMatrix.identity(2)), max_cover_index
        )
    if isinstance(y, Seifert):
        return _decide_seifert_product(y)
    if isinstance(y, SurfaceBundle):
        b1 = first_homology(y).b1 + 1
        return SymplecticDecision(
            status=SymplecticStatus.YES,
            virtually=True,
            reason=(
                "the fiber is a surface bundle over the circle, so its "
                f"product with the circle is a genus-{y.genus} surface "
                "bundle over the torus; the fiber class is essential and "
                "the fibration carries a symplectic form"
            ),
            b1=b1,
            fibered_genus=y.genus,
        )
    return SymplecticDecision(
        status=SymplecticStatus.UNKNOWN,
        virtually=None,
        reason=(
            "the description does not determine whether the fiber fibers "
            "over the circle, and no virtual-fibration data is attached, so "
            "neither a symplectic structure nor its absence is certified"
        ),
    )


def _demote_periodic(base: SymplecticDecision, order: int) -> SymplecticDecision:
    """Transfer the product-case decision through periodic monodromy.

    The cyclic cover unwinding the monodromy is the product case.  A
    symplectic form would pull back to it, so a product-case "no" stands.
    A product-case "yes" only certifies the cover, since the action of
    the periodic map on homology is unspecified.  b1 survives only when
    it was forced to 1 by the vanishing of the fiber's first Betti
    number, which no monodromy can change.
    """
    forced_b1 = base.b1 if base.b1 == 1 else None
    if base.status is SymplecticStatus.YES:
        return SymplecticDecision(
            status=SymplecticStatus.VIRTUALLY,
            virtually=True,
            reason=(
                f"the cyclic cover of degree {order} unwinding the periodic "
                "monodromy is the product case, which is symplectic: "
                + base.reason
                + "; the periodic action on homology is unspecified, so the "
                "mapping torus itself stays undecided"
            ),
            b1=forced_b1,
            cover={"monodromy_power": order},
        )
    if base.status is SymplecticStatus.NO:
        return replace(
            base,
            reason=(
                "a symplectic form would pull back to the cyclic cover of "
                f"degree {order} unwinding the periodic monodromy, which is "
                "the product case and is not symplectic: " + base.reason
            ),
            b1=forced_b1,
            fiber_class=None,
            fibered_genus=None,
        )
    return replace(base, b1=forced_b1, fiber_class=None, fibered_genus=None)


def decide_symplectic(
    x: MappingTorus4, max_cover_index: int = 12
) -> SymplecticDecision:
    """Decide symplecticity of a mapping torus from its description.

    Never raises on a valid description: inputs the symbolic data cannot
    settle come back with status "unknown".  max_cover_index bounds the
    cover enumeration used to certify virtual statements on torus-bundle
    fibers.
    """
    f = x.monodromy
    if isinstance(f, TorusBundleAut):
        assert isinstance(x.fiber, TorusBundle)
        return _decide_torus_aut(x.fiber, f, max_cover_index)
    if isinstance(f, ThreeTorusAut):
        return _decide_three_torus(f)
    if isinstance(f, SurfaceBundleAut):
        return _decide_surface_aut(x)
    if isinstance(f, IdentityMonodromy):
        return _decide_product(x.fiber, max_cover_index)
    assert isinstance(f, SymbolicPeriodic)
    base = _decide_product(x.fiber, max_cover_index)
    if f.order == 1:
        return base
    return _demote_periodic(base, f.order)


def kodaira_dimension(
    x: MappingTorus4,
    decision: SymplecticDecision | None = None,
    max_cover_index: int = 12,
) -> KodairaDim:
    """Kodaira dimension of a symplectic mapping torus.

    Demands a "yes" decision and reads the dimension off the genus of
    the certifying fibration over the torus.  The canonical square
    3*signature + 2*euler is checked first; mapping tori always have
    both characteristic numbers zero, so a nonzero value means the input
    is not what it claims to be.
    """
    try:
        betti = betti_numbers_4d(x)
        euler, signature = betti.euler, betti.signature
    except UnsupportedDescription:
        # the numbers are structural for mapping tori, not homological
        euler, signature = 0, 0
    if 3 * signature + 2 * euler != 0:
        raise InconsistentCharacteristicNumbers(
            f"3*signature + 2*euler = {3 * signature + 2 * euler} != 0"
        )
    if decision is None:
        decision = decide_symplectic(x, max_cover_index)
    if decision.status is not SymplecticStatus.YES:
        raise NotSymplectic(
            "Kodaira dimension is defined here only for a decided "
            f"symplectic structure; the decision was {decision.status.value!r}"
        )
    genus = decision.fibered_genus
    assert genus is not None
    if genus == 0:
        return KodairaDim.NEG_INFINITY
    if genus == 1:
        return KodairaDim.ZERO
    return KodairaDim.ONE


def virtual_kodaira(x: MappingTorus4, max_index: int = 12) -> KodairaDim:
    """Kodaira dimension of a symplectic finite cover.

    Well defined because the Kodaira dimension of a symplectic mapping
    torus is a covering invariant.  Organized by the fiber genus of the
    virtual fibration: genus 0 gives -infinity, genus 1 gives 0 exactly
    when some cover has first Betti number at least 2, genus at least 2
    gives 1.  Raises NotVirtuallySymplectic when no finite cover is
    symplectic and UnknownVirtualFibering when the description carries no
    virtual-fibration data at all.
    """
    y = x.fiber
    if isinstance(y, Spherical):
        raise NotVirtuallySymplectic(
            "spherical fiber: every finite cover of the mapping torus has "
            "vanishing second Betti number"
        )
    if isinstance(y, S1xS2):
        return KodairaDim.NEG_INFINITY
    if isinstance(y, TorusBundle):
        result = vb1_fourfold(x, max_index)
        value = result.value
        assert value is not None
        if value >= 2:
            return KodairaDim.ZERO
        raise NotVirtuallySymplectic(
            "genus-1 virtual fibration, but the enumerated covers all keep "
            "first Betti number 1, so no cover reaches the threshold of 2 "
            "needed for a symplectic form"
        )
    if isinstance(y, Seifert):
        chi = orbifold_euler(y)
        if chi > 0:
            if y.euler_number == 0:
                return KodairaDim.NEG_INFINITY
            raise NotVirtuallySymplectic(
                "spherical fiber geometry: every finite cover of the "
                "mapping torus has vanishing second Betti number"
            )
        if chi == 0:
            return KodairaDim.ZERO
        if y.euler_number == 0:
            return KodairaDim.ONE
        raise NotVirtuallySymplectic(
            "nonzero Euler number over a hyperbolic base orbifold: no "
            "finite cover of the fiber fibers over the circle, so no "
            "finite cover of the mapping torus is symplectic"
        )
    if isinstance(y, SurfaceBundle):
        return KodairaDim.ONE
    raise UnknownVirtualFibering(
        "the description carries no virtual-fibration data for a "
        f"{type(y).__name__} fiber"
    )


@dataclass(frozen=True)
class LagrangianTorus:
    """One Lagrangian torus surgery in a construction plan.

    family "A" tori twist along the first circle direction at marker
    points on it, family "B" tori along the second circle direction, and
    family "B0" tori realize the vertical Euler twisting, all at one
    shared marker on the second circle.  curve is the homology class of
    the twisting curve in the fiber when known.  coefficient is the
    surgery coefficient, the exponent of the realized Dehn twist.
    """

    family: str
    label: str
    curve: Vector | None
    axis: str
    marker: int
    coefficient: int

    def __post_init__(self):
        if self.family not in ("A", "B", "B0"):
            raise ValidationError(f"unknown torus family {self.family!r}")
        expected_axis = "p" if self.family == "A" else "q"
        if self.axis != expected_axis:
            raise ValidationError(
                f"family {self.family} tori sit on the {expected_axis!r} "
                f"circle, not {self.axis!r}"
            )
        if self.coefficient == 0:
            raise ValidationError("surgery coefficients are nonzero")
        if self.family == "B0" and self.coefficient != 1:
            raise ValidationError("vertical twisting tori have coefficient 1")
        if self.marker < 0:
            raise ValidationError("markers are nonnegative ordinals")
        if self.curve is not None:
            object.__setattr__(self, "curve", tuple(int(c) for c in self.curve))


@dataclass(frozen=True)
class SurgeryPlan:
    """Ordered list of Lagrangian torus surgeries building a mapping torus.

    Starting from the product of a genus-g surface and a 2-torus, the
    listed surgeries produce a surface bundle over the torus realizing
    the prescribed monodromy data.  canonical_pairing records the pairing
    of the canonical class with the fiber, 2g - 2.

    Disjointness is bookkept through markers: family-A tori occupy
    pairwise distinct markers on the first circle, family-B tori pairwise
    distinct markers on the second, and the shared family-B0 marker stays
    off the family-B ones; B0 tori are mutually disjoint because they lie
    over distinct components of the dual multicurve.
    """

    genus: int
    base: str
    tori: tuple[LagrangianTorus, ...]
    canonical_pairing: int

    def __post_init__(self):
        if self.genus < 2:
            raise ValidationError("construction plans need fiber genus at least 2")
        if self.canonical_pairing != 2 * self.genus - 2:
            raise ValidationError(
                "canonical pairing must equal 2g - 2 = "
                f"{2 * self.genus - 2}, got {self.canonical_pairing}"
            )
        object.__setattr__(self, "tori", tuple(self.tori))
        a_markers = [t.marker for t in self.tori if t.family == "A"]
        b_markers = [t.marker for t in self.tori if t.family == "B"]
        b0_markers = {t.marker for t in self.tori if t.family == "B0"}
        if len(set(a_markers)) != len(a_markers):
            raise ValidationError("family-A tori share a marker")
        if len(set(b_markers)) != len(b_markers):
            raise ValidationError("family-B tori share a marker")
        if len(b0_markers) > 1:
            raise ValidationError(
                "vertical twisting tori all sit at one shared marker"
            )
        if b0_markers & set(b_markers):
            raise ValidationError(
                "the vertical twisting marker collides with a family-B marker"
            )
        for t in self.tori:
            if t.family in ("A", "B") and t.curve is None:
                raise ValidationError(
                    f"family-{t.family} torus {t.label} needs a twisting curve"
                )
            if t.curve is not None and len(t.curve) != 2 * self.genus:
                raise ValidationError(
                    f"torus {t.label} has a curve of the wrong length"
                )


def luttinger_plan(
    genus: int,
    p_word: TwistWord,
    q_word: TwistWord,
    euler_dual: Sequence[EulerComponent] = (),
) -> SurgeryPlan:
    """Surgery plan realizing twist data on a product.

    p_word is the twist word realized along the first circle direction
    (the fiber monodromy of the 3-manifold), q_word the word realized
    along the second, and euler_dual the multicurve dual to the vertical
    Euler twisting.  Emits one family-A torus per p_word letter at
    markers 1..n on the first circle, one family-B torus per q_word
    letter at markers 1..m on the second, and one family-B0 torus per
    component of the multicurve, all with coefficient 1 at marker 0,
    which stays off the family-B markers.  Multiplicity in a component
    means that many parallel components, so it expands.
    """
    if genus < 2:
        raise ValueError("the construction needs fiber genus at least 2")
    if p_word.genus != genus:
        raise GenusMismatch(
            f"first twist word lives on genus {p_word.genus}, plan is for "
            f"genus {genus}"
        )
    if q_word.genus != genus:
        raise GenusMismatch(
            f"second twist word lives on genus {q_word.genus}, plan is for "
            f"genus {genus}"
        )
    tori: list[LagrangianTorus] = []
    for i, letter in enumerate(p_word.letters, start=1):
        tori.append(
            LagrangianTorus(
                family="A",
                label=letter.label or f"A{i}",
                curve=letter.curve,
                axis="p",
                marker=i,
                coefficient=letter.exponent,
            )
        )
    for j, letter in enumerate(q_word.letters, start=1):
        tori.append(
            LagrangianTorus(
                family="B",
                label=letter.label or f"B{j}",
                curve=letter.curve,
                axis="q",
                marker=j,
                coefficient=letter.exponent,
            )
        )
    for comp in euler_dual:
        if comp.curve is not None and len(comp.curve) != 2 * genus:
            raise ValueError(
                f"euler_dual component {comp.label} has a curve of the "
                "wrong length"
            )
        for copy in range(1, comp.multiplicity + 1):
            label = comp.label if comp.multiplicity == 1 else f"{comp.label}.{copy}"
            tori.append(
                LagrangianTorus(
                    family="B0",
                    label=label,
                    curve=comp.curve,
                    axis="q",
                    marker=0,
                    coefficient=1,
                )
            )
    return SurgeryPlan(
        genus=genus,
        base=f"product of a genus-{genus} surface and a 2-torus",
        tori=tuple(tori),
        canonical_pairing=2 * genus - 2,
    )


def _family_word(plan: SurgeryPlan, family: str) -> TwistWord:
    """Twist word read back off one family of a plan, in marker order."""
    tori = sorted(
        (t for t in plan.tori if t.family == family), key=lambda t: t.marker
    )
    letters = []
    for t in tori:
        assert t.curve is not None
        letters.append(TwistLetter(t.curve, t.coefficient, t.label))
    return TwistWord(plan.genus, tuple(letters))


def verify_surgery_plan(
    plan: SurgeryPlan,
    p_word: TwistWord,
    q_word: TwistWord,
    euler_dual: Sequence[EulerComponent] = (),
) -> bool:
    """Check a plan against the data it claims to realize.

    Reconstructs each twist word from the plan's tori and recomputes the
    induced homology action, comparing against the action of the declared
    word: label bookkeeping cannot fake the monodromy that way.  Raises
    ValidationError with a specific complaint on any mismatch, returns
    True otherwise.
    """
    if plan.genus != p_word.genus or plan.genus != q_word.genus:
        raise ValidationError("plan genus does not match the twist words")
    for family, word in (("A", p_word), ("B", q_word)):
        rebuilt = _family_word(plan, family)
        if len(rebuilt.letters) != len(word.letters):
            raise ValidationError(
                f"family {family} has {len(rebuilt.letters)} tori, the word "
                f"has {len(word.letters)} letters"
            )
        for got, want in zip(rebuilt.letters, word.letters):
            if got.curve != want.curve or got.exponent != want.exponent:
                raise ValidationError(
                    f"family {family} torus {got.label} realizes "
                    f"({got.curve}, {got.exponent}), the word asks for "
                    f"({want.curve}, {want.exponent})"
                )
        if transvection_action(rebuilt) != transvection_action(word):
            raise ValidationError(
                f"family {family} does not reproduce the homology action "
                "of its word"
            )
    b0_tori = [t for t in plan.tori if t.family == "B0"]
    expected = []
    for comp in euler_dual:
        for copy in range(1, comp.multiplicity + 1):
            label = comp.label if comp.multiplicity == 1 else f"{comp.label}.{copy}"
            expected.append((label, comp.curve))
    if len(b0_tori) != len(expected):
        raise ValidationError(
            f"plan has {len(b0_tori)} vertical twisting tori, the dual "
            f"multicurve has {len(expected)} components counted with "
            "multiplicity"
        )
    by_label = lambda pair: (pair[0], repr(pair[1]))
    got_components = sorted(((t.label, t.curve) for t in b0_tori), key=by_label)
    want_components = sorted(expected, key=by_label)
    if got_components != want_components:
        raise ValidationError(
            "vertical twisting tori do not match the dual multicurve "
            "components"
        )
    return True
