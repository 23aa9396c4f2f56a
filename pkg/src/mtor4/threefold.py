"""Symbolic descriptions of closed oriented 3-manifolds that fiber over S^1
or carry one of the eight geometries, plus their homological invariants.

A description is deliberately coarse: only the data needed to decide
Betti numbers of the associated mapping tori and the growth of b1 in
finite covers.  When a requested invariant is not determined by the
description (torsion of a coned Seifert space, homology of a fiber known
only to be hyperbolic) the functions raise UnsupportedDescription rather
than guess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import GenusMismatch, InvalidAutomorphism, NotUnimodular, UnsupportedDescription
from .monodromy import TwistWord, transvection_action
from .zlinalg import IntMatrix, Vector, cokernel, integral_kernel_basis


@dataclass(frozen=True)
class Spherical:
    """Quotient of the 3-sphere by a free finite group action."""


@dataclass(frozen=True)
class S1xS2:
    """The product of a circle and a 2-sphere."""


@dataclass(frozen=True)
class TorusBundle:
    """Torus bundle over the circle with the given SL(2, Z) monodromy."""

    monodromy: IntMatrix

    def __post_init__(self):
        m = self.monodromy
        if m.rows != 2 or m.cols != 2:
            raise ValueError("torus bundle monodromy must be 2x2")
        if m.det() != 1:
            raise NotUnimodular(f"monodromy determinant {m.det()} is not 1")


@dataclass(frozen=True)
class Seifert:
    """Orientable Seifert fibered space over a closed base orbifold.

    base_genus counts handles when the base is orientable and crosscaps
    when it is not.  cone_orders lists the cone point orders (each at
    least 2).  euler_number is the rational Euler number of the
    fibration; without cone points it must be an integer, in general its
    denominator divides the lcm of the cone orders.
    """

    base_genus: int
    base_orientable: bool
    cone_orders: tuple[int, ...] = ()
    euler_number: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "euler_number", Fraction(self.euler_number))
        if self.base_genus < 0:
            raise ValueError("base genus cannot be negative")
        if not self.base_orientable and self.base_genus < 1:
            raise ValueError("a non-orientable base needs at least one crosscap")
        if any(o < 2 for o in self.cone_orders):
            raise ValueError("cone orders must be at least 2")
        scale = math.lcm(*self.cone_orders) if self.cone_orders else 1
        if (self.euler_number * scale).denominator != 1:
            raise ValueError(
                f"euler number {self.euler_number} is not compatible with "
                f"cone orders {self.cone_orders}"
            )


class NielsenThurstonType(Enum):
    PERIODIC = "periodic"
    REDUCIBLE = "reducible"
    PSEUDO_ANOSOV = "pseudo-anosov"


@dataclass(frozen=True)
class SurfaceBundle:
    """Bundle over the circle with fiber a surface of genus at least 2.

    word records the monodromy as a twist word; nt_type records its
    Nielsen-Thurston type, which the homology action cannot see.
    """

    genus: int
    word: TwistWord
    nt_type: NielsenThurstonType

    def __post_init__(self):
        if self.genus < 2:
            raise ValueError("surface bundle fibers here have genus at least 2")
        if self.word.genus != self.genus:
            raise GenusMismatch(
                f"monodromy word lives on genus {self.word.genus}, "
                f"bundle fiber has genus {self.genus}"
            )


@dataclass(frozen=True)
class Hyperbolic:
    """Closed hyperbolic 3-manifold, described only by its geometry."""


class JsjPieceKind(Enum):
    SEIFERT = "seifert"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class JsjGraph:
    """Non-geometric irreducible manifold with nontrivial torus decomposition."""

    pieces: tuple[JsjPieceKind, ...]
    tori: int

    def __post_init__(self):
        if not self.pieces:
            raise ValueError("a torus decomposition has at least one piece")
        if self.tori < 1:
            raise ValueError("a nontrivial decomposition has at least one torus")


Fiber = Spherical | S1xS2 | TorusBundle | Seifert | SurfaceBundle | Hyperbolic | JsjGraph


@dataclass(frozen=True)
class HomologyReport:
    """First integral homology: free rank and invariant factors above 1."""

    b1: int
    torsion: tuple[int, ...]


def seifert_first_betti(y: Seifert) -> int:
    """First Betti number of a Seifert space; valid with cone points.

    Cone points only contribute torsion, so b1 depends on the base and on
    whether the Euler number vanishes: an orientable base of genus g gives
    2g, plus 1 when the fibration is rationally trivial; a base with k
    crosscaps gives k - 1 because the fiber class becomes 2-torsion.
    """
    if y.base_orientable:
        return 2 * y.base_genus + (1 if y.euler_number == 0 else 0)
    return y.base_genus - 1


def first_homology(y: Fiber) -> HomologyReport:
    """First homology of the fiber, exact when the description determines it.

    Bundles over the circle use the circle exact sequence: H_1 is the
    coinvariants of the monodromy action plus one Z from the base.
    """
    if isinstance(y, S1xS2):
        return HomologyReport(b1=1, torsion=())
    if isinstance(y, TorusBundle):
        structure = cokernel(y.monodromy - IntMatrix.identity(2))
        return HomologyReport(b1=structure.free_rank + 1, torsion=structure.torsion)
    if isinstance(y, SurfaceBundle):
        action = transvection_action(y.word)
        structure = cokernel(action - IntMatrix.identity(2 * y.genus))
        return HomologyReport(b1=structure.free_rank + 1, torsion=structure.torsion)
    if isinstance(y, Seifert):
        if y.cone_orders:
            raise UnsupportedDescription(
                "torsion of a Seifert space with cone points needs the "
                "unreduced fiber invariants, which this description omits"
            )
        e = int(y.euler_number)
        if y.base_orientable:
            torsion = (abs(e),) if abs(e) >= 2 else ()
            return HomologyReport(b1=seifert_first_betti(y), torsion=torsion)
        torsion = (2, 2) if e % 2 == 0 else (4,)
        return HomologyReport(b1=seifert_first_betti(y), torsion=torsion)
    if isinstance(y, Spherical):
        raise UnsupportedDescription(
            "a spherical space form has b1 = 0 but its torsion depends on "
            "the group, which this description omits"
        )
    raise UnsupportedDescription(
        f"first homology is not determined by a {type(y).__name__} description"
    )


def orbifold_euler(y: Seifert) -> Fraction:
    """Euler characteristic of the base orbifold."""
    base = 2 - 2 * y.base_genus if y.base_orientable else 2 - y.base_genus
    return Fraction(base) - sum(Fraction(o - 1, o) for o in y.cone_orders)


class VB1Kind(Enum):
    EXACT = "exact"
    BOUNDED_ABOVE = "bounded-above"
    INFINITE = "infinite"


@dataclass(frozen=True)
class VB1Result:
    """Supremum of b1 over all finite covers, with a certifying rule.

    kind EXACT carries the supremum in value; BOUNDED_ABOVE carries a
    proven ceiling in bound together with the largest value actually
    realized by an enumerated cover in value, and saturated says whether
    enumeration already witnessed the ceiling; INFINITE carries neither.
    """

    kind: VB1Kind
    value: int | None = None
    bound: int | None = None
    saturated: bool | None = None
    certificate: str = ""
    witness: object = None


def vb1_threefold(y: Fiber) -> VB1Result:
    """Virtual first Betti number of the fiber, by geometric type."""
    from .monodromy import Sl2Kind, classify_sl2z

    if isinstance(y, Spherical):
        return VB1Result(
            kind=VB1Kind.EXACT,
            value=0,
            certificate="finite fundamental group: b1 vanishes in every finite cover",
        )
    if isinstance(y, S1xS2):
        return VB1Result(
            kind=VB1Kind.EXACT,
            value=1,
            certificate="fundamental group Z: every finite cover is the same product",
        )
    if isinstance(y, TorusBundle):
        cls = classify_sl2z(y.monodromy)
        if cls.kind is Sl2Kind.ANOSOV:
            return VB1Result(
                kind=VB1Kind.EXACT,
                value=1,
                certificate=(
                    "torus bundle with Anosov monodromy: no eigenvalue of any "
                    "power is 1, so b1 = 1 persists in every finite cover"
                ),
            )
        if cls.kind is Sl2Kind.REDUCIBLE:
            return VB1Result(
                kind=VB1Kind.EXACT,
                value=2,
                certificate=(
                    "torus bundle with reducible infinite-order monodromy: a "
                    "finite cover is a nontrivial circle bundle over the torus "
                    "with b1 = 2, and no cover exceeds it"
                ),
                witness={"monodromy_power": cls.unipotent_power},
            )
        return VB1Result(
            kind=VB1Kind.EXACT,
            value=3,
            certificate=(
                "torus bundle with periodic monodromy: unwinding the monodromy "
                "gives the 3-torus as a finite cover"
            ),
            witness={"monodromy_power": cls.order},
        )
    if isinstance(y, Seifert):
        chi = orbifold_euler(y)
        e = y.euler_number
        if chi > 0:
            if e != 0:
                return VB1Result(
                    kind=VB1Kind.EXACT,
                    value=0,
                    certificate=(
                        "positively curved base orbifold with nonzero Euler "
                        "number: finite fundamental group"
                    ),
                )
            return VB1Result(
                kind=VB1Kind.EXACT,
                value=1,
                certificate=(
                    "positively curved base orbifold with zero Euler number: "
                    "a finite cover is the product of a sphere and a circle"
                ),
            )
        if chi == 0:
            if e != 0:
                return VB1Result(
                    kind=VB1Kind.EXACT,
                    value=2,
                    certificate=(
                        "flat base orbifold with nonzero Euler number: covers "
                        "are nontrivial circle bundles over the torus"
                    ),
                )
            return VB1Result(
                kind=VB1Kind.EXACT,
                value=3,
                certificate=(
                    "flat base orbifold with zero Euler number: a finite cover "
                    "is the 3-torus"
                ),
            )
        return VB1Result(
            kind=VB1Kind.INFINITE,
            certificate=(
                "hyperbolic base orbifold: pulling back finite covers of the "
                "base of arbitrarily large genus makes b1 unbounded"
            ),
        )
    if isinstance(y, SurfaceBundle):
        return VB1Result(
            kind=VB1Kind.INFINITE,
            certificate=(
                "fiber genus at least 2: fiberwise covers raise b1 without bound"
            ),
        )
    if isinstance(y, Hyperbolic):
        return VB1Result(
            kind=VB1Kind.INFINITE,
            certificate=(
                "closed hyperbolic 3-manifold: finite covers have arbitrarily "
                "large b1"
            ),
        )
    if isinstance(y, JsjGraph):
        return VB1Result(
            kind=VB1Kind.INFINITE,
            certificate=(
                "nontrivial torus decomposition: every piece admits covers "
                "with arbitrarily large b1"
            ),
        )
    raise UnsupportedDescription(f"unknown fiber description {type(y).__name__}")


@dataclass(frozen=True)
class FiberedPairReport:
    """Fixed cohomology classes of a bundle automorphism of a torus bundle.

    basis_labels names the coordinates of the class vectors: duals of the
    surviving torus directions first, then the class of the fiber torus
    of the bundle over the circle.  The pair fibers in a way compatible
    with the automorphism exactly when a nonzero fixed class exists.
    """

    fibered: bool
    invariant_classes: tuple[Vector, ...]
    basis_labels: tuple[str, ...]
    certificate: str


def is_fibered_pair(y: TorusBundle, f) -> FiberedPairReport:
    """Detect automorphism-invariant fibered classes on a torus bundle.

    f is a bundle automorphism (fiber action, translation, base degree).
    Orientation-reversing automorphisms are rejected: the mapping torus
    construction downstream needs degree +1.  The fixed classes are the
    integral kernel of the transposed homology action minus identity,
    returned as a primitive basis.
    """
    from .fourfold import TorusBundleAut, induced_h1_action, validate_aut

    if not isinstance(f, TorusBundleAut):
        raise InvalidAutomorphism(f"expected a torus bundle automorphism, got {type(f).__name__}")
    validate_aut(y, f)
    if f.degree() != 1:
        raise InvalidAutomorphism(
            "orientation-reversing automorphism: fibered pairs are only "
            "sought for mapping tori of degree +1 maps"
        )
    m1 = induced_h1_action(y, f)
    n = m1.rows
    fixed = integral_kernel_basis(m1.transpose() - IntMatrix.identity(n))
    labels = tuple(f"V{i + 1}" for i in range(n - 1)) + ("F",)
    fibered = bool(fixed)
    certificate = (
        "the homology action fixes a nonzero cohomology class"
        if fibered
        else "the homology action fixes no nonzero cohomology class"
    )
    return FiberedPairReport(
        fibered=fibered,
        invariant_classes=fixed,
        basis_labels=labels,
        certificate=certificate,
    )
