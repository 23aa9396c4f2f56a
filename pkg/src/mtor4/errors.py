"""Exception hierarchy shared across the package.

Every error raised by the public API derives from Mtor4Error, so callers
can catch one base class.  Malformed raw input (wrong shapes, non-integer
entries) raises plain ValueError instead: those are programming errors,
not domain facts.
"""

from __future__ import annotations


class Mtor4Error(Exception):
    """Base class for all domain errors raised by this package."""


class NotUnimodular(Mtor4Error):
    """An integer matrix required to lie in GL(n, Z) or SL(n, Z) does not."""


class IncompatibleAutomorphism(Mtor4Error):
    """A bundle automorphism fails the compatibility equation with the fiber monodromy."""


class InvalidAutomorphism(Mtor4Error):
    """An automorphism is rejected for a structural reason other than compatibility.

    The main case: orientation-reversing total degree where an oriented
    mapping torus is required.
    """


class UnsupportedDescription(Mtor4Error):
    """The requested invariant is not computable from this symbolic description.

    This is an honest "cannot certify" signal, not a bug: for instance,
    torsion of a Seifert space with cone points, or Betti numbers of a
    hyperbolic fiber given only by its geometry tag.
    """


class NotSymplectic(Mtor4Error):
    """Kodaira dimension was requested for a manifold decided non-symplectic."""


class NotVirtuallySymplectic(Mtor4Error):
    """Virtual Kodaira dimension was requested but no finite cover is symplectic."""


class InconsistentCharacteristicNumbers(Mtor4Error):
    """Characteristic numbers violate an identity every mapping torus satisfies.

    Mapping tori of self-diffeomorphisms have zero Euler characteristic and
    zero signature, so 3*sigma + 2*chi must vanish.
    """


class GenusMismatch(Mtor4Error):
    """Twist words or curve data live on surfaces of different genus."""


class UnknownVirtualFibering(Mtor4Error):
    """Virtual symplectic data depends on fibering information this description lacks."""


class ParseError(Mtor4Error):
    """A manifold description document is not syntactically valid."""


class ValidationError(Mtor4Error):
    """A manifold description document is well-formed but semantically invalid."""
