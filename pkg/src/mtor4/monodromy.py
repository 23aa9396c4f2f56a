"""Monodromy data: SL(2, Z) classification and Dehn twist words.

The three conjugacy types of an SL(2, Z) matrix (periodic, reducible,
Anosov) drive every downstream decision about torus bundles.  Twist words
record mapping classes of surfaces as ordered products of Dehn twists
along explicit homology classes; their action on first homology is a
product of transvections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import NotUnimodular
from .zlinalg import IntMatrix, Vector


class Sl2Kind(Enum):
    PERIODIC = "periodic"
    REDUCIBLE = "reducible"
    ANOSOV = "anosov"


@dataclass(frozen=True)
class Sl2Class:
    """Conjugacy type of an SL(2, Z) matrix.

    order is the multiplicative order for the periodic type (1, 2, 3, 4
    or 6), otherwise None.  unipotent_power is the least n >= 1 such that
    the n-th power has trace 2, for the reducible type only.
    """

    kind: Sl2Kind
    order: int | None = None
    unipotent_power: int | None = None


def classify_sl2z(a: IntMatrix) -> Sl2Class:
    """Classify a matrix in SL(2, Z) as periodic, reducible or Anosov.

    Periodic means finite order; the order of a torsion element of
    SL(2, Z) divides 12, so checking powers up to 12 is exhaustive.
    Reducible means infinite order with trace +2 or -2 (a nontrivial
    power is unipotent).  Anosov means |trace| > 2, equivalently real
    eigenvalues off the unit circle.
    """
    if a.rows != 2 or a.cols != 2:
        raise ValueError("classification needs a 2x2 matrix")
    if a.det() != 1:
        raise NotUnimodular(f"determinant {a.det()} is not 1")
    t = a.trace()
    if abs(t) > 2:
        return Sl2Class(kind=Sl2Kind.ANOSOV)
    power = a
    for n in range(1, 13):
        if power.is_identity():
            return Sl2Class(kind=Sl2Kind.PERIODIC, order=n)
        power = power * a
    for n in range(1, 13):
        if (a**n).trace() == 2:
            return Sl2Class(kind=Sl2Kind.REDUCIBLE, unipotent_power=n)
    raise AssertionError("unreachable: |trace| <= 2 forces periodic or reducible")


def symplectic_pairing(x: Sequence[int], y: Sequence[int]) -> int:
    """Intersection pairing on H_1 of a genus g surface.

    The basis is interleaved (a1, b1, ..., ag, bg), with each ai meeting
    the matching bi once positively and nothing else.
    """
    if len(x) != len(y) or len(x) % 2:
        raise ValueError("pairing needs two vectors of equal even length")
    return sum(
        x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i]
        for i in range(len(x) // 2)
    )


@dataclass(frozen=True)
class TwistLetter:
    """One Dehn twist: a primitive homology class and a nonzero exponent."""

    curve: Vector
    exponent: int
    label: str | None = None

    def __post_init__(self):
        if len(self.curve) < 2 or len(self.curve) % 2:
            raise ValueError("curve must have even length at least 2")
        if math.gcd(*self.curve) != 1:
            raise ValueError(f"curve {self.curve} is not primitive")
        if self.exponent == 0:
            raise ValueError("twist exponent must be nonzero")


@dataclass(frozen=True)
class TwistWord:
    """Ordered product of Dehn twists on a genus g surface.

    The empty word is the identity mapping class.  All letters must live
    on the same surface, i.e. have curves of length 2 * genus.
    """

    genus: int
    letters: tuple[TwistLetter, ...] = ()

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be at least 1")
        for letter in self.letters:
            if len(letter.curve) != 2 * self.genus:
                raise ValueError(
                    f"letter curve {letter.curve} does not fit genus {self.genus}"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "TwistWord":
        return TwistWord(
            genus=self.genus,
            letters=tuple(
                TwistLetter(l.curve, -l.exponent, l.label)
                for l in reversed(self.letters)
            ),
        )


def twist_transvection(letter: TwistLetter) -> IntMatrix:
    """Action of one twist on H_1: x maps to x + k <x, c> c."""
    c = letter.curve
    k = letter.exponent
    n = len(c)
    basis = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    cols = [
        tuple(
            basis[j][i] + k * symplectic_pairing(basis[j], c) * c[i]
            for i in range(n)
        )
        for j in range(n)
    ]
    return IntMatrix([[cols[j][i] for j in range(n)] for i in range(n)])


def transvection_action(word: TwistWord) -> IntMatrix:
    """Product of the letter transvections, in word order."""
    m = IntMatrix.identity(2 * word.genus)
    for letter in word.letters:
        m = m * twist_transvection(letter)
    return m


_A_CURVE = (1, 0)
_B_CURVE = (0, 1)


def factor_into_twists(a: IntMatrix) -> TwistWord:
    """Write an SL(2, Z) matrix as a genus one twist word.

    Runs the Euclidean algorithm on the first column, recording the
    elementary shears used; the inverses of those shears, read in
    application order, spell the word.  The result satisfies
    transvection_action(word) == a exactly, and adjacent letters along
    the same curve are merged.
    """
    if a.rows != 2 or a.cols != 2:
        raise ValueError("factorization needs a 2x2 matrix")
    if a.det() != 1:
        raise NotUnimodular(f"determinant {a.det()} is not 1")

    ops: list[tuple[str, int]] = []
    m = a

    def shear_u(k: int) -> None:
        # left-multiply by [[1, k], [0, 1]]
        nonlocal m
        ops.append(("u", k))
        m = IntMatrix([[1, k], [0, 1]]) * m

    def shear_l(k: int) -> None:
        # left-multiply by [[1, 0], [k, 1]]
        nonlocal m
        ops.append(("l", k))
        m = IntMatrix([[1, 0], [k, 1]]) * m

    while m[1, 0] != 0:
        top, bottom = m[0, 0], m[1, 0]
        if top == 0:
            shear_u(1 if bottom > 0 else -1)
            continue
        r = bottom % abs(top)
        shear_l(-((bottom - r) // top))
        if m[1, 0] != 0:
            top, bottom = m[0, 0], m[1, 0]
            r = top % abs(bottom)
            shear_u(-((top - r) // bottom))

    if m[0, 0] == -1:
        # multiply by -identity, spelled in shears
        for kind, k in (("u", 1), ("l", -1), ("u", 1), ("u", 1), ("l", -1), ("u", 1)):
            shear_u(k) if kind == "u" else shear_l(k)
    if m[0, 1] != 0:
        shear_u(-m[0, 1])
    assert m.is_identity()

    letters: list[TwistLetter] = []
    for kind, k in ops:
        # the inverse of an upper shear by k is a twist along the a-curve
        # with exponent k; a lower shear inverts to a b-curve twist by -k
        curve, exponent = (_A_CURVE, k) if kind == "u" else (_B_CURVE, -k)
        if letters and letters[-1].curve == curve:
            merged = letters[-1].exponent + exponent
            letters.pop()
            if merged:
                letters.append(TwistLetter(curve, merged))
        elif exponent:
            letters.append(TwistLetter(curve, exponent))
    word = TwistWord(genus=1, letters=tuple(letters))
    assert transvection_action(word) == a
    return word
