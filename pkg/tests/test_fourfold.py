import random

import pytest

from mtor4.errors import (
    IncompatibleAutomorphism,
    InvalidAutomorphism,
    NotUnimodular,
    UnsupportedDescription,
)
from mtor4.fourfold import (
    EulerComponent,
    IdentityMonodromy,
    MappingTorus4,
    SurfaceBundleAut,
    SymbolicPeriodic,
    ThreeTorusAut,
    TorusBundleAut,
    VB1Kind,
    betti_numbers_4d,
    enumerate_covers,
    induced_h1_action,
    induced_h1_action_surface,
    invariant_sublattices,
    validate_aut,
    vb1_fourfold,
)
from mtor4.monodromy import TwistLetter, TwistWord
from mtor4.threefold import (
    NielsenThurstonType,
    S1xS2,
    Seifert,
    Spherical,
    SurfaceBundle,
    TorusBundle,
)
from mtor4.zlinalg import IntMatrix, integral_kernel_basis

I2 = IntMatrix.identity(2)
ANOSOV = IntMatrix([[2, 1], [1, 1]])
SHEAR = IntMatrix([[1, 1], [0, 1]])
ROT4 = IntMatrix([[0, -1], [1, 0]])
ROT6 = IntMatrix([[0, -1], [1, 1]])
FLIP = IntMatrix([[1, 0], [0, -1]])
INOUE = IntMatrix([[0, 0, 1], [1, 0, 0], [0, 1, 1]])

U = IntMatrix([[1, 1], [0, 1]])
L = IntMatrix([[1, 0], [1, 1]])


def _random_sl2(rng, max_factors=12):
    m = IntMatrix.identity(2)
    for _ in range(rng.randint(0, max_factors)):
        k = rng.randint(-3, 3)
        m = m * (U**k if rng.random() < 0.5 else L**k)
    if rng.random() < 0.2:
        m = m * IntMatrix([[-1, 0], [0, -1]])
    return m


def _random_valid_pair(rng):
    """A random torus bundle and a compatible degree +1 automorphism."""
    if rng.random() < 0.25:
        # base-reflecting family: diagonal-equal matrices are conjugated
        # to their inverses by the flip
        a_entry = rng.randint(-3, 3)
        a = IntMatrix([[a_entry, a_entry - 1], [a_entry + 1, a_entry]])
        b = FLIP * _commuting_power(rng, a)
        return TorusBundle(a), TorusBundleAut(b, _random_vec(rng), -1)
    a = _random_sl2(rng)
    b = _commuting_power(rng, a)
    return TorusBundle(a), TorusBundleAut(b, _random_vec(rng), 1)


def _commuting_power(rng, a):
    sign = IntMatrix.identity(2) if rng.random() < 0.5 else -1 * IntMatrix.identity(2)
    return sign * a ** rng.randint(0, 3)


def _random_vec(rng):
    return (rng.randint(-4, 4), rng.randint(-4, 4))


def test_torus_bundle_aut_validation():
    aut = TorusBundleAut(FLIP, (0, 0), -1)
    assert aut.degree() == 1
    assert TorusBundleAut(FLIP, (0, 0), 1).degree() == -1
    assert TorusBundleAut(ANOSOV, (1, 2), 1).degree() == 1
    with pytest.raises(ValueError):
        TorusBundleAut(IntMatrix.identity(3))
    with pytest.raises(NotUnimodular):
        TorusBundleAut(IntMatrix([[2, 0], [0, 1]]))
    with pytest.raises(ValueError):
        TorusBundleAut(I2, (0, 0), 2)
    with pytest.raises(ValueError):
        TorusBundleAut(I2, (0, 0, 0), 1)


def test_validate_aut_compatibility():
    validate_aut(TorusBundle(ANOSOV), TorusBundleAut(ANOSOV**3, (1, 1), 1))
    # the flip conjugates a diagonal-equal matrix to its inverse
    a = IntMatrix([[2, 1], [3, 2]])
    validate_aut(TorusBundle(a), TorusBundleAut(FLIP, (0, 0), -1))
    with pytest.raises(IncompatibleAutomorphism):
        validate_aut(TorusBundle(SHEAR), TorusBundleAut(ROT4, (0, 0), 1))
    with pytest.raises(IncompatibleAutomorphism):
        validate_aut(TorusBundle(ANOSOV), TorusBundleAut(FLIP, (0, 0), 1))


def test_mapping_torus_validation():
    MappingTorus4(TorusBundle(ANOSOV), IdentityMonodromy())
    MappingTorus4(Spherical(), SymbolicPeriodic(5))
    MappingTorus4(TorusBundle(I2), ThreeTorusAut(INOUE))
    with pytest.raises(IncompatibleAutomorphism):
        MappingTorus4(S1xS2(), TorusBundleAut(I2))
    with pytest.raises(IncompatibleAutomorphism):
        MappingTorus4(TorusBundle(ANOSOV), ThreeTorusAut(INOUE))
    with pytest.raises(InvalidAutomorphism):
        # degree -1: orientation-reversing
        MappingTorus4(TorusBundle(I2), TorusBundleAut(FLIP, (0, 0), 1))
    with pytest.raises(InvalidAutomorphism):
        ThreeTorusAut(IntMatrix([[0, 0, 1], [1, 0, 0], [0, -1, 1]]))
    with pytest.raises(NotUnimodular):
        ThreeTorusAut(IntMatrix([[2, 0, 0], [0, 1, 0], [0, 0, 1]]))
    with pytest.raises(ValueError):
        SymbolicPeriodic(0)


def test_induced_h1_action_fixed_examples():
    t3 = TorusBundle(I2)
    assert induced_h1_action(t3, TorusBundleAut(I2, (0, 0), 1)) == IntMatrix.identity(3)
    # rationally trivial coinvariants leave only the base class
    assert induced_h1_action(
        TorusBundle(ANOSOV), TorusBundleAut(I2, (0, 0), 1)
    ) == IntMatrix([[1]])
    # trivial bundle: the action is the block sum of B and 1
    assert induced_h1_action(t3, TorusBundleAut(ANOSOV, (0, 0), 1)) == IntMatrix(
        [[2, 1, 0], [1, 1, 0], [0, 0, 1]]
    )
    # translations land in the last column
    assert induced_h1_action(t3, TorusBundleAut(I2, (3, -2), 1)) == IntMatrix(
        [[1, 0, 3], [0, 1, -2], [0, 0, 1]]
    )


def test_induced_h1_action_is_always_unimodular():
    rng = random.Random(505)
    for _ in range(200):
        y, f = _random_valid_pair(rng)
        m1 = induced_h1_action(y, f)
        assert m1.det() in (1, -1)


def test_betti_numbers_fixed_examples():
    t4 = MappingTorus4(TorusBundle(I2), IdentityMonodromy())
    assert betti_numbers_4d(t4).as_tuple() == (4, 6, 0, 0)
    anosov_product = MappingTorus4(TorusBundle(ANOSOV), IdentityMonodromy())
    assert betti_numbers_4d(anosov_product).as_tuple() == (2, 2, 0, 0)
    inoue = MappingTorus4(TorusBundle(I2), ThreeTorusAut(INOUE))
    assert betti_numbers_4d(inoue).as_tuple() == (1, 0, 0, 0)
    sphere = MappingTorus4(Spherical(), SymbolicPeriodic(7))
    assert betti_numbers_4d(sphere).as_tuple() == (1, 0, 0, 0)
    s2s1 = MappingTorus4(S1xS2(), IdentityMonodromy())
    assert betti_numbers_4d(s2s1).as_tuple() == (2, 2, 0, 0)
    t3_product = MappingTorus4(
        Seifert(base_genus=1, base_orientable=True, euler_number=0),
        IdentityMonodromy(),
    )
    assert betti_numbers_4d(t3_product).as_tuple() == (4, 6, 0, 0)


def test_betti_numbers_undetermined_cases():
    with pytest.raises(UnsupportedDescription):
        betti_numbers_4d(MappingTorus4(S1xS2(), SymbolicPeriodic(2)))
    from mtor4.threefold import Hyperbolic

    with pytest.raises(UnsupportedDescription):
        betti_numbers_4d(MappingTorus4(Hyperbolic(), IdentityMonodromy()))


def test_betti_identities_randomized():
    rng = random.Random(606)
    for _ in range(150):
        y, f = _random_valid_pair(rng)
        x = MappingTorus4(y, f) if f.degree() == 1 else None
        if x is None:
            continue
        betti = betti_numbers_4d(x)
        assert betti.b2 == 2 * (betti.b1 - 1)
        assert 2 - 2 * betti.b1 + betti.b2 == 0
        assert betti.euler == 0 and betti.signature == 0
        assert betti.b3 == betti.b1 and betti.b0 == betti.b4 == 1
        # independent route: integral kernel basis of the displaced action
        m1 = induced_h1_action(y, f)
        fixed = integral_kernel_basis(m1 - IntMatrix.identity(m1.rows))
        assert betti.b1 == 1 + len(fixed)


def test_invariant_sublattices_counting():
    assert len(invariant_sublattices(I2, 1)) == 1
    assert invariant_sublattices(ANOSOV, 1)[0] == I2
    # all three index 2 subgroups are invariant under the identity
    assert len(invariant_sublattices(I2, 2)) == 3
    # quarter rotation only fixes the checkerboard lattice
    rot_fixed = invariant_sublattices(ROT4, 2)
    assert rot_fixed == [IntMatrix([[1, 0], [1, 2]])]
    # the shear keeps the stretched lattice but not the skew one
    shear_fixed = invariant_sublattices(SHEAR, 2)
    assert shear_fixed == [IntMatrix([[1, 0], [0, 2]])]
    with pytest.raises(ValueError):
        invariant_sublattices(I2, 0)


def test_invariant_sublattices_are_genuinely_invariant():
    rng = random.Random(707)
    for _ in range(60):
        a = _random_sl2(rng)
        index = rng.randint(1, 8)
        for h in invariant_sublattices(a, index):
            assert h.det() == index
            # columns generate; invariance says a * column stays inside
            for j in (0, 1):
                col = a.apply(h.column(j))
                x, y = col
                alpha = x // h[0, 0]
                assert x % h[0, 0] == 0
                assert (y - alpha * h[1, 0]) % h[1, 1] == 0


def test_enumerate_covers_trivial_and_anosov():
    t3 = TorusBundle(I2)
    ident = TorusBundleAut(I2, (0, 0), 1)
    covers = enumerate_covers(t3, ident, 1)
    assert len(covers) == 1
    assert covers[0].b1 == 4 and covers[0].degree() == 1

    anosov_covers = enumerate_covers(TorusBundle(ANOSOV), ident, 6)
    assert anosov_covers and all(c.b1 == 2 for c in anosov_covers)


def test_enumerate_covers_recovers_torus_cover_of_half_turn():
    half_turn = TorusBundle(IntMatrix([[-1, 0], [0, -1]]))
    covers = enumerate_covers(half_turn, TorusBundleAut(I2, (0, 0), 1), 2)
    assert max(c.b1 for c in covers) == 4
    best = max(covers, key=lambda c: c.b1)
    assert best.base_power == 2
    assert best.cover_monodromy == I2


def test_enumerate_covers_entries_are_valid_bundles():
    rng = random.Random(808)
    for _ in range(25):
        y, f = _random_valid_pair(rng)
        for entry in enumerate_covers(y, f, 5):
            assert entry.cover_monodromy.det() == 1
            validate_aut(TorusBundle(entry.cover_monodromy), entry.lifted_aut)
            assert entry.degree() >= 1
            assert entry.lifted_aut.degree() == f.degree() ** entry.monodromy_power
            assert 1 <= entry.b1 <= 4


def test_enumerate_covers_b1_multiset_is_conjugation_invariant():
    rng = random.Random(909)
    samples = [
        (TorusBundle(SHEAR), TorusBundleAut(SHEAR, (1, 0), 1)),
        (TorusBundle(ROT4), TorusBundleAut(ROT4, (0, 0), 1)),
        (TorusBundle(ANOSOV), TorusBundleAut(I2, (2, 1), 1)),
    ]
    for y, f in samples:
        base = sorted(c.b1 for c in enumerate_covers(y, f, 6))
        for _ in range(5):
            g = _random_sl2(rng)
            while g.det() != 1:
                g = _random_sl2(rng)
            g_inv = g.inverse_unimodular()
            y2 = TorusBundle(g * y.monodromy * g_inv)
            f2 = TorusBundleAut(
                g * f.fiber_action * g_inv,
                g.apply(f.translation),
                f.base_degree,
            )
            conjugated = sorted(c.b1 for c in enumerate_covers(y2, f2, 6))
            assert conjugated == base


def test_enumerate_covers_max_dominates_base_manifold():
    rng = random.Random(111)
    for _ in range(40):
        y, f = _random_valid_pair(rng)
        if f.degree() != 1:
            continue
        covers = enumerate_covers(y, f, 4)
        x_b1 = betti_numbers_4d(MappingTorus4(y, f)).b1
        assert max(c.b1 for c in covers) >= x_b1


def test_vb1_fourfold_exact_cases():
    assert vb1_fourfold(MappingTorus4(Spherical(), SymbolicPeriodic(3))) .value == 1
    res = vb1_fourfold(MappingTorus4(Spherical(), IdentityMonodromy()))
    assert (res.kind, res.value) == (VB1Kind.EXACT, 1)
    res = vb1_fourfold(MappingTorus4(S1xS2(), IdentityMonodromy()))
    assert (res.kind, res.value) == (VB1Kind.EXACT, 2)
    res = vb1_fourfold(MappingTorus4(S1xS2(), SymbolicPeriodic(4)))
    assert (res.kind, res.value) == (VB1Kind.EXACT, 2)


def test_vb1_fourfold_torus_bundle_enumeration():
    t4 = MappingTorus4(TorusBundle(I2), IdentityMonodromy())
    res = vb1_fourfold(t4)
    assert res.kind is VB1Kind.BOUNDED_ABOVE
    assert (res.value, res.bound, res.saturated) == (4, 4, True)

    anosov_product = MappingTorus4(TorusBundle(ANOSOV), IdentityMonodromy())
    res = vb1_fourfold(anosov_product)
    assert (res.kind, res.value, res.saturated) == (VB1Kind.BOUNDED_ABOVE, 2, True)

    for periodic in (ROT4, ROT6, -1 * I2):
        x = MappingTorus4(TorusBundle(periodic), IdentityMonodromy())
        res = vb1_fourfold(x)
        assert (res.value, res.saturated) == (4, True)

    shear_product = MappingTorus4(TorusBundle(SHEAR), IdentityMonodromy())
    res = vb1_fourfold(shear_product)
    assert (res.value, res.saturated) == (3, True)


def test_vb1_fourfold_inoue_type_stays_at_one():
    inoue = MappingTorus4(TorusBundle(I2), ThreeTorusAut(INOUE))
    res = vb1_fourfold(inoue, max_index=12)
    assert res.kind is VB1Kind.BOUNDED_ABOVE
    assert (res.value, res.bound, res.saturated) == (1, 4, True)


def test_vb1_fourfold_symbolic_periodic_lifts_fiber_vb1():
    res = vb1_fourfold(MappingTorus4(TorusBundle(ANOSOV), SymbolicPeriodic(2)))
    assert (res.kind, res.value) == (VB1Kind.EXACT, 2)
    res = vb1_fourfold(MappingTorus4(TorusBundle(ROT4), SymbolicPeriodic(5)))
    assert (res.kind, res.value) == (VB1Kind.EXACT, 4)


def test_vb1_fourfold_seifert_dispatch():
    from fractions import Fraction

    def seifert_x(**kwargs):
        return MappingTorus4(Seifert(**kwargs), IdentityMonodromy())

    res = vb1_fourfold(
        seifert_x(base_genus=0, base_orientable=True, euler_number=1)
    )
    assert (res.kind, res.value) == (VB1Kind.EXACT, 1)
    res = vb1_fourfold(
        seifert_x(base_genus=0, base_orientable=True, euler_number=0)
    )
    assert (res.kind, res.value) == (VB1Kind.EXACT, 2)
    res = vb1_fourfold(
        seifert_x(base_genus=1, base_orientable=True, euler_number=4)
    )
    assert (res.kind, res.value) == (VB1Kind.EXACT, 3)
    res = vb1_fourfold(
        seifert_x(base_genus=1, base_orientable=True, euler_number=0)
    )
    assert (res.kind, res.value) == (VB1Kind.EXACT, 4)
    res = vb1_fourfold(
        seifert_x(
            base_genus=0,
            base_orientable=True,
            cone_orders=(2, 3, 7),
            euler_number=Fraction(1, 42),
        )
    )
    assert res.kind is VB1Kind.INFINITE


def test_vb1_fourfold_infinite_cases():
    from mtor4.threefold import Hyperbolic, JsjGraph, JsjPieceKind

    bundle = SurfaceBundle(
        genus=2,
        word=TwistWord(genus=2),
        nt_type=NielsenThurstonType.PERIODIC,
    )
    assert vb1_fourfold(MappingTorus4(bundle, IdentityMonodromy())).kind is VB1Kind.INFINITE
    assert vb1_fourfold(MappingTorus4(Hyperbolic(), SymbolicPeriodic(2))).kind is VB1Kind.INFINITE
    jsj = JsjGraph(pieces=(JsjPieceKind.HYPERBOLIC, JsjPieceKind.SEIFERT), tori=1)
    assert vb1_fourfold(MappingTorus4(jsj, IdentityMonodromy())).kind is VB1Kind.INFINITE


def test_vb1_fourfold_monotone_in_max_index():
    samples = [
        MappingTorus4(TorusBundle(ROT6), IdentityMonodromy()),
        MappingTorus4(TorusBundle(SHEAR), IdentityMonodromy()),
        MappingTorus4(TorusBundle(I2), ThreeTorusAut(INOUE)),
    ]
    for x in samples:
        values = [vb1_fourfold(x, max_index=n).value for n in (1, 2, 3, 6, 12)]
        assert values == sorted(values)


def _product_surface_bundle():
    return SurfaceBundle(
        genus=2,
        word=TwistWord(genus=2),
        nt_type=NielsenThurstonType.PERIODIC,
    )


def test_surface_bundle_aut_validation():
    y = _product_surface_bundle()
    aut = SurfaceBundleAut(word=TwistWord(genus=2))
    MappingTorus4(y, aut)
    with pytest.raises(InvalidAutomorphism):
        MappingTorus4(y, SurfaceBundleAut(word=TwistWord(genus=2), base_degree=-1))
    with pytest.raises(IncompatibleAutomorphism):
        MappingTorus4(y, SurfaceBundleAut(word=TwistWord(genus=3)))
    with pytest.raises(ValueError):
        SurfaceBundleAut(word=TwistWord(genus=2), translation=(1, 0))
    # monodromy must preserve the euler_dual classes
    twisted = SurfaceBundle(
        genus=2,
        word=TwistWord(genus=2, letters=(TwistLetter((1, 0, 0, 0), 1),)),
        nt_type=NielsenThurstonType.REDUCIBLE,
    )
    bad = SurfaceBundleAut(
        word=TwistWord(genus=2),
        euler_dual=(EulerComponent("c", 1, (0, 1, 0, 0)),),
    )
    with pytest.raises(IncompatibleAutomorphism):
        MappingTorus4(twisted, bad)
    # the twist curve itself is preserved
    good = SurfaceBundleAut(
        word=TwistWord(genus=2),
        euler_dual=(EulerComponent("c", 1, (1, 0, 0, 0)),),
    )
    MappingTorus4(twisted, good)


def test_surface_bundle_induced_action_and_betti():
    y = _product_surface_bundle()
    # twisting the circle direction along a1 pairs against b1
    aut = SurfaceBundleAut(
        word=TwistWord(genus=2),
        euler_dual=(EulerComponent("c", 1, (1, 0, 0, 0)),),
    )
    m1 = induced_h1_action_surface(y, aut)
    assert m1.rows == 5
    expected = [
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [0, -1, 0, 0, 1],
    ]
    assert m1 == IntMatrix(expected)
    betti = betti_numbers_4d(MappingTorus4(y, aut))
    assert betti.as_tuple() == (5, 8, 0, 0)

    # without the twisting the mapping torus is a product with b1 = 6
    plain = SurfaceBundleAut(word=TwistWord(genus=2))
    betti = betti_numbers_4d(MappingTorus4(y, plain))
    assert betti.as_tuple() == (6, 10, 0, 0)


def test_surface_bundle_curveless_euler_dual_is_unsupported():
    y = _product_surface_bundle()
    aut = SurfaceBundleAut(
        word=TwistWord(genus=2),
        euler_dual=(EulerComponent("mystery", 2, None),),
    )
    with pytest.raises(UnsupportedDescription):
        betti_numbers_4d(MappingTorus4(y, aut))
