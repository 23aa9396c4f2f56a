"""Exact invariants of 4-dimensional mapping tori described symbolically.

The package decides, for a 4-manifold fibering over the circle with fiber
a 3-manifold Y and monodromy f, the Betti numbers, the supremum of first
Betti numbers over finite covers, symplecticity, symplectic Kodaira
dimension, and an explicit torus-surgery construction certificate, all in
exact integer and rational arithmetic.
"""

from .errors import (
    GenusMismatch,
    IncompatibleAutomorphism,
    InconsistentCharacteristicNumbers,
    InvalidAutomorphism,
    Mtor4Error,
    NotSymplectic,
    NotUnimodular,
    NotVirtuallySymplectic,
    ParseError,
    UnknownVirtualFibering,
    UnsupportedDescription,
    ValidationError,
)
from .fourfold import (
    BettiNumbers,
    CoverEntry,
    EulerComponent,
    IdentityMonodromy,
    MappingTorus4,
    Monodromy,
    SurfaceBundleAut,
    SymbolicPeriodic,
    ThreeTorusAut,
    TorusBundleAut,
    betti_numbers_4d,
    enumerate_covers,
    induced_h1_action,
    induced_h1_action_surface,
    invariant_sublattices,
    validate_aut,
    vb1_fourfold,
)
from .monodromy import (
    Sl2Class,
    Sl2Kind,
    TwistLetter,
    TwistWord,
    classify_sl2z,
    factor_into_twists,
    symplectic_pairing,
    transvection_action,
    twist_transvection,
)
from .symplectic import (
    KodairaDim,
    LagrangianTorus,
    SurgeryPlan,
    SymplecticDecision,
    SymplecticStatus,
    decide_symplectic,
    kodaira_dimension,
    luttinger_plan,
    verify_surgery_plan,
    virtual_kodaira,
)
from .threefold import (
    Fiber,
    FiberedPairReport,
    HomologyReport,
    Hyperbolic,
    JsjGraph,
    JsjPieceKind,
    NielsenThurstonType,
    S1xS2,
    Seifert,
    Spherical,
    SurfaceBundle,
    TorusBundle,
    VB1Kind,
    VB1Result,
    first_homology,
    is_fibered_pair,
    orbifold_euler,
    seifert_first_betti,
    vb1_threefold,
)
from .zlinalg import (
    CokernelStructure,
    IntMatrix,
    SmithForm,
    cokernel,
    integral_kernel_basis,
    rational_kernel_rank,
    rational_rank,
    smith_normal_form,
)

__all__ = [
    "BettiNumbers",
    "CokernelStructure",
    "CoverEntry",
    "EulerComponent",
    "Fiber",
    "FiberedPairReport",
    "GenusMismatch",
    "HomologyReport",
    "Hyperbolic",
    "IdentityMonodromy",
    "IncompatibleAutomorphism",
    "InconsistentCharacteristicNumbers",
    "IntMatrix",
    "InvalidAutomorphism",
    "JsjGraph",
    "JsjPieceKind",
    "KodairaDim",
    "LagrangianTorus",
    "MappingTorus4",
    "Monodromy",
    "Mtor4Error",
    "NielsenThurstonType",
    "NotSymplectic",
    "NotUnimodular",
    "NotVirtuallySymplectic",
    "ParseError",
    "S1xS2",
    "Seifert",
    "Sl2Class",
    "Sl2Kind",
    "SmithForm",
    "Spherical",
    "SurfaceBundle",
    "SurfaceBundleAut",
    "SurgeryPlan",
    "SymbolicPeriodic",
    "SymplecticDecision",
    "SymplecticStatus",
    "ThreeTorusAut",
    "TorusBundle",
    "TorusBundleAut",
    "TwistLetter",
    "TwistWord",
    "UnknownVirtualFibering",
    "UnsupportedDescription",
    "VB1Kind",
    "VB1Result",
    "ValidationError",
    "betti_numbers_4d",
    "classify_sl2z",
    "cokernel",
    "decide_symplectic",
    "enumerate_covers",
    "factor_into_twists",
    "first_homology",
    "induced_h1_action",
    "induced_h1_action_surface",
    "integral_kernel_basis",
    "invariant_sublattices",
    "is_fibered_pair",
    "kodaira_dimension",
    "luttinger_plan",
    "orbifold_euler",
    "rational_kernel_rank",
    "rational_rank",
    "seifert_first_betti",
    "smith_normal_form",
    "symplectic_pairing",
    "transvection_action",
    "twist_transvection",
    "validate_aut",
    "vb1_fourfold",
    "vb1_threefold",
    "verify_surgery_plan",
    "virtual_kodaira",
]

__version__ = "0.1.0"
