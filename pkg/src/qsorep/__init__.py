"""Nonstandard q-deformed orthogonal algebras on Gel'fand-Tsetlin bases.

Explicit generator matrices for the classical-type and nonclassical-type
representation families of the q-deformed rotation, Euclidean and Lorentz
algebras, together with a numerical verification engine (defining-relation
residuals, commutants, intertwiners, spectra).
"""

from .scalars import HalfInt, QParam, q_bracket, q_bracket_plus
from .patterns import (
    CLASSICAL,
    NONCLASSICAL,
    Basis,
    GTPattern,
    HighestWeight,
    dimension,
    enumerate_basis,
    l_coords,
    shift,
    validate_weight,
)
from .rep_so import (
    GeneratorSet,
    SoRepSpec,
    build_classical,
    build_nonclassical,
    build_onedim,
    build_tprime,
    coefficient,
    split_tprime,
)
from .rep_iso import IsoRepSpec, TruncatedBasis, branch, build_iso, interior_residual_mask
from .rep_lorentz import (
    IrreducibilityVerdict,
    LorentzRepSpec,
    build_lorentz,
    irreducible_classical,
    irreducible_nonclassical,
)
from .verify import (
    VerificationReport,
    commutant_dim,
    intertwiner_dim,
    iso_relation_residual,
    so_relation_residual,
    spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "HalfInt",
    "QParam",
    "q_bracket",
    "q_bracket_plus",
    "CLASSICAL",
    "NONCLASSICAL",
    "Basis",
    "GTPattern",
    "HighestWeight",
    "dimension",
    "enumerate_basis",
    "l_coords",
    "shift",
    "validate_weight",
    "GeneratorSet",
    "SoRepSpec",
    "build_classical",
    "build_nonclassical",
    "build_onedim",
    "build_tprime",
    "coefficient",
    "split_tprime",
    "IsoRepSpec",
    "TruncatedBasis",
    "branch",
    "build_iso",
    "interior_residual_mask",
    "IrreducibilityVerdict",
    "LorentzRepSpec",
    "build_lorentz",
    "irreducible_classical",
    "irreducible_nonclassical",
    "VerificationReport",
    "commutant_dim",
    "intertwiner_dim",
    "iso_relation_residual",
    "so_relation_residual",
    "spectrum",
    "__version__",
]
