"""Exact limit linear series on a chain of three rational curves.

Kernel spaces K_il, the column-by-column construction of exact extensions,
and the uniqueness test, all in exact arithmetic over Q or F_p.
"""

from .curve import ChainCurve, Multidegree, alpha, ambient, twist, vanishing_sequence, vanishing_subspace
from .extension import (
    ChoiceStrategy,
    ExtensionGrid,
    build_extension,
    enumerate_extensions,
    replay_extension,
    verify_exact,
    verify_extends,
)
from .field import QQ, PrimeField
from .instances import SequenceSpec, monomial_instance, random_refined, validate
from .kernels import KernelGrid, RefinedSeries, check_all, kernel_dim_predicted, kernel_K
from .linalg import Matrix, Subspace
from .transfer import composite, phi, transfer
from .uniqueness import chain_adaptable, decide_unique, dim_condition, region

__all__ = [
    "ChainCurve", "Multidegree", "alpha", "ambient", "twist", "vanishing_sequence", "vanishing_subspace",
    "ChoiceStrategy", "ExtensionGrid", "build_extension", "enumerate_extensions", "replay_extension",
    "verify_exact", "verify_extends", "QQ", "PrimeField", "SequenceSpec", "monomial_instance",
    "random_refined", "validate", "KernelGrid", "RefinedSeries", "check_all", "kernel_dim_predicted",
    "kernel_K", "Matrix", "Subspace", "composite", "phi", "transfer", "chain_adaptable",
    "decide_unique", "dim_condition", "region",
]
