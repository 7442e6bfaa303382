"""Exact alcove combinatorics for nonemptiness of single affine
Deligne-Lusztig varieties at Iwahori level in the basic case.

All arithmetic is exact (integers and rationals); there is no floating
point anywhere in the library.
"""

from .cartan import (
    Root,
    RootSystem,
    SubsetProperties,
    sandwich_positivizer,
    subset_predicates,
)
from .weyl import (
    DiagramAutomorphism,
    FiniteWeylElement,
    apply_sigma,
    enumerate_w0,
    longest_element,
    reduced_word,
    sigma_support,
    support,
)
from .iwahori import (
    AffineElement,
    AffineSupport,
    KottwitzClass,
    NewtonPoint,
    affine_sigma_support,
    apply_sigma_affine,
    basic_class_of,
    enumerate_affine,
    kottwitz,
    newton,
    omega_elements,
)
from .alcove import (
    AlcoveProfile,
    DominantDecomposition,
    critical_strips_containing,
    dominant_decompose,
    eta_sigma,
    is_shrunken,
    k_value,
    phi_x_set,
    w_x_set,
)
from .criterion import (
    BgxReport,
    DimTable,
    SigmaConjClassPoint,
    Verdict,
    anresult_filter,
    bgx_cordial,
    decide_nonempty,
    defect,
    dim_one_strip_rank2,
    dim_recursion_step,
    dim_shrunken,
    enumerate_b_g_mu,
    is_jw_alcove,
    j_rx,
    oracle_nonempty,
    shortcut_applies,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
