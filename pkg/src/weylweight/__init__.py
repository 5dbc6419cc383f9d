"""Exact computations with weight modules over the Weyl algebra and the
hypercube quiver algebras that describe their blocks."""
from .core import (
    Automorphism,
    WeylElement,
    ad_apply,
    apply_automorphism,
    commutator,
    d,
    euler,
    euler_degree,
    normal_product,
    parse_weyl,
    psi_embed,
    t,
    theta_twist,
)

__all__ = [
    "Automorphism", "WeylElement", "ad_apply", "apply_automorphism", "commutator", "d",
    "euler", "euler_degree", "normal_product", "parse_weyl", "psi_embed", "t", "theta_twist",
]

__version__ = "0.1.0"
