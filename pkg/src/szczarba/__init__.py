"""Simplicial twisting cochains, cobar constructions and twisted shuffle maps."""

from .bundles import Bundle, GroupFibre, GSet, TwistedProduct, TwistingFunction
from .chains import Chain
from .cobar import CobarWord, cobar_algebra, cobar_diagonal, group_algebra
from .groups import FiniteGroup, LoopGroup
from .simplicial import Simplex, SimplicialSet
from .szczarba import SzczarbaCochain, hat_sz, psi, sz, szczarba_t
from .twisted_tensor import TwistedTensorProduct

__all__ = [
    "Bundle", "Chain", "CobarWord", "FiniteGroup", "GSet", "GroupFibre", "LoopGroup", "Simplex",
    "SimplicialSet", "SzczarbaCochain", "TwistedProduct", "TwistedTensorProduct", "TwistingFunction",
    "cobar_algebra", "cobar_diagonal", "group_algebra", "hat_sz", "psi", "sz", "szczarba_t",
]

__version__ = "0.1.0"
