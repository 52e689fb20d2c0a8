"""Exact toolkit for Weyl-group, orbit and spectral bookkeeping on U_{2n}/Sp_{2n}."""
from .errors import DomainError
from .levi import AMStar, LeviLabel
from .qfield import Matrix, QuadExt
from .weyl import SignedPerm

__all__ = ["AMStar", "DomainError", "LeviLabel", "Matrix", "QuadExt", "SignedPerm"]
__version__ = "0.1.0"
