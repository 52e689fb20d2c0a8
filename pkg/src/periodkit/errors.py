"""Exception hierarchy shared by every module.

``DomainError`` subclasses carry a short machine-readable ``code`` that the
command line maps to exit status 2.
"""


class DomainError(Exception):
    code = "domain-error"

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


class DimensionError(DomainError, ValueError):
    code = "dimension-mismatch"


class DiscriminantError(DomainError, ValueError):
    code = "disc-mismatch"


class NotInvolutionError(DomainError, ValueError):
    code = "not-involution"


class NotInWeylSetError(DomainError, ValueError):
    """A Weyl element is outside the coset system an operation requires."""

    code = "not-in-weyl-set"


class NotUnitaryError(DomainError, ValueError):
    code = "not-unitary"


class NotInSymmetricSpaceError(DomainError, ValueError):
    code = "not-in-X"


class ParityError(DomainError, ValueError):
    code = "parity-violation"


class PoleError(DomainError, ArithmeticError):
    code = "zeta-pole"


class ChamberDomainError(DomainError, ValueError):
    code = "outside-affine-domain"


class IncomparableError(DomainError, ValueError):
    code = "incomparable-ambient"


class RhoUndefinedError(DomainError, ValueError):
    code = "rho-undefined"
