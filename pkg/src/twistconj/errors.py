"""Exception hierarchy shared by all modules."""


class TwistConjError(Exception):
    """Base class for every error raised by this package."""


class InputError(TwistConjError):
    """Malformed user input (files, words, arguments)."""


class ParseError(InputError):
    pass


class UnknownGenerator(InputError):
    pass


class PresentationError(TwistConjError):
    """A presentation that cannot be accepted."""


class InconsistentPresentation(PresentationError):
    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class NotNilpotent(PresentationError):
    pass


class TooLarge(TwistConjError):
    pass


class IndexInfinite(TwistConjError):
    pass


class NotTailCompatible(TwistConjError):
    pass


class MapError(TwistConjError):
    """A proposed map is not a homomorphism/automorphism of the required kind."""


class RelationViolated(MapError):
    def __init__(self, message, relation=None):
        super().__init__(message)
        self.relation = relation


class NotBijective(MapError):
    pass


class NotAutomorphism(MapError):
    pass


class KernelNotPreserved(MapError):
    pass


class NotCentral(TwistConjError):
    pass


class NotAdmissible(TwistConjError):
    pass


class MuNotWellDefined(TwistConjError):
    pass


class EmptyDownstairs(TwistConjError):
    pass


class TorsionPresent(TwistConjError):
    pass


class RankClassMismatch(TwistConjError):
    pass


class NotAUnit(TwistConjError):
    pass


class NotInGroup(TwistConjError):
    pass
