"""Exception taxonomy shared by the whole package.

UsageError covers malformed input and violated preconditions; CapabilityError
covers inputs that are well formed but outside the implemented scope.  The CLI
maps UsageError to exit code 2 and CapabilityError to exit code 3.
"""


class TropliftError(Exception):
    pass


class UsageError(TropliftError):
    pass


class CapabilityError(TropliftError):
    pass


class ExtensionUnsupportedError(CapabilityError):
    """Field extension beyond the implemented degree/height bounds."""


class InsufficientTruncationError(CapabilityError):
    """A truncated series does not carry enough terms for the request."""


class WitnessSearchError(CapabilityError):
    """Bounded randomized search for a witness point failed."""


class DescentWitnessError(CapabilityError):
    """No admissible hyperplane witness was found during a descent step."""


class NonMemberError(TropliftError):
    """The query point is provably outside the tropical variety.

    Not a usage problem: the answer is a definite mathematical no.  The
    CLI maps this to exit code 1.  Carries the monomial witness text.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalInvariantError(TropliftError):
    """A mathematically guaranteed condition failed; always a bug or a
    violated hypothesis upstream."""
