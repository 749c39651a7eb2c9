"""Exception types raised across the package."""


class BruhatStrataError(Exception):
    """Base class for all errors raised by bruhatstrata."""


class InvalidWordError(BruhatStrataError, ValueError):
    """A letter sequence is out of range or not a reduced word."""


class InvalidPermutationError(BruhatStrataError, ValueError):
    pass


class RankMismatchError(BruhatStrataError, ValueError):
    pass


class NotInGroupError(BruhatStrataError, ValueError):
    """The element is not a unit of the spin group, or not in the finite lift group."""


class NotInCosetError(BruhatStrataError, ValueError):
    pass


class NotClickableError(BruhatStrataError, ValueError):
    """The face corners of a sign vector carry equal signs."""


class NotFactorizableError(BruhatStrataError, ValueError):
    pass


class InconsistencyError(BruhatStrataError, ValueError):
    """Externally supplied stratum counts disagree with the computed 1-skeleton."""


class MalformedPreancestryError(BruhatStrataError, ValueError):
    pass
