"""Domain errors.

Each error has a stable ``code`` string. The command-line front end prints
it and exits with status 1.
"""

from __future__ import annotations


class QuiverError(Exception):
    """Base class for all domain errors."""

    code = "quiver-error"

    def __str__(self) -> str:
        detail = super().__str__()
        return f"{self.code}: {detail}" if detail else self.code


class AbundanceViolation(QuiverError):
    """A pair inside the inspected set carries fewer than two arrows."""

    code = "abundance-violation"


class MalformedCode(QuiverError):
    """An integer code cannot be decoded into arrow counts."""

    code = "malformed-code"


class InfiniteOccurrence(QuiverError):
    """A letter occurs infinitely often where a finite count is required."""

    code = "infinite-occurrence"


class HorizonTooSmall(QuiverError):
    """The requested answer is not certain within the scanned prefix."""

    code = "horizon-too-small"


class HullTooLarge(QuiverError):
    """A subset enumeration would exceed the configured cap."""

    code = "hull-too-large"


class LetterCollision(QuiverError):
    """The letter to insert already occurs in the word."""

    code = "letter-collision"


class NotAntichain(QuiverError):
    """Two sets of a family are comparable under inclusion."""

    code = "not-antichain"


class InfiniteMembership(QuiverError):
    """A vertex lies in infinitely many sets of a family."""

    code = "infinite-membership"


class ExhaustedHorizon(QuiverError):
    """Fewer objects than requested could be certified within the horizon."""

    code = "exhausted-horizon"


class FrozenMutation(QuiverError):
    """Mutation was requested at a frozen vertex."""

    code = "frozen-mutation"


class SignIncoherence(QuiverError):
    """A c-vector has entries of both signs."""

    code = "sign-incoherence"


class NotAbundantAcyclic(QuiverError):
    """The quiver is required to be abundant and acyclic."""

    code = "not-abundant-acyclic"


class UnreducedWord(QuiverError):
    """The word has two equal adjacent letters."""

    code = "unreduced-word"


class DescriptorExhausted(QuiverError):
    """A finite sequence ran out of letters."""

    code = "descriptor-exhausted"


class NotLocallyFiniteWindow(QuiverError):
    """The overfill of the window is not finite."""

    code = "not-locally-finite-window"


class GadgetInapplicable(QuiverError):
    """No divergence construction applies to the sequence."""

    code = "gadget-inapplicable"


class InsufficientSegments(QuiverError):
    """Too few normal-form segments were supplied."""

    code = "insufficient-segments"


class SpecConflict(QuiverError):
    """An extension request contradicts committed arrow counts."""

    code = "spec-conflict"


class MalformedInput(QuiverError):
    """Serialized input does not follow the expected shape."""

    code = "malformed-input"
