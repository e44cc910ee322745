"""Exception hierarchy.

Protocol-level rejections (a proof that does not check out) are reported as
``False`` return values or as :class:`ValidationError`, never as generic
exceptions; structural misuse (mismatched shapes, wrong groups) raises
distinct error types so that library bugs are distinguishable from forgeries.
"""


class SigmaKitError(Exception):
    """Base class for all library errors."""


class GroupError(SigmaKitError):
    """Bad group parameters or an element that fails membership checks."""


class MismatchError(SigmaKitError):
    """Objects from incompatible groups or scalar fields were combined."""


class CompositionError(SigmaKitError):
    """A statement tree violates a structural rule (arity, flags, nesting)."""


class DangerousOrError(CompositionError):
    """A secret used inside an OR branch also occurs outside of it.

    Proving such a statement naively would reuse one randomizer under two
    different challenges and leak the secret, so it is refused outright.
    """

    def __init__(self, secret):
        self.secret = secret
        super().__init__(
            f"secret appears outside OR clause it is used in: {secret!r}; "
            "rewrite the statement (e.g. in disjunctive normal form) or bind "
            "the secret to a commitment repeated inside the OR"
        )


class MissingSecretError(SigmaKitError):
    """Proving requires a secret value that was never assigned."""


class ProverError(SigmaKitError):
    """Prover-side failure: unusable flags, reused state, or a witness that
    does not satisfy the statement (caught by the post-response self-check)."""


class ShapeError(SigmaKitError):
    """A transcript or response tree is not congruent with its statement."""


class ChallengeSumError(SigmaKitError):
    """OR sub-challenges do not add up to the node's challenge."""


class ValidationError(SigmaKitError):
    """An extended primitive rejected its precommitment during verification."""


class SerializationError(SigmaKitError):
    """Malformed bytes: truncation, bad version, or non-canonical encoding."""
