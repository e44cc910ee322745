"""Composable zero-knowledge proofs from sigma protocols.

Statements about discrete-log representations combine with ``&`` and ``|``
into bigger statements, prove interactively or non-interactively (strong
Fiat-Shamir), and extend with user-defined primitives. See README.md.
"""

from .engine import (
    Transcript,
    extract_secret,
    prover_commit,
    prover_respond,
    simulate,
    verifier_challenge,
    verify_transcript,
)
from .entropy import SeededEntropy, StubEntropy, SystemEntropy
from .errors import (
    ChallengeSumError,
    CompositionError,
    DangerousOrError,
    GroupError,
    MismatchError,
    MissingSecretError,
    ProverError,
    SerializationError,
    ShapeError,
    SigmaKitError,
    ValidationError,
)
from .groups import (
    GroupElement,
    Scalar,
    derive_base,
    multi_exp,
    random_scalar,
    secp256k1,
    toy_group,
)
from .nizk import NIProof, challenge_hash, deserialize, prove, serialize, verify
from .primitives import (
    DLNotEqual,
    ExactOpening,
    PowerTwoRange,
    pedersen_commit,
    range_stmt,
)
from .statements import (
    AndStmt,
    DLRep,
    Expression,
    ExtendedStmt,
    OrStmt,
    Secret,
    Statement,
    Term,
    collect_secrets,
    statement_id,
    validate_composition,
)

__all__ = [
    "AndStmt",
    "ChallengeSumError",
    "CompositionError",
    "DLNotEqual",
    "DLRep",
    "DangerousOrError",
    "ExactOpening",
    "Expression",
    "ExtendedStmt",
    "GroupElement",
    "GroupError",
    "MismatchError",
    "MissingSecretError",
    "NIProof",
    "OrStmt",
    "PowerTwoRange",
    "ProverError",
    "Scalar",
    "Secret",
    "SeededEntropy",
    "SerializationError",
    "ShapeError",
    "SigmaKitError",
    "Statement",
    "StubEntropy",
    "SystemEntropy",
    "Term",
    "Transcript",
    "ValidationError",
    "challenge_hash",
    "collect_secrets",
    "derive_base",
    "deserialize",
    "extract_secret",
    "multi_exp",
    "pedersen_commit",
    "prove",
    "prover_commit",
    "prover_respond",
    "random_scalar",
    "range_stmt",
    "secp256k1",
    "serialize",
    "simulate",
    "statement_id",
    "toy_group",
    "verifier_challenge",
    "verify",
    "verify_transcript",
]
