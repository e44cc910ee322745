"""Non-interactive proofs via the strong Fiat-Shamir transform.

The challenge is a hash over the statement's canonical identifier, the
extended-primitive precommitments, and the commitment tree -- hashing the
statement representation is what makes the transform "strong": a proof for
one statement can never be replayed against another, even one over the
same bases with a different secret-sharing pattern.

A proof carries (precommitments, challenge, responses) but no commitments;
the verifier reconstructs the commitment tree from the responses and
recomputes the hash. The byte format is fixed and versioned:

    0x01
    varint count | count * (varint length | element bytes)   precommitments
    challenge scalar, big-endian, byte width of the order
    response tree, depth first against the statement shape:
        leaf  -> one scalar per term
        AND   -> children in order
        OR    -> per child: sub-challenge scalar, then the child's tree

All counts and scalar widths are implied by the statement template, so
parsing needs the template and rejects any deviation.
"""

import hashlib
from dataclasses import dataclass

from . import engine
from .encoding import ByteReader, write_bytes, write_varint
from .errors import (
    ChallengeSumError,
    CompositionError,
    SerializationError,
    ShapeError,
    ValidationError,
)
from .groups import Scalar, multi_exp, scalar_byte_length
from .statements import (
    AndStmt,
    DLRep,
    ExtendedStmt,
    OrStmt,
    Statement,
    statement_id,
    validate_composition,
)

WIRE_VERSION = 1


@dataclass(frozen=True)
class NIProof:
    precommitments: tuple
    challenge: Scalar
    response: object


def extended_nodes(stmt: Statement):
    """Extended primitives in depth-first statement order."""
    if isinstance(stmt, ExtendedStmt):
        yield stmt
    elif isinstance(stmt, (AndStmt, OrStmt)):
        for child in stmt.children:
            yield from extended_nodes(child)


def _check_constructed(sub: Statement, node: ExtendedStmt):
    if any(True for _ in extended_nodes(sub)):
        raise CompositionError(
            f"primitive {node.kind!r} constructed a statement containing "
            "another primitive; extended statements cannot nest"
        )


def resolve_prover(stmt: Statement, entropy):
    """Run precommit hooks and expand primitives into concrete statements.

    Primitives sitting inside a simulated OR branch get a simulated
    precommitment, so no witness is needed there. Returns the concrete
    tree, the flat precommitment list, and (node, slice) pairs for tests.
    """
    precoms = []
    segments = []

    def visit(node, simulated):
        if isinstance(node, DLRep):
            return node
        if isinstance(node, AndStmt):
            return AndStmt([visit(c, simulated) for c in node.children])
        if isinstance(node, OrStmt):
            flags = node.simulated or (False,) * len(node.children)
            rebuilt = [
                visit(c, simulated or f) for c, f in zip(node.children, flags)
            ]
            return OrStmt(rebuilt, node.simulated)
        if isinstance(node, ExtendedStmt):
            if simulated:
                pre = list(node.simulate_precommit(entropy))
            else:
                pre = list(node.precommit(entropy))
            _check_precommitment(node, pre)
            precoms.extend(pre)
            segments.append((node, pre))
            sub = node.construct_stmt(pre)
            _check_constructed(sub, node)
            return sub
        raise TypeError(f"unknown statement node {type(node).__name__}")

    return visit(stmt, False), precoms, segments


def resolve_verifier(stmt: Statement, precommitments):
    """Expand primitives using the precommitments carried by a proof."""
    precoms = list(precommitments)
    segments = []
    pos = 0

    def visit(node):
        nonlocal pos
        if isinstance(node, DLRep):
            return node
        if isinstance(node, AndStmt):
            return AndStmt([visit(c) for c in node.children])
        if isinstance(node, OrStmt):
            return OrStmt([visit(c) for c in node.children], node.simulated)
        if isinstance(node, ExtendedStmt):
            groups = node.precommit_groups()
            pre = precoms[pos : pos + len(groups)]
            if len(pre) != len(groups):
                raise ValidationError("proof carries too few precommitments")
            pos += len(groups)
            _check_precommitment(node, pre)
            segments.append((node, pre))
            sub = node.construct_stmt(pre)
            _check_constructed(sub, node)
            return sub
        raise TypeError(f"unknown statement node {type(node).__name__}")

    concrete = visit(stmt)
    if pos != len(precoms):
        raise ValidationError("proof carries extra precommitments")
    return concrete, segments


def _check_precommitment(node, pre):
    groups = node.precommit_groups()
    if len(pre) != len(groups):
        raise ValidationError(
            f"primitive {node.kind!r} expects {len(groups)} precommitment "
            f"elements, got {len(pre)}"
        )
    for element, group in zip(pre, groups):
        if element.group != group:
            raise ValidationError(
                f"precommitment element for {node.kind!r} is in the wrong group"
            )


def _commitment_leaves(tree):
    if isinstance(tree, engine.CommitLeaf):
        yield tree.value
    elif isinstance(tree, engine.CommitNode):
        for child in tree.children:
            yield from _commitment_leaves(child)
    else:
        raise ShapeError("not a commitment tree")


def challenge_hash(stmt_id: bytes, precommitments, commitment, order: int) -> Scalar:
    """SHA-256 over the domain-separated transcript, reduced mod the order."""
    h = hashlib.sha256()
    h.update(bytes([WIRE_VERSION]))
    h.update(stmt_id)
    pre = list(precommitments)
    h.update(write_varint(len(pre)))
    for element in pre:
        h.update(write_bytes(element.encode()))
    leaves = list(_commitment_leaves(commitment))
    h.update(write_varint(len(leaves)))
    for element in leaves:
        h.update(write_bytes(element.encode()))
    return Scalar(int.from_bytes(h.digest(), "big"), order)


def recompute_commitment(stmt: Statement, challenge: Scalar, response):
    """Rebuild the commitment tree a transcript must have had.

    Leaves use ``R = lhs**c * prod(base**s)``; OR nodes take their
    children's challenges from the response tree after checking they sum
    to the node's own challenge.
    """
    if isinstance(stmt, DLRep):
        if not isinstance(response, engine.RespLeaf):
            raise ShapeError("response does not match DLRep leaf")
        if len(response.responses) != len(stmt.expr.terms):
            raise ShapeError("response count does not match term count")
        value = stmt.lhs**challenge * multi_exp(
            [t.base for t in stmt.expr.terms], list(response.responses)
        )
        return engine.CommitLeaf(value)
    if isinstance(stmt, AndStmt):
        if not isinstance(response, engine.RespAnd) or len(response.children) != len(
            stmt.children
        ):
            raise ShapeError("response does not match AND node")
        return engine.CommitNode(
            tuple(
                recompute_commitment(c, challenge, r)
                for c, r in zip(stmt.children, response.children)
            )
        )
    if isinstance(stmt, OrStmt):
        if not isinstance(response, engine.RespOr) or len(response.parts) != len(
            stmt.children
        ):
            raise ShapeError("response does not match OR node")
        total = Scalar(0, stmt.order)
        for sub, _ in response.parts:
            total = total + sub
        if total != challenge:
            raise ChallengeSumError(
                "OR sub-challenges do not sum to the node challenge"
            )
        return engine.CommitNode(
            tuple(
                recompute_commitment(c, sub, r)
                for c, (sub, r) in zip(stmt.children, response.parts)
            )
        )
    raise ShapeError(f"cannot recompute commitment for {type(stmt).__name__}")


def prove(stmt: Statement, entropy) -> NIProof:
    """Non-interactive proof of the statement.

    Resolves primitives (collecting precommitments), refuses dangerous OR
    compositions, commits, derives the challenge from the hash, and
    responds. Honest-branch secrets must have values.
    """
    concrete, precoms, _ = resolve_prover(stmt, entropy)
    validate_composition(concrete)
    state, commitment = engine.prover_commit(concrete, entropy)
    challenge = challenge_hash(statement_id(stmt), precoms, commitment, stmt.order)
    response = engine.prover_respond(state, challenge)
    return NIProof(tuple(precoms), challenge, response)


def verify(stmt: Statement, proof: NIProof) -> bool:
    """Check a non-interactive proof against a statement template.

    Returns False on a hash mismatch (wrong statement, tampered bytes).
    Raises ValidationError when a primitive rejects its precommitment, so
    callers can report the two failure modes separately.
    """
    concrete, segments = resolve_verifier(stmt, proof.precommitments)
    for node, pre in segments:
        node.validate(pre)
    try:
        commitment = recompute_commitment(concrete, proof.challenge, proof.response)
    except ChallengeSumError:
        return False
    expected = challenge_hash(
        statement_id(stmt), proof.precommitments, commitment, stmt.order
    )
    return expected == proof.challenge


def _write_response(out: bytearray, response):
    if isinstance(response, engine.RespLeaf):
        for s in response.responses:
            out.extend(s.to_bytes())
    elif isinstance(response, engine.RespAnd):
        for child in response.children:
            _write_response(out, child)
    elif isinstance(response, engine.RespOr):
        for sub, child in response.parts:
            out.extend(sub.to_bytes())
            _write_response(out, child)
    else:
        raise ShapeError("not a response tree")


def serialize(proof: NIProof) -> bytes:
    out = bytearray([WIRE_VERSION])
    out.extend(write_varint(len(proof.precommitments)))
    for element in proof.precommitments:
        out.extend(write_bytes(element.encode()))
    out.extend(proof.challenge.to_bytes())
    _write_response(out, proof.response)
    return bytes(out)


def _read_response(reader: ByteReader, stmt: Statement, order: int):
    width = scalar_byte_length(order)
    if isinstance(stmt, DLRep):
        return engine.RespLeaf(
            tuple(
                Scalar.from_bytes(reader.read(width), order)
                for _ in stmt.expr.terms
            )
        )
    if isinstance(stmt, AndStmt):
        return engine.RespAnd(
            tuple(_read_response(reader, c, order) for c in stmt.children)
        )
    if isinstance(stmt, OrStmt):
        parts = []
        for child in stmt.children:
            sub = Scalar.from_bytes(reader.read(width), order)
            parts.append((sub, _read_response(reader, child, order)))
        return engine.RespOr(tuple(parts))
    raise ShapeError(f"cannot parse response for {type(stmt).__name__}")


def deserialize(data: bytes, stmt: Statement) -> NIProof:
    """Parse proof bytes against a statement template.

    Strict: wrong version, wrong widths, non-canonical scalars, off-group
    elements, truncation and trailing bytes all raise.
    """
    reader = ByteReader(data)
    version = reader.read(1)[0]
    if version != WIRE_VERSION:
        raise SerializationError(f"unsupported proof format version {version}")
    expected_groups = [
        g for node in extended_nodes(stmt) for g in node.precommit_groups()
    ]
    count = reader.read_varint()
    if count != len(expected_groups):
        raise SerializationError(
            f"statement expects {len(expected_groups)} precommitments, "
            f"proof carries {count}"
        )
    precoms = tuple(g.decode(reader.read_bytes()) for g in expected_groups)
    concrete, _ = resolve_verifier(stmt, precoms)
    order = stmt.order
    challenge = Scalar.from_bytes(reader.read(scalar_byte_length(order)), order)
    response = _read_response(reader, concrete, order)
    reader.expect_end()
    return NIProof(precoms, challenge, response)
