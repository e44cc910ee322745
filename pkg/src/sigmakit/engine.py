"""Interactive sigma-protocol execution.

Commit / challenge / respond over a statement tree, plus the two tools
zero-knowledge rests on: honest-verifier simulation and (as a test oracle)
witness extraction from colliding transcripts.

The response convention is ``s = r - c*x`` with verification
``R == lhs**c * prod(base**s)``; an OR node splits its challenge so the
sub-challenges sum to it, which lets the prover pick the simulated
branches' sub-challenges freely and absorb the remainder honestly.

The engine works on concrete trees (DLRep / AND / OR). Extended
primitives are expanded by the non-interactive layer before they reach
this module.
"""

from dataclasses import dataclass

from .errors import (
    MismatchError,
    ProverError,
    ShapeError,
)
from .groups import GroupElement, Scalar, multi_exp, random_scalar
from .statements import (
    AndStmt,
    DLRep,
    ExtendedStmt,
    OrStmt,
    Statement,
    resolve_value,
    validate_composition,
)


@dataclass(frozen=True)
class CommitLeaf:
    value: GroupElement


@dataclass(frozen=True)
class CommitNode:
    children: tuple


@dataclass(frozen=True)
class RespLeaf:
    responses: tuple  # one Scalar per expression term


@dataclass(frozen=True)
class RespAnd:
    children: tuple


@dataclass(frozen=True)
class RespOr:
    parts: tuple  # (sub-challenge Scalar, child response tree) per child


@dataclass(frozen=True)
class Transcript:
    commitment: object
    challenge: Scalar
    response: object


class _LeafPlan:
    __slots__ = ("randomizers",)

    def __init__(self, randomizers):
        self.randomizers = randomizers


class _AndPlan:
    __slots__ = ("children",)

    def __init__(self, children):
        self.children = children


class _OrPlan:
    __slots__ = ("entries",)

    # entry per child: ("sim", sub_challenge, response_tree)
    #                | ("honest", plan, sub_challenge or None)
    # exactly one honest entry has sub_challenge None and absorbs the rest
    def __init__(self, entries):
        self.entries = entries


class ProverState:
    """Single-use randomizer/simulation bookkeeping between commit and respond."""

    __slots__ = ("statement", "commitment", "_plan", "_used")

    def __init__(self, statement, commitment, plan):
        self.statement = statement
        self.commitment = commitment
        self._plan = plan
        self._used = False


def _reject_extended(stmt):
    if isinstance(stmt, ExtendedStmt):
        raise ShapeError(
            "extended primitives must be resolved into concrete statements "
            "before running the interactive engine"
        )
    if isinstance(stmt, (AndStmt, OrStmt)):
        for c in stmt.children:
            _reject_extended(c)


def prover_commit(stmt: Statement, entropy):
    """First prover move. Returns (state, commitment tree).

    Draws one randomizer per unique secret, shared across conjuncts; each
    honest OR branch gets its own randomizer scope, and simulated branches
    are fully simulated here under self-chosen sub-challenges.
    """
    _reject_extended(stmt)
    validate_composition(stmt)
    q = stmt.order
    plan, commitment = _commit(stmt, q, {}, entropy)
    return ProverState(stmt, commitment, plan), commitment


def _commit(node, q, scope, entropy):
    if isinstance(node, DLRep):
        randomizers = []
        for term in node.expr.terms:
            key = id(term.secret)
            if key not in scope:
                # fail fast on unset secrets, before any message is sent
                resolve_value(term.secret, q)
                scope[key] = random_scalar(q, entropy)
            randomizers.append(scope[key])
        commitment = multi_exp([t.base for t in node.expr.terms], randomizers)
        return _LeafPlan(randomizers), CommitLeaf(commitment)
    if isinstance(node, AndStmt):
        plans, coms = [], []
        for child in node.children:
            p, c = _commit(child, q, scope, entropy)
            plans.append(p)
            coms.append(c)
        return _AndPlan(plans), CommitNode(tuple(coms))
    if isinstance(node, OrStmt):
        flags = node.simulated or (False,) * len(node.children)
        if all(flags):
            raise ProverError("OR with every child simulated: nothing to prove")
        absorber = max(i for i, f in enumerate(flags) if not f)
        entries, coms = [], []
        for i, child in enumerate(node.children):
            if flags[i]:
                sub = random_scalar(q, entropy)
                transcript = _simulate(child, q, sub, {}, entropy)
                entries.append(("sim", sub, transcript.response))
                coms.append(transcript.commitment)
            else:
                sub = None if i == absorber else random_scalar(q, entropy)
                plan, com = _commit(child, q, {}, entropy)
                entries.append(("honest", plan, sub))
                coms.append(com)
        return _OrPlan(entries), CommitNode(tuple(coms))
    raise ShapeError(f"cannot commit to {type(node).__name__}")


def verifier_challenge(group, entropy) -> Scalar:
    return random_scalar(group.order, entropy)


def prover_respond(state: ProverState, challenge: Scalar):
    """Final prover move. Consumes the state.

    After computing the responses the full transcript is self-checked;
    a witness that does not actually satisfy the statement (e.g. an OR
    branch declared honest but false) raises ProverError here instead of
    silently emitting a proof the verifier will reject.
    """
    if state._used:
        raise ProverError("prover state already consumed; commit again")
    state._used = True
    q = state.statement.order
    if not isinstance(challenge, Scalar) or challenge.order != q:
        raise MismatchError("challenge must be a scalar mod the statement order")
    response = _respond(state.statement, state._plan, q, challenge)
    transcript = Transcript(state.commitment, challenge, response)
    if not verify_transcript(state.statement, transcript):
        raise ProverError(
            "self-check failed: the supplied secrets do not satisfy the statement"
        )
    return response


def _respond(node, plan, q, challenge):
    if isinstance(node, DLRep):
        responses = []
        for term, rand in zip(node.expr.terms, plan.randomizers):
            x = resolve_value(term.secret, q)
            responses.append(rand - challenge * Scalar(x, q))
        return RespLeaf(tuple(responses))
    if isinstance(node, AndStmt):
        return RespAnd(
            tuple(
                _respond(c, p, q, challenge)
                for c, p in zip(node.children, plan.children)
            )
        )
    if isinstance(node, OrStmt):
        fixed = Scalar(0, q)
        for entry in plan.entries:
            if entry[0] == "sim":
                fixed = fixed + entry[1]
            elif entry[2] is not None:
                fixed = fixed + entry[2]
        remainder = challenge - fixed
        parts = []
        for child, entry in zip(node.children, plan.entries):
            if entry[0] == "sim":
                parts.append((entry[1], entry[2]))
            else:
                sub = entry[2] if entry[2] is not None else remainder
                parts.append((sub, _respond(child, entry[1], q, sub)))
        return RespOr(tuple(parts))
    raise ShapeError(f"cannot respond for {type(node).__name__}")


def verify_transcript(stmt: Statement, transcript: Transcript) -> bool:
    """Check a full commit/challenge/response exchange.

    Returns the verification verdict; raises ShapeError when the trees are
    not congruent with the statement, so protocol bugs do not masquerade
    as forgeries.
    """
    q = stmt.order
    if transcript.challenge.order != q:
        raise MismatchError("challenge order does not match the statement")
    return _verify(stmt, transcript.commitment, transcript.challenge, transcript.response)


def _verify(node, com, challenge, resp) -> bool:
    if isinstance(node, DLRep):
        if not isinstance(com, CommitLeaf) or not isinstance(resp, RespLeaf):
            raise ShapeError("commitment/response does not match DLRep leaf")
        if len(resp.responses) != len(node.expr.terms):
            raise ShapeError("response count does not match term count")
        recomputed = node.lhs**challenge * multi_exp(
            [t.base for t in node.expr.terms], list(resp.responses)
        )
        return recomputed == com.value
    if isinstance(node, AndStmt):
        if not isinstance(com, CommitNode) or not isinstance(resp, RespAnd):
            raise ShapeError("commitment/response does not match AND node")
        if len(com.children) != len(node.children) or len(resp.children) != len(
            node.children
        ):
            raise ShapeError("AND arity mismatch")
        return all(
            _verify(c, k, challenge, r)
            for c, k, r in zip(node.children, com.children, resp.children)
        )
    if isinstance(node, OrStmt):
        if not isinstance(com, CommitNode) or not isinstance(resp, RespOr):
            raise ShapeError("commitment/response does not match OR node")
        if len(com.children) != len(node.children) or len(resp.parts) != len(
            node.children
        ):
            raise ShapeError("OR arity mismatch")
        total = Scalar(0, node.order)
        for sub, _ in resp.parts:
            total = total + sub
        if total != challenge:
            return False
        return all(
            _verify(c, k, sub, r)
            for c, k, (sub, r) in zip(node.children, com.children, resp.parts)
        )
    raise ShapeError(f"cannot verify {type(node).__name__}")


def simulate(stmt: Statement, challenge: Scalar, entropy) -> Transcript:
    """Accepting transcript for the given challenge, without any secrets.

    Leaf responses are uniform; secrets shared across conjuncts reuse one
    response so simulated transcripts are distributed like honest ones.
    """
    _reject_extended(stmt)
    q = stmt.order
    if not isinstance(challenge, Scalar) or challenge.order != q:
        raise MismatchError("challenge must be a scalar mod the statement order")
    return _simulate(stmt, q, challenge, {}, entropy)


def _simulate(node, q, challenge, scope, entropy):
    if isinstance(node, DLRep):
        responses = []
        for term in node.expr.terms:
            key = id(term.secret)
            if key not in scope:
                scope[key] = random_scalar(q, entropy)
            responses.append(scope[key])
        commitment = node.lhs**challenge * multi_exp(
            [t.base for t in node.expr.terms], responses
        )
        return Transcript(CommitLeaf(commitment), challenge, RespLeaf(tuple(responses)))
    if isinstance(node, AndStmt):
        coms, resps = [], []
        for child in node.children:
            t = _simulate(child, q, challenge, scope, entropy)
            coms.append(t.commitment)
            resps.append(t.response)
        return Transcript(CommitNode(tuple(coms)), challenge, RespAnd(tuple(resps)))
    if isinstance(node, OrStmt):
        subs = [random_scalar(q, entropy) for _ in node.children[:-1]]
        rest = challenge
        for s in subs:
            rest = rest - s
        subs.append(rest)
        coms, parts = [], []
        for child, sub in zip(node.children, subs):
            t = _simulate(child, q, sub, {}, entropy)
            coms.append(t.commitment)
            parts.append((sub, t.response))
        return Transcript(CommitNode(tuple(coms)), challenge, RespOr(tuple(parts)))
    raise ShapeError(f"cannot simulate {type(node).__name__}")


def extract_secret(t1: Transcript, t2: Transcript, leaf: DLRep) -> Scalar:
    """Witness from two accepting transcripts with one commitment and
    distinct challenges (special soundness, single-secret leaves only)."""
    if not isinstance(leaf, DLRep) or len(leaf.expr.terms) != 1:
        raise ValueError("extraction needs a single-secret DLRep leaf")
    if t1.commitment != t2.commitment:
        raise ValueError("transcripts do not share a commitment")
    if t1.challenge == t2.challenge:
        raise ValueError("transcripts must have distinct challenges")
    s1 = t1.response.responses[0]
    s2 = t2.response.responses[0]
    return (s1 - s2) * (t2.challenge - t1.challenge).inverse()
