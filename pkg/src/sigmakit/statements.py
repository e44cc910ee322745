"""Statement DSL: proof variables, linear expressions and composition.

A statement is a tree. Leaves assert knowledge of a discrete-log
representation ``lhs = b1**s1 * ... * bn**sn``; inner nodes are
conjunctions, disjunctions, or extended primitives that expand into
plain statements once their precommitment is known.

    x = Secret(20)
    r = Secret(1337)
    stmt = DLRep(C, g**x * h**r)
    both = stmt & DLRep(D, g**x)          # x proven equal in both leaves
    either = stmt | other                 # disjunction

Secrets are variables by object identity; labels are debug-only. Proofs
over a disjunction are only allowed when every secret used inside the OR
stays inside it -- see :func:`validate_composition`.
"""

from collections import Counter

from . import encoding
from .errors import (
    CompositionError,
    DangerousOrError,
    MismatchError,
    MissingSecretError,
)
from .groups import Group, GroupElement, Scalar

ID_FORMAT_VERSION = 1


class Secret:
    """A proof variable. Same object means same variable; the optional
    value is only needed on the proving side."""

    __slots__ = ("value", "label")

    def __init__(self, value=None, label: str | None = None):
        self.value = value
        self.label = label

    def __rpow__(self, base):
        if not isinstance(base, GroupElement):
            return NotImplemented
        return Term(self, base)

    def __repr__(self):
        if self.label is not None:
            return f"Secret({self.label})"
        return f"Secret@{id(self):x}"


def resolve_value(secret: Secret, order: int) -> int:
    """The secret's value as an int mod order; raises if unset."""
    v = secret.value
    if v is None:
        raise MissingSecretError(f"{secret!r} has no value")
    if isinstance(v, Scalar):
        if v.order != order:
            raise MismatchError(f"{secret!r} value has order {v.order}, need {order}")
        return v.value
    return v % order


class Term:
    """One ``base ** secret`` factor."""

    __slots__ = ("secret", "base")

    def __init__(self, secret: Secret, base: GroupElement):
        self.secret = secret
        self.base = base

    def __mul__(self, other):
        return Expression([self]) * other


class Expression:
    """Product of ``base ** secret`` terms over a single group.

    Constant factors are not allowed on the right-hand side; fold them
    into the left-hand side (e.g. ``DLRep(c2 / g, h**r)``).
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        terms = tuple(terms)
        if not terms:
            raise CompositionError("expression needs at least one term")
        group = terms[0].base.group
        for t in terms:
            if t.base.group != group:
                raise MismatchError("expression bases must come from one group")
        self.terms = terms

    @property
    def group(self) -> Group:
        return self.terms[0].base.group

    def __mul__(self, other):
        if isinstance(other, Term):
            return Expression(self.terms + (other,))
        if isinstance(other, Expression):
            return Expression(self.terms + other.terms)
        if isinstance(other, GroupElement):
            raise TypeError(
                "constant group elements cannot appear in an expression; "
                "fold them into the statement's left-hand side"
            )
        return NotImplemented


class Statement:
    """Base class for statement tree nodes. Immutable once built."""

    __slots__ = ()

    def __and__(self, other):
        if not isinstance(other, Statement):
            return NotImplemented
        return AndStmt([self, other])

    def __or__(self, other):
        if not isinstance(other, Statement):
            return NotImplemented
        return OrStmt([self, other])

    @property
    def order(self) -> int:
        raise NotImplementedError


class DLRep(Statement):
    """Leaf: knowledge of exponents with ``lhs = prod(base**secret)``."""

    __slots__ = ("lhs", "expr")

    def __init__(self, lhs: GroupElement, expr):
        if isinstance(expr, Term):
            expr = Expression([expr])
        if not isinstance(expr, Expression):
            raise TypeError("DLRep right-hand side must be a Term or Expression")
        if lhs.group != expr.group:
            raise MismatchError("left-hand side not in the same group as the bases")
        self.lhs = lhs
        self.expr = expr

    @property
    def order(self) -> int:
        return self.lhs.group.order


class AndStmt(Statement):
    """Conjunction; shared secrets are proven equal across children."""

    __slots__ = ("children",)

    def __init__(self, children):
        children = tuple(children)
        if len(children) < 2:
            raise CompositionError("AND needs at least two children")
        q = children[0].order
        for c in children:
            if not isinstance(c, Statement):
                raise TypeError("AND children must be statements")
            if c.order != q:
                raise MismatchError("AND children must share one group order")
        self.children = children

    @property
    def order(self) -> int:
        return self.children[0].order


class OrStmt(Statement):
    """Disjunction. ``simulated`` marks which children the prover fakes;
    verifiers ignore the flags entirely."""

    __slots__ = ("children", "simulated")

    def __init__(self, children, simulated=None):
        children = tuple(children)
        if len(children) < 2:
            raise CompositionError("OR needs at least two children")
        q = children[0].order
        for c in children:
            if not isinstance(c, Statement):
                raise TypeError("OR children must be statements")
            if c.order != q:
                raise MismatchError("OR children must share one group order")
        if simulated is not None:
            simulated = tuple(bool(f) for f in simulated)
            if len(simulated) != len(children):
                raise CompositionError(
                    f"{len(children)} OR children but {len(simulated)} simulation flags"
                )
        self.children = children
        self.simulated = simulated

    @property
    def order(self) -> int:
        return self.children[0].order


class ExtendedStmt(Statement):
    """A user-defined primitive: publishes a precommitment, then expands
    into a plain statement.

    Subclasses implement the four hooks. ``precommit`` runs on the proving
    side and may assign values to internal secrets; ``construct_stmt``
    builds the concrete statement both sides prove/verify;
    ``validate`` is the verifier-side gate on the precommitment;
    ``simulate_precommit`` supplies a fake precommitment so the primitive
    can appear as a simulated OR branch. Extended statements may be
    composed under AND/OR but not inside another primitive's constructed
    statement.
    """

    __slots__ = ()

    kind: str

    def precommit(self, entropy) -> list:
        raise NotImplementedError

    def construct_stmt(self, precommitments) -> Statement:
        raise NotImplementedError

    def validate(self, precommitments) -> None:
        raise NotImplementedError

    def simulate_precommit(self, entropy) -> list:
        raise NotImplementedError

    def precommit_groups(self) -> list:
        """Groups of the precommitment elements, fixing count and codec."""
        raise NotImplementedError

    def declared_secrets(self) -> list:
        """User-facing secrets, in occurrence order, for identifiers."""
        raise NotImplementedError

    def public_params(self) -> bytes:
        """Canonical bytes of all public parameters, for identifiers."""
        raise NotImplementedError


def children_of(stmt: Statement):
    if isinstance(stmt, (AndStmt, OrStmt)):
        return stmt.children
    return ()


def collect_secrets(stmt: Statement) -> list:
    """Unique secrets in first-occurrence order (depth-first, left to right)."""
    seen = []
    seen_ids = set()

    def visit(node):
        if isinstance(node, DLRep):
            for term in node.expr.terms:
                if id(term.secret) not in seen_ids:
                    seen_ids.add(id(term.secret))
                    seen.append(term.secret)
        elif isinstance(node, ExtendedStmt):
            for s in node.declared_secrets():
                if id(s) not in seen_ids:
                    seen_ids.add(id(s))
                    seen.append(s)
        else:
            for child in children_of(node):
                visit(child)

    visit(stmt)
    return seen


def _occurrences(stmt: Statement) -> Counter:
    """Secret occurrence counts in a subtree (per term, with multiplicity)."""
    counts = Counter()
    if isinstance(stmt, DLRep):
        for term in stmt.expr.terms:
            counts[id(term.secret)] += 1
    elif isinstance(stmt, ExtendedStmt):
        for s in stmt.declared_secrets():
            counts[id(s)] += 1
    else:
        for child in children_of(stmt):
            counts.update(_occurrences(child))
    return counts


def validate_composition(stmt: Statement) -> None:
    """Reject statements whose OR branches would leak a secret.

    A secret occurring under an OR node must occur nowhere outside that
    node's subtree: otherwise the same randomizer would answer two
    different challenges, which reveals the secret.
    """
    total = _occurrences(stmt)
    secrets_by_id = {id(s): s for s in collect_secrets(stmt)}

    def visit(node):
        if isinstance(node, OrStmt):
            local = _occurrences(node)
            for sid, n in local.items():
                if total[sid] != n:
                    raise DangerousOrError(secrets_by_id[sid])
        for child in children_of(node):
            visit(child)

    visit(stmt)


def statement_id(stmt: Statement) -> bytes:
    """Canonical byte identifier of the statement.

    Identical for structurally identical statements built independently
    (even on different machines), and different whenever the tree shape,
    any group element, or the secret-sharing pattern differs. Secret
    labels and values do not enter. Child order is significant.
    """
    ordinals = {id(s): i for i, s in enumerate(collect_secrets(stmt))}
    out = bytearray([ID_FORMAT_VERSION])

    def emit(node):
        if isinstance(node, DLRep):
            out.append(0x01)
            out.extend(encoding.write_bytes(node.lhs.group.name.encode()))
            out.extend(encoding.write_bytes(node.lhs.encode()))
            out.extend(encoding.write_varint(len(node.expr.terms)))
            for term in node.expr.terms:
                out.extend(encoding.write_bytes(term.base.encode()))
                out.extend(encoding.write_varint(ordinals[id(term.secret)]))
        elif isinstance(node, AndStmt):
            out.append(0x02)
            out.extend(encoding.write_varint(len(node.children)))
            for child in node.children:
                emit(child)
        elif isinstance(node, OrStmt):
            out.append(0x03)
            out.extend(encoding.write_varint(len(node.children)))
            for child in node.children:
                emit(child)
        elif isinstance(node, ExtendedStmt):
            out.append(0x04)
            out.extend(encoding.write_bytes(node.kind.encode()))
            out.extend(encoding.write_bytes(node.public_params()))
            declared = node.declared_secrets()
            out.extend(encoding.write_varint(len(declared)))
            for s in declared:
                out.extend(encoding.write_varint(ordinals[id(s)]))
        else:
            raise TypeError(f"unknown statement node {type(node).__name__}")

    emit(stmt)
    return bytes(out)
