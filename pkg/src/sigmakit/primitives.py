"""Shipped extended primitives.

* :class:`DLNotEqual` -- proof that two discrete logarithms differ, after
  Henry and Goldberg: publish C = (h1**x / H1)**blinder and prove
  ``1 = h0**a * H0**b  and  C = h1**a * H1**b`` for a = x*blinder,
  b = -blinder. The verifier additionally checks C != 1; when the logs are
  equal, C collapses to the identity for every blinder, so no valid proof
  exists.

* :class:`PowerTwoRange` / :func:`range_stmt` -- committed-value range
  proofs by bit decomposition. Each bit of the shifted value gets a
  commitment C_i = g**b_i * h**r_i and an OR proof that b_i is 0 or 1; the
  bit randomness is constrained so that prod(C_i ** 2**i) equals the
  shifted commitment, which the verifier checks directly on the
  precommitment. An arbitrary window [a, b) is the conjunction of two
  power-of-two windows.
"""

from .encoding import write_bytes, write_varint
from .errors import CompositionError, MismatchError, ProverError, ValidationError
from .groups import (
    GroupElement,
    Scalar,
    multi_exp,
    random_nonzero_scalar,
    random_scalar,
)
from .statements import (
    AndStmt,
    DLRep,
    ExtendedStmt,
    OrStmt,
    Secret,
    resolve_value,
)


def pedersen_commit(g: GroupElement, h: GroupElement, x, r) -> GroupElement:
    """g**x * h**r."""
    return multi_exp([g, h], [x, r])


def _zigzag(n: int) -> int:
    return n << 1 if n >= 0 else ((-n) << 1) - 1


def _element_bytes(e: GroupElement) -> bytes:
    return write_bytes(e.group.name.encode()) + write_bytes(e.encode())


def _raw_int(secret: Secret) -> int:
    v = secret.value
    if v is None:
        raise ProverError(f"{secret!r} has no value")
    if isinstance(v, Scalar):
        return v.value
    return int(v)


class DLNotEqual(ExtendedStmt):
    """States that log_{h0}(H0) != log_{h1}(H1), knowing x = log_{h0}(H0).

    ``valid`` and ``invalid`` are (lhs, base) pairs; their groups must
    share one prime order but may differ.
    """

    kind = "dl-not-equal"

    __slots__ = ("lhs", "bases", "x", "alpha", "beta")

    def __init__(self, valid, invalid, x: Secret):
        H0, h0 = valid
        H1, h1 = invalid
        if H0.group != h0.group or H1.group != h1.group:
            raise MismatchError("each (lhs, base) pair must share a group")
        if h0.group.order != h1.group.order:
            raise MismatchError("pairs must come from groups of equal order")
        self.lhs = (H0, H1)
        self.bases = (h0, h1)
        self.x = x
        self.alpha = Secret()
        self.beta = Secret()

    @property
    def order(self) -> int:
        return self.bases[0].group.order

    def precommit(self, entropy):
        q = self.order
        xv = resolve_value(self.x, q)
        if self.bases[0] ** xv != self.lhs[0]:
            raise ProverError("x does not open the valid (lhs, base) pair")
        blinder = random_nonzero_scalar(q, entropy)
        self.alpha.value = Scalar(xv, q) * blinder
        self.beta.value = -blinder
        return [(self.bases[1] ** xv / self.lhs[1]) ** blinder]

    def construct_stmt(self, precommitments):
        (c,) = precommitments
        inner = DLRep(
            self.bases[0].group.identity(),
            self.bases[0] ** self.alpha * self.lhs[0] ** self.beta,
        ) & DLRep(c, self.bases[1] ** self.alpha * self.lhs[1] ** self.beta)
        return inner

    def validate(self, precommitments):
        if len(precommitments) != 1:
            raise ValidationError("expected exactly one precommitment element")
        if precommitments[0].is_identity():
            raise ValidationError(
                "invalid precommitment: C = 1 means the logs are equal"
            )

    def simulate_precommit(self, entropy):
        group = self.bases[1].group
        return [group.generator() ** random_nonzero_scalar(group.order, entropy)]

    def precommit_groups(self):
        return [self.bases[1].group]

    def declared_secrets(self):
        return [self.x]

    def public_params(self) -> bytes:
        out = bytearray()
        for e in (self.lhs[0], self.bases[0], self.lhs[1], self.bases[1]):
            out.extend(_element_bytes(e))
        return bytes(out)


class PowerTwoRange(ExtendedStmt):
    """States that the value committed by ``com = g**(x-shift) * h**r``
    satisfies 0 <= x - shift < 2**nbits."""

    kind = "pow2-range"

    __slots__ = ("com", "g", "h", "nbits", "x", "r", "shift", "bit_secrets", "_bits")

    def __init__(self, com, g, h, nbits: int, x: Secret, r: Secret, shift: int = 0):
        if com.group != g.group or com.group != h.group:
            raise MismatchError("commitment and bases must share a group")
        if nbits < 1:
            raise CompositionError("need at least one bit")
        if 1 << nbits >= g.group.order:
            raise CompositionError("2**nbits must be below the group order")
        self.com = com
        self.g = g
        self.h = h
        self.nbits = nbits
        self.x = x
        self.r = r
        self.shift = shift
        self.bit_secrets = [Secret() for _ in range(nbits)]
        self._bits = None

    @property
    def order(self) -> int:
        return self.g.group.order

    def precommit(self, entropy):
        q = self.order
        value = _raw_int(self.x) - self.shift
        if not 0 <= value < (1 << self.nbits):
            raise ProverError("secret value outside declared range")
        r_total = Scalar(resolve_value(self.r, q), q)
        # all but the last bit draw fresh randomness; the last one solves
        # sum(r_i * 2**i) = r so the verifier can aggregate the C_i
        parts = [random_scalar(q, entropy) for _ in range(self.nbits - 1)]
        partial = Scalar(0, q)
        for i, ri in enumerate(parts):
            partial = partial + ri * Scalar(1 << i, q)
        top = Scalar(1 << (self.nbits - 1), q).inverse()
        parts.append((r_total - partial) * top)
        self._bits = [(value >> i) & 1 for i in range(self.nbits)]
        precoms = []
        for bit, ri, secret in zip(self._bits, parts, self.bit_secrets):
            secret.value = ri
            precoms.append(pedersen_commit(self.g, self.h, bit, ri))
        return precoms

    def construct_stmt(self, precommitments):
        clauses = []
        for i, c in enumerate(precommitments):
            ri = self.bit_secrets[i]
            zero = DLRep(c, self.h**ri)
            one = DLRep(c / self.g, self.h**ri)
            flags = None
            if self._bits is not None:
                flags = [self._bits[i] == 1, self._bits[i] == 0]
            clauses.append(OrStmt([zero, one], flags))
        if len(clauses) == 1:
            return clauses[0]
        return AndStmt(clauses)

    def validate(self, precommitments):
        if len(precommitments) != self.nbits:
            raise ValidationError(f"expected {self.nbits} bit commitments")
        aggregated = multi_exp(
            list(precommitments), [1 << i for i in range(self.nbits)]
        )
        if aggregated != self.com:
            raise ValidationError(
                "bit commitments do not aggregate to the committed value"
            )

    def simulate_precommit(self, entropy):
        q = self.order
        precoms = [self.g.group.random_element(entropy) for _ in range(self.nbits - 1)]
        acc = self.com
        for i, c in enumerate(precoms):
            acc = acc * c ** (-(1 << i) % q)
        top = pow(1 << (self.nbits - 1), -1, q)
        precoms.append(acc**top)
        return precoms

    def precommit_groups(self):
        return [self.g.group] * self.nbits

    def declared_secrets(self):
        return [self.x, self.r]

    def public_params(self) -> bytes:
        out = bytearray()
        for e in (self.com, self.g, self.h):
            out.extend(_element_bytes(e))
        out.extend(write_varint(self.nbits))
        out.extend(write_varint(_zigzag(self.shift)))
        return bytes(out)


class ExactOpening(ExtendedStmt):
    """Degenerate one-value window: com = g**target * h**r and x == target."""

    kind = "exact-opening"

    __slots__ = ("com", "g", "h", "target", "x", "r")

    def __init__(self, com, g, h, target: int, x: Secret, r: Secret):
        if com.group != g.group or com.group != h.group:
            raise MismatchError("commitment and bases must share a group")
        self.com = com
        self.g = g
        self.h = h
        self.target = target
        self.x = x
        self.r = r

    @property
    def order(self) -> int:
        return self.g.group.order

    def precommit(self, entropy):
        if _raw_int(self.x) != self.target:
            raise ProverError("secret value outside declared range")
        return []

    def construct_stmt(self, precommitments):
        return DLRep(self.com / self.g**self.target, self.h**self.r)

    def validate(self, precommitments):
        if precommitments:
            raise ValidationError("expected no precommitment elements")

    def simulate_precommit(self, entropy):
        return []

    def precommit_groups(self):
        return []

    def declared_secrets(self):
        return [self.x, self.r]

    def public_params(self) -> bytes:
        out = bytearray()
        for e in (self.com, self.g, self.h):
            out.extend(_element_bytes(e))
        out.extend(write_varint(_zigzag(self.target)))
        return bytes(out)


def range_stmt(com, g, h, a: int, b: int, x: Secret, r: Secret):
    """States that com = g**x * h**r commits to a value with a <= x < b.

    Built from two power-of-two windows over ``nbits = ceil(log2(b - a))``
    bits: x - a and x - b + 2**nbits must both be nbits-bit values, which
    pins x to [a, b). The single-value window b = a + 1 degenerates to an
    opening proof of x = a.
    """
    if a >= b:
        raise CompositionError(f"empty range [{a}, {b})")
    width = b - a
    if width == 1:
        return ExactOpening(com, g, h, a, x, r)
    nbits = (width - 1).bit_length()
    if 1 << nbits >= g.group.order:
        raise CompositionError("range too large for the group order")
    low = PowerTwoRange(com / g**a, g, h, nbits, x, r, shift=a)
    high_shift = b - (1 << nbits)
    high = PowerTwoRange(com / g**high_shift, g, h, nbits, x, r, shift=high_shift)
    return low & high
