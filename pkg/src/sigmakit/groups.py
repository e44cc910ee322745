"""Prime-order group abstraction with two backends.

* :func:`secp256k1` -- the production elliptic-curve group, prime order,
  cofactor 1, 33-byte compressed point encoding.
* :func:`toy_group` -- a small multiplicative subgroup of Z_p*, explicitly
  parameterized, cheap enough that tests can brute-force discrete logs.

Both expose the same surface: :class:`GroupElement` values combine with
``*`` / ``/`` and exponentiate with ``**``, scalars live in Z_q with eager
reduction, and every element has a fixed-width injective byte encoding.
Scalars are tagged by their order q only, not by a group, so a statement
may span several groups as long as they share one prime order.
"""

import hashlib

from .errors import GroupError, MismatchError, SerializationError


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin; the fixed base set is exact below 3.3e24,
    # a strong probable-prime test beyond (toy parameters are small anyway)
    if n < 2:
        return False
    small = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    for p in small:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def scalar_byte_length(order: int) -> int:
    return (order.bit_length() + 7) // 8


class Scalar:
    """An exponent in Z_q. Always reduced; tagged by its order q."""

    __slots__ = ("value", "order")

    def __init__(self, value: int, order: int):
        self.value = value % order
        self.order = order

    def _check(self, other: "Scalar"):
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.order != self.order:
            raise MismatchError(
                f"scalars of different orders ({self.order} vs {other.order})"
            )

    def __add__(self, other):
        self._check(other)
        return Scalar(self.value + other.value, self.order)

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.value - other.value, self.order)

    def __mul__(self, other):
        self._check(other)
        return Scalar(self.value * other.value, self.order)

    def __neg__(self):
        return Scalar(-self.value, self.order)

    def inverse(self) -> "Scalar":
        if self.value == 0:
            raise ZeroDivisionError("zero scalar has no inverse")
        return Scalar(pow(self.value, -1, self.order), self.order)

    def __eq__(self, other):
        return (
            isinstance(other, Scalar)
            and self.order == other.order
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.value, self.order))

    def __repr__(self):
        return f"Scalar({self.value} mod {self.order})"

    def to_bytes(self) -> bytes:
        return self.value.to_bytes(scalar_byte_length(self.order), "big")

    @classmethod
    def from_bytes(cls, data: bytes, order: int) -> "Scalar":
        if len(data) != scalar_byte_length(order):
            raise SerializationError("scalar encoding has wrong width")
        value = int.from_bytes(data, "big")
        if value >= order:
            raise SerializationError("non-canonical scalar encoding (>= order)")
        return cls(value, order)


def random_scalar(order: int, entropy) -> Scalar:
    """Uniform-ish scalar in [0, q).

    Draws the smallest multiple of 64 bits covering q and reduces mod q.
    The reduction bias is at most 2^(drawn bits - ceil(log2 q)), negligible
    for near-power-of-two 256-bit orders and irrelevant for test groups.
    """
    nbytes = 8 * ((order.bit_length() + 63) // 64)
    raw = int.from_bytes(entropy.read(nbytes), "big")
    return Scalar(raw % order, order)


def random_nonzero_scalar(order: int, entropy) -> Scalar:
    while True:
        s = random_scalar(order, entropy)
        if s.value != 0:
            return s


class GroupElement:
    """Opaque element of a prime-order group.

    ``a * b`` is the group operation, ``a / b`` multiplies by the inverse,
    ``a ** e`` exponentiates by an int or Scalar. Exponentiation by a
    statement secret is handled by the DSL layer (``Secret.__rpow__``).
    """

    __slots__ = ("group", "handle")

    def __init__(self, group: "Group", handle):
        self.group = group
        self.handle = handle

    def _check(self, other):
        if not isinstance(other, GroupElement):
            raise TypeError(f"expected GroupElement, got {type(other).__name__}")
        if other.group != self.group:
            raise MismatchError(
                f"elements of different groups ({self.group.name} vs {other.group.name})"
            )

    def __mul__(self, other):
        self._check(other)
        return GroupElement(self.group, self.group._op(self.handle, other.handle))

    def __truediv__(self, other):
        self._check(other)
        return GroupElement(
            self.group, self.group._op(self.handle, self.group._inv(other.handle))
        )

    def inverse(self) -> "GroupElement":
        return GroupElement(self.group, self.group._inv(self.handle))

    def __pow__(self, exponent):
        if isinstance(exponent, Scalar):
            if exponent.order != self.group.order:
                raise MismatchError("scalar order does not match group order")
            e = exponent.value
        elif isinstance(exponent, int):
            e = exponent % self.group.order
        else:
            return NotImplemented
        return GroupElement(self.group, self.group._exp(self.handle, e))

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.group == other.group
            and self.group._eq(self.handle, other.handle)
        )

    def __hash__(self):
        return hash((self.group.name, self.group._hashable(self.handle)))

    def __repr__(self):
        return f"<{self.group.name} element {self.encode().hex()}>"

    def encode(self) -> bytes:
        return self.group._encode(self.handle)

    def is_identity(self) -> bool:
        return self.group._eq(self.handle, self.group.identity().handle)


class Group:
    """Shared backend surface; see ToyGroup and Secp256k1."""

    name: str
    order: int

    def generator(self) -> GroupElement:
        raise NotImplementedError

    def identity(self) -> GroupElement:
        raise NotImplementedError

    def element_byte_length(self) -> int:
        raise NotImplementedError

    def decode(self, data: bytes) -> GroupElement:
        raise NotImplementedError

    def random_scalar(self, entropy) -> Scalar:
        return random_scalar(self.order, entropy)

    def random_element(self, entropy) -> GroupElement:
        return self.generator() ** random_scalar(self.order, entropy)

    def __eq__(self, other):
        return isinstance(other, Group) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"<group {self.name}>"

    # naive fallback; backends override with something faster
    def _multi_exp(self, handles, exponents):
        acc = self.identity().handle
        for h, e in zip(handles, exponents):
            acc = self._op(acc, self._exp(h, e))
        return acc


def multi_exp(bases, exponents) -> GroupElement:
    """Product of bases[i] ** exponents[i] over one group."""
    if len(bases) == 0 or len(bases) != len(exponents):
        raise ValueError("need equally many bases and exponents, at least one")
    group = bases[0].group
    exps = []
    for b, e in zip(bases, exponents):
        if b.group != group:
            raise MismatchError("multi_exp bases span different groups")
        if isinstance(e, Scalar):
            if e.order != group.order:
                raise MismatchError("scalar order does not match group order")
            exps.append(e.value)
        elif isinstance(e, int):
            exps.append(e % group.order)
        else:
            raise TypeError("exponents must be Scalar or int")
    return GroupElement(group, group._multi_exp([b.handle for b in bases], exps))


class ToyGroup(Group):
    """Order-q subgroup of Z_p*; elements are ints, handles included."""

    def __init__(self, p: int, q: int, g: int):
        if not _is_prime(p):
            raise GroupError(f"p={p} is not prime")
        if not _is_prime(q):
            raise GroupError(f"q={q} is not prime")
        if (p - 1) % q != 0:
            raise GroupError(f"q={q} does not divide p-1={p - 1}")
        if not 1 < g < p:
            raise GroupError(f"generator {g} out of range")
        if pow(g, q, p) != 1:
            raise GroupError(f"generator {g} does not have order {q} mod {p}")
        self.p = p
        self.order = q
        self.g = g
        self.name = f"toy-p{p}-q{q}-g{g}"
        self._width = (p.bit_length() + 7) // 8

    def generator(self) -> GroupElement:
        return GroupElement(self, self.g)

    def identity(self) -> GroupElement:
        return GroupElement(self, 1)

    def element_byte_length(self) -> int:
        return self._width

    def _op(self, a, b):
        return a * b % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def _exp(self, a, e):
        return pow(a, e, self.p)

    def _eq(self, a, b):
        return a == b

    def _hashable(self, a):
        return a

    def _multi_exp(self, handles, exponents):
        acc = 1
        for h, e in zip(handles, exponents):
            acc = acc * pow(h, e, self.p) % self.p
        return acc

    def _encode(self, a) -> bytes:
        return a.to_bytes(self._width, "big")

    def decode(self, data: bytes) -> GroupElement:
        if len(data) != self._width:
            raise SerializationError("element encoding has wrong width")
        v = int.from_bytes(data, "big")
        if not 1 <= v < self.p:
            raise GroupError(f"{v} is not a unit mod {self.p}")
        if pow(v, self.order, self.p) != 1:
            raise GroupError(f"{v} is outside the order-{self.order} subgroup")
        return GroupElement(self, v)


def toy_group(p: int, q: int, g: int) -> ToyGroup:
    return ToyGroup(p, q, g)


# secp256k1: y^2 = x^3 + 7 over F_P, prime order N, cofactor 1
_P = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F
_N = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141
_GX = 0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798
_GY = 0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8


def _jac_double(pt):
    x, y, z = pt
    if not y:
        return (0, 1, 0)
    s = 4 * x * y % _P * y % _P
    m = 3 * x * x % _P
    x3 = (m * m - 2 * s) % _P
    y8 = y * y % _P
    y3 = (m * (s - x3) - 8 * y8 * y8) % _P
    z3 = 2 * y * z % _P
    return (x3, y3, z3)


def _jac_add(p1, p2):
    if not p1[2]:
        return p2
    if not p2[2]:
        return p1
    x1, y1, z1 = p1
    x2, y2, z2 = p2
    z1s = z1 * z1 % _P
    z2s = z2 * z2 % _P
    u1 = x1 * z2s % _P
    u2 = x2 * z1s % _P
    s1 = y1 * z2s % _P * z2 % _P
    s2 = y2 * z1s % _P * z1 % _P
    if u1 == u2:
        if s1 != s2:
            return (0, 1, 0)
        return _jac_double(p1)
    h = (u2 - u1) % _P
    r = (s2 - s1) % _P
    h2 = h * h % _P
    h3 = h2 * h % _P
    u1h2 = u1 * h2 % _P
    x3 = (r * r - h3 - 2 * u1h2) % _P
    y3 = (r * (u1h2 - x3) - s1 * h3) % _P
    z3 = h * z1 % _P * z2 % _P
    return (x3, y3, z3)


def _jac_to_affine(pt):
    x, y, z = pt
    if not z:
        return None
    zi = pow(z, -1, _P)
    zi2 = zi * zi % _P
    return (x * zi2 % _P, y * zi2 % _P * zi % _P)


def _affine_to_jac(pt):
    if pt is None:
        return (0, 1, 0)
    return (pt[0], pt[1], 1)


class Secp256k1(Group):
    """secp256k1 with compressed SEC encodings.

    Element handles are affine (x, y) pairs or None for the identity; the
    identity encodes as 33 zero bytes to keep the width fixed. Multi-exp
    uses simultaneous square-and-multiply over 4-base chunks.
    """

    def __init__(self):
        self.order = _N
        self.name = "secp256k1"

    def generator(self) -> GroupElement:
        return GroupElement(self, (_GX, _GY))

    def identity(self) -> GroupElement:
        return GroupElement(self, None)

    def element_byte_length(self) -> int:
        return 33

    def _op(self, a, b):
        return _jac_to_affine(_jac_add(_affine_to_jac(a), _affine_to_jac(b)))

    def _inv(self, a):
        if a is None:
            return None
        return (a[0], _P - a[1] if a[1] else 0)

    def _exp(self, a, e):
        return self._multi_exp([a], [e])

    def _eq(self, a, b):
        return a == b

    def _hashable(self, a):
        return a

    def _multi_exp(self, handles, exponents):
        acc = (0, 1, 0)
        for start in range(0, len(handles), 4):
            chunk = handles[start : start + 4]
            exps = exponents[start : start + 4]
            acc = self._straus(acc, chunk, exps)
        return _jac_to_affine(acc)

    def _straus(self, acc, handles, exponents):
        # subset-product table over up to 4 bases, one shared bit scan
        jacs = [_affine_to_jac(h) for h in handles]
        k = len(jacs)
        table = [(0, 1, 0)] * (1 << k)
        for i in range(k):
            bit = 1 << i
            for mask in range(bit):
                table[mask | bit] = _jac_add(table[mask], jacs[i])
        nbits = max((e.bit_length() for e in exponents), default=0)
        for pos in range(nbits - 1, -1, -1):
            acc = _jac_double(acc)
            idx = 0
            for i, e in enumerate(exponents):
                if (e >> pos) & 1:
                    idx |= 1 << i
            if idx:
                acc = _jac_add(acc, table[idx])
        return acc

    def _encode(self, a) -> bytes:
        if a is None:
            return bytes(33)
        x, y = a
        return bytes([2 + (y & 1)]) + x.to_bytes(32, "big")

    def decode(self, data: bytes) -> GroupElement:
        if len(data) != 33:
            raise SerializationError("element encoding has wrong width")
        if data == bytes(33):
            return self.identity()
        prefix = data[0]
        if prefix not in (2, 3):
            raise GroupError(f"bad point prefix {prefix:#x}")
        x = int.from_bytes(data[1:], "big")
        if x >= _P:
            raise GroupError("point x-coordinate out of range")
        rhs = (x * x % _P * x + 7) % _P
        y = pow(rhs, (_P + 1) // 4, _P)
        if y * y % _P != rhs:
            raise GroupError("x-coordinate is not on the curve")
        if (y & 1) != (prefix & 1):
            y = _P - y
        return GroupElement(self, (x, y))


_SECP256K1 = Secp256k1()


def secp256k1() -> Secp256k1:
    return _SECP256K1


def derive_base(group: Group, label: str) -> GroupElement:
    """Deterministic extra generator with no known discrete log to g.

    Hashes the label with a counter until the digest lands in the group
    (try-and-increment). Both parties derive the same element from the
    same label.
    """
    for counter in range(100000):
        digest = hashlib.sha256(
            b"sigmakit-base:" + label.encode() + b":" + counter.to_bytes(4, "big")
        ).digest()
        if isinstance(group, ToyGroup):
            v = int.from_bytes(digest, "big") % group.p
            if v > 1 and pow(v, group.order, group.p) == 1:
                return GroupElement(group, v)
        elif isinstance(group, Secp256k1):
            x = int.from_bytes(digest, "big") % _P
            rhs = (x * x % _P * x + 7) % _P
            y = pow(rhs, (_P + 1) // 4, _P)
            if y * y % _P == rhs:
                return GroupElement(group, (x, min(y, _P - y)))
        else:
            raise GroupError(f"cannot derive a base for group {group.name}")
    raise GroupError(f"no base found for label {label!r}")
