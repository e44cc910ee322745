import random

import pytest

from sigmakit import (
    AndStmt,
    DLRep,
    GroupElement,
    OrStmt,
    Secret,
    multi_exp,
    secp256k1,
    toy_group,
)

# the standard small test group: order-11 subgroup of Z_23*, generated by 2;
# 16 = 2**4 serves as the usual second base
TOY_P, TOY_Q, TOY_G = 23, 11, 2


@pytest.fixture
def toy():
    return toy_group(TOY_P, TOY_Q, TOY_G)


@pytest.fixture
def curve():
    return secp256k1()


def elem(group, v: int) -> GroupElement:
    return GroupElement(group, v)


def words(*values: int) -> bytes:
    """Pack ints as consecutive 8-byte words for StubEntropy."""
    return b"".join(v.to_bytes(8, "big") for v in values)


def brute_dlog(group, base: GroupElement, target: GroupElement) -> int:
    """Exhaustive discrete-log oracle, only sane on the toy group."""
    acc = group.identity()
    for k in range(group.order):
        if acc == target:
            return k
        acc = acc * base
    raise AssertionError("target not in the subgroup generated by base")


def random_statement(rng: random.Random, group, depth: int, pool=None):
    """Random And/Or/DLRep tree with consistent secret values.

    Secrets may be shared freely within one AND scope; every OR child gets
    a fresh scope so the result always passes composition validation.
    Simulation flags are random with at least one honest child per OR.
    """
    if pool is None:
        pool = []
    q = group.order
    kind = "leaf" if depth <= 1 else rng.choice(["leaf", "and", "and", "or", "or"])
    if kind == "leaf":
        nterms = rng.randint(1, 3)
        bases, values, expr = [], [], None
        for _ in range(nterms):
            if pool and rng.random() < 0.5:
                s = rng.choice(pool)
            else:
                s = Secret(rng.randrange(q))
                pool.append(s)
            base = group.generator() ** rng.randrange(1, q)
            bases.append(base)
            values.append(s.value)
            term = base**s
            expr = term if expr is None else expr * term
        return DLRep(multi_exp(bases, values), expr)
    n = rng.randint(2, 3)
    if kind == "and":
        return AndStmt([random_statement(rng, group, depth - 1, pool) for _ in range(n)])
    children = [random_statement(rng, group, depth - 1, []) for _ in range(n)]
    flags = [rng.random() < 0.4 for _ in range(n)]
    if all(flags):
        flags[rng.randrange(n)] = False
    return OrStmt(children, flags)
