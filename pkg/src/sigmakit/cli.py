"""Command-line front end.

``prove`` runs a named demo scenario and writes two files: the proof and a
self-describing public-inputs file from which ``verify`` rebuilds the
statement template, so verification needs nothing from the prover beyond
those bytes. ``bench`` reports median prove/verify timings as CSV.

Exit codes: 0 accepted, 1 rejected, 2 bad configuration or malformed
files, 3 proving failure.
"""

import statistics
import sys
import time

import click

from . import nizk
from .encoding import ByteReader, write_bytes, write_varint
from .errors import SigmaKitError, ValidationError
from .entropy import SeededEntropy, SystemEntropy
from .groups import derive_base, random_scalar, secp256k1, toy_group
from .primitives import DLNotEqual, pedersen_commit, range_stmt
from .statements import DLRep, OrStmt, Secret, validate_composition

PUB_VERSION = 1

SCENARIOS = ("schnorr", "equal-dl", "enc-bit-or", "dlne", "range", "vote5")


def _parse_backend(spec: str):
    if spec == "curve":
        return secp256k1()
    if spec.startswith("toy:"):
        try:
            p, q, g = (int(part) for part in spec[4:].split(","))
        except ValueError:
            raise click.ClickException(f"bad toy backend spec {spec!r}")
        return toy_group(p, q, g)
    raise click.ClickException(f"unknown backend {spec!r} (use curve or toy:p,q,g)")


def _rand_int(order, entropy, below=None):
    v = random_scalar(order, entropy).value
    return v % below if below is not None else v


# scenario builders: prove-side returns (statement, public elements),
# verify-side rebuilds the template from those elements with unset secrets


def _schnorr_prove(group, entropy):
    g = group.generator()
    xv = _rand_int(group.order, entropy)
    x = Secret(xv, label="x")
    return DLRep(g**xv, g**x), [g**xv]


def _schnorr_verify(group, elements):
    (big_x,) = elements
    return DLRep(big_x, group.generator() ** Secret(label="x"))


def _equal_dl_prove(group, entropy):
    g1 = group.generator()
    g2 = derive_base(group, "equal-dl-g2")
    xv = _rand_int(group.order, entropy)
    x = Secret(xv, label="x")
    x1, x2 = g1**xv, g2**xv
    return DLRep(x1, g1**x) & DLRep(x2, g2**x), [x1, x2]


def _equal_dl_verify(group, elements):
    x1, x2 = elements
    g1 = group.generator()
    g2 = derive_base(group, "equal-dl-g2")
    x = Secret(label="x")
    return DLRep(x1, g1**x) & DLRep(x2, g2**x)


def _enc_bit_statement(c1, c2, g, h, r, simulated):
    enc0 = DLRep(c1, g**r) & DLRep(c2, h**r)
    enc1 = DLRep(c1, g**r) & DLRep(c2 / g, h**r)
    return OrStmt([enc0, enc1], simulated)


def _enc_bit_prove(group, entropy, dangerous=False):
    g = group.generator()
    h = derive_base(group, "elgamal-h")
    rv = _rand_int(group.order, entropy)
    r = Secret(rv, label="r")
    c1, c2 = g**rv, g * h**rv  # encrypts the bit m = 1
    if dangerous:
        # the flawed factored form: r escapes the OR clause
        stmt = DLRep(c1, g**r) & OrStmt(
            [DLRep(c2, h**r), DLRep(c2 / g, h**r)], [True, False]
        )
    else:
        stmt = _enc_bit_statement(c1, c2, g, h, r, [True, False])
    return stmt, [c1, c2]


def _enc_bit_verify(group, elements):
    c1, c2 = elements
    g = group.generator()
    h = derive_base(group, "elgamal-h")
    return _enc_bit_statement(c1, c2, g, h, Secret(label="r"), None)


def _dlne_prove(group, entropy):
    h0 = group.generator()
    h1 = derive_base(group, "dlne-h1")
    xv = _rand_int(group.order, entropy)
    yv = (xv + 1) % group.order
    big_h0, big_h1 = h0**xv, h1**yv
    stmt = DLNotEqual((big_h0, h0), (big_h1, h1), Secret(xv, label="x"))
    return stmt, [big_h0, big_h1]


def _dlne_verify(group, elements):
    big_h0, big_h1 = elements
    h0 = group.generator()
    h1 = derive_base(group, "dlne-h1")
    return DLNotEqual((big_h0, h0), (big_h1, h1), Secret(label="x"))


RANGE_WINDOW = (0, 4)
VOTE_WINDOW = (0, 5)


def _range_prove(group, entropy):
    g = group.generator()
    h = derive_base(group, "pedersen-h")
    a, b = RANGE_WINDOW
    xv = a + _rand_int(group.order, entropy, below=b - a)
    rv = _rand_int(group.order, entropy)
    com = pedersen_commit(g, h, xv, rv)
    stmt = range_stmt(com, g, h, a, b, Secret(xv, "x"), Secret(rv, "r"))
    return stmt, [com]


def _range_verify(group, elements):
    (com,) = elements
    g = group.generator()
    h = derive_base(group, "pedersen-h")
    a, b = RANGE_WINDOW
    return range_stmt(com, g, h, a, b, Secret(label="x"), Secret(label="r"))


def _vote5_prove(group, entropy):
    g = group.generator()
    h = derive_base(group, "elgamal-h")
    a, b = VOTE_WINDOW
    mv = _rand_int(group.order, entropy, below=b)
    rv = _rand_int(group.order, entropy)
    c1, c2 = g**rv, g**mv * h**rv
    m, r = Secret(mv, "m"), Secret(rv, "r")
    enc = DLRep(c1, g**r) & DLRep(c2, g**m * h**r)
    return enc & range_stmt(c2, g, h, a, b, m, r), [c1, c2]


def _vote5_verify(group, elements):
    c1, c2 = elements
    g = group.generator()
    h = derive_base(group, "elgamal-h")
    a, b = VOTE_WINDOW
    m, r = Secret(label="m"), Secret(label="r")
    enc = DLRep(c1, g**r) & DLRep(c2, g**m * h**r)
    return enc & range_stmt(c2, g, h, a, b, m, r)


_BUILDERS = {
    "schnorr": (_schnorr_prove, _schnorr_verify),
    "equal-dl": (_equal_dl_prove, _equal_dl_verify),
    "enc-bit-or": (_enc_bit_prove, _enc_bit_verify),
    "dlne": (_dlne_prove, _dlne_verify),
    "range": (_range_prove, _range_verify),
    "vote5": (_vote5_prove, _vote5_verify),
}


def _write_public(path, scenario, backend, elements):
    out = bytearray([PUB_VERSION])
    out.extend(write_bytes(scenario.encode()))
    if backend == "curve":
        out.append(0x01)
    else:
        group = _parse_backend(backend)
        out.append(0x02)
        out.extend(write_varint(group.p))
        out.extend(write_varint(group.order))
        out.extend(write_varint(group.g))
    out.extend(write_varint(len(elements)))
    for e in elements:
        out.extend(write_bytes(e.encode()))
    with open(path, "wb") as fh:
        fh.write(bytes(out))


def _read_public(path):
    with open(path, "rb") as fh:
        reader = ByteReader(fh.read())
    version = reader.read(1)[0]
    if version != PUB_VERSION:
        raise SigmaKitError(f"unsupported public-inputs version {version}")
    scenario = reader.read_bytes().decode()
    if scenario not in _BUILDERS:
        raise SigmaKitError(f"unknown scenario {scenario!r} in public inputs")
    kind = reader.read(1)[0]
    if kind == 0x01:
        group = secp256k1()
    elif kind == 0x02:
        group = toy_group(reader.read_varint(), reader.read_varint(), reader.read_varint())
    else:
        raise SigmaKitError(f"unknown backend tag {kind:#x}")
    elements = [group.decode(reader.read_bytes()) for _ in range(reader.read_varint())]
    reader.expect_end()
    return scenario, group, elements


def _entropy_from(seed):
    if seed is None:
        return SystemEntropy()
    click.echo(
        "warning: --seed makes proofs deterministic and INSECURE; "
        "use only for tests and demos",
        err=True,
    )
    return SeededEntropy(seed)


@click.group()
def main():
    """Sigma-protocol zero-knowledge proof demos."""


@main.command()
@click.option("--scenario", type=click.Choice(SCENARIOS), required=True)
@click.option("--backend", default="curve", show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("-o", "--out", "out_path", required=True, type=click.Path())
@click.option("--public", "pub_path", type=click.Path(), default=None)
@click.option(
    "--dangerous-variant",
    is_flag=True,
    help="enc-bit-or only: build the flawed factored statement",
)
def prove(scenario, backend, seed, out_path, pub_path, dangerous_variant):
    """Build a scenario statement, prove it, write proof + public inputs."""
    try:
        group = _parse_backend(backend)
        if dangerous_variant and scenario != "enc-bit-or":
            raise click.ClickException("--dangerous-variant applies to enc-bit-or")
    except click.ClickException as exc:
        click.echo(f"configuration error: {exc.message}", err=True)
        sys.exit(2)
    entropy = _entropy_from(seed)
    try:
        if dangerous_variant:
            stmt, elements = _enc_bit_prove(group, entropy, dangerous=True)
        else:
            stmt, elements = _BUILDERS[scenario][0](group, entropy)
        validate_composition(stmt)
        proof = nizk.prove(stmt, entropy)
    except SigmaKitError as exc:
        click.echo(f"proving failed: {exc}", err=True)
        sys.exit(3)
    if pub_path is None:
        pub_path = out_path + ".pub"
    with open(out_path, "wb") as fh:
        fh.write(nizk.serialize(proof))
    _write_public(pub_path, scenario, backend, elements)
    click.echo(f"wrote {out_path} and {pub_path}")


@main.command()
@click.option("--proof", "proof_path", required=True, type=click.Path())
@click.option("--public", "pub_path", required=True, type=click.Path())
def verify(proof_path, pub_path):
    """Verify a proof file against its public inputs."""
    try:
        scenario, group, elements = _read_public(pub_path)
        stmt = _BUILDERS[scenario][1](group, elements)
        with open(proof_path, "rb") as fh:
            proof = nizk.deserialize(fh.read(), stmt)
    except (SigmaKitError, OSError, ValueError) as exc:
        click.echo(f"malformed input: {exc}", err=True)
        sys.exit(2)
    try:
        ok = nizk.verify(stmt, proof)
    except ValidationError as exc:
        click.echo(f"rejected: precommitment validation failed: {exc}", err=True)
        sys.exit(1)
    except SigmaKitError as exc:
        click.echo(f"malformed input: {exc}", err=True)
        sys.exit(2)
    if not ok:
        click.echo("rejected: challenge hash mismatch", err=True)
        sys.exit(1)
    click.echo("ok")


@main.command()
@click.option("--scenario", type=click.Choice(SCENARIOS), default=None)
@click.option("--backend", default="curve", show_default=True)
@click.option("--n", default=30, show_default=True)
@click.option("--seed", type=int, default=None)
def bench(scenario, backend, n, seed):
    """Median prove/verify times per scenario, CSV on stdout."""
    try:
        group = _parse_backend(backend)
    except click.ClickException as exc:
        click.echo(f"configuration error: {exc.message}", err=True)
        sys.exit(2)
    if backend != "curve":
        click.echo("configuration error: bench requires the curve backend", err=True)
        sys.exit(2)
    entropy = _entropy_from(seed)
    names = [scenario] if scenario else list(SCENARIOS)
    click.echo("scenario,op,median_ms,n")
    for name in names:
        stmt, elements = _BUILDERS[name][0](group, entropy)
        template = _BUILDERS[name][1](group, elements)
        prove_times, verify_times = [], []
        for _ in range(n):
            t0 = time.perf_counter()
            proof = nizk.prove(stmt, entropy)
            t1 = time.perf_counter()
            nizk.verify(template, proof)
            t2 = time.perf_counter()
            prove_times.append((t1 - t0) * 1000)
            verify_times.append((t2 - t1) * 1000)
        click.echo(f"{name},prove,{statistics.median(prove_times):.3f},{n}")
        click.echo(f"{name},verify,{statistics.median(verify_times):.3f},{n}")


if __name__ == "__main__":
    main()
