"""Identity-based identification and signatures on top of the trapdoor.

The authority's master key is a Niederreiter key pair.  A user's secret
key is a hash-and-retry signature on their identity string: a low-weight
s whose scrambled syndrome equals hash(identity, j) for the counter j
found during extraction.  Holding s, the user runs the zero-knowledge
rounds against that hashed identifier (identification), or compiles the
rounds into a signature by deriving the challenges from a hash over all
commitments, the identity, the counter, and the message.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from .binmat import BitVector, mat_vec_mul
from .errors import CodeIbiError, ParameterError
from .gf2m import FieldParams
from .mcfs import HashSpec, hash_to_syndrome, mcfs_sign
from .niederreiter import NiedPublicKey, NiedSecretKey, nied_keygen
from .stern import (
    DOMAIN_COMMIT,
    Commitments,
    Response,
    RoundTranscript,
    SternParams,
    SternSecret,
    run_identification,
    stern_commit,
    stern_respond,
    verify_round,
)

__all__ = [
    "DOMAIN_FS",
    "IbiTranscript",
    "IbsSignature",
    "MasterPublicKey",
    "MasterSecretKey",
    "UserCredential",
    "UserSecretKey",
    "derive_identifier",
    "extract_user_key",
    "fs_challenges",
    "ibi_identify",
    "ibs_sign",
    "ibs_verify",
    "master_keygen",
]

DOMAIN_FS = 0x03  # domain separator for derived challenge streams


@dataclass(frozen=True)
class MasterPublicKey:
    nied_pk: NiedPublicKey
    hash_spec: HashSpec
    stern_rounds: int
    commit_domain_sep: int = DOMAIN_COMMIT

    def stern_params(self, rounds: int | None = None) -> SternParams:
        return SternParams(
            self.nied_pk.n,
            self.nied_pk.t,
            self.stern_rounds if rounds is None else rounds,
            self.nied_pk.h_tilde,
            self.commit_domain_sep,
        )


@dataclass(frozen=True)
class MasterSecretKey:
    nied_sk: NiedSecretKey


@dataclass(frozen=True)
class UserSecretKey:
    s: BitVector
    j: int
    w: int  # declared weight of s, bound into the credential
    attempts: int = field(default=0, compare=False)


@dataclass(frozen=True)
class UserCredential:
    """What a prover carries: their secret key plus the system parameters."""

    usk: UserSecretKey
    mpk: MasterPublicKey


@dataclass(frozen=True)
class IbiTranscript:
    """Verifier-side record of one identification session."""

    identity: bytes
    j: int
    w: int
    accepted: bool
    rounds: tuple


def master_keygen(params: FieldParams, t: int, rounds: int, rng: random.Random):
    """Authority setup; returns (MasterPublicKey, MasterSecretKey)."""
    if rounds < 1:
        raise ParameterError("need at least one protocol round")
    pk, sk = nied_keygen(params, t, rng)
    spec = HashSpec(out_bits=pk.n - pk.k)
    return MasterPublicKey(pk, spec, rounds), MasterSecretKey(sk)


def derive_identifier(mpk: MasterPublicKey, identity: bytes, j: int) -> BitVector:
    """Public syndrome a prover must answer for: hash(identity, j)."""
    return hash_to_syndrome(mpk.hash_spec, identity, j)


def extract_user_key(
    msk: MasterSecretKey,
    mpk: MasterPublicKey,
    identity: bytes,
    rng: random.Random,
    retry_cap: int | None = None,
) -> UserSecretKey:
    """Authority-side key issuance: sign the identity string."""
    sig = mcfs_sign(msk.nied_sk, mpk.hash_spec, identity, rng, retry_cap)
    usk = UserSecretKey(sig.x, sig.i, sig.x.weight(), sig.attempts)
    if mat_vec_mul(mpk.nied_pk.h_tilde, usk.s) != derive_identifier(mpk, identity, usk.j):
        raise CodeIbiError("extracted key fails its own identity equation")
    return usk


def ibi_identify(
    usk: UserSecretKey,
    mpk: MasterPublicKey,
    identity: bytes,
    prover_rng: random.Random,
    verifier_rng: random.Random,
    rounds: int | None = None,
) -> IbiTranscript:
    """In-process identification session; mirrors the wire protocol."""
    if usk.w > mpk.nied_pk.t or not 1 <= usk.j <= mpk.hash_spec.counter_max:
        return IbiTranscript(identity, usk.j, usk.w, False, ())
    identifier = derive_identifier(mpk, identity, usk.j)
    params = mpk.stern_params(rounds)
    transcripts, ok = run_identification(
        params,
        SternSecret(usk.s),
        identifier,
        prover_rng,
        verifier_rng,
        weight=usk.w,
    )
    return IbiTranscript(identity, usk.j, usk.w, ok, tuple(transcripts))


def fs_challenges(
    mpk: MasterPublicKey,
    identity: bytes,
    j: int,
    commitments_blob: bytes,
    msg: bytes,
    rounds: int,
) -> list:
    """Derived ternary challenges for the non-interactive variant.

    One candidate byte per challenge, rejecting bytes >= 252, refilling
    from SHA-256 over (identity, j, every commitment, message, block
    counter) with the block counter bumped per refill.  The derivation
    does not hash mpk itself; the commitments already bind its matrix.
    """
    prefix = hashlib.sha256()
    prefix.update(bytes([DOMAIN_FS]))
    prefix.update(len(identity).to_bytes(8, "big"))
    prefix.update(identity)
    prefix.update(j.to_bytes(8, "big"))
    prefix.update(len(commitments_blob).to_bytes(8, "big"))
    prefix.update(commitments_blob)
    prefix.update(len(msg).to_bytes(8, "big"))
    prefix.update(msg)
    out = []
    block = 0
    while len(out) < rounds:
        h = prefix.copy()
        h.update(block.to_bytes(8, "big"))
        for c in h.digest():
            if c < 252:
                out.append(c % 3)
                if len(out) == rounds:
                    break
        block += 1
    return out


@dataclass(frozen=True)
class IbsSignature:
    j: int
    w: int
    commitments: tuple
    challenges: tuple
    responses: tuple


def ibs_sign(
    usk: UserSecretKey,
    mpk: MasterPublicKey,
    identity: bytes,
    msg: bytes,
    rng: random.Random,
    rounds: int | None = None,
) -> IbsSignature:
    """Sign by committing for every round first, then deriving all challenges."""
    k = mpk.stern_rounds if rounds is None else rounds
    params = mpk.stern_params(k)
    secret = SternSecret(usk.s)
    states = []
    coms = []
    for _ in range(k):
        st, com = stern_commit(params, secret, rng)
        states.append(st)
        coms.append(com)
    blob = b"".join(c.c1 + c.c2 + c.c3 for c in coms)
    chs = fs_challenges(mpk, identity, usk.j, blob, msg, k)
    resps = [stern_respond(st, secret, ch) for st, ch in zip(states, chs)]
    return IbsSignature(usk.j, usk.w, tuple(coms), tuple(chs), tuple(resps))


def ibs_verify(mpk: MasterPublicKey, identity: bytes, msg: bytes, sig: IbsSignature) -> bool:
    """Recompute the challenge stream and check every round."""
    try:
        k = len(sig.commitments)
        if k < 1 or len(sig.challenges) != k or len(sig.responses) != k:
            return False
        if sig.w > mpk.nied_pk.t or not 1 <= sig.j <= mpk.hash_spec.counter_max:
            return False
        for com in sig.commitments:
            if len(com.c1) != 32 or len(com.c2) != 32 or len(com.c3) != 32:
                return False
        blob = b"".join(c.c1 + c.c2 + c.c3 for c in sig.commitments)
        if tuple(fs_challenges(mpk, identity, sig.j, blob, msg, k)) != tuple(sig.challenges):
            return False
        identifier = derive_identifier(mpk, identity, sig.j)
        params = mpk.stern_params(k)
        for com, ch, resp in zip(sig.commitments, sig.challenges, sig.responses):
            if not verify_round(params, identifier, com, ch, resp, weight=sig.w):
                return False
        return True
    except CodeIbiError:
        return False
