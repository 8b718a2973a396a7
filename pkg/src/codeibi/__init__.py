"""Identity-based identification and signatures from binary Goppa codes.

The pieces, bottom up: arithmetic in GF(2^m) and its polynomial ring,
bit vectors and matrices over GF(2), Goppa codes with an algebraic
decoder, trapdoor encryption and counter-based signatures on top of
them, a three-pass zero-knowledge identification protocol, the
identity-based layer tying the two together, an empirical attack
harness, and a wire format plus CLI.
"""

from .binmat import (
    BitMatrix,
    BitVector,
    Permutation,
    apply_inverse_permutation,
    apply_permutation,
    gaussian_solve,
    mat_invert,
    mat_mul,
    mat_rank,
    mat_vec_mul,
    perm_matrix,
    permute_columns,
    random_nonsingular,
    random_permutation,
)
from .errors import (
    ChannelError,
    CodeIbiError,
    CostGuard,
    DimensionMismatch,
    Inconsistent,
    MalformedEnvelope,
    NotInvertible,
    ParameterError,
    ProtocolViolation,
    RangeError,
    RetryLimitExceeded,
    Singular,
    StateReuse,
    TruncatedInput,
    Undecodable,
    VersionMismatch,
    WeightError,
    ZeroInverse,
    ZeroOperand,
)
from .gf2m import (
    FieldParams,
    Gf2mPoly,
    field_inv,
    field_mul,
    field_pow,
    is_irreducible,
    least_irreducible,
    poly_add,
    poly_divmod,
    poly_eval,
    poly_ext_gcd,
    poly_inv_mod,
    poly_mod,
    poly_mul,
    poly_sqrt_mod,
    random_irreducible,
)
from .goppa import (
    GoppaCode,
    binary_syndrome,
    build_goppa,
    code_from_poly,
    patterson_decode,
    syndrome_bits,
    syndrome_poly,
)
from .harness import (
    CheatStrategy,
    CostEstimate,
    GameConfig,
    GameResult,
    brute_force_decode,
    cheat_commit,
    cheat_respond,
    distinguish_from_random,
    estimate_costs,
    impersonation_game,
    isd_success_prob,
    prange_attempt,
    prange_isd,
    strategy_acceptance_set,
)
from .ibi import (
    IbiTranscript,
    IbsSignature,
    MasterPublicKey,
    MasterSecretKey,
    UserCredential,
    UserSecretKey,
    derive_identifier,
    extract_user_key,
    fs_challenges,
    ibi_identify,
    ibs_sign,
    ibs_verify,
    master_keygen,
)
from .mcfs import (
    HashSpec,
    McfsSignature,
    hash_to_syndrome,
    mcfs_sign,
    mcfs_verify,
)
from .niederreiter import (
    NiedPublicKey,
    NiedSecretKey,
    nied_decrypt,
    nied_encrypt,
    nied_keygen,
)
from .stern import (
    Commitments,
    Response,
    RoundTranscript,
    SternParams,
    SternSecret,
    draw_challenge,
    encode_perm,
    rounds_for_security,
    run_identification,
    stern_commit,
    stern_respond,
    verify_round,
)
from .wirecli import (
    CodeParams,
    VerifierServer,
    decode,
    encode,
    main,
    read_envelope,
    run_prover,
    write_envelope,
)

__version__ = "0.1.0"
