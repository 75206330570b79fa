from .subspace import (
    AuthSecretKey,
    Signature,
    accepting_fraction,
    auth_keygen,
    auth_verify,
    check_auth_params,
    count_accepting_tags,
    verify_tag,
)
from .token import (
    REPRESENTATIONS,
    AuthToken,
    ClassicalSimToken,
    StatevectorToken,
    auth_sign,
    auth_token_gen,
    token_fingerprint,
)

__all__ = [
    "AuthSecretKey",
    "Signature",
    "accepting_fraction",
    "auth_keygen",
    "auth_verify",
    "check_auth_params",
    "count_accepting_tags",
    "verify_tag",
    "REPRESENTATIONS",
    "AuthToken",
    "ClassicalSimToken",
    "StatevectorToken",
    "auth_sign",
    "auth_token_gen",
    "token_fingerprint",
]
