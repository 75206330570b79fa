from .programs import (
    PROGRAM_FACTORIES,
    SHIPPED_TABLES,
    ProgramSpec,
    collapse_program,
    constant_program,
    get_program,
    identity_r_program,
    identity_x_program,
    load_program,
    load_shipped_table,
    parse_table,
    r_mod_4_program,
    shipped_table_path,
)
from .scheme import (
    BOTTOM,
    EntropyProfile,
    GuardedProgram,
    ObfHandle,
    Reject,
    guarded_eval,
    min_entropy,
    otp_keygen,
    otp_token_eval,
    otp_token_gen,
)

__all__ = [
    "PROGRAM_FACTORIES",
    "SHIPPED_TABLES",
    "ProgramSpec",
    "collapse_program",
    "constant_program",
    "get_program",
    "identity_r_program",
    "identity_x_program",
    "load_program",
    "load_shipped_table",
    "parse_table",
    "r_mod_4_program",
    "shipped_table_path",
    "BOTTOM",
    "EntropyProfile",
    "GuardedProgram",
    "ObfHandle",
    "Reject",
    "guarded_eval",
    "min_entropy",
    "otp_keygen",
    "otp_token_eval",
    "otp_token_gen",
]
