"""Census of finite groupoids satisfying Bol-Moufang type identities."""

from .terms import (Identity, Prod, Var, evaluate, evaluate_partial, format_identity,
                    free_variables, holds, is_bol_moufang_type, mirror, normalize_variables,
                    parse_identity)
from .groupoid import (Groupoid, PartialGroupoid, Permutation, apply_iso, canonical_index,
                       from_index, is_associative, is_quasigroup, opposite, to_index)

__version__ = "0.1.0"
