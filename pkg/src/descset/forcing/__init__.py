"""Finite-condition forcing posets, rank constructions and generic-filter runs."""

from .generic import (
    DenseSpec,
    Transcript,
    alpha_audit,
    alpha_dense,
    alpha_sections,
    antichain_code,
    fin_dense,
    palpha_audit,
    palpha_dense,
    palpha_extract,
    rasiowa_sikorski,
    silver_dense,
    silver_extract,
    silver_target_specs,
    spec_from_json,
    subtree_dense,
    subtree_extract,
    type_one,
    verify_transcript,
)
from .nice import NiceTree, limit_child_rank, nice_tree
from .posets import (
    ALPHA,
    FIN,
    PALPHA,
    SILVER,
    SUBTREE,
    AlphaCondition,
    AlphaPoset,
    BSubU,
    FinCondition,
    FinPoset,
    PAlphaPoset,
    PCondition,
    Poset,
    Sentence,
    SilverCondition,
    SilverPoset,
    Space,
    SubtreeCondition,
    SubtreePoset,
    XinAll,
    XNotinU,
    compatible,
)
from .ranks import alpha_rank, alpha_rank_hat, palpha_rank, palpha_rank_hat
from .sentences import Atom, BigAndNeg, grammar, pi_eval, satisfies, sentence_rank
