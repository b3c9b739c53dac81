"""Decision diagrams with five elimination rules, plus a symbolic epistemic
model checker, puzzle benchmark generators and an HTTP service around them."""

__version__ = "0.1.0"

from .dd import (
    And,
    Atom,
    BoolFormula,
    ConfigError,
    DdError,
    DdManager,
    EliminationRule,
    ManagerMismatchError,
    NodeRef,
    Not,
    OrderingError,
    ResourceLimitError,
    Top,
    UnsupportedOperationError,
    Vocabulary,
    VocabularyError,
    big_and,
    big_or,
    big_xor,
    bot,
    implies,
    is_isomorphic,
    or_,
    variant_via_t0,
    xor_,
)
from .epistemic import (
    Announce,
    InvalidSceneError,
    KnowledgeStructure,
    Knows,
    Scene,
    ValidationError,
    announce_whether,
    knows_whether,
)
from .kripke import KripkeModel, ks_to_kripke

__all__ = [name for name in dir() if not name.startswith("_")]
