"""C-systems CC(R, LM) of a monad on finite sets and a left module over it.

The package provides the monad and module interfaces, term monads of
nominal signatures, the C-system operations, and checkers for subsystems
and regular congruences given as finite judgement sets.
"""

from .congruence import (
    EqDB,
    Quotient,
    Relation,
    TermEq,
    TypeEq,
    build_sim,
    build_simeq,
    check_congruence,
    check_regularity,
    close_with_equations,
    diagonal_eqdb,
    eqsets_from_relations,
    quotient,
    restrict_eqdb,
)
from .csystem import EMPTY, Context, CSystem, CSystemError, Morph, Section
from .monad import (
    ArityError,
    Assignment,
    LMTerm,
    Module,
    Monad,
    RTerm,
    SelfModule,
    builtin_monad,
    collapse_s,
    module_product,
    module_tagged_union,
    subst_collapse,
    weaken_t,
)
from .subsystem import (
    Bounds,
    Checker,
    CheckReport,
    JudgementDB,
    check_subsystem,
    close,
    enumerate_contexts,
    enumerate_sections,
    epsilon_db,
    hom_membership,
)

__version__ = "0.1.0"

__all__ = [
    "EMPTY",
    "Context",
    "CSystem",
    "CSystemError",
    "Morph",
    "Section",
    "EqDB",
    "Quotient",
    "Relation",
    "TermEq",
    "TypeEq",
    "build_sim",
    "build_simeq",
    "check_congruence",
    "check_regularity",
    "close_with_equations",
    "diagonal_eqdb",
    "eqsets_from_relations",
    "quotient",
    "restrict_eqdb",
    "ArityError",
    "Assignment",
    "LMTerm",
    "Module",
    "Monad",
    "RTerm",
    "SelfModule",
    "builtin_monad",
    "collapse_s",
    "module_product",
    "module_tagged_union",
    "subst_collapse",
    "weaken_t",
    "Bounds",
    "Checker",
    "CheckReport",
    "JudgementDB",
    "check_subsystem",
    "close",
    "enumerate_contexts",
    "enumerate_sections",
    "epsilon_db",
    "hom_membership",
]
