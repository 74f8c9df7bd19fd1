"""Nominal signatures with one name-sort and their term monads."""

from .enumerate import TermCounter, enumerate_terms, random_term
from .signature import (
    OpDecl,
    Signature,
    SignatureError,
    builtin_signature,
    gat_signature,
    lambda_signature,
    mltt72_signature,
    parse_signature,
    render_signature,
)
from .syntax import *  # noqa: F401,F403
from .syntax import __all__ as _syntax_all
from .term_monad import SigModule, SigMonad, SortModule, sig_module, sig_monad
from .terms import (
    TermError,
    UnboundNameError,
    alpha_normalize,
    free_vars,
    is_nameless,
    parse_raw,
    parse_term,
    render_term,
    sort_of,
    substitute,
    term_size,
    validate_term,
)

__all__ = [
    "TermCounter",
    "enumerate_terms",
    "random_term",
    "OpDecl",
    "Signature",
    "SignatureError",
    "builtin_signature",
    "gat_signature",
    "lambda_signature",
    "mltt72_signature",
    "parse_signature",
    "render_signature",
    "SigModule",
    "SigMonad",
    "SortModule",
    "sig_module",
    "sig_monad",
    "TermError",
    "UnboundNameError",
    "alpha_normalize",
    "free_vars",
    "is_nameless",
    "parse_raw",
    "parse_term",
    "render_term",
    "sort_of",
    "substitute",
    "term_size",
    "validate_term",
    *_syntax_all,
]
