"""Tactic prover, goto-program translator and session protocol."""

from ._ootp import (
    CommandError,
    ImpSyntaxError,
    ParseError,
    ProofError,
    ScriptSyntaxError,
    Server,
    Session,
    TacticSyntaxError,
    check_equiv,
    normalize_sequent,
    prove,
    run,
    run_script,
    translate,
)

__all__ = [
    "CommandError",
    "ImpSyntaxError",
    "ParseError",
    "ProofError",
    "ScriptSyntaxError",
    "Server",
    "Session",
    "TacticSyntaxError",
    "check_equiv",
    "normalize_sequent",
    "prove",
    "run",
    "run_script",
    "translate",
]
