"""Identify two type constants U and U' and look at the quotient.

The generators are the contexts (U), (U') and the equation |- U = U'.
Closing under the rules and the equality conditions gives a regular
congruence whose classes merge every context differing only in U vs U'.
"""

from __future__ import annotations

from csysmod import Bounds, CSystem, check_congruence, check_regularity, close_with_equations, quotient
from csysmod.judgement_io import parse_judgements
from csysmod.nominal import gat_signature, sig_module, sig_monad

sig = gat_signature([("U", 0), ("U'", 0)])
monad = sig_monad(sig)
cs = CSystem(monad, sig_module(sig, monad))
bounds = Bounds(4, 4)

gens, eqs = parse_judgements(cs, "ctx: U\nctx: U'\ntypeeq: |- U = U'\n")
db, eq, _ = close_with_equations(cs, gens.contexts, gens.sections, eqs.type_eqs, eqs.term_eqs, bounds)
print(f"closed: {len(db.contexts)} contexts, {len(db.sections)} judgements, "
      f"{len(eq.type_eqs)} type and {len(eq.term_eqs)} term equalities")
print("congruence:", check_congruence(cs, db, eq, bounds).verdict)
print("regularity:", check_regularity(cs, db, eq, bounds).verdict)

q = quotient(cs, db, eq, bounds)
for line in q.lines(cs):
    if not line.startswith("  member") and not line.startswith("J"):
        print(line)
