"""Bounded closures of the epsilon family over the option monad.

Each 0/1 sequence picks which of the judgements (*, 1, ..., n+1 |- n+2 : *)
to add as generators.  Comparing closures within bounds is evidence only.
A 1 at position 0 derives the generator at position 1 by two weakenings and
a cut, so 10.. and 11.. give the same closure.  Starting from position 1 no
such derivation shows up within the bounds tried here (max_len up to 7).
"""

from __future__ import annotations

from csysmod import Bounds, CSystem, builtin_monad, check_subsystem, close, epsilon_db

cs = CSystem(*builtin_monad("option"))
bounds = Bounds(5, 6)

closures = {}
for bits in ["0000", "1000", "1111", "0100", "0111", "0010"]:
    db, _ = close(cs, *epsilon_db(bits), bounds)
    closures[bits] = db
    ok = check_subsystem(cs, db, bounds).ok
    print(f"{bits}: {len(db.contexts):4d} contexts {len(db.sections):5d} judgements  check {'pass' if ok else 'fail'}")

print()
for a, b in [("1000", "1111"), ("0100", "0111"), ("1000", "0100"), ("0100", "0010")]:
    x, y = closures[a], closures[b]
    diff = len(x.contexts ^ y.contexts) + len(x.sections ^ y.sections)
    print(f"{a} vs {b}: symmetric difference {diff}")
print("(bounded evidence, not a proof)")
