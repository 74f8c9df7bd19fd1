"""Terms of the untyped lambda calculus as a monad on finite sets.

Binders are nameless, so alpha-equivalent inputs parse to the same value and
substitution never captures.
"""

from __future__ import annotations

import random

from csysmod import Assignment
from csysmod.nominal import lambda_signature, parse_term, render_term, sig_monad

sig = lambda_signature()
monad = sig_monad(sig)

k1 = parse_term("L(x. L(y. V(x)))", sig, "Term", 0)
k2 = parse_term("L(a. L(b. V(a)))", sig, "Term", 0)
print("K written two ways is one value:", k1 == k2, "->", render_term(k1))

# substitute #1 := L(x. #2) into L(y. A(V(y), #1)); the inner #2 stays free
t = monad.parse("L(y. A(V(y), #1))", 1)
f = Assignment.of(2, [monad.wrap(2, parse_term("L(x. #2)", sig, "Term", 2))])
print("bind:", monad.render(monad.bind(f, monad.wrap(1, t)).payload))

print("the first closed terms by size:")
for term in monad.enumerate(0, 5):
    print("   ", monad.render(term.payload))

rng = random.Random(1)
print("a random term over #1, #2:", monad.render(monad.random_term(2, 10, rng).payload))
