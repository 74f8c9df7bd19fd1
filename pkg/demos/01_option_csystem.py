"""A walk through the C-system of the option monad R(X) = X + {*}.

Contexts are ladders of types: the i-th entry may mention the variables
1..i-1.  Over the option monad a type is either ``*`` or a variable.
"""

from __future__ import annotations

from csysmod import CSystem, Morph, Section, builtin_monad

monad, module = builtin_monad("option")
cs = CSystem(monad, module)

gamma = cs.parse_context("* ; #1")
print("context      ", cs.render_context(gamma))
print("ft           ", cs.render_context(cs.ft(gamma)))

# p : (Gamma, T) -> Gamma forgets the last variable
p = cs.canonical_p(gamma)
print("canonical p  ", [cs.render_term(c) for c in p.comps])

# pulling (* ; #1) back along f : (* ; *) -> (*) substitutes f into the last type
f = Morph(cs.parse_context("* ; *"), cs.ft(gamma), (cs.parse_rterm("*", 2),))
obj, q = cs.pullback(f, gamma)
print("pullback     ", cs.render_context(obj), " q =", [cs.render_term(c) for c in q.comps])

# judgements are sections of p; delta is the judgement of the last variable
print("delta        ", cs.render_section(cs.op_delta(gamma)))

# weakening inserts a variable, substitution cuts one out
s = Section(cs.parse_context("*"), cs.parse_type("#1", 1), cs.parse_rterm("*", 1))
print("judgement s  ", cs.render_section(s))
print("weakened     ", cs.render_section(cs.op_Ttilde(gamma, s)))
j = cs.op_delta(gamma)
print("j[s/2]       ", cs.render_section(cs.op_Stilde(s, j)))
