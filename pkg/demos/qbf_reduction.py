"""Quantified Boolean formulas as edge-cutting games.

Each variable of a QBF gets two leaf states, one for `true` and one for
`false`.  Quantifiers become one-edge moves: an existential variable is
set by the proponent, a universal one by the opponent.  Afterwards the
matrix is read off which leaves are still reachable.  So the checker decides
the QBF, and the brute-force evaluator tells us whether it got it right.

Run:  python3 demos/qbf_reduction.py
"""

import random

from sulcheck import (
    build_scl_reduction,
    build_sdl_reduction,
    check,
    formula_size,
    parse_qbf,
    qbf_eval,
    qbf_to_text,
    serialize_model,
    to_text,
)
from sulcheck.generators import DEFAULT_SEED, random_qbf

q = parse_qbf("forall p1 exists p2 : (p1 -> p2)")
pm, f = build_sdl_reduction(q)
print(f"QBF: {qbf_to_text(q)}")
print("\nDeconstruction model (cut edges to fix truth values):\n")
print(serialize_model(pm.model, pm.point))
print(f"formula ({formula_size(f)} symbols):\n  {to_text(f)}\n")
print(f"qbf_eval: {qbf_eval(q)}   checker: {check(pm, f).value}")

pm, f = build_scl_reduction(q)
print("\nConstruction model (add edges to fix truth values):\n")
print(serialize_model(pm.model, pm.point))
print(f"qbf_eval: {qbf_eval(q)}   checker: {check(pm, f).value}")

print("\nTwenty random instances:")
rng = random.Random(DEFAULT_SEED)
for _ in range(20):
    q = random_qbf(rng, max_vars=2)
    truth = qbf_eval(q)
    sdl = check(*build_sdl_reduction(q)).value
    scl = check(*build_scl_reduction(q)).value
    mark = "ok" if truth == sdl == scl else "MISMATCH"
    print(f"  {qbf_to_text(q):<52} {truth!s:<6} {sdl!s:<6} {scl!s:<6} {mark}")
