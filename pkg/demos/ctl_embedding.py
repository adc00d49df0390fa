"""CTL lives inside every strategic logic at budget zero.

With a zero budget nobody can change the graph, so the strategic operators
talk about the traveller's paths alone.  Universal CTL operators map
directly.  Existential ones go through their duals.

Run:  python3 demos/ctl_embedding.py
"""

import random

from sulcheck import Flavor, check, ctl_check, parse_ctl, to_text, translate_ctl
from sulcheck.generators import DEFAULT_SEED, random_ctl, random_pointed

for text in ("AX p", "EX p", "A(p U q)", "E(p U q)", "AG p", "EF p", "EG (p & !q)"):
    g = parse_ctl(text)
    print(f"{text:<14}", "   ".join(f"{fl.value}: {to_text(translate_ctl(g, fl))}" for fl in (Flavor.SDL, Flavor.SUL)))

rng = random.Random(DEFAULT_SEED)
agree = total = 0
for _ in range(200):
    pm = random_pointed(rng, max_states=4)
    g = random_ctl(rng, depth=3)
    expected = ctl_check(pm.model, pm.point, g)
    for fl in Flavor:
        total += 1
        agree += check(pm, translate_ctl(g, fl)).value == expected
print(f"\nlabelling checker vs translated formulas: {agree}/{total} agree")
