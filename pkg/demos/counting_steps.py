"""One edge per round is a clock.

A chain of n+1 states leads to a fan of sinks, and only the first sink is
marked p.  Cutting one edge per round, the demon has n+1 rounds before the
traveller leaves the chain.  That is enough to prune n+1 wrong sinks, so the
model with n+2 sinks is winnable and the one with n+3 sinks is not.

Run:  python3 demos/counting_steps.py
"""

import time

from sulcheck import build_distinguishing_family, check, parse_formula

f = parse_formula("<d:1> F p")
for n in range(1, 5):
    small, large = build_distinguishing_family(n)
    start = time.perf_counter()
    a, b = check(small, f), check(large, f)
    elapsed = time.perf_counter() - start
    print(f"n={n}: {n + 2} sinks -> {a.value!s:<5}  {n + 3} sinks -> {b.value!s:<5}  ({elapsed:.2f} s)")
    if n == 1:
        print("      the demon's plan:")
        for choice, move in a.trace:
            print(f"        cut {choice.to_json()['remove']}, traveller moves to {move}")
