"""Acceptance criteria, one test per criterion.

Each criterion computes a JSON-serializable record of everything it checked.
Criterion 8 recomputes criteria 1 to 7 and compares the serialized records
byte for byte, across two runs and with memoization switched off.  Timings
are kept out of the records.
"""

import itertools
import json
import random
import time

import pytest

from golden import GOLDEN
from sulcheck import (
    CheckerConfig,
    Flavor,
    PointedModel,
    QbfInstance,
    brute_force_next,
    brute_submodels,
    brute_supermodels,
    brute_updates,
    build_distinguishing_family,
    build_figure_fixtures,
    build_scl_reduction,
    build_sdl_reduction,
    check,
    ctl_check,
    enumerate_submodels,
    enumerate_supermodels,
    enumerate_updates,
    formula_size,
    is_nnf,
    parse_formula,
    qbf_eval,
    qbf_to_text,
    to_nnf,
    to_text,
    translate_ctl,
    verify_witness,
)
from sulcheck.generators import DEFAULT_SEED, all_models, random_ctl, random_formula, random_pointed, random_qbf
from sulcheck.oracles import EXISTS, FORALL
from sulcheck.syntax import Iff, StratA, StratD, StratU, subformulas

MEMO_ON = CheckerConfig()
MEMO_OFF = CheckerConfig(memoization=False)

QBF_CORPUS = [
    "p1",
    "!p1",
    "p1 | !p1",
    "p1 & !p1",
    "p1 -> p2",
    "p1 <-> p2",
    "p1 & p2",
    "p1 | p2",
    "!(p1 & p2)",
    "!p1 & !p2",
    "p1 <-> !p2",
    "(p1 | p2) & (!p1 | !p2)",
    "(p1 -> p2) & (p2 -> p1)",
    "p1 & (p2 | !p2)",
    "(p1 & p2) | (!p1 & !p2)",
    "!(p1 -> p2)",
    "p2 -> p1 & p2",
    "(p1 | p2) -> p1",
    "!(p1 <-> p2) | p1",
    "(p1 -> !p2) & (p1 | p2)",
]


def _prefixes(variables):
    for order in itertools.permutations(variables):
        for quants in itertools.product((FORALL, EXISTS), repeat=len(order)):
            yield tuple(zip(quants, order))


def qbf_instances(seed: int = DEFAULT_SEED) -> list[QbfInstance]:
    out = []
    for text in QBF_CORPUS:
        matrix = parse_formula(text)
        variables = sorted({g.name for g in subformulas(matrix) if hasattr(g, "name")})
        out.extend(QbfInstance(prefix, matrix) for prefix in _prefixes(variables))
    rng = random.Random(seed)
    out.extend(random_qbf(rng, max_vars=2) for _ in range(50))
    return out


def _verdict(pm, f, cfg):
    return check(pm, f, cfg).to_json(include_stats=False)


# -- the criteria, as record builders -------------------------------------------------


def criterion_1(cfg=MEMO_ON):
    figs = build_figure_fixtures()
    rows = []
    for name, point, text, expected in GOLDEN:
        pm = PointedModel(figs[name].model, point)
        start = time.perf_counter()
        verdict = _verdict(pm, parse_formula(text), cfg)
        elapsed = time.perf_counter() - start
        rows.append({"model": name, "point": point, "formula": text, "expected": expected,
                     "verdict": verdict, "fast": elapsed < 5.0})
    return {"rows": rows}


def criterion_2(cfg=MEMO_ON):
    f = parse_formula("<d:1> F p")
    rows = []
    for n in (1, 2):
        small, large = build_distinguishing_family(n)
        for label, pm, expected in ((f"M{n + 2}", small, True), (f"M{n + 3}", large, False)):
            start = time.perf_counter()
            verdict = _verdict(pm, f, cfg)
            rows.append({"n": n, "model": label, "expected": expected, "verdict": verdict,
                         "fast": time.perf_counter() - start < 30.0})
    return {"rows": rows}


def criterion_3(cfg=MEMO_ON):
    rows = []
    for q in qbf_instances():
        expected = qbf_eval(q)
        row = {"qbf": qbf_to_text(q), "expected": expected}
        for flavor, build in (("sdl", build_sdl_reduction), ("scl", build_scl_reduction)):
            pm, f = build(q)
            row[flavor] = _verdict(pm, f, cfg)
        rows.append(row)
    return {"rows": rows}


def criterion_4(cfg=MEMO_ON):
    rng = random.Random(DEFAULT_SEED + 4)
    disagreements = []
    digest = []
    for i in range(500):
        pm = random_pointed(rng, max_states=4)
        g = random_ctl(rng, depth=3)
        expected = ctl_check(pm.model, pm.point, g)
        got = [check(pm, translate_ctl(g, flavor), cfg).value for flavor in Flavor]
        digest.append(int(expected))
        if any(v != expected for v in got):
            disagreements.append({"case": i, "ctl": to_text(g), "expected": expected, "got": got})
    return {"cases": 500, "truth": "".join(map(str, digest)), "disagreements": disagreements}


def criterion_5(cfg=MEMO_ON):
    rng = random.Random(DEFAULT_SEED + 5)
    disagreements = []
    digest = []
    for i in range(200):
        pm = random_pointed(rng, max_states=2)
        flavor = rng.choice(list(Flavor))
        f = random_formula(rng, flavor, depth=3, max_budget=2, next_only=True)
        oracle = brute_force_next(pm, f, max_states=2, max_budget=2)
        got = check(pm, f, cfg).value
        digest.append(int(oracle))
        if oracle != got:
            disagreements.append({"case": i, "formula": to_text(f), "oracle": oracle, "check": got})
    return {"cases": 200, "truth": "".join(map(str, digest)), "disagreements": disagreements}


def criterion_6(cfg=MEMO_ON):
    rng = random.Random(DEFAULT_SEED + 6)
    failures = []
    iff_over_bound = 0
    digest = []
    for i in range(1000):
        pm = random_pointed(rng, max_states=3)
        flavor = rng.choice(list(Flavor))
        # the size bound is stated for the connectives that expand linearly;
        # every fourth formula also uses <-> and is checked for the rest
        with_iff = i % 4 == 3
        connectives = ("not", "and", "or", "implies", "iff") if with_iff else ("not", "and", "or", "implies")
        f = random_formula(rng, flavor, depth=3, connectives=connectives)
        g = to_nnf(f)
        raw = check(pm, f, CheckerConfig(memoization=cfg.memoization, normalize=False)).value
        normal = check(pm, g, cfg).value
        digest.append(int(normal))
        problems = []
        if not is_nnf(g) or to_nnf(g) != g:
            problems.append("idempotence")
        if raw != normal:
            problems.append("semantics")
        over = formula_size(g) > 2 * formula_size(f) + 1
        if over and any(isinstance(x, Iff) for x in subformulas(f)):
            iff_over_bound += 1
        elif over:
            problems.append("size")
        if problems:
            failures.append({"case": i, "formula": to_text(f), "problems": problems})
    return {"cases": 1000, "truth": "".join(map(str, digest)), "failures": failures,
            "iff_cases_over_bound": iff_over_bound}


def criterion_7(cfg=MEMO_ON):
    def pairs(es):
        return es.sorted()

    discrepancies = []
    models = 0
    for m in all_models(max_states=3):
        models += 1
        for n in range(4):
            if [pairs(a) for a, _ in enumerate_submodels(m, n)] != brute_submodels(m, n):
                discrepancies.append({"model": models, "relation": "sub", "budget": n})
            if [pairs(a) for a, _ in enumerate_supermodels(m, n)] != brute_supermodels(m, n):
                discrepancies.append({"model": models, "relation": "super", "budget": n})
            for k in range(4):
                got = [(pairs(u.additions), pairs(u.removals)) for u in enumerate_updates(m, n, k)]
                if got != brute_updates(m, n, k):
                    discrepancies.append({"model": models, "relation": "update", "budgets": [n, k]})
    return {"models": models, "discrepancies": discrepancies}


BUILDERS = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7}
_CACHE: dict = {}


def record(n: int) -> dict:
    if n not in _CACHE:
        _CACHE[n] = BUILDERS[n]()
    return _CACHE[n]


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _line(report, n: int, ok: bool, detail: str) -> None:
    report(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


# -- tests ------------------------------------------------------------------------------


def test_criterion_1_golden_verdicts(report):
    rows = record(1)["rows"]
    wrong = [r for r in rows if r["verdict"]["value"] != r["expected"]]
    slow = [r for r in rows if not r["fast"]]
    ok = not wrong and not slow
    detail = f"{len(rows) - len(wrong)}/{len(rows)} verdicts as expected, {len(slow)} over 5 s"
    if wrong:
        detail += "; differing: " + "; ".join(f"{r['model']}@{r['point']} {r['formula']}" for r in wrong)
    _line(report, 1, ok, detail)
    assert not slow
    assert not wrong, detail


def test_criterion_2_distinguishing_family(report):
    rows = record(2)["rows"]
    ok = all(r["verdict"]["value"] == r["expected"] and r["fast"] for r in rows)
    _line(report, 2, ok, ", ".join(f"n={r['n']} {r['model']}={r['verdict']['value']}" for r in rows))
    assert ok


def test_criterion_3_qbf_reductions(report):
    start = time.perf_counter()
    rows = record(3)["rows"]
    elapsed = time.perf_counter() - start
    bad = [r for r in rows if r["sdl"]["value"] != r["expected"] or r["scl"]["value"] != r["expected"]]
    ok = not bad and elapsed < 600
    _line(report, 3, ok, f"{len(rows)} instances x 2 logics, {len(bad)} disagreements")
    assert ok, bad[:5]


def test_criterion_4_ctl_embedding(report):
    rec = record(4)
    ok = not rec["disagreements"]
    _line(report, 4, ok, f"{rec['cases']} instances x 3 logics, {len(rec['disagreements'])} disagreements")
    assert ok, rec["disagreements"][:5]


def test_criterion_5_oracle_equivalence(report):
    rec = record(5)
    ok = not rec["disagreements"]
    _line(report, 5, ok, f"{rec['cases']} instances, {len(rec['disagreements'])} disagreements")
    assert ok, rec["disagreements"][:5]


def test_criterion_6_nnf(report):
    rec = record(6)
    ok = not rec["failures"]
    _line(report, 6, ok, f"{rec['cases']} instances, {len(rec['failures'])} failures "
                         f"({rec['iff_cases_over_bound']} formulas with <-> exceed the size bound)")
    assert ok, rec["failures"][:5]


def test_criterion_7_update_completeness(report):
    rec = record(7)
    ok = not rec["discrepancies"]
    _line(report, 7, ok, f"{rec['models']} models, budgets 0..3, {len(rec['discrepancies'])} discrepancies")
    assert ok, rec["discrepancies"][:5]


def test_criterion_8_determinism(report):
    differing = []
    for n, build in BUILDERS.items():
        first = _dump(record(n))
        if _dump(build(MEMO_ON)) != first:
            differing.append(f"{n} (rerun)")
        if _dump(build(MEMO_OFF)) != first:
            differing.append(f"{n} (memo off)")
    ok = not differing
    _line(report, 8, ok, "criteria 1-7 byte-identical across reruns and memo on/off"
          if ok else "differences in " + ", ".join(differing))
    assert ok


def _existential(f) -> bool:
    g = to_nnf(f)
    if not isinstance(g, (StratD, StratA, StratU)) or g.dual:
        return False
    return not (isinstance(g, StratU) and not g.coalition)


def test_criterion_9_witness_soundness(report):
    figs = build_figure_fixtures()
    cases = []
    for name, point, text, _ in GOLDEN:
        cases.append((PointedModel(figs[name].model, point), parse_formula(text)))
    for n in (1, 2):
        for pm in build_distinguishing_family(n):
            cases.append((pm, parse_formula("<d:1> F p")))
    for q in qbf_instances():
        cases.extend([build_sdl_reduction(q), build_scl_reduction(q)])
    checked = rejected = 0
    for pm, f in cases:
        if not _existential(f):
            continue
        v = check(pm, f)
        if not v.value:
            continue
        checked += 1
        if v.witness is None or not verify_witness(pm, f, v.witness):
            rejected += 1
    ok = rejected == 0 and checked > 0
    _line(report, 9, ok, f"{checked} true existential verdicts, {rejected} witnesses rejected")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
