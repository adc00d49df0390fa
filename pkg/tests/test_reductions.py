import random

import pytest

from sulcheck import (
    build_distinguishing_family,
    build_figure_fixtures,
    build_scl_reduction,
    build_sdl_reduction,
    check,
    ctl_check,
    parse_ctl,
    parse_formula,
    parse_qbf,
    qbf_eval,
    to_text,
    translate_ctl,
    verify_witness,
)
from sulcheck.errors import QbfError
from sulcheck.generators import random_ctl, random_pointed, random_qbf
from sulcheck.oracles import QbfInstance
from sulcheck.reductions import reduction_atoms
from sulcheck.syntax import Flavor, StratA, StratD, budgets_of

FIG6 = "forall p1 exists p2 : (p1 -> p2)"


def test_sdl_reduction_shape():
    pm, f = build_sdl_reduction(parse_qbf(FIG6))
    m = pm.model
    assert pm.point == "s"
    assert m.states == ("s", "s1", "s2", "s3", "s4")
    expected = {("s", "s")} | {(a, b) for x in ("s1", "s2", "s3", "s4") for a, b in (("s", x), (x, "s"))}
    assert m.edges == expected
    assert m.cost("s", "s") == 2
    assert all(m.cost(a, b) == 1 for a, b in m.all_pairs() if (a, b) != ("s", "s"))
    assert m.extension("p1_1") == {"s1"} and m.extension("p1_0") == {"s3"}
    assert m.extension("p2_1") == {"s2"} and m.extension("p2_0") == {"s4"}
    # the universally quantified variable comes first
    assert isinstance(f, StratD) and f.dual and f.budget == 1


def test_sdl_reduction_matches_shipped_fixture():
    fixture = build_figure_fixtures()["fig6.MPsi"]
    pm, _ = build_sdl_reduction(parse_qbf(FIG6))
    assert fixture.model == pm.model


def test_scl_reduction_shape():
    pm, f = build_scl_reduction(parse_qbf(FIG6))
    m = pm.model
    assert len(m.states) == 5
    assert m.edges == {(x, "s") for x in m.states}
    assert all(m.cost(a, b) == 1 for a, b in m.all_pairs())
    assert {b for kind, b, _ in budgets_of(f) if kind == "a" and b} == {1}
    assert isinstance(f, StratA)


def test_reduction_atoms():
    assert reduction_atoms("x") == ("x_1", "x_0")


@pytest.mark.parametrize(
    "text, value",
    [("exists p : p", True), ("exists p : p & !p", False), ("forall p : p", False), (FIG6, True)],
)
@pytest.mark.parametrize("build", [build_sdl_reduction, build_scl_reduction])
def test_reductions_small(build, text, value):
    q = parse_qbf(text)
    assert qbf_eval(q) is value
    pm, f = build(q)
    v = check(pm, f)
    assert v.value is value
    if v.witness is not None:
        assert verify_witness(pm, f, v.witness)


def test_reduction_needs_variables():
    with pytest.raises(QbfError):
        build_sdl_reduction(QbfInstance((), parse_formula("true")))


@pytest.mark.parametrize("build", [build_sdl_reduction, build_scl_reduction])
def test_reductions_random(build, seed):
    rng = random.Random(seed + 3)
    for _ in range(15):
        q = random_qbf(rng, max_vars=2)
        pm, f = build(q)
        assert check(pm, f).value is qbf_eval(q)


@pytest.mark.slow
@pytest.mark.parametrize("build", [build_sdl_reduction, build_scl_reduction])
def test_reductions_three_variables(build, request):
    if not request.config.getoption("--qbf-large"):
        pytest.skip("three-variable reductions run with --qbf-large")
    rng = random.Random(request.config.getoption("--seed"))
    for _ in range(3):
        q = random_qbf(rng, max_vars=3)
        pm, f = build(q)
        assert check(pm, f).value is qbf_eval(q)


@pytest.mark.parametrize(
    "ctl, flavor, text",
    [
        ("AX p", "sdl", "<d:0> X p"),
        ("A(p U q)", "sul", "<<a,d|0,0>> (p U q)"),
        ("EF p", "sdl", "!<d:0> (false R (!p))"),
        ("EX p", "scl", "!<a:0> X !p"),
        ("AG p", "scl", "<a:0> (false R p)"),
        ("E(p U q)", "sdl", "!<d:0> ((!p) R (!q))"),
        ("EG p", "sul", "!<<a,d|0,0>> (true U (!p))"),
    ],
)
def test_translate_ctl(ctl, flavor, text):
    f = translate_ctl(parse_ctl(ctl), flavor)
    assert to_text(f) == text
    assert parse_formula(text) == f


@pytest.mark.parametrize("flavor", list(Flavor))
def test_translation_soundness(flavor, seed):
    rng = random.Random(seed + 4)
    for _ in range(150):
        pm = random_pointed(rng, max_states=4)
        g = random_ctl(rng, depth=3)
        assert check(pm, translate_ctl(g, flavor)).value is ctl_check(pm.model, pm.point, g), to_text(g)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_family(n):
    small, large = build_distinguishing_family(n)
    assert len(small.model.states) == (n + 1) + (n + 2)
    assert len(large.model.states) == (n + 1) + (n + 3)
    for pm in (small, large):
        m = pm.model
        assert pm.point == "s1"
        assert m.extension("p") == {"t1"}
        assert all((t, t) in m.edges for t in m.states if t.startswith("t"))
        assert all(m.cost(a, b) == 1 for a, b in m.all_pairs())
    f = parse_formula("<d:1> F p")
    v = check(small, f)
    assert v.value and verify_witness(small, f, v.witness)
    assert not check(large, f).value


def test_family_n1_states():
    small, _ = build_distinguishing_family(1)
    assert set(small.model.states) == {"s1", "s2", "t1", "t2", "t3"}


def test_family_rejects_zero():
    with pytest.raises(ValueError):
        build_distinguishing_family(0)


def test_fixtures(figs):
    assert set(figs) == {
        "fig1.M1", "fig1.M2", "fig2.M3", "fig2.M4",
        "fig3.M1", "fig3.M2", "fig3.M3", "fig3.M4", "fig6.MPsi",
    }
    m1 = figs["fig1.M1"].model
    assert (len(m1.states), len(m1.edges)) == (4, 9)
    assert m1.true_atoms("s3") == {"server", "admin"}
    assert m1.true_atoms("s1") == {"error"}
    m4 = figs["fig3.M4"].model
    assert m4.states == ("s",) and m4.edges == {("s", "s")} and m4.holds("p", "s")
    assert len(figs["fig2.M4"].model.edges) == 7
