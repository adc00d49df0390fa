"""Worked-example verdicts shared by the unit and acceptance suites."""

# (fixture, point, formula, expected)
GOLDEN = [
    ("fig1.M1", "s0", "<d:2> G !admin", True),
    ("fig1.M1", "s3", "<d:2> G !admin", False),
    ("fig2.M3", "s1", "<a:1> X !error", False),
    ("fig1.M1", "s1", "<a:1> G (error -> dia !error)", True),
    ("fig1.M2", "s3", "<<d|2,2>> F !admin", False),
    ("fig1.M2", "s3", "<<a,d|2,2>> F !admin", True),
    ("fig1.M2", "s1", "<<d|2,2>> G !admin", False),
    ("fig1.M2", "s1", "<<d|2,1>> G !admin", True),
    ("fig3.M1", "s", "<d:1> X p", True),
    ("fig3.M2", "s", "<d:1> X p", False),
    ("fig3.M3", "s", "<a:1> X [a:0] X !p", True),
    ("fig3.M4", "s", "<a:1> X [a:0] X !p", False),
]

# verdicts the formal semantics gives that differ from the expected values above
SEMANTIC_VALUE = {("fig1.M1", "s1", "<a:1> G (error -> dia !error)"): False}
