"""An access-control system under attack and repair.

A user moves through four states: a login state s0, a failure state s1, a
server s2 and an admin module s3.  A security engineer (the demon) can cut
edges, a helper (the angel) can add them, and we ask what each can enforce.

Run:  python3 demos/access_control.py
"""

from sulcheck import PointedModel, build_figure_fixtures, check, parse_formula, serialize_model, to_text, verify_witness

figs = build_figure_fixtures()
m1 = figs["fig1.M1"].model

print("The system, in the model file format:\n")
print(serialize_model(m1))


def ask(name: str, point: str, text: str) -> None:
    pm = PointedModel(figs[name].model, point)
    f = parse_formula(text)
    v = check(pm, f)
    print(f"  ({name}, {point}) |= {text:<34} {v.value}")
    if v.witness is not None:
        ok = verify_witness(pm, f, v.witness)
        print(f"      strategy for {to_text(f)} ({len(v.witness)} positions, replay ok: {ok})")
        for choice, move in v.trace:
            cut = choice.to_json()["remove"] or choice.to_json()["add"] or "nothing"
            print(f"        update {cut}, traveller moves to {move}")


print("Can the engineer keep users out of the admin module with budget 2 per round?")
for point in m1.states:
    ask("fig1.M1", point, "<d:2> G !admin")

print("\nCan the angel alone force a stuck user to move on?  It can offer an exit,")
print("but it cannot make the traveller take it:")
ask("fig2.M3", "s1", "<a:1> X !error")

print("\nDoes the angel guarantee an exit from the failure state whenever it is entered?")
for point in m1.states:
    ask("fig1.M1", point, "<a:1> G (error -> dia !error)")
print("  At s1 the play starts inside the failure state before the angel has acted,")
print("  so the guarantee holds from every other state and fails at s1 itself.")

print("\nBoth agents together, starting in the admin module of the hardened model:")
ask("fig1.M2", "s3", "<<d|2,2>> F !admin")
ask("fig1.M2", "s3", "<<a,d|2,2>> F !admin")

print("\nAn attacker helped by the angel, against the engineer:")
ask("fig1.M2", "s1", "<<d|2,2>> G !admin")
ask("fig1.M2", "s1", "<<d|2,1>> G !admin")
