"""
Nondeterministic systems: which traces can a state exhibit?
===========================================================

A labelled transition system is a single branching layer over steps of
shape "stop, or emit a label and continue".  The behaviour matrix tells,
for each system state and each specification state, whether some
resolution of the nondeterminism produces exactly the specification's
trace.  The last section contrasts this with bisimilarity, which is
strictly finer.
"""

import json
import pathlib

from ltbe import behaviour, bisimilarity, common_trace, parse_spec, parse_system

DATA = pathlib.Path(__file__).resolve().parent / "data"


def load(name, spec=False):
    text = (DATA / name).read_text()
    return parse_spec(text) if spec else parse_system(text)


# ---------------------------------------------------------------------------
# One state that may stop or keep looping on 'a'.  It exhibits *both* the
# infinite trace aaa... and every finite trace a^n.

system = load("lts_loop_exit.json")
print("system:", json.dumps(system.to_json()["transitions"], indent=2))

for spec_name in ("spec_a_omega.json", "spec_a_stop.json"):
    spec = load(spec_name, spec=True)
    report = behaviour(system, spec)
    print(f"\nagainst {spec_name} (converged in {report.iterations} steps):")
    print(report.result.to_csv())

# ---------------------------------------------------------------------------
# Traces cannot tell these two apart, bisimilarity can: the second system
# may silently commit to a branch that deadlocks after one more 'a'.

looping = load("pure_loop.json")
committing = load("loop_or_deadlock.json")

trace_rel = common_trace(looping, committing).result
bisim_rel = bisimilarity(looping, committing).result

print("common maximal trace (c vs d):", trace_rel.get("c", "d").payload)
print("bisimilar            (c vs d):", bisim_rel.get("c", "d").payload)
print("-> same linear-time behaviour, different branching-time behaviour")
