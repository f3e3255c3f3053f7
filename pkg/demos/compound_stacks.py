"""
Compound type stacks: branching under and over observations
===========================================================

The engine handles any outside-in composition of polynomial layers and
branching layers.  Two classic shapes beyond plain branching-over-steps:

* observation over branching: a nondeterministic automaton is an
  acceptance flag and, per input letter, a *set* of successor states;
* observation over branching over steps: a machine that reads an input,
  branches probabilistically, and emits an output.
"""

import pathlib

from ltbe import FixpointOptions, behaviour, iterates, parse_spec, parse_system

DATA = pathlib.Path(__file__).resolve().parent / "data"

# ---------------------------------------------------------------------------
# Nondeterministic automaton vs the "always accepting" language.  State q1
# can keep choosing its accepting self-loop; q0 is marked non-accepting,
# so no resolution of the nondeterminism matches from there.

automaton = parse_system((DATA / "automaton.json").read_text())
always = parse_spec((DATA / "spec_always_accept.json").read_text())
report = behaviour(automaton, always)
print("can the automaton realize the always-accepting unfolding?")
print(report.result.to_csv())

# ---------------------------------------------------------------------------
# Input/output machine: on input 'go' it continues and emits ok (3/4) or
# err (1/4); on 'halt' it stops.  Against the behaviour tree "every go
# emits ok, halt stops", the iterates shrink by a factor 3/4 per level of
# the tree, so the value is a genuine limit rather than a finite count.

machine = parse_system((DATA / "io_machine.json").read_text())
all_ok = parse_spec((DATA / "spec_io_all_ok.json").read_text())

chain = iterates(machine, all_ok, 8)
print("iterates:", [round(rel.get("m", "z").payload, 5) for rel in chain])

report = behaviour(machine, all_ok, FixpointOptions(max_iterations=150))
print(f"converged={report.converged} after {report.iterations} steps, "
      f"value={report.result.get('m', 'z').payload:.2e}")
print("(probability mass leaks into 'err' at every level, so the tree "
      "where every input is answered with ok has probability 0)")
