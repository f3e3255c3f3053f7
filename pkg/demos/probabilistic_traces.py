"""
Probabilistic systems: the probability of a trace
=================================================

The coin machine stops with probability one half and loops on 'a' with
probability one half.  Its behaviour value against the trace "n times a,
then stop" is exactly 2^-(n+1); against the infinite trace aaa... the
iterates halve forever, so the true value is 0 and the engine reports
convergence only once the remaining change drops below the tolerance.
"""

import json
import pathlib

from ltbe import (
    FixpointOptions,
    SemiringValue,
    SemiringKind,
    behaviour,
    iterates,
    parse_spec,
    parse_system,
)

DATA = pathlib.Path(__file__).resolve().parent / "data"

coin = parse_system((DATA / "coin.json").read_text())
omega = parse_spec((DATA / "spec_a_omega_prob.json").read_text())


def chain_spec(n):
    """The behaviour "a^n then stop" as an (n+1)-state specification."""
    stop = {"inj": 0, "of": {"atom": "*"}}
    doc = {
        "kind": "prob",
        "stack": ["{*} + {a} * Id"],
        "states": [f"z{i}" for i in range(n, -1, -1)],
        "transitions": {"z0": stop},
    }
    for i in range(1, n + 1):
        doc["transitions"][f"z{i}"] = {
            "inj": 1,
            "of": {"pair": [{"atom": "a"}, {"state": f"z{i-1}"}]},
        }
    return parse_spec(json.dumps(doc))


# ---------------------------------------------------------------------------
# Finite traces: probability halves with every extra 'a'.

print("trace        value")
for n in range(6):
    report = behaviour(coin, chain_spec(n))
    value = report.result.get("c", f"z{n}").payload
    print(f"a^{n} stop    {value:.6f}")

# ---------------------------------------------------------------------------
# The infinite trace: a descending chain of upper bounds 1, 1/2, 1/4, ...

chain = iterates(coin, omega, 10)
print("\niterates against a^omega:", [rel.get("c", "zw").payload for rel in chain])

capped = behaviour(coin, omega, FixpointOptions(max_iterations=12, tolerance=0.0))
print(f"after {capped.iterations} steps: converged={capped.converged} "
      f"(still moving by {capped.final_gap:.2e})")

patient = behaviour(coin, omega, FixpointOptions(max_iterations=100))
print(f"after {patient.iterations} steps: converged={patient.converged} "
      f"value={patient.result.get('c', 'zw').payload:.2e}")

# ---------------------------------------------------------------------------
# Verification with a threshold: once every entry is strictly below the
# bar and cannot climb back, iteration may stop early.

opts = FixpointOptions(threshold=SemiringValue(SemiringKind.PROB, 0.1), tolerance=0.0)
quick = behaviour(coin, omega, opts)
print(f"\nthreshold 0.1 decided after {quick.iterations} steps "
      f"(value {quick.result.get('c', 'zw').payload} is below the bar for good)")
