# The verification harness: seeded, replayable property suites.
#
# Each suite samples instances deterministically from (seed, suite,
# instance index) and records any violation with enough detail to rerun
# that single instance.  Machine-format reports carry no timing, so a
# given configuration always produces byte-identical output.
#
# The same suites back the command line:
#
#   qaclab verify entanglement-lemma --trials 1000 --seed 1
#   qaclab verify tight-parity3 --format machine

from qaclab.harness import SUITES, emit_report, parse_machine_report, run_suite

for name in SUITES:
    overrides = {} if name == "tight-parity3" else {"trials": 25}
    report = run_suite(name, **overrides)
    flag = "PASS" if report.passed else "FAIL"
    print(f"{name:24s} {flag}  instances={report.instances:4d}  "
          f"{report.wall_time:.3f}s")

print()
report = run_suite("kill-parity", trials=40, seed=11)
machine = emit_report(report, "machine")
print(machine)
assert parse_machine_report(machine) == report
assert emit_report(run_suite("kill-parity", trials=40, seed=11),
                   "machine") == machine
print("machine report round-trips and is byte-deterministic")
