"""Replay the ten-variable worked example through the engine.

The example starts from four stored local optima, walks eight scripted moves
of a post-ascent phase, and launches a new ascent once the status counts
reach the trigger.  Every check the replay performs is printed; two of them
compare against published table rows that are internally inconsistent for
x10 (see the README).
"""

from altascent import replay_working_table

report = replay_working_table(strict=False)

# %% EE values and the starred (recency-qualified) variables
print("EE row         ", report.ee_row)
print("starred        ", [f"x{j}" for j in report.starred])

# %% the status counts move by move, and when the trigger fires
print("table counts   ", report.status_counts)
print("engine counts  ", report.engine_counts)
print("trigger at move", report.trigger_move, "holding", f"x{report.held}")

# %% after the conditional optimum the hold is released and a new optimum is recorded
print("new optimum    ", report.new_optimum)
print("post EE row    ", report.post_ee_row)

print()
for name, ok, detail in report.checks:
    print(f"{'ok  ' if ok else 'FAIL'} {name}" + ("" if ok else f"  ({detail})"))
