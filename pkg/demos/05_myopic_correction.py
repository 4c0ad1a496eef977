"""Myopic correction: periodically undo the oldest moves of the current phase."""

from altascent import AAConfig, AlternatingAscent, MCSchedule, MCState, generate_instance
from altascent.qubo import QuboProvider

# %% a small list: after every three adds the oldest surviving move is dropped
mc = MCState(n=10, capacity=8, schedule=MCSchedule(steps=(), tail=(3, 1)))
for k in (4, 5, 4, 6, 7, 8):
    mc.add(k)
    if mc.drop_due():
        print(f"after adding x{k}: drop {mc.drop()}  listed {mc.listed()}")
# x4 was re-added, so its first slot is stale and skipped; x5 is the real oldest move

# %% the engine with schedules A and B
inst = generate_instance(40, 0.5, 100, seed=7)
for schedule in (None, "A", "B"):
    res = AlternatingAscent(QuboProvider(inst), AAConfig(max_iter=4000, mc_schedule=schedule, trace=True)).run()
    drops = sum(t.path == "drop" for t in res.trace)
    print(f"schedule {schedule}: best {res.best_objective}  optima {res.local_optima_count}  drop flips {drops}")
