"""Single-pass Alternating Ascent on a random instance, checked against brute force."""

from collections import Counter

from altascent import AAConfig, AlternatingAscent, ChoiceConfig, EEConfig, Rule, brute_force, generate_instance
from altascent.qubo import QuboProvider

inst = generate_instance(n=18, density=0.5, coeff_range=100, seed=3)
optimum, _ = brute_force(inst)
print("exact optimum", optimum)

# %% one run per choice rule; events are counted through the on_event hook
for rule in Rule:
    events = Counter()
    cfg = AAConfig(ee=EEConfig(Q=20, r=10), choice=ChoiceConfig(rule=rule), trigger=5, max_iter=3000)
    engine = AlternatingAscent(QuboProvider(inst), cfg, on_event=lambda eng, ev, info: events.update([ev.value]))
    res = engine.run()
    print(f"{rule.value:16s} best {res.best_objective:6d}  optima {res.local_optima_count:4d}  "
          f"launches {res.ascents_launched:4d}  events {dict(events)}")

# %% the trace shows the alternation: ascent flips improve, post-ascent flips give ground
res = AlternatingAscent(QuboProvider(inst), AAConfig(max_iter=60, trace=True)).run()
for t in res.trace[:60]:
    if t.status_event:
        print(t.iter, t.phase, f"x{t.k}" if t.k else "-", t.xo, t.status_event)
