"""Double-pass variant: a first pass gathers Eval/EE statistics, a second pass applies a cutoff."""

from altascent import AAConfig, DoublePassAscent, DoublePassConfig, generate_instance, interpolate_cutoff
from altascent.qubo import QuboProvider

# %% the cutoff interpolates between min, mean and max of the first pass
for F in (0.0, 0.25, 0.5, 0.8, 1.0):
    print(f"F={F}: cutoff {interpolate_cutoff(F, lo=-10, mean=2, hi=30):.1f}")

inst = generate_instance(40, 0.5, 100, seed=5)

# %% version 1 filters on Eval and maximizes EE, version 2 the reverse
for version in (1, 2):
    eng = DoublePassAscent(QuboProvider(inst), AAConfig(max_iter=3000, trace=True), DoublePassConfig(version, F=0.8))
    res = eng.run()
    sizes = [t.extra["list_len"] for t in res.trace if t.extra]
    print(f"version {version}: best {res.best_objective}  optima {res.local_optima_count}  "
          f"mean candidates per second pass {sum(sizes) / len(sizes):.1f}")

# %% walking the candidate list and rescanning the index range choose the same moves
a = DoublePassAscent(QuboProvider(inst), AAConfig(trace=True), DoublePassConfig(1, 0.8, use_list=True))
b = DoublePassAscent(QuboProvider(inst), AAConfig(trace=True), DoublePassConfig(1, 0.8, use_list=False))
a.run(1000)
b.run(1000)
print("identical choices:", [t.k for t in a.trace] == [t.k for t in b.trace])
