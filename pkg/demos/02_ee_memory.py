"""Exponential-extrapolation memory: weights, thresholds and the inductive update."""

from altascent import EEConfig, EEMemory, acceptable_vectors, threshold, weights

# %% weights for Q=7 under three bases; the threshold sums the r=3 largest
for alpha in (2, 1.7, 1.5):
    cfg = EEConfig(Q=7, r=3, alpha=alpha, arithmetic="int" if alpha == 2 else "real")
    w = [round(v, 4) for v in reversed(weights(cfg))]
    print(f"alpha={alpha}: weights {w}  threshold {threshold(cfg):.4f}  "
          f"acceptable vectors {len(acceptable_vectors(cfg))}")

# %% recording optima one at a time: the newest optimum carries the top weight
mem = EEMemory.fresh(EEConfig(Q=6, r=3), n=4)
history = [[1, 1, 0, 1], [1, 1, 0, 0], [0, 1, 1, 0]]
for x in history:
    mem.record_local_optimum(x)
    print("recorded", x, "-> EE1", mem.ee1, "EEbase", mem.eebase, "ThresholdR", mem.threshold_r)

# %% a value qualifies for the recency threshold only if the r most recent optima all agree
current = [0, 1, 0, 1]  # x2 agrees with all three optima
print("EE of the current values", mem.view(current))
for j, bit in enumerate(current, start=1):
    print(f"x{j}={bit}: meets threshold {mem.meets_recency_threshold(j, bit)}")
