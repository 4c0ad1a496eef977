"""Alternating Ascent against the baseline tabu search on small instances with known optima."""

from altascent import AAConfig, AlternatingAscent, TabuConfig, TabuSearch, brute_force, generate_instance
from altascent.qubo import QuboProvider

hits = {"AA": 0, "tabu": 0, "tabu-free": 0}
iters = {name: [] for name in hits}
for seed in range(20):
    inst = generate_instance(18, 0.5, 100, seed)
    optimum, _ = brute_force(inst)
    searches = {
        "AA": AlternatingAscent(QuboProvider(inst), AAConfig()),
        "tabu": TabuSearch(QuboProvider(inst), TabuConfig(seed=seed)),
        "tabu-free": TabuSearch(
            QuboProvider(inst), TabuConfig(seed=seed, tabu_free=True, xo_tolerance=300, tabu_range=60)
        ),
    }
    for name, search in searches.items():
        # step until the optimum is reached, up to 5000 iterations
        best = search.state if name == "AA" else search
        for it in range(1, 5001):
            search.step()
            if best.xo_star == optimum:
                hits[name] += 1
                iters[name].append(it)
                break

for name in hits:
    mean = sum(iters[name]) / max(len(iters[name]), 1)
    print(f"{name:10s} reached the optimum on {hits[name]}/20 instances, mean iterations {mean:.0f}")
