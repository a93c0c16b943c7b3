
# This dictionary specifies the default parameters of every ant colony variant. Per variant it lists the pheromone weight alpha, the heuristic weight beta, the evaporation rate rho (0<rho<1), the deposit constant q and the initial pheromone distribution ("constant", "inverse-distance" or "adpi"). Baseline evaporation is fixed at the midpoint of [0.1,0.4) for reproducibility. Ant count and iterations come from the config label (name-ants-iterations).

colonyparams = {
    "AS":      {"alpha": 1.0, "beta": 3.0, "rho": 0.25, "q": 2.0, "init": "constant"},
    "EliteAS": {"alpha": 1.0, "beta": 3.0, "rho": 0.25, "q": 2.0, "init": "constant"},
    "MMAS":    {"alpha": 1.0, "beta": 3.0, "rho": 0.25, "q": 2.0, "init": "constant"},
    "PFACO":   {"alpha": 1.0, "beta": 3.0, "rho": 0.2,  "q": 2.0, "init": "adpi"}
    }

# Benchmark protocol: per-run wall time cut-off in seconds, number of random instances per dataset, repeats (seeds) per instance and the significance level of the Mann-Whitney U comparisons.

benchsettings = {
    "timeout_seconds": 120.0,
    "n_instances": 100,
    "repeats": 1,
    "significance": 0.05
    }
