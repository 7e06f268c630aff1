#include "awh/config.hpp"

namespace awh {

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      {"normal-beta6", "AWH on the 2-d normal benchmark, beta = 6, 50 replicates of 1e5 iterations",
       R"json({
  "description": "AWH, normal linear limit state n=2 beta=6",
  "model": {"name": "normal", "n": 2, "beta": 6.0, "s": 0.5},
  "method": {"name": "awh", "iterations": 100000},
  "ladder": {"lambda_step": 0.1, "m_finite": 61},
  "run": {"seed": 1},
  "replication": {"replicates": 50, "reference": 9.865876450377e-10,
                  "reference_source": "exact Phi(-6)"},
  "output": {"directory": "out/normal-beta6"}
})json"},
      {"normal-beta6-subset",
       "Subset simulation on the normal benchmark, R = 1e4, p0 = 0.1, 50 replicates",
       R"json({
  "description": "Subset simulation, normal linear limit state n=2 beta=6",
  "model": {"name": "normal", "n": 2, "beta": 6.0, "s": 0.5},
  "method": {"name": "subset", "population": 10000, "p0": 0.1, "chain_steps": 10,
             "max_levels": 30},
  "run": {"seed": 1},
  "replication": {"replicates": 50, "reference": 9.865876450377e-10,
                  "reference_source": "exact Phi(-6)"},
  "output": {"directory": "out/normal-beta6-subset"}
})json"},
      {"fbm-L200", "AWH on the 1000-fiber bundle at load 200, 2e5 iterations",
       R"json({
  "description": "AWH, fiber bundle N=1000 L=200",
  "model": {"name": "fbm", "n_fibers": 1000, "kappa": 1.0, "load": 200.0},
  "method": {"name": "awh", "iterations": 200000},
  "ladder": {"lambda_step": 1.0, "m_finite": 61},
  "run": {"seed": 1},
  "replication": {"replicates": 10, "reference": 1.4e-13,
                  "reference_source": "published 2e7-iteration AWH run"},
  "output": {"directory": "out/fbm-L200"}
})json"},
      {"fbm-L220", "AWH on the 1000-fiber bundle at load 220, 5e5 iterations, 10 replicates",
       R"json({
  "description": "AWH, fiber bundle N=1000 L=220",
  "model": {"name": "fbm", "n_fibers": 1000, "kappa": 1.0, "load": 220.0},
  "method": {"name": "awh", "iterations": 500000},
  "ladder": {"lambda_step": 1.0, "m_finite": 61},
  "run": {"seed": 1},
  "replication": {"replicates": 10, "reference": 4.8e-6,
                  "reference_source": "published 5e7-iteration AWH run"},
  "output": {"directory": "out/fbm-L220"}
})json"},
      {"fbm-L220-subset",
       "Subset simulation on the bundle at load 220, R = 1e4, 100 steps per seed, 10 replicates",
       R"json({
  "description": "Subset simulation, fiber bundle N=1000 L=220",
  "model": {"name": "fbm", "n_fibers": 1000, "kappa": 1.0, "load": 220.0},
  "method": {"name": "subset", "population": 10000, "p0": 0.1, "chain_steps": 100,
             "max_levels": 30},
  "run": {"seed": 1},
  "replication": {"replicates": 10, "reference": 4.8e-6,
                  "reference_source": "published 5e7-iteration AWH run"},
  "output": {"directory": "out/fbm-L220-subset"}
})json"},
      {"fig2", "Normal benchmark with weight-histogram snapshots from 100 to 1e5 iterations",
       R"json({
  "description": "Histogram and curve convergence on the normal benchmark",
  "model": {"name": "normal", "n": 2, "beta": 6.0, "s": 0.5},
  "method": {"name": "awh", "iterations": 100000},
  "ladder": {"lambda_step": 0.1, "m_finite": 61},
  "run": {"seed": 1,
          "snapshots": [100, 500, 1000, 2000, 5000, 10000, 20000, 50000, 100000]},
  "output": {"directory": "out/fig2"}
})json"},
      {"fig3-awh", "Bundle at load 200, AWH curve from 2e5 iterations with histogram snapshots",
       R"json({
  "description": "AWH failure curve for the fiber bundle, N=1000 L=200",
  "model": {"name": "fbm", "n_fibers": 1000, "kappa": 1.0, "load": 200.0},
  "method": {"name": "awh", "iterations": 200000},
  "ladder": {"lambda_step": 1.0, "m_finite": 61},
  "run": {"seed": 1, "snapshots": [20000, 50000, 100000, 200000]},
  "output": {"directory": "out/fig3-awh"}
})json"},
      {"fig3-subset", "Bundle at load 200, subset curves for populations 1e2 to 1e5, 10 steps per seed",
       R"json({
  "description": "Subset failure curves for the fiber bundle, N=1000 L=200",
  "model": {"name": "fbm", "n_fibers": 1000, "kappa": 1.0, "load": 200.0},
  "method": {"name": "subset", "population": 10000, "p0": 0.1, "chain_steps": 10,
             "max_levels": 30},
  "run": {"seed": 1},
  "sweep": {"population": [100, 1000, 10000, 100000]},
  "output": {"directory": "out/fig3-subset"}
})json"},
      {"fig4-subset-chain100", "Bundle at load 200, subset with R = 1e4 and 100 steps per seed",
       R"json({
  "description": "Subset failure curve with long seed chains, N=1000 L=200",
  "model": {"name": "fbm", "n_fibers": 1000, "kappa": 1.0, "load": 200.0},
  "method": {"name": "subset", "population": 10000, "p0": 0.1, "chain_steps": 100,
             "max_levels": 30},
  "run": {"seed": 1},
  "output": {"directory": "out/fig4-subset-chain100"}
})json"},
  };
  return table;
}

}  // namespace awh
